#ifndef EULER_SPECTRA_ACCEPTANCE_HPP
#define EULER_SPECTRA_ACCEPTANCE_HPP

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace euler_spectra::acceptance {

struct Result {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// Reference eigenvalue of the class khat = (1,0), p = (1,1) as printed in the
/// original example.
inline constexpr std::complex<double> kPrintedGolden{0.24822302478255, 0.35172076526520};

Result golden_eigenvalue();      // 1
Result oracle_agreement();       // 2
Result essential_band_check();   // 3
Result stability_bounds();     // 4
Result conservation();           // 5
Result eigenvalue_symmetry();    // 6
Result resolvent_check();        // 7
Result linearization();          // 8
Result nonlinear_conservation(); // 9

inline constexpr int kCriterionCount = 9;

/// Runs criterion id (1-based); exceptions are reported as failures.
Result run(int id);
std::vector<Result> run_all();

/// "[PASS] C1 name (0.52 s): detail"
std::string format_line(const Result& r);

} // namespace euler_spectra::acceptance

#endif
