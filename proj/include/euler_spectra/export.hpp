#ifndef EULER_SPECTRA_EXPORT_HPP
#define EULER_SPECTRA_EXPORT_HPP

#include "euler_spectra/contfrac.hpp"
#include "euler_spectra/euler_core.hpp"
#include "euler_spectra/matrixop.hpp"
#include "euler_spectra/subsystem.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace euler_spectra {

/// x rounded to 15 significant digits; JSON and CSV output go through this so
/// repeated runs are byte-identical.
double round15(double x);
std::string format15(double x);

nlohmann::json complex_json(Complex z);
nlohmann::json wave_json(WaveVector k);

nlohmann::json verdict_json(const ClassLabel& label, const StabilityVerdict& verdict);
nlohmann::json quadruples_json(const CFParams& params, const std::vector<EigenQuadruple>& quads);
nlohmann::json band_json(const CFParams& params, const BandSpec& band);
nlohmann::json spectrum_json(const CFParams& params, OperatorKind kind, Eigen::Index N,
                             const std::vector<TaggedEigenvalue>& tagged);
nlohmann::json trajectory_summary_json(const Trajectory& traj);
nlohmann::json euler_report_json(const EulerTrajectory& traj);

/// t, n, re, im per stored amplitude and sample
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
/// re, im, kind (isolated | band)
void write_spectrum_csv(std::ostream& os, const std::vector<TaggedEigenvalue>& tagged);
/// row, col, re, im for nonzero entries (1-based)
void write_operator_triplets(std::ostream& os, const TruncatedOperator& op);
/// k1, k2, re, im over every mode (both members of each +-k pair)
void write_field_csv(std::ostream& os, const VorticityField& field);
/// re, im, residual, chain per quadruple representative
void write_quadruples_csv(std::ostream& os, const std::vector<EigenQuadruple>& quads);

/// Stable serialization: sorted keys, 2-space indent, trailing newline.
std::string dump_json(const nlohmann::json& j);

} // namespace euler_spectra

#endif
