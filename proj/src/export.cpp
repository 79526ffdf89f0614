#include "euler_spectra/export.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace euler_spectra {

double round15(double x)
{
    if (!std::isfinite(x)) {
        return x;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    const double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r; // drop negative zero
}

std::string format15(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", round15(x));
    return buf;
}

nlohmann::json complex_json(Complex z)
{
    return {{"re", round15(z.real())}, {"im", round15(z.imag())}};
}

nlohmann::json wave_json(WaveVector k)
{
    return nlohmann::json::array({k.k1, k.k2});
}

nlohmann::json verdict_json(const ClassLabel& label, const StabilityVerdict& verdict)
{
    nlohmann::json j;
    j["khat"] = wave_json(label.khat);
    j["p"] = wave_json(label.p);
    j["parallel"] = label.parallel;
    j["kind"] = to_string(verdict.kind);
    j["sigma"] = verdict.sigma ? nlohmann::json(round15(*verdict.sigma)) : nlohmann::json(nullptr);
    j["detail"] = verdict.detail;
    return j;
}

nlohmann::json quadruples_json(const CFParams& params, const std::vector<EigenQuadruple>& quads)
{
    nlohmann::json j;
    j["class"] = {{"khat", wave_json(params.khat)}, {"p", wave_json(params.p)}};
    j["gamma"] = complex_json(params.gamma);
    j["a"] = round15(params.a);
    j["method"] = "continued-fraction";
    j["quadruples"] = nlohmann::json::array();
    for (const auto& q : quads) {
        nlohmann::json e;
        e["re"] = round15(q.lambda_tilde.real());
        e["im"] = round15(q.lambda_tilde.imag());
        e["residual"] = round15(q.residual);
        e["chain"] = to_string(q.part);
        e["lambda"] = complex_json(params.a * q.lambda_tilde);
        e["members"] = nlohmann::json::array();
        for (const Complex m : q.members) {
            e["members"].push_back(complex_json(m));
        }
        j["quadruples"].push_back(e);
    }
    return j;
}

nlohmann::json band_json(const CFParams& params, const BandSpec& band)
{
    nlohmann::json j;
    j["class"] = {{"khat", wave_json(params.khat)}, {"p", wave_json(params.p)}};
    j["a"] = round15(params.a);
    j["b"] = round15(params.a * params.rho_seq.limit());
    j["endpoints"] = nlohmann::json::array({complex_json(band.lower), complex_json(band.upper)});
    j["width"] = round15(band.width);
    return j;
}

nlohmann::json spectrum_json(const CFParams& params, OperatorKind kind, Eigen::Index N,
                             const std::vector<TaggedEigenvalue>& tagged)
{
    nlohmann::json j;
    j["class"] = {{"khat", wave_json(params.khat)}, {"p", wave_json(params.p)}};
    j["operator"] = to_string(kind);
    j["N"] = N;
    j["method"] = "finite-section";
    j["eigenvalues"] = nlohmann::json::array();
    std::size_t isolated = 0;
    for (const auto& t : tagged) {
        nlohmann::json e = complex_json(t.value);
        e["kind"] = t.isolated ? "isolated" : "band";
        e["band_distance"] = round15(t.band_distance);
        j["eigenvalues"].push_back(e);
        isolated += t.isolated ? 1 : 0;
    }
    j["isolated_count"] = isolated;
    return j;
}

nlohmann::json trajectory_summary_json(const Trajectory& traj)
{
    return {{"H_drift", round15(traj.hamiltonian_drift)},
            {"I_drift", round15(traj.invariant_drift)},
            {"enstrophy_ratio", round15(traj.enstrophy_ratio)},
            {"samples", traj.times.size()}};
}

nlohmann::json euler_report_json(const EulerTrajectory& traj)
{
    return {{"E_drift", round15(traj.energy_drift)},
            {"J_drift", round15(traj.enstrophy_drift)},
            {"samples", traj.times.size()}};
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj)
{
    os << "t,n,re,im\n";
    for (std::size_t s = 0; s < traj.states.size(); ++s) {
        const ComplexSeq& st = traj.states[s];
        for (Eigen::Index i = 0; i < st.size(); ++i) {
            os << format15(traj.times[s]) << ',' << st.index_at(i) << ',' << format15(st.values()[i].real()) << ','
               << format15(st.values()[i].imag()) << '\n';
        }
    }
}

void write_spectrum_csv(std::ostream& os, const std::vector<TaggedEigenvalue>& tagged)
{
    os << "re,im,kind\n";
    for (const auto& t : tagged) {
        os << format15(t.value.real()) << ',' << format15(t.value.imag()) << ',' << (t.isolated ? "isolated" : "band")
           << '\n';
    }
}

void write_operator_triplets(std::ostream& os, const TruncatedOperator& op)
{
    os << "row,col,re,im\n";
    for (Eigen::Index r = 0; r < op.size; ++r) {
        for (Eigen::Index c = 0; c < op.size; ++c) {
            const Complex v = op.entries(r, c);
            if (v != 0.0) {
                os << r + 1 << ',' << c + 1 << ',' << format15(v.real()) << ',' << format15(v.imag()) << '\n';
            }
        }
    }
}

void write_field_csv(std::ostream& os, const VorticityField& field)
{
    os << "k1,k2,re,im\n";
    for (const WaveVector k : field.modes().modes()) {
        const Complex v = field.at(k);
        os << k.k1 << ',' << k.k2 << ',' << format15(v.real()) << ',' << format15(v.imag()) << '\n';
    }
}

void write_quadruples_csv(std::ostream& os, const std::vector<EigenQuadruple>& quads)
{
    os << "re,im,residual,chain\n";
    for (const auto& q : quads) {
        os << format15(q.lambda_tilde.real()) << ',' << format15(q.lambda_tilde.imag()) << ',' << format15(q.residual)
           << ',' << to_string(q.part) << '\n';
    }
}

std::string dump_json(const nlohmann::json& j)
{
    return j.dump(2) + "\n";
}

} // namespace euler_spectra
