// Batch front end: strict JSON configuration, construct -> verify -> study
// orchestration, and artifact export.  The CLI binary in tools/ is a thin
// wrapper around these calls so the pipelines are testable in-process.
//
// Configuration caps: operator degree <= 6, lambda_sq <= 200, at most 4096
// stored modes.  Unknown keys are rejected.

#ifndef TRIGFLOW_CLI_HPP
#define TRIGFLOW_CLI_HPP

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "trigflow/eigenmodes.hpp"
#include "trigflow/io.hpp"
#include "trigflow/limits.hpp"
#include "trigflow/verify.hpp"

namespace trigflow {

struct RunConfig {
    std::string family;
    BoundaryKind boundary = BoundaryKind::Periodic;
    bool boundary_given = false;
    std::optional<PolyVec> op;
    long lambda_sq = 0;
    int lambda_sign = 1;
    // exactly one of these describes psi for the Beltrami families
    std::optional<Json> psi_modes;
    std::optional<Wavevector> psi_dirichlet;
    std::optional<std::uint64_t> psi_random_seed;

    double nu = 0.0;
    bool nu_given = false;
    std::vector<double> times{0.0, 0.5, 1.0};
    std::optional<PipelineProfile> profile;
    std::optional<RadialProfile> radial;

    std::vector<double> mu_values;
    std::optional<int> sampler_count;
    double sampler_mu_max = 2.0;
    std::vector<double> nu_sequence{1.0, 0.1, 0.01, 0.001};
    double t_fixed = 1.0;
    double strip_delta = -1.0;

    std::uint64_t seed = 0;
    double tolerance_scale = 1.0;
    int resolution = 24;

    std::optional<Json> pair_a;
    std::optional<Json> pair_b;
};

namespace cli_detail {

constexpr int kMaxDegree = 6;
constexpr long kMaxLambdaSq = 200;
constexpr std::size_t kMaxModes = 4096;

inline std::vector<double> doubles_from(const Json& j, const std::string& where) {
    if (!j.is_array())
        throw ConfigError(where + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& v : j)
        out.push_back(v.get<double>());
    return out;
}

}  // namespace cli_detail

inline RunConfig parse_config(const Json& j) {
    io_detail::require_keys(j,
                            {"family", "boundary", "operator", "lambda_sq", "lambda_sign", "psi",
                             "nu", "times", "profile", "radial", "mu", "mu_sampler", "nu_sequence",
                             "t_fixed", "strip_delta", "seed", "resolution", "tolerance_scale",
                             "pair"},
                            "config");
    RunConfig cfg;
    cfg.family = j.value("family", "");
    if (j.contains("boundary")) {
        const std::string b = j["boundary"].get<std::string>();
        cfg.boundary_given = true;
        if (b == "periodic")
            cfg.boundary = BoundaryKind::Periodic;
        else if (b == "dirichlet-box")
            cfg.boundary = BoundaryKind::DirichletBox;
        else if (b == "pipeline-slab")
            cfg.boundary = BoundaryKind::PipelineSlab;
        else if (b == "disc")
            cfg.boundary = BoundaryKind::Disc;
        else
            throw ConfigError("config.boundary: unknown value \"" + b + "\"");
    }
    if (j.contains("operator")) {
        cfg.op = symbol_from_json(j["operator"]);
        if (cfg.op->degree() > cli_detail::kMaxDegree)
            throw ConfigError("config.operator: degree exceeds the cap of 6");
    }
    if (j.contains("lambda_sq")) {
        cfg.lambda_sq = j["lambda_sq"].get<long>();
        if (cfg.lambda_sq < 0 || cfg.lambda_sq > cli_detail::kMaxLambdaSq)
            throw ConfigError("config.lambda_sq: must lie in [0, 200]");
    }
    cfg.lambda_sign = j.value("lambda_sign", 1);
    if (cfg.lambda_sign != 1 && cfg.lambda_sign != -1)
        throw ConfigError("config.lambda_sign: must be +1 or -1");
    if (j.contains("psi")) {
        const Json& p = j["psi"];
        io_detail::require_keys(p, {"modes", "dirichlet", "random_seed"}, "config.psi");
        int how = 0;
        if (p.contains("modes")) {
            ++how;
            if (p["modes"].size() > cli_detail::kMaxModes)
                throw ConfigError("config.psi.modes: exceeds the cap of 4096 modes");
            cfg.psi_modes = p["modes"];
        }
        if (p.contains("dirichlet")) {
            ++how;
            const auto& k = p["dirichlet"];
            if (!k.is_array() || k.size() != 3)
                throw ConfigError("config.psi.dirichlet: expected a triple of integers");
            cfg.psi_dirichlet = Wavevector{k[0].get<int>(), k[1].get<int>(), k[2].get<int>()};
        }
        if (p.contains("random_seed")) {
            ++how;
            cfg.psi_random_seed = p["random_seed"].get<std::uint64_t>();
        }
        if (how != 1)
            throw ConfigError("config.psi: exactly one of modes/dirichlet/random_seed");
    }
    if (j.contains("nu")) {
        cfg.nu = j["nu"].get<double>();
        cfg.nu_given = true;
    }
    if (j.contains("times"))
        cfg.times = cli_detail::doubles_from(j["times"], "config.times");
    if (j.contains("profile"))
        cfg.profile = profile_from_json(j["profile"]);
    if (j.contains("radial"))
        cfg.radial = radial_from_json(j["radial"]);
    if (j.contains("mu"))
        cfg.mu_values = cli_detail::doubles_from(j["mu"], "config.mu");
    if (j.contains("mu_sampler")) {
        io_detail::require_keys(j["mu_sampler"], {"count", "mu_max"}, "config.mu_sampler");
        cfg.sampler_count = j["mu_sampler"].value("count", 10);
        cfg.sampler_mu_max = j["mu_sampler"].value("mu_max", 2.0);
    }
    if (j.contains("nu_sequence"))
        cfg.nu_sequence = cli_detail::doubles_from(j["nu_sequence"], "config.nu_sequence");
    cfg.t_fixed = j.value("t_fixed", 1.0);
    cfg.strip_delta = j.value("strip_delta", -1.0);
    cfg.seed = j.value("seed", std::uint64_t{0});
    cfg.tolerance_scale = j.value("tolerance_scale", 1.0);
    cfg.resolution = j.value("resolution", 24);
    if (j.contains("pair")) {
        io_detail::require_keys(j["pair"], {"a", "b"}, "config.pair");
        if (!j["pair"].contains("a") || !j["pair"].contains("b"))
            throw ConfigError("config.pair: needs both a and b");
        cfg.pair_a = j["pair"]["a"];
        cfg.pair_b = j["pair"]["b"];
    }
    return cfg;
}

/// Builds the configured solution; every constructor re-checks its
/// invariants, so a returned solution is certified by construction.
inline FlowSolution construct_from_config(const RunConfig& cfg) {
    const double lambda =
        cfg.lambda_sign * std::sqrt(static_cast<double>(cfg.lambda_sq));
    if (cfg.family == "beltrami-euler" || cfg.family == "beltrami-ns") {
        if (!cfg.op)
            throw ConfigError("config: beltrami families need an operator");
        ScalarField psi;
        BoundaryKind bk = cfg.boundary_given ? cfg.boundary : BoundaryKind::Periodic;
        if (cfg.psi_dirichlet) {
            psi = dirichlet_eigenfunction(DirichletMode{*cfg.psi_dirichlet});
            if (!cfg.boundary_given)
                bk = BoundaryKind::DirichletBox;
        } else if (cfg.psi_modes) {
            const EigenShell shell = enumerate_shell(cfg.lambda_sq);
            std::map<Wavevector, Complex> coeffs;
            for (const auto& m : *cfg.psi_modes) {
                io_detail::require_keys(m, {"k", "re", "im"}, "config.psi.modes");
                const auto& k = m.at("k");
                coeffs[{k[0].get<int>(), k[1].get<int>(), k[2].get<int>()}] =
                    Complex(m.value("re", 0.0), m.value("im", 0.0));
            }
            psi = periodic_eigenfunction(shell, coeffs);
        } else if (cfg.psi_random_seed) {
            const EigenShell shell = enumerate_shell(cfg.lambda_sq);
            psi = periodic_eigenfunction(shell, random_shell_coefficients(shell, *cfg.psi_random_seed));
        } else {
            throw ConfigError("config: beltrami families need psi");
        }
        const double lam = cfg.psi_dirichlet
                               ? cfg.lambda_sign *
                                     std::sqrt(static_cast<double>(DirichletMode{*cfg.psi_dirichlet}.lambda_sq()))
                               : lambda;
        if (cfg.family == "beltrami-ns") {
            if (!cfg.nu_given)
                throw ConfigError("config: beltrami-ns needs nu");
            return make_beltrami_ns(*cfg.op, lam, psi, cfg.nu, bk);
        }
        return make_beltrami_euler(*cfg.op, lam, psi, bk);
    }
    if (cfg.family == "pipeline-euler" || cfg.family == "pipeline-ns") {
        if (!cfg.profile)
            throw ConfigError("config: pipeline families need a profile");
        if (cfg.family == "pipeline-ns")
            return make_pipeline_ns(*cfg.profile, cfg.nu);
        return make_pipeline_euler(*cfg.profile);
    }
    if (cfg.family == "radial-2d") {
        if (!cfg.radial)
            throw ConfigError("config: radial-2d needs a radial profile");
        return make_radial_2d(*cfg.radial);
    }
    throw ConfigError("config: unknown family \"" + cfg.family + "\"");
}

inline VerifyOptions verify_options_from(const RunConfig& cfg) {
    VerifyOptions opt;
    opt.times = cfg.times;
    opt.tol.scale = cfg.tolerance_scale;
    opt.resolution = 0;
    return opt;
}

namespace cli_detail {

inline void write_file(const std::filesystem::path& path, const std::string& contents) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    os << contents;
}

}  // namespace cli_detail

/// construct + verify + write report; returns the report.
inline VerificationReport run_verify(const FlowSolution& s, const RunConfig& cfg,
                                     const std::filesystem::path& outdir) {
    const VerificationReport rep = verify_solution(s, verify_options_from(cfg));
    std::filesystem::create_directories(outdir);
    cli_detail::write_file(outdir / "report.json", canonical_dump(report_to_json(rep)));
    return rep;
}

/// CSV grid dumps of u, omega and P at the requested times.
inline void run_sample(const FlowSolution& s, const RunConfig& cfg,
                       const std::filesystem::path& outdir, int resolution) {
    std::filesystem::create_directories(outdir);
    if (s.family() == FlowFamily::Radial2D) {
        const RadialProfile& rp = *s.radial();
        const RadialPressure pr = recover_radial_pressure(rp);
        const int n = std::max(resolution, 8);
        std::ofstream u_os(outdir / "u_t0.csv"), p_os(outdir / "p_t0.csv");
        u_os << std::setprecision(17) << "x1,x2,x3,v1,v2,v3\n";
        p_os << std::setprecision(17) << "x1,x2,x3,v1\n";
        for (int i = 0; i < n; ++i)
            for (int jj = 0; jj < n; ++jj) {
                const double x1 = -rp.R + 2.0 * rp.R * (i + 0.5) / n;
                const double x2 = -rp.R + 2.0 * rp.R * (jj + 0.5) / n;
                const auto u = radial_velocity(rp, x1, x2);
                u_os << x1 << "," << x2 << ",0," << u[0] << "," << u[1] << ",0\n";
                p_os << x1 << "," << x2 << ",0," << pr.value(std::hypot(x1, x2)) << "\n";
            }
        return;
    }
    for (std::size_t i = 0; i < cfg.times.size(); ++i) {
        const double t = cfg.times[i];
        const VectorField u = s.velocity(t);
        const VectorField w = curl(u);
        const ScalarField p = recover_pressure(s, t);
        const int maxk = std::max({u.max_wavenumber(), w.max_wavenumber(), p.max_wavenumber()});
        const int n = std::max(resolution, 2 * maxk + 2);
        const std::string tag = "_t" + std::to_string(i);
        {
            std::ofstream os(outdir / ("u" + tag + ".csv"));
            sample(u, n).write_csv(os);
        }
        {
            std::ofstream os(outdir / ("omega" + tag + ".csv"));
            sample(w, n).write_csv(os);
        }
        {
            std::ofstream os(outdir / ("p" + tag + ".csv"));
            sample(p, n).write_csv(os);
        }
    }
}

struct LimitStudyResult {
    bool all_paths_verified = true;
    std::optional<LimitCertificate> double_limit;
    std::vector<RandomSolutionDraw> draws;
};

inline LimitStudyResult run_limit_study(const FlowSolution& s, const RunConfig& cfg,
                                        const std::filesystem::path& outdir) {
    std::filesystem::create_directories(outdir);
    LimitStudyResult result;

    std::ofstream csv(outdir / "path_convergence.csv");
    csv << std::setprecision(17) << "mu,nu,t,sup_difference\n";
    Json path_reports = Json::array();
    for (const double mu : cfg.mu_values) {
        for (const auto& row : empirical_path_convergence(s, mu, cfg.nu_sequence))
            csv << mu << "," << row.nu << "," << row.t << "," << row.sup_difference << "\n";
        const FlowSolution limit = path_limit(s, mu);
        const VerificationReport rep = verify_solution(limit, verify_options_from(cfg));
        result.all_paths_verified = result.all_paths_verified && rep.overall();
        path_reports.push_back({{"mu", mu}, {"report", report_to_json(rep)}});
    }
    cli_detail::write_file(outdir / "path_limits.json", canonical_dump(path_reports));

    if (cfg.mu_values.size() >= 2) {
        result.double_limit = double_limit_certificate(s, cfg.mu_values[0], cfg.mu_values[1]);
        cli_detail::write_file(outdir / "double_limit.json",
                               canonical_dump(limit_certificate_to_json(*result.double_limit)));
    }
    if (cfg.sampler_count) {
        result.draws = sample_random_solutions(s, cfg.sampler_mu_max, *cfg.sampler_count, cfg.seed);
        cli_detail::write_file(
            outdir / "random_solutions.json",
            canonical_dump(random_solutions_to_json(result.draws, cfg.seed, cfg.sampler_mu_max)));
    }
    return result;
}

inline PrandtlStudy run_prandtl(const FlowSolution& s, const RunConfig& cfg,
                                const std::filesystem::path& outdir) {
    const PrandtlStudy st =
        prandtl_study(s, cfg.t_fixed, cfg.nu_sequence, cfg.strip_delta, cfg.resolution);
    std::filesystem::create_directories(outdir);
    std::ofstream csv(outdir / "prandtl.csv");
    csv << std::setprecision(17) << "nu,t,sup_difference,strip_difference\n";
    for (const auto& r : st.rows)
        csv << r.nu << "," << r.t << "," << r.global_sup << "," << r.strip_sup << "\n";
    cli_detail::write_file(outdir / "prandtl.json", canonical_dump(prandtl_to_json(st)));
    return st;
}

inline NonUniquenessCertificate run_nonuniqueness(const RunConfig& cfg,
                                                  const std::filesystem::path& outdir) {
    if (!cfg.pair_a || !cfg.pair_b)
        throw ConfigError("nonuniqueness: config needs pair.a and pair.b");
    const FlowSolution a = construct_from_config(parse_config(*cfg.pair_a));
    const FlowSolution b = construct_from_config(parse_config(*cfg.pair_b));
    const NonUniquenessCertificate cert = nonuniqueness_certificate(a, b);
    std::filesystem::create_directories(outdir);
    cli_detail::write_file(outdir / "nonuniqueness.json",
                           canonical_dump(nonuniqueness_to_json(cert)));
    return cert;
}

}  // namespace trigflow

#endif  // TRIGFLOW_CLI_HPP
