// trigflow command-line front end.
//
// Subcommands: validate-symbol, construct, verify, sample, limit-study,
// prandtl, nonuniqueness.  Exit codes: 0 all requested checks pass,
// 1 a verification failed, 2 configuration error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "trigflow/cli.hpp"

namespace {

using namespace trigflow;

struct CommonOpts {
    std::string config_path;
    std::string solution_path;
    std::string out_dir;
    double tolerance_scale = 1.0;
    bool tolerance_given = false;
    std::int64_t seed = -1;
    int resolution = 0;
};

std::string default_out_dir() {
    if (const char* env = std::getenv("TRIGFLOW_OUT"))
        return env;
    return ".";
}

void add_common(CLI::App* cmd, CommonOpts& o, bool config_required = true) {
    auto* copt = cmd->add_option("--config", o.config_path, "JSON configuration file");
    if (config_required)
        copt->required();
    cmd->add_option("--out", o.out_dir, "output directory (default: $TRIGFLOW_OUT or .)");
    cmd->add_option("--tolerance-scale", o.tolerance_scale,
                    "multiply all verification tolerances");
    cmd->add_option("--seed", o.seed, "override the config seed");
    cmd->add_option("--resolution", o.resolution, "override the config grid resolution");
}

Json load_json(const std::string& path) {
    std::ifstream is(path);
    if (!is)
        throw ConfigError("cannot open " + path);
    return Json::parse(is);
}

RunConfig effective_config(const CommonOpts& o) {
    RunConfig cfg = parse_config(load_json(o.config_path));
    if (o.tolerance_given)
        cfg.tolerance_scale = o.tolerance_scale;
    if (o.seed >= 0)
        cfg.seed = static_cast<std::uint64_t>(o.seed);
    if (o.resolution > 0)
        cfg.resolution = o.resolution;
    return cfg;
}

void print_report(const VerificationReport& rep) {
    std::printf("%-28s %-14s %-12s %s\n", "check", "norm", "tolerance", "pass");
    for (const auto& c : rep.checks)
        std::printf("%-28s %-14.3e %-12.1e %s\n", c.name.c_str(), c.norm, c.tolerance,
                    c.pass ? "PASS" : "FAIL");
    std::printf("overall: %s\n", rep.overall() ? "PASS" : "FAIL");
}

int cmd_validate_symbol(const CommonOpts& o) {
    const Json j = load_json(o.config_path);
    if (!j.contains("operator"))
        throw ConfigError("validate-symbol: config needs an operator");
    try {
        const PolyVec A = symbol_from_json(j["operator"]);
        std::printf("certified: x.P(x) == 0 (degree %d)\n", A.degree());
        return 0;
    } catch (const SymbolRejection& e) {
        std::printf("rejected: %s\n", e.what());
        return 1;
    }
}

int cmd_construct(const CommonOpts& o) {
    const RunConfig cfg = effective_config(o);
    const FlowSolution s = construct_from_config(cfg);
    const std::filesystem::path out(o.out_dir);
    std::filesystem::create_directories(out);
    const auto path = out / "solution.json";
    std::ofstream os(path, std::ios::binary);
    os << canonical_dump(solution_to_json(s));
    std::printf("constructed %s solution -> %s\n", family_name(s.family()), path.string().c_str());
    return 0;
}

int cmd_verify(const CommonOpts& o) {
    FlowSolution s = [&] {
        if (!o.solution_path.empty())
            return solution_from_json(load_json(o.solution_path));
        return construct_from_config(effective_config(o));
    }();
    RunConfig cfg;
    if (!o.config_path.empty())
        cfg = effective_config(o);
    else if (o.tolerance_given)
        cfg.tolerance_scale = o.tolerance_scale;
    const VerificationReport rep = run_verify(s, cfg, o.out_dir);
    print_report(rep);
    return rep.overall() ? 0 : 1;
}

int cmd_sample(const CommonOpts& o) {
    const RunConfig cfg = effective_config(o);
    const FlowSolution s = construct_from_config(cfg);
    run_sample(s, cfg, o.out_dir, cfg.resolution);
    std::printf("grid dumps written to %s\n", o.out_dir.c_str());
    return 0;
}

int cmd_limit_study(const CommonOpts& o) {
    const RunConfig cfg = effective_config(o);
    const FlowSolution s = construct_from_config(cfg);
    const LimitStudyResult r = run_limit_study(s, cfg, o.out_dir);
    bool ok = r.all_paths_verified;
    if (r.double_limit) {
        std::printf("double limit: |u(mu1) - u(mu2)|_inf = %.17g (analytic %.17g)\n",
                    r.double_limit->distance, r.double_limit->lower_bound);
        ok = ok && r.double_limit->certified();
    }
    for (const auto& d : r.draws)
        ok = ok && d.report.overall();
    if (!r.draws.empty())
        std::printf("%zu random path limits drawn, all verified: %s\n", r.draws.size(),
                    ok ? "yes" : "no");
    std::printf("limit study artifacts written to %s\n", o.out_dir.c_str());
    return ok ? 0 : 1;
}

int cmd_prandtl(const CommonOpts& o) {
    const RunConfig cfg = effective_config(o);
    const FlowSolution s = construct_from_config(cfg);
    const PrandtlStudy st = run_prandtl(s, cfg, o.out_dir);
    for (const auto& row : st.rows)
        std::printf("nu=%-10.4g sup=%.6e strip=%.6e\n", row.nu, row.global_sup, row.strip_sup);
    std::printf("verdict: converges=%s, no boundary layer=%s\n", st.converges ? "yes" : "no",
                st.no_layer ? "yes" : "no");
    return (st.converges && st.no_layer) ? 0 : 1;
}

int cmd_nonuniqueness(const CommonOpts& o) {
    const RunConfig cfg = effective_config(o);
    const NonUniquenessCertificate cert = run_nonuniqueness(cfg, o.out_dir);
    std::printf("distinct verified solutions, relative L2 distance %.6g (threshold %.1e)\n",
                cert.relative_distance, cert.threshold);
    return cert.certified() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"construction and verification toolkit for closed-form static Euler and "
                 "Navier-Stokes solutions"};
    app.require_subcommand(1);

    CommonOpts o;
    o.out_dir = default_out_dir();

    auto* validate = app.add_subcommand("validate-symbol", "certify x.P(x) == 0 for an operator symbol");
    add_common(validate, o);
    auto* construct = app.add_subcommand("construct", "build a solution and write solution.json");
    add_common(construct, o);
    auto* verify = app.add_subcommand("verify", "run the family's full residual suite");
    add_common(verify, o, false);
    verify->add_option("--solution", o.solution_path, "verify a previously emitted solution.json");
    auto* sampler = app.add_subcommand("sample", "CSV grid dumps of u, omega and P");
    add_common(sampler, o);
    auto* limits_cmd = app.add_subcommand("limit-study", "path limits, double-limit certificate, random solutions");
    add_common(limits_cmd, o);
    auto* prandtl_cmd = app.add_subcommand("prandtl", "vanishing-viscosity boundary study");
    add_common(prandtl_cmd, o);
    auto* nonuniq = app.add_subcommand("nonuniqueness", "certify a distinct pair of verified solutions");
    add_common(nonuniq, o);

    CLI11_PARSE(app, argc, argv);
    o.tolerance_given = app.count_all() && (validate->count("--tolerance-scale") ||
                                            construct->count("--tolerance-scale") ||
                                            verify->count("--tolerance-scale") ||
                                            sampler->count("--tolerance-scale") ||
                                            limits_cmd->count("--tolerance-scale") ||
                                            prandtl_cmd->count("--tolerance-scale") ||
                                            nonuniq->count("--tolerance-scale"));

    try {
        if (validate->parsed())
            return cmd_validate_symbol(o);
        if (construct->parsed())
            return cmd_construct(o);
        if (verify->parsed()) {
            if (o.config_path.empty() && o.solution_path.empty())
                throw ConfigError("verify: need --config or --solution");
            return cmd_verify(o);
        }
        if (sampler->parsed())
            return cmd_sample(o);
        if (limits_cmd->parsed())
            return cmd_limit_study(o);
        if (prandtl_cmd->parsed())
            return cmd_prandtl(o);
        if (nonuniq->parsed())
            return cmd_nonuniqueness(o);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const Json::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const SameSolutionError& e) {
        std::fprintf(stderr, "verification failure: %s\n", e.what());
        return 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
