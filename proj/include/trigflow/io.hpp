// JSON serialization of symbols, fields, solutions, reports and study
// outputs, plus a canonical dumper: object keys sorted, floating-point
// numbers printed with 17 significant digits, so identical inputs produce
// byte-identical files.

#ifndef TRIGFLOW_IO_HPP
#define TRIGFLOW_IO_HPP

#include <cstdio>
#include <string>

#include <json.hpp>

#include "trigflow/flows.hpp"
#include "trigflow/limits.hpp"
#include "trigflow/verify.hpp"

namespace trigflow {

using Json = nlohmann::json;

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace io_detail {

inline void dump_canonical(const Json& j, std::string& out) {
    switch (j.type()) {
        case Json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {  // nlohmann objects iterate sorted
                if (!first)
                    out += ',';
                first = false;
                out += Json(it.key()).dump();
                out += ':';
                dump_canonical(it.value(), out);
            }
            out += '}';
            break;
        }
        case Json::value_t::array: {
            out += '[';
            bool first = true;
            for (const auto& v : j) {
                if (!first)
                    out += ',';
                first = false;
                dump_canonical(v, out);
            }
            out += ']';
            break;
        }
        case Json::value_t::number_float: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
            out += buf;
            break;
        }
        default:
            out += j.dump();
    }
}

inline void require_keys(const Json& j, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    if (!j.is_object())
        throw ConfigError(where + ": expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* key : allowed)
            if (it.key() == key) {
                ok = true;
                break;
            }
        if (!ok)
            throw ConfigError(where + ": unknown key \"" + it.key() + "\"");
    }
}

}  // namespace io_detail

/// Deterministic serialization: sorted keys, fixed 17-significant-digit
/// floats, no whitespace.
inline std::string canonical_dump(const Json& j) {
    std::string out;
    io_detail::dump_canonical(j, out);
    out += '\n';
    return out;
}

// ---- symbols -------------------------------------------------------------

inline Json polynomial_to_json(const Polynomial& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms())
        terms.push_back({{"exponents", {e[0], e[1], e[2]}},
                         {"num", c.numerator()},
                         {"den", c.denominator()}});
    return terms;
}

inline Polynomial polynomial_from_json(const Json& j, const std::string& where) {
    if (!j.is_array())
        throw ConfigError(where + ": expected an array of monomial terms");
    Polynomial p;
    for (const auto& term : j) {
        io_detail::require_keys(term, {"exponents", "num", "den"}, where);
        if (!term.contains("exponents") || !term.contains("num"))
            throw ConfigError(where + ": each term needs exponents and num");
        const auto& e = term["exponents"];
        if (!e.is_array() || e.size() != 3)
            throw ConfigError(where + ": exponents must be a triple");
        const long long num = term["num"].get<long long>();
        const long long den = term.value("den", 1LL);
        if (den == 0)
            throw ConfigError(where + ": zero denominator");
        p.add_term({e[0].get<int>(), e[1].get<int>(), e[2].get<int>()}, Rational(num, den));
    }
    return p;
}

inline Json symbol_to_json(const PolyVec& A) {
    return {{"p1", polynomial_to_json(A.component(0))},
            {"p2", polynomial_to_json(A.component(1))},
            {"p3", polynomial_to_json(A.component(2))}};
}

inline PolyVec symbol_from_json(const Json& j) {
    io_detail::require_keys(j, {"p1", "p2", "p3"}, "operator");
    return validate_orthogonal_symbol(
        j.contains("p1") ? polynomial_from_json(j["p1"], "operator.p1") : Polynomial(),
        j.contains("p2") ? polynomial_from_json(j["p2"], "operator.p2") : Polynomial(),
        j.contains("p3") ? polynomial_from_json(j["p3"], "operator.p3") : Polynomial());
}

// ---- fields ---------------------------------------------------------------

inline Json field_to_json(const ScalarField& f) {
    Json modes = Json::array();
    for (const auto& [k, c] : f.modes())
        modes.push_back({{"k", {k[0], k[1], k[2]}}, {"re", c.real()}, {"im", c.imag()}});
    return modes;
}

inline ScalarField field_from_json(const Json& j, const std::string& where) {
    if (!j.is_array())
        throw ConfigError(where + ": expected an array of modes");
    ScalarField::ModeMap modes;
    for (const auto& mode : j) {
        io_detail::require_keys(mode, {"k", "re", "im"}, where);
        const auto& k = mode.at("k");
        if (!k.is_array() || k.size() != 3)
            throw ConfigError(where + ": mode wavevector must be a triple");
        modes[{k[0].get<int>(), k[1].get<int>(), k[2].get<int>()}] =
            Complex(mode.value("re", 0.0), mode.value("im", 0.0));
    }
    return ScalarField::from_modes(std::move(modes));
}

inline Json vector_field_to_json(const VectorField& u) {
    return {{"u1", field_to_json(u.component(0))},
            {"u2", field_to_json(u.component(1))},
            {"u3", field_to_json(u.component(2))}};
}

// ---- profiles -------------------------------------------------------------

inline Json profile_to_json(const PipelineProfile& p) {
    Json terms = Json::array();
    for (const auto& t : p.terms)
        terms.push_back({{"j", t.j}, {"k", t.k}, {"alpha", t.alpha}, {"beta", t.beta}});
    return {{"L1", p.L1}, {"L2", p.L2}, {"terms", terms}};
}

inline PipelineProfile profile_from_json(const Json& j) {
    io_detail::require_keys(j, {"L1", "L2", "terms"}, "profile");
    PipelineProfile p;
    p.L1 = j.value("L1", 0.0);
    p.L2 = j.value("L2", std::numbers::pi);
    if (!j.contains("terms") || !j["terms"].is_array())
        throw ConfigError("profile: terms array required");
    for (const auto& t : j["terms"]) {
        io_detail::require_keys(t, {"j", "k", "alpha", "beta"}, "profile.terms");
        p.terms.push_back({t.value("j", 1), t.value("k", 1), t.value("alpha", 0.0),
                           t.value("beta", 0.0)});
    }
    p.validate();
    return p;
}

inline Json radial_to_json(const RadialProfile& r) {
    return {{"R", r.R}, {"m", r.m}, {"amplitude", r.amplitude}};
}

inline RadialProfile radial_from_json(const Json& j) {
    io_detail::require_keys(j, {"R", "m", "amplitude"}, "radial");
    RadialProfile r;
    r.R = j.value("R", 1.0);
    r.m = j.value("m", 3);
    r.amplitude = j.value("amplitude", 1.0);
    r.validate();
    return r;
}

// ---- solutions ------------------------------------------------------------

inline Json solution_to_json(const FlowSolution& s) {
    Json j;
    j["family"] = family_name(s.family());
    j["boundary"] = boundary_name(s.boundary());
    switch (s.family()) {
        case FlowFamily::BeltramiEuler:
        case FlowFamily::BeltramiNS:
            j["operator"] = symbol_to_json(*s.symbol());
            j["lambda"] = s.lambda();
            j["psi"] = field_to_json(*s.psi());
            if (s.family() == FlowFamily::BeltramiNS)
                j["nu"] = s.nu();
            break;
        case FlowFamily::PipelineEuler:
        case FlowFamily::PipelineNS:
            if (s.profile())
                j["profile"] = profile_to_json(*s.profile());
            else
                j["phi"] = field_to_json(*s.pipeline_phi());
            if (s.family() == FlowFamily::PipelineNS)
                j["nu"] = s.nu();
            break;
        case FlowFamily::Radial2D:
            j["radial"] = radial_to_json(*s.radial());
            break;
    }
    return j;
}

/// Rebuilds the solution through its constructor, which re-runs every
/// invariant check (orthogonality certification, eigenvalue match, profile
/// validity).
inline FlowSolution solution_from_json(const Json& j) {
    io_detail::require_keys(
        j, {"family", "boundary", "operator", "lambda", "psi", "nu", "profile", "phi", "radial"},
        "solution");
    const std::string family = j.value("family", "");
    const std::string boundary = j.value("boundary", "periodic");
    const BoundaryKind bk = boundary == "dirichlet-box" ? BoundaryKind::DirichletBox
                            : boundary == "pipeline-slab" ? BoundaryKind::PipelineSlab
                            : boundary == "disc"          ? BoundaryKind::Disc
                                                          : BoundaryKind::Periodic;
    if (family == "beltrami-euler" || family == "beltrami-ns") {
        if (!j.contains("operator") || !j.contains("psi") || !j.contains("lambda"))
            throw ConfigError("solution: beltrami families need operator, lambda and psi");
        const PolyVec A = symbol_from_json(j["operator"]);
        const ScalarField psi = field_from_json(j["psi"], "solution.psi");
        const double lambda = j["lambda"].get<double>();
        if (family == "beltrami-ns")
            return make_beltrami_ns(A, lambda, psi, j.value("nu", 0.0), bk);
        return make_beltrami_euler(A, lambda, psi, bk);
    }
    if (family == "pipeline-euler" || family == "pipeline-ns") {
        if (j.contains("profile")) {
            const PipelineProfile p = profile_from_json(j["profile"]);
            if (family == "pipeline-ns")
                return make_pipeline_ns(p, j.value("nu", 0.0));
            return make_pipeline_euler(p);
        }
        if (j.contains("phi") && family == "pipeline-euler")
            return make_pipeline_euler(field_from_json(j["phi"], "solution.phi"));
        throw ConfigError("solution: pipeline families need a profile (or phi for the static flow)");
    }
    if (family == "radial-2d") {
        if (!j.contains("radial"))
            throw ConfigError("solution: radial-2d needs a radial profile");
        return make_radial_2d(radial_from_json(j["radial"]));
    }
    throw ConfigError("solution: unknown family \"" + family + "\"");
}

// ---- reports and studies ----------------------------------------------------

inline Json report_to_json(const VerificationReport& rep) {
    Json checks = Json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"check", c.name},
                          {"norm", c.norm},
                          {"tolerance", c.tolerance},
                          {"normalization", c.normalization},
                          {"pass", c.pass}});
    return {{"checks", checks}, {"overall", rep.overall()}};
}

inline Json limit_certificate_to_json(const LimitCertificate& c) {
    return {{"mu1", c.mu1},
            {"mu2", c.mu2},
            {"distance", c.distance},
            {"lower_bound", c.lower_bound},
            {"distinct", c.distinct},
            {"report1", report_to_json(c.report1)},
            {"report2", report_to_json(c.report2)},
            {"certified", c.certified()}};
}

inline Json nonuniqueness_to_json(const NonUniquenessCertificate& c) {
    return {{"boundary", c.boundary},
            {"l2_distance", c.l2_distance},
            {"relative_distance", c.relative_distance},
            {"threshold", c.threshold},
            {"report_a", report_to_json(c.report_a)},
            {"report_b", report_to_json(c.report_b)},
            {"certified", c.certified()}};
}

inline Json random_solutions_to_json(const std::vector<RandomSolutionDraw>& draws,
                                     std::uint64_t seed, double mu_max) {
    Json arr = Json::array();
    for (const auto& d : draws)
        arr.push_back({{"mu", d.mu},
                       {"solution", solution_to_json(d.solution)},
                       {"report", report_to_json(d.report)}});
    return {{"seed", seed},
            {"mu_max", mu_max},
            {"rng", "mt19937_64, mu = mu_max * (word >> 11) / 2^53"},
            {"draws", arr}};
}

inline Json prandtl_to_json(const PrandtlStudy& st) {
    Json rows = Json::array();
    for (const auto& r : st.rows)
        rows.push_back({{"nu", r.nu},
                        {"t", r.t},
                        {"global_sup", r.global_sup},
                        {"strip_sup", r.strip_sup}});
    return {{"rows", rows},
            {"strip_width", st.strip_width},
            {"limit_sup", st.limit_sup},
            {"converges", st.converges},
            {"no_layer", st.no_layer}};
}

}  // namespace trigflow

#endif  // TRIGFLOW_IO_HPP
