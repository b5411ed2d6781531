// Limit phenomenology of the NS families.
//
// Along a path Gamma_mu = {t nu = mu} the NS field is constant in the
// coefficients, and its value is a static Euler solution again (the
// eigenspaces are linear, so the decayed psi is still an eigenfunction).
// Different mu give different limits, which certifies that the unconstrained
// double limit (nu, 1/t) -> (0, 0) does not exist.  Sampling mu at random
// produces a seeded ensemble of verified static solutions, and comparing
// viscous fields against their inviscid limit near the boundary shows the
// convergence is uniform: no Prandtl layer.

#ifndef TRIGFLOW_LIMITS_HPP
#define TRIGFLOW_LIMITS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "trigflow/flows.hpp"
#include "trigflow/verify.hpp"

namespace trigflow {

/// The constraint t nu = mu defining the path Gamma_mu.
struct PathSpec {
    double mu = 0.0;
};

namespace detail {
inline void require_ns_family(const FlowSolution& s, const char* who) {
    if (s.family() != FlowFamily::BeltramiNS && s.family() != FlowFamily::PipelineNS)
        throw std::invalid_argument(std::string(who) + ": expected a Navier-Stokes family");
}
}  // namespace detail

/// The same NS solution with a different viscosity; walking a path in
/// (nu, t) means re-evaluating the family, not one fixed member.
inline FlowSolution with_viscosity(const FlowSolution& s, double nu) {
    detail::require_ns_family(s, "with_viscosity");
    if (s.family() == FlowFamily::BeltramiNS)
        return make_beltrami_ns(*s.symbol(), s.lambda(), *s.psi(), nu, s.boundary());
    return make_pipeline_ns(*s.profile(), nu);
}

/// The static Euler solution at the end of Gamma_mu.  For the Beltrami
/// family psi is replaced by e^{-mu lambda^2} psi (still an eigenfunction);
/// for the pipeline family each term amplitude decays with its heat rate.
inline FlowSolution path_limit(const FlowSolution& s, double mu) {
    detail::require_ns_family(s, "path_limit");
    if (mu < 0.0)
        throw std::invalid_argument("path_limit: mu must be >= 0");
    if (s.family() == FlowFamily::BeltramiNS) {
        const double factor = std::exp(-(s.lambda_sq() * mu));
        return make_beltrami_euler(*s.symbol(), s.lambda(), factor * (*s.psi()), s.boundary());
    }
    PipelineProfile limit_profile = *s.profile();
    for (auto& term : limit_profile.terms) {
        const double factor = std::exp(-(limit_profile.decay_rate(term) * mu));
        term.alpha *= factor;
        term.beta *= factor;
    }
    return make_pipeline_euler(limit_profile);
}

struct PathConvergenceRow {
    double nu = 0.0;
    double t = 0.0;
    double sup_difference = 0.0;  // ||u_ns(t) - path limit||_inf
};

/// Walks (nu, t = mu/nu) down the path and measures the sup distance to the
/// path-limit field; the time law depends only on nu t, so the rows are
/// identically near zero.
inline std::vector<PathConvergenceRow> empirical_path_convergence(const FlowSolution& s, double mu,
                                                                  const std::vector<double>& nus) {
    detail::require_ns_family(s, "empirical_path_convergence");
    const FlowSolution limit = path_limit(s, mu);
    const VectorField& target = limit.initial_velocity();
    std::vector<PathConvergenceRow> rows;
    for (const double nu : nus) {
        if (!(nu > 0.0))
            throw std::invalid_argument("empirical_path_convergence: nu values must be positive");
        const double t = mu / nu;
        const VectorField u = with_viscosity(s, nu).velocity(t);
        rows.push_back({nu, t, sup_norm(u - target)});
    }
    return rows;
}

/// Two path limits and the distance between them; a positive distance is the
/// non-existence certificate for the double limit.
struct LimitCertificate {
    double mu1 = 0.0;
    double mu2 = 0.0;
    double distance = 0.0;      // sup-norm distance between the limit fields
    double lower_bound = 0.0;   // analytic value of the same distance
    VerificationReport report1;
    VerificationReport report2;
    bool distinct = false;

    bool certified() const { return distinct && report1.overall() && report2.overall(); }
};

inline LimitCertificate double_limit_certificate(const FlowSolution& s, double mu1, double mu2) {
    detail::require_ns_family(s, "double_limit_certificate");
    if (mu1 == mu2)
        throw std::invalid_argument("double_limit_certificate: mu1 and mu2 must differ");
    LimitCertificate cert;
    cert.mu1 = mu1;
    cert.mu2 = mu2;
    const FlowSolution a = path_limit(s, mu1);
    const FlowSolution b = path_limit(s, mu2);
    cert.report1 = verify_solution(a);
    cert.report2 = verify_solution(b);
    cert.distance = sup_norm(a.initial_velocity() - b.initial_velocity());
    if (s.family() == FlowFamily::BeltramiNS) {
        // the limit fields are scalar multiples of a common profile
        cert.lower_bound = std::abs(std::exp(-(s.lambda_sq() * mu1)) - std::exp(-(s.lambda_sq() * mu2))) *
                           sup_norm(s.initial_velocity());
    } else {
        VectorField diff;
        for (std::size_t i = 0; i < s.pipeline_terms().size(); ++i) {
            const double d = std::exp(-(s.pipeline_rates()[i] * mu1)) -
                             std::exp(-(s.pipeline_rates()[i] * mu2));
            diff = diff + d * s.pipeline_terms()[i];
        }
        cert.lower_bound = sup_norm(diff);
    }
    cert.distinct = cert.distance >
                    1e-12 * (sup_norm(a.initial_velocity()) + sup_norm(b.initial_velocity()));
    return cert;
}

/// One draw of the random-solution ensemble.
struct RandomSolutionDraw {
    double mu = 0.0;
    FlowSolution solution;
    VerificationReport report;
};

/// Path limits at `count` seeded uniform draws of mu in [0, mu_max].
/// PRNG: mt19937_64; each mu is mu_max * (top 53 bits) / 2^53, so replay
/// with the same seed is exact.
inline std::vector<RandomSolutionDraw> sample_random_solutions(const FlowSolution& s,
                                                               double mu_max, int count,
                                                               std::uint64_t seed) {
    detail::require_ns_family(s, "sample_random_solutions");
    if (!(mu_max > 0.0) || count < 1)
        throw std::invalid_argument("sample_random_solutions: need mu_max > 0 and count >= 1");
    std::mt19937_64 rng(seed);
    std::vector<double> draws(static_cast<std::size_t>(count));
    for (auto& mu : draws)
        mu = mu_max * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
    std::vector<RandomSolutionDraw> out;
    out.reserve(draws.size());
    for (const double mu : draws) {
        RandomSolutionDraw d{mu, path_limit(s, mu), {}};
        d.report = verify_solution(d.solution);
        out.push_back(std::move(d));
    }
    return out;
}

class SameSolutionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Two verified solutions of the same boundary-value problem at a certified
/// distance: the constructive non-uniqueness statement.
struct NonUniquenessCertificate {
    VerificationReport report_a;
    VerificationReport report_b;
    std::string boundary;
    double l2_distance = 0.0;
    double relative_distance = 0.0;  // distance / (||a|| + ||b||)
    double threshold = 0.0;

    bool certified() const {
        return report_a.overall() && report_b.overall() && relative_distance >= threshold;
    }
};

namespace detail {

/// RMS distance of two radial fields over the square [-R, R]^2 (midpoint
/// grid); the same quadrature is used for the norms, so ratios are
/// consistent.
inline void radial_l2(const RadialProfile& pa, const RadialProfile& pb, double& dist, double& na,
                      double& nb) {
    const double R = std::max(pa.R, pb.R);
    const int n = 256;
    double sd = 0.0, sa = 0.0, sb = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double x1 = -R + (2.0 * R) * (i + 0.5) / n;
            const double x2 = -R + (2.0 * R) * (j + 0.5) / n;
            const auto ua = radial_velocity(pa, x1, x2);
            const auto ub = radial_velocity(pb, x1, x2);
            sd += (ua[0] - ub[0]) * (ua[0] - ub[0]) + (ua[1] - ub[1]) * (ua[1] - ub[1]);
            sa += ua[0] * ua[0] + ua[1] * ua[1];
            sb += ub[0] * ub[0] + ub[1] * ub[1];
        }
    const double npts = static_cast<double>(n) * n;
    dist = std::sqrt(sd / npts);
    na = std::sqrt(sa / npts);
    nb = std::sqrt(sb / npts);
}

}  // namespace detail

inline NonUniquenessCertificate nonuniqueness_certificate(const FlowSolution& a,
                                                          const FlowSolution& b,
                                                          double threshold = 1e-6) {
    if (a.family() != b.family())
        throw std::invalid_argument("nonuniqueness_certificate: solutions must be of the same family");
    if (a.boundary() != b.boundary())
        throw std::invalid_argument("nonuniqueness_certificate: solutions must satisfy the same "
                                    "boundary-condition class");
    if (!a.is_static())
        throw std::invalid_argument("nonuniqueness_certificate: static families only");

    NonUniquenessCertificate cert;
    cert.boundary = boundary_name(a.boundary());
    cert.threshold = threshold;
    cert.report_a = verify_solution(a);
    cert.report_b = verify_solution(b);

    if (a.family() == FlowFamily::Radial2D) {
        double na = 0.0, nb = 0.0;
        detail::radial_l2(*a.radial(), *b.radial(), cert.l2_distance, na, nb);
        cert.relative_distance = cert.l2_distance / (na + nb);
    } else {
        cert.l2_distance = l2_norm(a.initial_velocity() - b.initial_velocity());
        cert.relative_distance =
            cert.l2_distance / (l2_norm(a.initial_velocity()) + l2_norm(b.initial_velocity()));
    }
    if (cert.relative_distance < threshold)
        throw SameSolutionError("nonuniqueness_certificate: fields coincide within the distance "
                                "threshold; not a distinct pair");
    return cert;
}

struct PrandtlRow {
    double nu = 0.0;
    double t = 0.0;
    double global_sup = 0.0;  // sup over the domain of |u_ns(t) - u_e|
    double strip_sup = 0.0;   // the same sup restricted to the boundary strip
};

struct PrandtlStudy {
    std::vector<PrandtlRow> rows;
    double strip_width = 0.0;
    double limit_sup = 0.0;  // sup |u_e| over the same domain samples
    bool converges = false;  // d(nu) decreases along the sequence
    bool no_layer = false;   // strip sup never exceeds the global sup
};

/// Vanishing-viscosity study at fixed t: for each nu the distance between
/// the viscous field and its inviscid limit, globally and within a strip of
/// the boundary.  The spatial profile of the difference is nu-independent
/// for these families, so the strip never amplifies: no Prandtl layer.
inline PrandtlStudy prandtl_study(const FlowSolution& s, double t_fixed,
                                  const std::vector<double>& nu_sequence,
                                  double strip_delta = -1.0, int resolution = 24) {
    detail::require_ns_family(s, "prandtl_study");
    if (!(t_fixed > 0.0))
        throw std::invalid_argument("prandtl_study: t_fixed must be positive");
    const bool box = s.boundary() == BoundaryKind::DirichletBox;
    const bool slab = s.boundary() == BoundaryKind::PipelineSlab;
    if (!box && !slab)
        throw std::invalid_argument("prandtl_study: the family must carry a boundary "
                                    "(dirichlet-box or pipeline-slab)");

    const double lo = box ? 0.0 : s.profile()->L1;
    const double hi = box ? std::numbers::pi : s.profile()->L2;
    PrandtlStudy study;
    study.strip_width = strip_delta > 0.0 ? strip_delta : 0.05 * (hi - lo);

    // sample points and their distance to the boundary of the domain
    std::vector<std::array<double, 3>> pts;
    std::vector<double> bdist;
    const int M = std::max(resolution, 8);
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j)
            for (int k = 0; k < M; ++k) {
                std::array<double, 3> x{};
                double d = 0.0;
                if (box) {
                    x = {std::numbers::pi * i / (M - 1), std::numbers::pi * j / (M - 1),
                         std::numbers::pi * k / (M - 1)};
                    d = hi;
                    for (const double c : x)
                        d = std::min({d, c - 0.0, std::numbers::pi - c});
                } else {
                    x = {2.0 * std::numbers::pi * i / M, 2.0 * std::numbers::pi * j / M,
                         lo + (hi - lo) * k / (M - 1)};
                    d = std::min(x[2] - lo, hi - x[2]);
                }
                pts.push_back(x);
                bdist.push_back(d);
            }

    // the vanishing-viscosity limit at fixed t is the initial static field
    const VectorField& u_e = s.initial_velocity();
    std::vector<std::array<double, 3>> limit_vals(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        limit_vals[i] = u_e.eval(pts[i]);
        study.limit_sup = std::max(study.limit_sup,
                                   std::hypot(limit_vals[i][0], limit_vals[i][1], limit_vals[i][2]));
    }

    for (const double nu : nu_sequence) {
        if (!(nu > 0.0))
            throw std::invalid_argument("prandtl_study: nu values must be positive");
        const VectorField u_nu = with_viscosity(s, nu).velocity(t_fixed);
        PrandtlRow row;
        row.nu = nu;
        row.t = t_fixed;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const auto v = u_nu.eval(pts[i]);
            const double diff = std::hypot(v[0] - limit_vals[i][0], v[1] - limit_vals[i][1],
                                           v[2] - limit_vals[i][2]);
            row.global_sup = std::max(row.global_sup, diff);
            if (bdist[i] <= study.strip_width)
                row.strip_sup = std::max(row.strip_sup, diff);
        }
        study.rows.push_back(row);
    }

    study.converges = true;
    for (std::size_t i = 1; i < study.rows.size(); ++i)
        if (study.rows[i].global_sup > study.rows[i - 1].global_sup)
            study.converges = false;
    if (!study.rows.empty() && study.rows.back().global_sup > study.rows.front().global_sup)
        study.converges = false;

    study.no_layer = true;
    for (const auto& row : study.rows)
        if (row.strip_sup > row.global_sup * (1.0 + 1e-12))
            study.no_layer = false;

    return study;
}

}  // namespace trigflow

#endif  // TRIGFLOW_LIMITS_HPP
