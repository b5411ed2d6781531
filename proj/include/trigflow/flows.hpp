// Closed-form solution families:
//
//   BeltramiEuler   u = lambda A(nabla) psi + (A(nabla) x nabla) psi,
//                   with -lap psi = lambda^2 psi; satisfies curl u = -lambda u
//                   and hence the static Euler equations.
//   BeltramiNS      the same field under the exponential time law
//                   e^{-nu lambda^2 t}.
//   PipelineEuler   u = (-d2 phi, d1 phi, 0) with phi = f(x1+x2, x3),
//                   horizontally periodic and confined to a slab.
//   PipelineNS      pipeline field with per-term heat decay.
//   Radial2D        u = (-d2 phi(r), d1 phi(r)) on a disc, evaluated
//                   analytically from a polynomial bump profile.
//
// Constructors check their eigenvalue/shape preconditions and return
// immutable FlowSolution values.

#ifndef TRIGFLOW_FLOWS_HPP
#define TRIGFLOW_FLOWS_HPP

#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "trigflow/eigenmodes.hpp"
#include "trigflow/polyalg.hpp"
#include "trigflow/spectral.hpp"

namespace trigflow {

enum class FlowFamily { BeltramiEuler, BeltramiNS, PipelineEuler, PipelineNS, Radial2D };
enum class BoundaryKind { Periodic, DirichletBox, PipelineSlab, Disc };

inline const char* family_name(FlowFamily f) {
    switch (f) {
        case FlowFamily::BeltramiEuler: return "beltrami-euler";
        case FlowFamily::BeltramiNS: return "beltrami-ns";
        case FlowFamily::PipelineEuler: return "pipeline-euler";
        case FlowFamily::PipelineNS: return "pipeline-ns";
        case FlowFamily::Radial2D: return "radial-2d";
    }
    return "unknown";
}

inline const char* boundary_name(BoundaryKind b) {
    switch (b) {
        case BoundaryKind::Periodic: return "periodic";
        case BoundaryKind::DirichletBox: return "dirichlet-box";
        case BoundaryKind::PipelineSlab: return "pipeline-slab";
        case BoundaryKind::Disc: return "disc";
    }
    return "unknown";
}

class EigenMismatch : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class NonGradientError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// phi(r) = amplitude (R^2 - r^2)^m inside the disc of radius R, zero
/// outside; m >= 3 keeps the first m-1 derivatives zero at r = R.
struct RadialProfile {
    double R = 1.0;
    int m = 3;
    double amplitude = 1.0;

    void validate() const {
        if (!(R > 0.0))
            throw std::invalid_argument("radial profile: R must be positive");
        if (m < 3)
            throw std::invalid_argument("radial profile: smoothness exponent m must be >= 3");
    }
};

namespace detail {
inline double ipow(double base, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i)
        r *= base;
    return r;
}
}  // namespace detail

/// u(x1,x2) = g(r) (x2, -x1) with g = 2 m amplitude (R^2 - r^2)^{m-1};
/// the polynomial form absorbs the removable singularity at the origin.
inline std::array<double, 2> radial_velocity(const RadialProfile& p, double x1, double x2) {
    const double s = p.R * p.R - (x1 * x1 + x2 * x2);
    if (s <= 0.0)
        return {0.0, 0.0};
    const double g = 2.0 * p.m * p.amplitude * detail::ipow(s, p.m - 1);
    return {g * x2, -g * x1};
}

/// Scalar vorticity lap phi = -4 a m s^{m-1} + 4 a m (m-1) r^2 s^{m-2}.
inline double radial_vorticity(const RadialProfile& p, double x1, double x2) {
    const double r2 = x1 * x1 + x2 * x2;
    const double s = p.R * p.R - r2;
    if (s <= 0.0)
        return 0.0;
    const double am = p.amplitude * p.m;
    return -4.0 * am * detail::ipow(s, p.m - 1) + 4.0 * am * (p.m - 1) * r2 * detail::ipow(s, p.m - 2);
}

/// Gradient of the vorticity, from d(lap phi)/d(r^2) * (2 x1, 2 x2).
inline std::array<double, 2> radial_vorticity_gradient(const RadialProfile& p, double x1, double x2) {
    const double r2 = x1 * x1 + x2 * x2;
    const double s = p.R * p.R - r2;
    if (s <= 0.0)
        return {0.0, 0.0};
    const double c = 4.0 * p.amplitude * p.m * (p.m - 1) *
                     (2.0 * detail::ipow(s, p.m - 2) - (p.m - 2) * r2 * detail::ipow(s, p.m - 3));
    return {c * 2.0 * x1, c * 2.0 * x2};
}

/// Pressure for the radial family: dP/dr = g(r)^2 r integrates to
/// P(r) = K (R^{2(2m-1)} - s^{2m-1}), K = 2 m^2 a^2 / (2m-1), reported with
/// zero mean over the disc.
struct RadialPressure {
    RadialProfile profile;

    double raw(double r) const {
        const double s = std::max(profile.R * profile.R - r * r, 0.0);
        const double K = 2.0 * profile.m * profile.m * profile.amplitude * profile.amplitude /
                         (2.0 * profile.m - 1.0);
        return K * (detail::ipow(profile.R * profile.R, 2 * profile.m - 1) -
                    detail::ipow(s, 2 * profile.m - 1));
    }

    double disc_mean() const {
        const double K = 2.0 * profile.m * profile.m * profile.amplitude * profile.amplitude /
                         (2.0 * profile.m - 1.0);
        return K * detail::ipow(profile.R * profile.R, 2 * profile.m - 1) *
               (1.0 - 1.0 / (2.0 * profile.m));
    }

    double value(double r) const { return raw(r) - disc_mean(); }

    double derivative(double r) const {
        const double s = std::max(profile.R * profile.R - r * r, 0.0);
        const double a = profile.amplitude;
        return 4.0 * profile.m * profile.m * a * a * detail::ipow(s, 2 * profile.m - 2) * r;
    }
};

inline RadialPressure recover_radial_pressure(const RadialProfile& p) {
    p.validate();
    return RadialPressure{p};
}

/// A tagged closed-form solution.  Instances are immutable; evaluation at
/// any time is analytic.
class FlowSolution {
  public:
    FlowFamily family() const { return family_; }
    BoundaryKind boundary() const { return boundary_; }
    bool is_static() const {
        return family_ == FlowFamily::BeltramiEuler || family_ == FlowFamily::PipelineEuler ||
               family_ == FlowFamily::Radial2D;
    }

    double lambda() const { return lambda_; }
    double lambda_sq() const { return lambda_sq_; }
    double nu() const { return nu_; }
    const std::optional<PolyVec>& symbol() const { return op_; }
    const std::optional<ScalarField>& psi() const { return psi_; }
    const std::optional<PipelineProfile>& profile() const { return profile_; }
    const std::optional<ScalarField>& pipeline_phi() const { return pipeline_phi_; }
    const std::optional<RadialProfile>& radial() const { return radial_; }

    const VectorField& initial_velocity() const {
        require_spectral();
        return u0_;
    }

    /// e^{-nu lambda^2 t}.  The exponent is evaluated as lambda_sq * (nu * t)
    /// so the field depends on nu and t only through their product: along a
    /// path t nu = mu the coefficients are literally constant.
    double decay_factor(double t) const { return std::exp(-(lambda_sq_ * (nu_ * t))); }

    /// The closed-form field at time t.  Static families return u0 for any t.
    VectorField velocity(double t) const {
        require_spectral();
        switch (family_) {
            case FlowFamily::BeltramiEuler:
            case FlowFamily::PipelineEuler:
                return u0_;
            case FlowFamily::BeltramiNS:
                return decay_factor(t) * u0_;
            case FlowFamily::PipelineNS: {
                VectorField u;
                for (std::size_t i = 0; i < terms_.size(); ++i)
                    u = u + std::exp(-(rates_[i] * (nu_ * t))) * terms_[i];
                return u;
            }
            default:
                break;
        }
        throw std::logic_error("unreachable");
    }

    /// Analytic time derivative of the field at time t.
    VectorField velocity_dt(double t) const {
        require_spectral();
        switch (family_) {
            case FlowFamily::BeltramiEuler:
            case FlowFamily::PipelineEuler:
                return {};
            case FlowFamily::BeltramiNS:
                return (-(nu_ * lambda_sq_) * decay_factor(t)) * u0_;
            case FlowFamily::PipelineNS: {
                VectorField du;
                for (std::size_t i = 0; i < terms_.size(); ++i)
                    du = du + (-(nu_ * rates_[i]) * std::exp(-(rates_[i] * (nu_ * t)))) * terms_[i];
                return du;
            }
            default:
                break;
        }
        throw std::logic_error("unreachable");
    }

    const std::vector<double>& pipeline_rates() const { return rates_; }
    const std::vector<VectorField>& pipeline_terms() const { return terms_; }

    friend FlowSolution make_beltrami_euler(const PolyVec&, double, const ScalarField&, BoundaryKind);
    friend FlowSolution make_beltrami_ns(const PolyVec&, double, const ScalarField&, double, BoundaryKind);
    friend FlowSolution make_pipeline_euler(const PipelineProfile&);
    friend FlowSolution make_pipeline_euler(const ScalarField&);
    friend FlowSolution make_pipeline_ns(const PipelineProfile&, double);
    friend FlowSolution make_radial_2d(const RadialProfile&);

  private:
    FlowSolution() = default;

    void require_spectral() const {
        if (family_ == FlowFamily::Radial2D)
            throw std::domain_error("Radial2D solutions have no torus representation; "
                                    "use the radial_* evaluators");
    }

    FlowFamily family_ = FlowFamily::BeltramiEuler;
    BoundaryKind boundary_ = BoundaryKind::Periodic;
    std::optional<PolyVec> op_;
    double lambda_ = 0.0;
    double lambda_sq_ = 0.0;
    double nu_ = 0.0;
    std::optional<ScalarField> psi_;
    std::optional<PipelineProfile> profile_;
    std::optional<ScalarField> pipeline_phi_;  // torus phi when built from a raw field
    std::optional<RadialProfile> radial_;
    std::vector<VectorField> terms_;  // pipeline per-term velocity contributions
    std::vector<double> rates_;      // matching heat decay rates
    VectorField u0_;
};

namespace detail {

/// The shared integer |k|^2 of all modes; EigenMismatch if the support
/// straddles shells.
inline long shell_of(const ScalarField& psi) {
    long shell = -1;
    for (const auto& [k, c] : psi.modes()) {
        const long n = norm_sq(k);
        if (shell < 0)
            shell = n;
        else if (n != shell)
            throw EigenMismatch("psi is not an eigenfunction: modes on |k|^2 = " +
                                std::to_string(shell) + " and " + std::to_string(n));
    }
    return shell;  // -1 for the zero field
}

/// Odd symmetry in every axis, the coefficient form of vanishing on the
/// faces of the box (0,pi)^3.
inline void require_odd_symmetry(const ScalarField& psi) {
    const double tol = 1e-13 * psi.max_abs_coeff();
    for (int axis = 0; axis < 3; ++axis)
        for (const auto& [k, c] : psi.modes()) {
            Wavevector flipped = k;
            flipped[static_cast<std::size_t>(axis)] = -flipped[static_cast<std::size_t>(axis)];
            if (std::abs(psi.coefficient(flipped) + c) > tol)
                throw EigenMismatch("psi is not odd-symmetric; it cannot vanish on the box boundary");
        }
}

inline void check_beltrami_inputs(double lambda, const ScalarField& psi, long shell) {
    if (shell >= 0) {
        if (std::abs(lambda * lambda - static_cast<double>(shell)) >
            1e-10 * std::max(1.0, static_cast<double>(shell)))
            throw EigenMismatch("lambda^2 = " + std::to_string(lambda * lambda) +
                                " does not match the eigenvalue " + std::to_string(shell) +
                                " of psi");
    }
    (void)psi;
}

inline std::vector<std::pair<VectorField, double>> pipeline_term_fields(const PipelineProfile& p) {
    p.validate();
    std::vector<std::pair<VectorField, double>> out;
    for (const auto& term : p.terms) {
        const double w = std::numbers::pi * term.k / (p.L2 - p.L1);
        const double m_real = w;  // torus realizability: the vertical frequency must be integral
        const int m = static_cast<int>(std::lround(m_real));
        if (m < 1 || std::abs(m_real - m) > 1e-9)
            throw std::invalid_argument(
                "pipeline profile cannot be realized on the torus: pi*k/(L2-L1) = " +
                std::to_string(m_real) + " is not a positive integer");
        // horizontal factor alpha sin(j(x1+x2)) + beta cos(j(x1+x2))
        ScalarField horiz = term.alpha * ScalarField::sine({term.j, term.j, 0}) +
                            term.beta * ScalarField::cosine({term.j, term.j, 0});
        // vertical factor sin(m (x3 - L1)) expanded through the angle sum
        ScalarField vert = std::cos(m * p.L1) * ScalarField::sine({0, 0, m}) -
                           std::sin(m * p.L1) * ScalarField::cosine({0, 0, m});
        const ScalarField phi_term = product(horiz, vert);
        VectorField u_term((-1.0) * derivative(phi_term, 1), derivative(phi_term, 0), ScalarField());
        out.emplace_back(std::move(u_term), p.decay_rate(term));
    }
    return out;
}

}  // namespace detail

/// Static Beltrami-Euler solution.  phi = lambda psi is imposed internally;
/// the returned field satisfies curl u = -lambda u in coefficient space.
inline FlowSolution make_beltrami_euler(const PolyVec& A, double lambda, const ScalarField& psi,
                                        BoundaryKind boundary = BoundaryKind::Periodic) {
    if (boundary != BoundaryKind::Periodic && boundary != BoundaryKind::DirichletBox)
        throw std::invalid_argument("Beltrami families support periodic or dirichlet-box boundaries");
    const long shell = detail::shell_of(psi);
    detail::check_beltrami_inputs(lambda, psi, shell);
    if (boundary == BoundaryKind::DirichletBox)
        detail::require_odd_symmetry(psi);
    FlowSolution s;
    s.family_ = FlowFamily::BeltramiEuler;
    s.boundary_ = boundary;
    s.op_ = A;
    s.lambda_ = lambda;
    s.lambda_sq_ = shell >= 0 ? static_cast<double>(shell) : lambda * lambda;
    s.psi_ = psi;
    s.u0_ = lambda * apply_operator(A, psi) + cross_nabla_operator(A, psi);
    return s;
}

/// Navier-Stokes evolution of the Beltrami field: time law e^{-nu lambda^2 t}.
inline FlowSolution make_beltrami_ns(const PolyVec& A, double lambda, const ScalarField& psi,
                                     double nu, BoundaryKind boundary = BoundaryKind::Periodic) {
    if (!(nu > 0.0))
        throw std::invalid_argument("make_beltrami_ns: nu must be positive");
    FlowSolution s = make_beltrami_euler(A, lambda, psi, boundary);
    s.family_ = FlowFamily::BeltramiNS;
    s.nu_ = nu;
    return s;
}

/// Static pipeline Euler flow from the t=0 profile.
inline FlowSolution make_pipeline_euler(const PipelineProfile& profile) {
    FlowSolution s;
    s.family_ = FlowFamily::PipelineEuler;
    s.boundary_ = BoundaryKind::PipelineSlab;
    s.profile_ = profile;
    for (auto& [field, rate] : detail::pipeline_term_fields(profile)) {
        s.u0_ = s.u0_ + field;
        s.terms_.push_back(std::move(field));
        s.rates_.push_back(rate);
    }
    return s;
}

/// Static pipeline Euler flow from an arbitrary 2pi-periodic phi(xi, eta)
/// given as a torus field phi(x) = f(x1+x2, x3); every mode must satisfy
/// k1 == k2.
inline FlowSolution make_pipeline_euler(const ScalarField& phi) {
    for (const auto& [k, c] : phi.modes())
        if (k[0] != k[1])
            throw std::invalid_argument("pipeline phi must be a function of (x1 + x2, x3): "
                                        "every mode needs k1 == k2");
    FlowSolution s;
    s.family_ = FlowFamily::PipelineEuler;
    s.boundary_ = BoundaryKind::PipelineSlab;
    s.pipeline_phi_ = phi;
    s.u0_ = VectorField((-1.0) * derivative(phi, 1), derivative(phi, 0), ScalarField());
    s.terms_.push_back(s.u0_);
    s.rates_.push_back(0.0);
    return s;
}

/// Pipeline Navier-Stokes flow: each profile term decays with its heat rate.
inline FlowSolution make_pipeline_ns(const PipelineProfile& profile, double nu) {
    if (nu < 0.0)
        throw std::invalid_argument("make_pipeline_ns: nu must be >= 0");
    FlowSolution s = make_pipeline_euler(profile);
    s.family_ = FlowFamily::PipelineNS;
    s.nu_ = nu;
    return s;
}

/// Two-dimensional radial flow on the disc; evaluation is analytic.
inline FlowSolution make_radial_2d(const RadialProfile& profile) {
    profile.validate();
    FlowSolution s;
    s.family_ = FlowFamily::Radial2D;
    s.boundary_ = BoundaryKind::Disc;
    s.radial_ = profile;
    return s;
}

/// Pressure field of a spectral solution at time t, zero mean.
///
/// For Beltrami families (u x omega = 0) the momentum equation integrates in
/// closed form to P = -|u|^2/2; for pipeline families P is the spectral
/// antiderivative of -(u.grad)u, which must be curl-free.
inline ScalarField recover_pressure(const FlowSolution& s, double t) {
    const VectorField u = s.velocity(t);
    if (s.family() == FlowFamily::BeltramiEuler || s.family() == FlowFamily::BeltramiNS) {
        ScalarField half_speed;
        for (int j = 0; j < 3; ++j)
            half_speed = half_speed + product(u.component(j), u.component(j));
        ScalarField::ModeMap modes = half_speed.modes();
        modes.erase({0, 0, 0});  // zero spatial mean
        ScalarField p = ScalarField::from_modes(std::move(modes));
        return (-0.5) * p;
    }

    const VectorField force = (-1.0) * advect(u, u);
    const double scale = std::max(l2_norm(force), 1e-300);
    const VectorField rot = curl(force);
    if (l2_norm(rot) > 1e-11 * scale * std::max(1, force.max_wavenumber()))
        throw NonGradientError("(u.grad)u is not a gradient field; cannot recover pressure");

    // mean force must vanish for grad P to balance it
    ScalarField::ModeMap pressure;
    for (int j = 0; j < 3; ++j) {
        const Complex mean = force.component(j).coefficient({0, 0, 0});
        if (std::abs(mean) > 1e-12 * scale)
            throw NonGradientError("(u.grad)u has a nonzero mean component");
    }
    // integrate: P^(k) = F_j^(k) / (i k_j) using the largest |k_j|
    std::set<Wavevector> support;
    for (int j = 0; j < 3; ++j)
        for (const auto& [k, c] : force.component(j).modes())
            support.insert(k);
    for (const Wavevector& k : support) {
        if (k == Wavevector{0, 0, 0})
            continue;
        int j = 0;
        for (int a = 1; a < 3; ++a)
            if (std::abs(k[static_cast<std::size_t>(a)]) > std::abs(k[static_cast<std::size_t>(j)]))
                j = a;
        const Complex fj = force.component(j).coefficient(k);
        pressure[k] = fj / Complex(0.0, static_cast<double>(k[static_cast<std::size_t>(j)]));
    }
    return ScalarField::from_modes(std::move(pressure));
}

struct MembershipCandidate {
    PolyVec symbol;
    long lambda_sq = 0;
};

/// Constructive membership certificate: when `member` is true the witness
/// (symbol index, lambda, psi) reconstructs u within `relative_error`.
struct MembershipCertificate {
    bool member = false;
    std::size_t candidate_index = 0;
    double lambda = 0.0;
    ScalarField psi;
    double relative_error = 0.0;
};

/// Desk-scale membership check against a finite candidate list: recovers psi
/// mode-by-mode by least squares from u^(k) = M(k) psi^(k),
/// M(k) = lambda A(ik) + A(ik) x ik, then demands reconstruction to `tol`.
inline MembershipCertificate membership_in_B(const VectorField& u,
                                             const std::vector<MembershipCandidate>& candidates,
                                             double tol = 1e-12) {
    MembershipCertificate cert;
    if (u.is_zero()) {
        cert.member = true;  // psi = 0 reconstructs the zero field
        return cert;
    }

    // first filter: the field must be divergence-free
    const ScalarField div = divergence(u);
    const double div_scale = u.max_abs_coeff() * std::max(1, u.max_wavenumber());
    if (div.max_abs_coeff() > 1e-12 * div_scale)
        return cert;

    const double u_norm = l2_norm(u);
    for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
        const auto& cand = candidates[idx];
        bool on_shell = true;
        for (int j = 0; j < 3 && on_shell; ++j)
            for (const auto& [k, c] : u.component(j).modes())
                if (norm_sq(k) != cand.lambda_sq) {
                    on_shell = false;
                    break;
                }
        if (!on_shell)
            continue;

        for (const double lambda : {std::sqrt(static_cast<double>(cand.lambda_sq)),
                                    -std::sqrt(static_cast<double>(cand.lambda_sq))}) {
            ScalarField::ModeMap psi_modes;
            bool feasible = true;
            for (const auto& [k, c0] : u.component(0).modes()) {
                (void)c0;
                const auto a = eval_symbol(cand.symbol, k);
                std::array<Complex, 3> m;
                for (int j = 0; j < 3; ++j) {
                    const int p = (j + 1) % 3, q = (j + 2) % 3;
                    const Complex ikp(0.0, static_cast<double>(k[static_cast<std::size_t>(p)]));
                    const Complex ikq(0.0, static_cast<double>(k[static_cast<std::size_t>(q)]));
                    m[static_cast<std::size_t>(j)] =
                        lambda * a[static_cast<std::size_t>(j)] +
                        (a[static_cast<std::size_t>(p)] * ikq - a[static_cast<std::size_t>(q)] * ikp);
                }
                double den = 0.0;
                Complex num(0.0, 0.0);
                Complex umag(0.0, 0.0);
                for (int j = 0; j < 3; ++j) {
                    const Complex uj = u.component(j).coefficient(k);
                    num += std::conj(m[static_cast<std::size_t>(j)]) * uj;
                    den += std::norm(m[static_cast<std::size_t>(j)]);
                    umag += std::conj(uj) * uj;
                }
                if (den < 1e-28) {
                    if (std::abs(umag) > tol * u_norm) {
                        feasible = false;
                        break;
                    }
                    continue;
                }
                psi_modes[k] = num / den;
            }
            // modes present only in the other components
            for (int j = 1; j < 3 && feasible; ++j)
                for (const auto& [k, c] : u.component(j).modes())
                    if (!psi_modes.count(k) && std::abs(c) > tol * u_norm) {
                        // re-derive for this mode as well
                        const auto a = eval_symbol(cand.symbol, k);
                        std::array<Complex, 3> m;
                        for (int jj = 0; jj < 3; ++jj) {
                            const int p = (jj + 1) % 3, q = (jj + 2) % 3;
                            const Complex ikp(0.0, static_cast<double>(k[static_cast<std::size_t>(p)]));
                            const Complex ikq(0.0, static_cast<double>(k[static_cast<std::size_t>(q)]));
                            m[static_cast<std::size_t>(jj)] =
                                lambda * a[static_cast<std::size_t>(jj)] +
                                (a[static_cast<std::size_t>(p)] * ikq - a[static_cast<std::size_t>(q)] * ikp);
                        }
                        double den = 0.0;
                        Complex num(0.0, 0.0);
                        for (int jj = 0; jj < 3; ++jj) {
                            num += std::conj(m[static_cast<std::size_t>(jj)]) * u.component(jj).coefficient(k);
                            den += std::norm(m[static_cast<std::size_t>(jj)]);
                        }
                        if (den < 1e-28) {
                            feasible = false;
                            break;
                        }
                        psi_modes[k] = num / den;
                    }
            if (!feasible)
                continue;

            const ScalarField psi = ScalarField::from_modes(std::move(psi_modes));
            const VectorField rebuilt =
                lambda * apply_operator(cand.symbol, psi) + cross_nabla_operator(cand.symbol, psi);
            const double err = l2_norm(u - rebuilt) / u_norm;
            if (err <= tol) {
                cert.member = true;
                cert.candidate_index = idx;
                cert.lambda = lambda;
                cert.psi = psi;
                cert.relative_error = err;
                return cert;
            }
        }
    }
    return cert;
}

}  // namespace trigflow

#endif  // TRIGFLOW_FLOWS_HPP
