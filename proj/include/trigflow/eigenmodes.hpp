// Helmholtz eigenfunctions on the torus and on the box, plus the slab heat
// modes that drive the pipeline flows.
//
// Periodic eigenfunctions live on integer lattice shells |k|^2 = lambda^2 and
// satisfy -lap psi = lambda^2 psi exactly in coefficient space.  Dirichlet
// eigenfunctions on (0,pi)^3 are sine products, realized as their odd
// 2pi-periodic extensions so the torus calculus applies unchanged.

#ifndef TRIGFLOW_EIGENMODES_HPP
#define TRIGFLOW_EIGENMODES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "trigflow/spectral.hpp"

namespace trigflow {

/// All integer lattice points on the sphere |k|^2 = lambda_sq.  The set is
/// closed under negation; it may be empty (sums-of-three-squares gaps).
struct EigenShell {
    long lambda_sq = 0;
    std::vector<Wavevector> points;

    bool contains(const Wavevector& k) const {
        return std::find(points.begin(), points.end(), k) != points.end();
    }
};

/// Brute-force enumeration over the cube |k_j| <= ceil(sqrt(lambda_sq)).
inline EigenShell enumerate_shell(long lambda_sq) {
    if (lambda_sq < 0)
        throw std::invalid_argument("enumerate_shell: lambda_sq must be non-negative");
    EigenShell shell;
    shell.lambda_sq = lambda_sq;
    const int r = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(lambda_sq))));
    for (int a = -r; a <= r; ++a)
        for (int b = -r; b <= r; ++b)
            for (int c = -r; c <= r; ++c)
                if (static_cast<long>(a) * a + static_cast<long>(b) * b + static_cast<long>(c) * c == lambda_sq)
                    shell.points.push_back({a, b, c});
    return shell;
}

/// Builds an eigenfunction of -lap with eigenvalue lambda_sq from
/// coefficients supported on the shell.  Off-shell support or broken
/// Hermitian symmetry is rejected.
inline ScalarField periodic_eigenfunction(const EigenShell& shell,
                                          const std::map<Wavevector, Complex>& coeffs) {
    for (const auto& [k, c] : coeffs) {
        if (norm_sq(k) != shell.lambda_sq)
            throw std::invalid_argument("periodic_eigenfunction: coefficient off the shell");
        const auto mirror = coeffs.find(negate(k));
        if (mirror == coeffs.end() || std::abs(mirror->second - std::conj(c)) >
                                          1e-14 * std::max(1.0, std::abs(c)))
            throw std::invalid_argument("periodic_eigenfunction: coefficients are not Hermitian-symmetric");
    }
    return ScalarField::from_modes({coeffs.begin(), coeffs.end()});
}

/// Seeded Hermitian coefficients on a shell.  PRNG: mt19937_64, each double
/// drawn from the top 53 bits mapped to [-1,1); the representative of each
/// +/-k pair is drawn, the mirror is its conjugate.
inline std::map<Wavevector, Complex> random_shell_coefficients(const EigenShell& shell,
                                                               std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto draw = [&rng]() {
        return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
    };
    std::map<Wavevector, Complex> coeffs;
    for (const auto& k : shell.points) {
        if (negate(k) < k)
            continue;
        if (k == negate(k)) {
            coeffs[k] = Complex(draw(), 0.0);
        } else {
            const Complex c(draw(), draw());
            coeffs[k] = c;
            coeffs[negate(k)] = std::conj(c);
        }
    }
    return coeffs;
}

/// A Dirichlet mode on the box (0,pi)^3: all k_j >= 1, eigenvalue |k|^2.
struct DirichletMode {
    Wavevector k{1, 1, 1};

    long lambda_sq() const {
        return static_cast<long>(k[0]) * k[0] + static_cast<long>(k[1]) * k[1] +
               static_cast<long>(k[2]) * k[2];
    }
};

/// sin(k1 x1) sin(k2 x2) sin(k3 x3) as a torus field (the odd 2pi-periodic
/// extension); vanishes on all six faces of the box.
inline ScalarField dirichlet_eigenfunction(const DirichletMode& mode) {
    for (int j = 0; j < 3; ++j)
        if (mode.k[static_cast<std::size_t>(j)] < 1)
            throw std::invalid_argument("dirichlet_eigenfunction: all k_j must be >= 1 "
                                        "(sin(0 x) is identically zero)");
    const ScalarField s1 = ScalarField::sine({mode.k[0], 0, 0});
    const ScalarField s2 = ScalarField::sine({0, mode.k[1], 0});
    const ScalarField s3 = ScalarField::sine({0, 0, mode.k[2]});
    return product(product(s1, s2), s3);
}

/// Initial slab profile phi0(xi,eta) = sum over terms of
/// (alpha sin(j xi) + beta cos(j xi)) sin(pi k (eta - L1)/(L2 - L1)).
struct PipelineProfile {
    struct Term {
        int j = 1;   // horizontal frequency, >= 1
        int k = 1;   // vertical mode index, >= 1
        double alpha = 0.0;
        double beta = 0.0;
    };

    double L1 = 0.0;
    double L2 = std::numbers::pi;
    std::vector<Term> terms;

    void validate() const {
        if (!(L1 < L2))
            throw std::invalid_argument("pipeline profile: L1 < L2 required");
        if (terms.empty())
            throw std::invalid_argument("pipeline profile: term list must be nonempty");
        for (const auto& t : terms)
            if (t.j < 1 || t.k < 1)
                throw std::invalid_argument("pipeline profile: term indices must be >= 1");
    }

    /// Heat decay rate 2 j^2 + pi^2 k^2 / (L2 - L1)^2 of a term.
    double decay_rate(const Term& t) const {
        const double w = std::numbers::pi * t.k / (L2 - L1);
        return 2.0 * t.j * t.j + w * w;
    }
};

/// Closed-form solution of phi_t = nu (2 d_xi^2 + d_eta^2) phi with the
/// profile as initial data; evaluable anywhere together with the
/// derivatives entering the heat residual.
class PipelineHeatMode {
  public:
    PipelineHeatMode(PipelineProfile profile, double nu, double t)
        : profile_(std::move(profile)), nu_(nu), t_(t) {
        profile_.validate();
        if (nu < 0.0)
            throw std::invalid_argument("pipeline heat mode: nu must be >= 0");
        if (t < 0.0)
            throw std::invalid_argument("pipeline heat mode: t must be >= 0");
    }

    double nu() const { return nu_; }
    double time() const { return t_; }
    const PipelineProfile& profile() const { return profile_; }

    struct Evaluation {
        double value = 0.0;
        double dt = 0.0;        // analytic time derivative (decay exponents)
        double dxi2 = 0.0;      // second xi derivative
        double deta2 = 0.0;     // second eta derivative
    };

    Evaluation evaluate(double xi, double eta) const {
        Evaluation e;
        for (const auto& term : profile_.terms) {
            const double rate = profile_.decay_rate(term);
            const double decay = std::exp(-t_ * nu_ * rate);
            const double w = std::numbers::pi * term.k / (profile_.L2 - profile_.L1);
            const double horiz = term.alpha * std::sin(term.j * xi) + term.beta * std::cos(term.j * xi);
            const double vert = std::sin(w * (eta - profile_.L1));
            const double v = decay * horiz * vert;
            e.value += v;
            e.dt += -nu_ * rate * v;
            e.dxi2 += -static_cast<double>(term.j) * term.j * v;
            e.deta2 += -w * w * v;
        }
        return e;
    }

    double operator()(double xi, double eta) const { return evaluate(xi, eta).value; }

    /// Residual of the slab heat equation at a point; zero analytically.
    double heat_residual(double xi, double eta) const {
        const Evaluation e = evaluate(xi, eta);
        return e.dt - nu_ * (2.0 * e.dxi2 + e.deta2);
    }

  private:
    PipelineProfile profile_;
    double nu_;
    double t_;
};

inline PipelineHeatMode pipeline_heat_mode(const PipelineProfile& profile, double nu, double t) {
    return PipelineHeatMode(profile, nu, t);
}

}  // namespace trigflow

#endif  // TRIGFLOW_EIGENMODES_HPP
