// Exact calculus of trigonometric polynomials on the 2pi-periodic torus.
//
// Fields are sparse maps from integer wavevectors to complex coefficients
// with Hermitian symmetry c_{-k} = conj(c_k), so every field is real-valued.
// Differential operators act as Fourier multipliers, products are exact
// coefficient convolutions (no grid, no aliasing), and grid sampling is only
// used for sup norms and export.

#ifndef TRIGFLOW_SPECTRAL_HPP
#define TRIGFLOW_SPECTRAL_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "trigflow/polyalg.hpp"

namespace trigflow {

using Complex = std::complex<double>;

/// Modes with magnitude below drop_factor * (scale of the operands) are
/// removed after each arithmetic operation; the scale is the max coefficient
/// magnitude for linear combinations and the product of the two maxima for
/// convolutions, so canonicalization commutes with rescaling the inputs.
inline constexpr double kCoeffDropFactor = 1e-14;

inline Wavevector negate(const Wavevector& k) { return {-k[0], -k[1], -k[2]}; }

inline int norm_sq(const Wavevector& k) { return k[0] * k[0] + k[1] * k[1] + k[2] * k[2]; }

/// Real-valued trigonometric polynomial on the torus [0,2pi)^3.
class ScalarField {
  public:
    using ModeMap = std::map<Wavevector, Complex>;

    ScalarField() = default;

    /// Builds a field from raw coefficients.  Hermitian symmetry is enforced
    /// from the lexicographic representative of each +/-k pair; the zero mode
    /// keeps only its real part.
    static ScalarField from_modes(ModeMap m) {
        ScalarField f;
        f.modes_ = std::move(m);
        f.hermitize();
        f.drop_below(kCoeffDropFactor * f.max_abs_coeff());
        return f;
    }

    static ScalarField zero() { return {}; }

    static ScalarField constant(double c) {
        ScalarField f;
        if (c != 0.0)
            f.modes_[{0, 0, 0}] = Complex(c, 0.0);
        return f;
    }

    /// sin(k.x): c_k = -i/2, c_{-k} = i/2.
    static ScalarField sine(const Wavevector& k) {
        ScalarField f;
        f.modes_[k] = Complex(0.0, -0.5);
        f.modes_[negate(k)] = Complex(0.0, 0.5);
        return f;
    }

    /// cos(k.x): c_{+/-k} = 1/2.
    static ScalarField cosine(const Wavevector& k) {
        ScalarField f;
        f.modes_[k] = Complex(0.5, 0.0);
        f.modes_[negate(k)] = Complex(0.5, 0.0);
        return f;
    }

    const ModeMap& modes() const { return modes_; }
    bool is_zero() const { return modes_.empty(); }
    std::size_t mode_count() const { return modes_.size(); }

    Complex coefficient(const Wavevector& k) const {
        const auto it = modes_.find(k);
        return it == modes_.end() ? Complex(0.0, 0.0) : it->second;
    }

    double max_abs_coeff() const {
        double m = 0.0;
        for (const auto& [k, c] : modes_)
            m = std::max(m, std::abs(c));
        return m;
    }

    /// Largest |k_j| over all stored modes.
    int max_wavenumber() const {
        int m = 0;
        for (const auto& [k, c] : modes_)
            m = std::max({m, std::abs(k[0]), std::abs(k[1]), std::abs(k[2])});
        return m;
    }

    ScalarField operator+(const ScalarField& o) const {
        ScalarField r = *this;
        for (const auto& [k, c] : o.modes_) {
            auto [it, inserted] = r.modes_.emplace(k, c);
            if (!inserted)
                it->second += c;
        }
        r.drop_below(kCoeffDropFactor * std::max(max_abs_coeff(), o.max_abs_coeff()));
        return r;
    }

    ScalarField operator-(const ScalarField& o) const { return *this + (-1.0) * o; }

    friend ScalarField operator*(double s, const ScalarField& f) {
        ScalarField r;
        if (s == 0.0)
            return r;
        for (const auto& [k, c] : f.modes_)
            r.modes_[k] = s * c;
        return r;
    }

    /// Applies a multiplier m(k); m must satisfy m(-k) = conj(m(k)) so the
    /// result stays real.  Exact zeros are erased.
    template <class Multiplier>
    ScalarField apply_multiplier(Multiplier&& m) const {
        ScalarField r;
        for (const auto& [k, c] : modes_) {
            const Complex v = m(k) * c;
            if (v != Complex(0.0, 0.0))
                r.modes_[k] = v;
        }
        return r;
    }

    /// Pointwise value; Hermitian pairing makes the imaginary parts cancel
    /// exactly, so only the real part is returned.
    double eval(const std::array<double, 3>& x) const {
        Complex acc(0.0, 0.0);
        for (const auto& [k, c] : modes_) {
            const double phase = k[0] * x[0] + k[1] * x[1] + k[2] * x[2];
            acc += c * Complex(std::cos(phase), std::sin(phase));
        }
        return acc.real();
    }

    bool operator==(const ScalarField& o) const { return modes_ == o.modes_; }

  private:
    void hermitize() {
        ModeMap fixed;
        for (const auto& [k, c] : modes_) {
            const Wavevector nk = negate(k);
            if (k == nk) {
                if (c.real() != 0.0)
                    fixed[k] = Complex(c.real(), 0.0);
            } else if (k < nk || modes_.find(nk) == modes_.end()) {
                // k is the representative (or its mirror is missing)
                fixed[k] = c;
                fixed[nk] = std::conj(c);
            }
        }
        modes_ = std::move(fixed);
    }

    void drop_below(double threshold) {
        for (auto it = modes_.begin(); it != modes_.end();) {
            if (std::abs(it->second) < threshold || it->second == Complex(0.0, 0.0))
                it = modes_.erase(it);
            else
                ++it;
        }
    }

    friend ScalarField product(const ScalarField&, const ScalarField&);

    ModeMap modes_;
};

/// d/dx_axis as the multiplier i*k_axis, axis in {0,1,2}.  Exact.
inline ScalarField derivative(const ScalarField& f, int axis) {
    if (axis < 0 || axis > 2)
        throw std::invalid_argument("derivative: axis must be 0, 1 or 2");
    return f.apply_multiplier(
        [axis](const Wavevector& k) { return Complex(0.0, static_cast<double>(k[static_cast<std::size_t>(axis)])); });
}

/// Laplacian: multiplies c_k by -|k|^2.
inline ScalarField laplacian(const ScalarField& f) {
    return f.apply_multiplier(
        [](const Wavevector& k) { return Complex(static_cast<double>(-norm_sq(k)), 0.0); });
}

/// Exact coefficient convolution.  The support of the result is the
/// Minkowski sum of the supports; Hermitian symmetry is restored from the
/// representative of each pair, since the two summation orders differ.
inline ScalarField product(const ScalarField& f, const ScalarField& g) {
    ScalarField::ModeMap acc;
    for (const auto& [ka, ca] : f.modes())
        for (const auto& [kb, cb] : g.modes()) {
            const Wavevector k{ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]};
            auto [it, inserted] = acc.emplace(k, ca * cb);
            if (!inserted)
                it->second += ca * cb;
        }
    ScalarField r;
    r.modes_ = std::move(acc);
    r.hermitize();
    r.drop_below(kCoeffDropFactor * f.max_abs_coeff() * g.max_abs_coeff());
    return r;
}

/// Mean-square norm over the torus (Parseval): ||sin x1|| = 1/sqrt(2).
inline double l2_norm(const ScalarField& f) {
    double s = 0.0;
    for (const auto& [k, c] : f.modes())
        s += std::norm(c);
    return std::sqrt(s);
}

/// Vector-valued trigonometric polynomial; components are ScalarFields.
class VectorField {
  public:
    VectorField() = default;
    VectorField(ScalarField c0, ScalarField c1, ScalarField c2)
        : comps_{std::move(c0), std::move(c1), std::move(c2)} {}

    const ScalarField& component(int j) const { return comps_.at(static_cast<std::size_t>(j)); }
    bool is_zero() const { return comps_[0].is_zero() && comps_[1].is_zero() && comps_[2].is_zero(); }

    int max_wavenumber() const {
        return std::max({comps_[0].max_wavenumber(), comps_[1].max_wavenumber(), comps_[2].max_wavenumber()});
    }

    double max_abs_coeff() const {
        return std::max({comps_[0].max_abs_coeff(), comps_[1].max_abs_coeff(), comps_[2].max_abs_coeff()});
    }

    std::array<double, 3> eval(const std::array<double, 3>& x) const {
        return {comps_[0].eval(x), comps_[1].eval(x), comps_[2].eval(x)};
    }

    VectorField operator+(const VectorField& o) const {
        return {comps_[0] + o.comps_[0], comps_[1] + o.comps_[1], comps_[2] + o.comps_[2]};
    }
    VectorField operator-(const VectorField& o) const {
        return {comps_[0] - o.comps_[0], comps_[1] - o.comps_[1], comps_[2] - o.comps_[2]};
    }
    friend VectorField operator*(double s, const VectorField& u) {
        return {s * u.comps_[0], s * u.comps_[1], s * u.comps_[2]};
    }

    bool operator==(const VectorField& o) const { return comps_ == o.comps_; }

  private:
    std::array<ScalarField, 3> comps_;
};

inline double l2_norm(const VectorField& u) {
    double s = 0.0;
    for (int j = 0; j < 3; ++j)
        for (const auto& [k, c] : u.component(j).modes())
            s += std::norm(c);
    return std::sqrt(s);
}

/// Applies a certified symbol: component j at mode k is p_j(ik) c_k.
/// Divergence-free by the orthogonality identity.
inline VectorField apply_operator(const PolyVec& A, const ScalarField& f) {
    std::array<ScalarField, 3> out;
    for (int j = 0; j < 3; ++j) {
        const Polynomial& p = A.component(j);
        out[static_cast<std::size_t>(j)] = f.apply_multiplier(
            [&p](const Wavevector& k) { return p.eval_at_ik(k).to_complex(); });
    }
    return {std::move(out[0]), std::move(out[1]), std::move(out[2])};
}

/// The composite operator A(nabla) x nabla applied to f:
///   (a2 d3 - a3 d2, a3 d1 - a1 d3, a1 d2 - a2 d1) f,
/// realized per mode as the cross product A(ik) x (ik).
inline VectorField cross_nabla_operator(const PolyVec& A, const ScalarField& f) {
    std::array<ScalarField, 3> out;
    for (int j = 0; j < 3; ++j) {
        const int a = (j + 1) % 3, b = (j + 2) % 3;
        const Polynomial& pa = A.component(a);
        const Polynomial& pb = A.component(b);
        out[static_cast<std::size_t>(j)] = f.apply_multiplier([&pa, &pb, a, b](const Wavevector& k) {
            const Complex ika(0.0, static_cast<double>(k[static_cast<std::size_t>(a)]));
            const Complex ikb(0.0, static_cast<double>(k[static_cast<std::size_t>(b)]));
            return pa.eval_at_ik(k).to_complex() * ikb - pb.eval_at_ik(k).to_complex() * ika;
        });
    }
    return {std::move(out[0]), std::move(out[1]), std::move(out[2])};
}

/// curl u: per mode ik x u^(k).  div(curl u) vanishes exactly.
inline VectorField curl(const VectorField& u) {
    std::array<ScalarField, 3> out;
    for (int j = 0; j < 3; ++j) {
        const int a = (j + 1) % 3, b = (j + 2) % 3;
        out[static_cast<std::size_t>(j)] =
            derivative(u.component(b), a) - derivative(u.component(a), b);
    }
    return {std::move(out[0]), std::move(out[1]), std::move(out[2])};
}

inline ScalarField divergence(const VectorField& u) {
    return derivative(u.component(0), 0) + derivative(u.component(1), 1) +
           derivative(u.component(2), 2);
}

inline VectorField gradient(const ScalarField& f) {
    return {derivative(f, 0), derivative(f, 1), derivative(f, 2)};
}

inline VectorField laplacian(const VectorField& u) {
    return {laplacian(u.component(0)), laplacian(u.component(1)), laplacian(u.component(2))};
}

/// (u.grad)w as sum_j u^j d_j w^l, by convolution.
inline VectorField advect(const VectorField& u, const VectorField& w) {
    std::array<ScalarField, 3> out;
    for (int l = 0; l < 3; ++l) {
        ScalarField acc;
        for (int j = 0; j < 3; ++j)
            acc = acc + product(u.component(j), derivative(w.component(l), j));
        out[static_cast<std::size_t>(l)] = std::move(acc);
    }
    return {std::move(out[0]), std::move(out[1]), std::move(out[2])};
}

/// The vorticity-transport commutator (u.grad)w - (w.grad)u in divergence
/// form sum_j d_j(u^j w - w^j u).  By the antisymmetry of u^j w^k - w^j u^k
/// only the three off-diagonal products F21, F31, F32 are computed:
///   Q^1 =  d2 F21 + d3 F31
///   Q^2 = -d1 F21 + d3 F32
///   Q^3 = -d1 F31 - d2 F32
inline VectorField commutator(const VectorField& u, const VectorField& w) {
    const ScalarField f21 = product(u.component(1), w.component(0)) - product(w.component(1), u.component(0));
    const ScalarField f31 = product(u.component(2), w.component(0)) - product(w.component(2), u.component(0));
    const ScalarField f32 = product(u.component(2), w.component(1)) - product(w.component(2), u.component(1));
    return {derivative(f21, 1) + derivative(f31, 2),
            derivative(f32, 2) - derivative(f21, 0),
            (-1.0) * (derivative(f31, 0) + derivative(f32, 1))};
}

class ResolutionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Real values of a field on the uniform grid x = 2pi j / N, j in [0,N)^3.
/// The resolution must exceed twice the largest wavenumber so the field is
/// recoverable from its samples.
class GridSample {
  public:
    int resolution = 0;
    int components = 1;
    std::vector<std::array<double, 3>> points;
    std::vector<double> values;  // row-major per point, `components` values each

    void write_csv(std::ostream& os) const {
        os << std::setprecision(17);
        os << "x1,x2,x3,v1";
        if (components == 3)
            os << ",v2,v3";
        os << "\n";
        for (std::size_t i = 0; i < points.size(); ++i) {
            os << points[i][0] << "," << points[i][1] << "," << points[i][2];
            for (int c = 0; c < components; ++c)
                os << "," << values[i * static_cast<std::size_t>(components) + static_cast<std::size_t>(c)];
            os << "\n";
        }
    }
};

namespace detail {

inline void require_resolution(int N, int maxk) {
    if (N <= 2 * maxk)
        throw ResolutionError("grid resolution " + std::to_string(N) +
                              " too low for max wavenumber " + std::to_string(maxk) +
                              " (need N > 2*max|k|)");
}

/// Per-axis phasor tables e^{i k x_j}; negative k uses the exact conjugate.
class PhasorTable {
  public:
    PhasorTable(int maxk, int N) : N_(N), table_(static_cast<std::size_t>(maxk + 1) * static_cast<std::size_t>(N)) {
        for (int k = 0; k <= maxk; ++k)
            for (int j = 0; j < N; ++j) {
                const double phase = 2.0 * std::numbers::pi * k * j / N;
                table_[static_cast<std::size_t>(k) * static_cast<std::size_t>(N_) + static_cast<std::size_t>(j)] =
                    Complex(std::cos(phase), std::sin(phase));
            }
    }
    Complex operator()(int k, int j) const {
        const Complex v = table_[static_cast<std::size_t>(std::abs(k)) * static_cast<std::size_t>(N_) + static_cast<std::size_t>(j)];
        return k >= 0 ? v : std::conj(v);
    }

  private:
    int N_;
    std::vector<Complex> table_;
};

inline std::vector<double> sample_values(const ScalarField& f, int N, const PhasorTable& tab) {
    std::vector<double> vals(static_cast<std::size_t>(N) * N * N, 0.0);
    for (const auto& [k, c] : f.modes()) {
        std::size_t idx = 0;
        for (int j0 = 0; j0 < N; ++j0) {
            const Complex p0 = c * tab(k[0], j0);
            for (int j1 = 0; j1 < N; ++j1) {
                const Complex p01 = p0 * tab(k[1], j1);
                for (int j2 = 0; j2 < N; ++j2, ++idx)
                    vals[idx] += (p01 * tab(k[2], j2)).real();
            }
        }
    }
    return vals;
}

}  // namespace detail

inline GridSample sample(const ScalarField& f, int N) {
    detail::require_resolution(N, f.max_wavenumber());
    detail::PhasorTable tab(f.max_wavenumber(), N);
    GridSample g;
    g.resolution = N;
    g.components = 1;
    g.values = detail::sample_values(f, N, tab);
    g.points.reserve(g.values.size());
    const double h = 2.0 * std::numbers::pi / N;
    for (int j0 = 0; j0 < N; ++j0)
        for (int j1 = 0; j1 < N; ++j1)
            for (int j2 = 0; j2 < N; ++j2)
                g.points.push_back({h * j0, h * j1, h * j2});
    return g;
}

inline GridSample sample(const VectorField& u, int N) {
    detail::require_resolution(N, u.max_wavenumber());
    detail::PhasorTable tab(u.max_wavenumber(), N);
    const auto v0 = detail::sample_values(u.component(0), N, tab);
    const auto v1 = detail::sample_values(u.component(1), N, tab);
    const auto v2 = detail::sample_values(u.component(2), N, tab);
    GridSample g;
    g.resolution = N;
    g.components = 3;
    g.values.resize(v0.size() * 3);
    g.points.reserve(v0.size());
    const double h = 2.0 * std::numbers::pi / N;
    std::size_t i = 0;
    for (int j0 = 0; j0 < N; ++j0)
        for (int j1 = 0; j1 < N; ++j1)
            for (int j2 = 0; j2 < N; ++j2, ++i) {
                g.points.push_back({h * j0, h * j1, h * j2});
                g.values[3 * i] = v0[i];
                g.values[3 * i + 1] = v1[i];
                g.values[3 * i + 2] = v2[i];
            }
    return g;
}

namespace detail {
inline int default_sup_resolution(int maxk) { return std::max(32, 2 * maxk + 2); }
}  // namespace detail

/// Sup norm estimated on a uniform grid fine enough to resolve the field.
inline double sup_norm(const ScalarField& f, int N = 0) {
    if (f.is_zero())
        return 0.0;
    if (N == 0)
        N = detail::default_sup_resolution(f.max_wavenumber());
    detail::require_resolution(N, f.max_wavenumber());
    detail::PhasorTable tab(f.max_wavenumber(), N);
    double m = 0.0;
    for (double v : detail::sample_values(f, N, tab))
        m = std::max(m, std::abs(v));
    return m;
}

/// Pointwise-Euclidean sup norm of a vector field on the grid.
inline double sup_norm(const VectorField& u, int N = 0) {
    if (u.is_zero())
        return 0.0;
    if (N == 0)
        N = detail::default_sup_resolution(u.max_wavenumber());
    detail::require_resolution(N, u.max_wavenumber());
    detail::PhasorTable tab(u.max_wavenumber(), N);
    const auto v0 = detail::sample_values(u.component(0), N, tab);
    const auto v1 = detail::sample_values(u.component(1), N, tab);
    const auto v2 = detail::sample_values(u.component(2), N, tab);
    double m = 0.0;
    for (std::size_t i = 0; i < v0.size(); ++i)
        m = std::max(m, std::sqrt(v0[i] * v0[i] + v1[i] * v1[i] + v2[i] * v2[i]));
    return m;
}

}  // namespace trigflow

#endif  // TRIGFLOW_SPECTRAL_HPP
