// Exact polynomial algebra for operator symbols.
//
// A symbol is a triple P = (p1, p2, p3) of polynomials in x1, x2, x3 with
// rational coefficients.  A certified symbol satisfies the orthogonality
// identity x1*p1 + x2*p2 + x3*p3 == 0, checked term-by-term in exact
// arithmetic, never within a tolerance.  Certified symbols act on
// trigonometric polynomials as Fourier multipliers P(ik); the identity
// forces k . P(ik) = 0 at every wavevector, which is what makes the
// resulting vector fields divergence-free.

#ifndef TRIGFLOW_POLYALG_HPP
#define TRIGFLOW_POLYALG_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include <boost/rational.hpp>

namespace trigflow {

using Rational = boost::rational<long long>;

/// Exponent triple (a1,a2,a3) of a monomial x1^a1 x2^a2 x3^a3.
using Exponents = std::array<int, 3>;

/// Integer wavevector k in Z^3.
using Wavevector = std::array<int, 3>;

struct Monomial {
    Exponents exponents{0, 0, 0};
    Rational coefficient{0};
};

/// Complex number with exact rational real and imaginary parts.
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    bool is_zero() const { return re == 0 && im == 0; }
    std::complex<double> to_complex() const {
        return {boost::rational_cast<double>(re), boost::rational_cast<double>(im)};
    }
};

/// Sparse multivariate polynomial with exact rational coefficients.
/// Canonical form: no stored coefficient is zero.
class Polynomial {
  public:
    using TermMap = std::map<Exponents, Rational>;

    Polynomial() = default;

    static Polynomial constant(const Rational& c) {
        Polynomial p;
        p.add_term({0, 0, 0}, c);
        return p;
    }

    /// The coordinate polynomial x_axis, axis in {0,1,2}.
    static Polynomial variable(int axis) {
        Polynomial p;
        Exponents e{0, 0, 0};
        e.at(static_cast<std::size_t>(axis)) = 1;
        p.add_term(e, Rational(1));
        return p;
    }

    static Polynomial monomial(const Exponents& e, const Rational& c) {
        Polynomial p;
        p.add_term(e, c);
        return p;
    }

    void add_term(const Exponents& e, const Rational& c) {
        if (e[0] < 0 || e[1] < 0 || e[2] < 0)
            throw std::invalid_argument("polynomial exponents must be non-negative");
        if (c == 0)
            return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_)
            d = std::max(d, e[0] + e[1] + e[2]);
        return d;
    }

    Polynomial operator+(const Polynomial& o) const {
        Polynomial r = *this;
        for (const auto& [e, c] : o.terms_)
            r.add_term(e, c);
        return r;
    }

    Polynomial operator-(const Polynomial& o) const {
        Polynomial r = *this;
        for (const auto& [e, c] : o.terms_)
            r.add_term(e, -c);
        return r;
    }

    Polynomial operator*(const Polynomial& o) const {
        Polynomial r;
        for (const auto& [ea, ca] : terms_)
            for (const auto& [eb, cb] : o.terms_)
                r.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
        return r;
    }

    Polynomial operator*(const Rational& c) const {
        Polynomial r;
        for (const auto& [e, coeff] : terms_)
            r.add_term(e, coeff * c);
        return r;
    }

    bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

    /// Exact evaluation at x = i*k.  Each monomial contributes
    /// c * i^(a1+a2+a3) * k1^a1 k2^a2 k3^a3, split by i^d mod 4 into the
    /// real/imaginary rational parts.
    GaussianRational eval_at_ik(const Wavevector& k) const {
        GaussianRational v;
        for (const auto& [e, c] : terms_) {
            long long mag = 1;
            for (int a = 0; a < 3; ++a)
                for (int p = 0; p < e[static_cast<std::size_t>(a)]; ++p)
                    mag *= k[static_cast<std::size_t>(a)];
            const Rational term = c * Rational(mag);
            switch ((e[0] + e[1] + e[2]) % 4) {
                case 0: v.re += term; break;
                case 1: v.im += term; break;
                case 2: v.re -= term; break;
                default: v.im -= term; break;
            }
        }
        return v;
    }

  private:
    TermMap terms_;
};

inline Polynomial operator*(const Rational& c, const Polynomial& p) { return p * c; }

/// Thrown when a symbol fails the orthogonality identity; carries the first
/// (lexicographically smallest) non-cancelling monomial of x . P.
class SymbolRejection : public std::invalid_argument {
  public:
    explicit SymbolRejection(const Monomial& residual)
        : std::invalid_argument(describe(residual)), residual_(residual) {}

    const Monomial& residual_monomial() const { return residual_; }

  private:
    static std::string describe(const Monomial& m) {
        std::ostringstream os;
        os << "symbol is not orthogonal to x: residual monomial "
           << m.coefficient.numerator();
        if (m.coefficient.denominator() != 1)
            os << "/" << m.coefficient.denominator();
        for (int a = 0; a < 3; ++a)
            if (m.exponents[static_cast<std::size_t>(a)] > 0) {
                os << " x" << a + 1;
                if (m.exponents[static_cast<std::size_t>(a)] > 1)
                    os << "^" << m.exponents[static_cast<std::size_t>(a)];
            }
        return os.str();
    }

    Monomial residual_;
};

/// A certified operator symbol: construction is only possible through
/// validate_orthogonal_symbol, so every instance satisfies x . P == 0.
class PolyVec {
  public:
    const Polynomial& component(int j) const { return components_.at(static_cast<std::size_t>(j)); }
    const std::array<Polynomial, 3>& components() const { return components_; }

    int degree() const {
        return std::max({components_[0].degree(), components_[1].degree(), components_[2].degree()});
    }

    bool operator==(const PolyVec& o) const { return components_ == o.components_; }

    friend PolyVec validate_orthogonal_symbol(const Polynomial& p1, const Polynomial& p2,
                                              const Polynomial& p3);

  private:
    explicit PolyVec(std::array<Polynomial, 3> c) : components_(std::move(c)) {}
    std::array<Polynomial, 3> components_;
};

/// Certifies that x1*p1 + x2*p2 + x3*p3 vanishes identically.  The expansion
/// is carried out in exact rational arithmetic; on failure the first
/// surviving monomial is reported.
inline PolyVec validate_orthogonal_symbol(const Polynomial& p1, const Polynomial& p2,
                                          const Polynomial& p3) {
    const std::array<const Polynomial*, 3> p{&p1, &p2, &p3};
    Polynomial dot;
    for (int a = 0; a < 3; ++a)
        dot = dot + Polynomial::variable(a) * (*p[static_cast<std::size_t>(a)]);
    if (!dot.is_zero()) {
        const auto& [e, c] = *dot.terms().begin();
        throw SymbolRejection(Monomial{e, c});
    }
    return PolyVec({p1, p2, p3});
}

/// Exact value of P(ik) as a Gaussian-rational triple.
inline std::array<GaussianRational, 3> eval_symbol_exact(const PolyVec& A, const Wavevector& k) {
    return {A.component(0).eval_at_ik(k), A.component(1).eval_at_ik(k),
            A.component(2).eval_at_ik(k)};
}

/// P(ik) converted to complex doubles; conversion is the only inexact step.
inline std::array<std::complex<double>, 3> eval_symbol(const PolyVec& A, const Wavevector& k) {
    const auto exact = eval_symbol_exact(A, k);
    return {exact[0].to_complex(), exact[1].to_complex(), exact[2].to_complex()};
}

/// k . P(ik), computed in exact arithmetic.  Certification forces this to be
/// the exact rational zero for every k, so the returned complex is (0, 0).
inline std::complex<double> orthogonality_at(const PolyVec& A, const Wavevector& k) {
    const auto exact = eval_symbol_exact(A, k);
    GaussianRational dot;
    for (std::size_t j = 0; j < 3; ++j) {
        dot.re += Rational(k[j]) * exact[j].re;
        dot.im += Rational(k[j]) * exact[j].im;
    }
    return dot.to_complex();
}

/// The operator e3 x nabla = (-d2, d1, 0), the symbol used throughout the
/// pipeline and axisymmetric constructions.
inline PolyVec e3_cross_nabla() {
    return validate_orthogonal_symbol(Polynomial::variable(1) * Rational(-1),
                                      Polynomial::variable(0), Polynomial());
}

}  // namespace trigflow

#endif  // TRIGFLOW_POLYALG_HPP
