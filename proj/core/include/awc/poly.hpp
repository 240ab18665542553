#ifndef AWC_POLY_HPP
#define AWC_POLY_HPP

#include <initializer_list>
#include <vector>

#include "awc/scalar.hpp"

namespace awc {

/* Dense univariate polynomial over complex doubles, coefficients stored in
 * ascending degree.  Trailing coefficients below 1e-13 * max|coeff| are
 * trimmed on normalization, so degree() reflects the numerically supported
 * degree. */
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<CScalar> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<CScalar> coeffs) : c_(coeffs) { trim(); }

    static Poly constant(CScalar v) { return Poly({v}); }
    static Poly monomial(int degree, CScalar coeff = CScalar(1.0));

    // degree of the zero polynomial is -1
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    CScalar coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(k)]
                                                           : CScalar(0.0);
    }
    CScalar leading() const { return c_.empty() ? CScalar(0.0) : c_.back(); }
    const std::vector<CScalar>& coeffs() const { return c_; }

    CScalar eval(CScalar x) const;

    Poly derivative() const;

    /* p(alpha x + beta) */
    Poly compose_affine(CScalar alpha, CScalar beta) const;

    double linf() const;

    /* Drop trailing coefficients that are noise relative to the largest. */
    void trim();

    Poly& operator+=(const Poly& rhs);
    Poly& operator-=(const Poly& rhs);
    Poly& operator*=(const Poly& rhs);
    Poly& operator*=(CScalar s);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
    friend Poly operator*(Poly a, CScalar s) { return a *= s; }
    friend Poly operator*(CScalar s, Poly a) { return a *= s; }
    friend Poly operator-(Poly a) { return a *= CScalar(-1.0); }

private:
    std::vector<CScalar> c_;
};

/* Coefficientwise residual between two polynomials relative to the larger
 * sup-norm (floored at 1). */
double poly_residual(const Poly& a, const Poly& b);

} // namespace awc

#endif
