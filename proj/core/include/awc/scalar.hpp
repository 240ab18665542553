#ifndef AWC_SCALAR_HPP
#define AWC_SCALAR_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>

#include "awc/errors.hpp"

namespace awc {

using CScalar = std::complex<double>;

/* Hybrid tolerance used by every comparison in the library:
 * |x - y| <= abs + rel * max(|x|, |y|). */
struct Tol {
    double abs = 1e-12;
    double rel = 1e-9;
};

inline bool approx_eq(CScalar x, CScalar y, Tol tol = {}) {
    const double diff = std::abs(x - y);
    return diff <= tol.abs + tol.rel * std::max(std::abs(x), std::abs(y));
}

/* Residual of x against y relative to the larger magnitude, with a floor
 * that keeps exact zeros comparable. */
inline double rel_residual(CScalar x, CScalar y, double floor = 1.0) {
    const double scale = std::max({std::abs(x), std::abs(y), floor});
    return std::abs(x - y) / scale;
}

inline bool is_finite(CScalar z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/* Integer power by repeated squaring; negative exponents go through 1/z. */
inline CScalar cpow_int(CScalar z, std::int64_t n) {
    if (n < 0) {
        z = CScalar(1.0) / z;
        n = -n;
    }
    CScalar acc(1.0);
    while (n > 0) {
        if (n & 1) acc *= z;
        z *= z;
        n >>= 1;
    }
    return acc;
}

/* Index type for lattice sequences: stores 2t so that half-integers are
 * exact.  x_{t + 1/2} is at(t + HalfInt::half()). */
struct HalfInt {
    std::int64_t twice = 0;

    constexpr HalfInt() = default;
    constexpr HalfInt(int n) : twice(2 * static_cast<std::int64_t>(n)) {}
    constexpr HalfInt(std::int64_t n) : twice(2 * n) {}

    static constexpr HalfInt halves(std::int64_t n) {
        HalfInt h;
        h.twice = n;
        return h;
    }
    static constexpr HalfInt half() { return halves(1); }

    double value() const { return 0.5 * static_cast<double>(twice); }
    bool is_integer() const { return (twice & 1) == 0; }

    friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return halves(a.twice + b.twice); }
    friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return halves(a.twice - b.twice); }
    friend constexpr HalfInt operator-(HalfInt a) { return halves(-a.twice); }
    friend constexpr bool operator==(HalfInt a, HalfInt b) { return a.twice == b.twice; }
    friend constexpr bool operator<(HalfInt a, HalfInt b) { return a.twice < b.twice; }
    friend constexpr bool operator<=(HalfInt a, HalfInt b) { return a.twice <= b.twice; }
};

enum class DegMode { Generic, LambdaOne, LambdaMinusOne };

/* Deformation parameter context.  lambda and q = lambda^2 drive all the
 * symmetric q-integers; a = (lambda + 1/lambda)/2 is the main coefficient
 * of the underlying symmetric polynomial.
 *
 * lambda = +-1 (a = +-1) is an explicit construction-time mode: the
 * symmetric q-integers then use their continuity limits.  Inputs in the
 * band 1e-12 < |lambda -+ 1| < 1e-6 are rejected as ill-conditioned
 * rather than silently switched. */
class QContext {
public:
    static QContext generic(CScalar lambda);
    static QContext lambda_one() { return QContext(CScalar(1.0), DegMode::LambdaOne); }
    static QContext lambda_minus_one() { return QContext(CScalar(-1.0), DegMode::LambdaMinusOne); }

    /* From the main coefficient a; picks lambda = a + sqrt(a^2-1) (principal
     * square root) and normalizes the reciprocal pair to |lambda| <= 1 so
     * that |q| <= 1 wherever infinite q-products are needed. */
    static QContext from_main_coeff(CScalar a);

    /* From q itself (lambda = principal sqrt of q, normalized as above). */
    static QContext from_q(CScalar q);

    CScalar lambda() const { return lambda_; }
    CScalar q() const { return q_; }
    DegMode mode() const { return mode_; }
    CScalar main_coeff() const;

private:
    QContext(CScalar lambda, DegMode mode)
        : lambda_(lambda), q_(lambda * lambda), mode_(mode) {}

    CScalar lambda_;
    CScalar q_;
    DegMode mode_;
};

} // namespace awc

#endif
