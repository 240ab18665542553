#include "awc/series.hpp"

#include <array>

namespace awc {

CScalar q_int(const QContext& ctx, std::int64_t m) {
    switch (ctx.mode()) {
    case DegMode::LambdaOne:
        return CScalar(static_cast<double>(m));
    case DegMode::LambdaMinusOne: {
        // limit of (lambda^m - lambda^-m)/(lambda - lambda^-1) at lambda = -1
        const double s = (m % 2 == 0) ? -1.0 : 1.0;
        return CScalar(s * static_cast<double>(m));
    }
    default: {
        const CScalar lambda = ctx.lambda();
        const CScalar denom = lambda - CScalar(1.0) / lambda;
        if (std::abs(denom) <= 1e-12)
            throw Error(Errc::NearDegenerate, "lambda - 1/lambda too small for q_int");
        return (cpow_int(lambda, m) - cpow_int(lambda, -m)) / denom;
    }
    }
}

CScalar q_int_sym(const QContext& ctx, std::int64_t m) {
    switch (ctx.mode()) {
    case DegMode::LambdaOne:
        return CScalar(1.0);
    case DegMode::LambdaMinusOne:
        return CScalar((m % 2 == 0) ? 1.0 : -1.0);
    default: {
        const CScalar lambda = ctx.lambda();
        return 0.5 * (cpow_int(lambda, m) + cpow_int(lambda, -m));
    }
    }
}

CScalar q_binomial(const QContext& ctx, int r, int k) {
    if (k < 0 || k > r)
        throw Error(Errc::DenominatorPole, "q_binomial requires 0 <= k <= r");
    CScalar acc(1.0);
    for (int j = 0; j < k; ++j)
        acc *= q_int(ctx, r - j) / q_int(ctx, k - j);
    return acc;
}

CScalar qpoch_finite(CScalar a, CScalar q, int n) {
    CScalar acc(1.0);
    CScalar aqj = a;
    for (int j = 0; j < n; ++j) {
        acc *= CScalar(1.0) - aqj;
        aqj *= q;
    }
    return acc;
}

CScalar qpoch_infinite(CScalar a, CScalar q) {
    if (std::abs(q) > 0.99)
        throw Error(Errc::QOutOfRange, "(a;q)_infinity requires |q| <= 0.99");
    CScalar acc(1.0);
    CScalar aqj = a;
    for (int j = 0; j < 100000; ++j) {
        if (std::abs(aqj) < 1e-17) break;
        acc *= CScalar(1.0) - aqj;
        aqj *= q;
    }
    return acc;
}

namespace {

/* Lanczos approximation, g = 7, 9 terms.  Valid for Re z >= 0.5; the
 * reflection formula covers the rest. */
CScalar lanczos_gamma(CScalar z) {
    static constexpr std::array<double, 9> coef = {
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    };
    CScalar acc(coef[0]);
    for (int i = 1; i < 9; ++i)
        acc += coef[i] / (z - CScalar(1.0) + CScalar(static_cast<double>(i)));
    const CScalar t = z + CScalar(6.5);
    const double sqrt_two_pi = 2.5066282746310005;
    return sqrt_two_pi * std::pow(t, z - CScalar(0.5)) * std::exp(-t) * acc;
}

} // namespace

CScalar recip_gamma(CScalar z) {
    if (z.real() < 0.5) {
        // 1/Gamma(z) = sin(pi z) Gamma(1-z) / pi; the sine factor produces
        // the exact zeros at the poles of Gamma.
        const double pi = 3.141592653589793238462643383279502884;
        return std::sin(pi * z) * lanczos_gamma(CScalar(1.0) - z) / pi;
    }
    return CScalar(1.0) / lanczos_gamma(z);
}

CScalar hyper_terminating(std::span<const CScalar> num, std::span<const CScalar> den,
                          CScalar z, int k) {
    CScalar sum(1.0);
    CScalar term(1.0);
    for (int j = 0; j < k; ++j) {
        const double dj = static_cast<double>(j);
        for (const CScalar& a : num) term *= a + CScalar(dj);
        for (const CScalar& b : den) {
            const CScalar f = b + CScalar(dj);
            if (std::abs(f) < 1e-12)
                throw Error(Errc::DenominatorPole,
                            "denominator Pochhammer vanishes inside the sum range");
            term /= f;
        }
        term *= z / CScalar(dj + 1.0);
        sum += term;
    }
    return sum;
}

CScalar qhyper_terminating(std::span<const CScalar> num, std::span<const CScalar> den,
                           CScalar q, CScalar z, int k) {
    const int balance = 1 + static_cast<int>(den.size()) - static_cast<int>(num.size());
    CScalar sum(1.0);
    CScalar term(1.0);
    CScalar qj(1.0); // q^j
    for (int j = 0; j < k; ++j) {
        for (const CScalar& a : num) term *= CScalar(1.0) - a * qj;
        for (const CScalar& b : den) {
            const CScalar f = CScalar(1.0) - b * qj;
            if (std::abs(f) < 1e-12)
                throw Error(Errc::DenominatorPole,
                            "denominator q-Pochhammer vanishes inside the sum range");
            term /= f;
        }
        const CScalar qnext = qj * q;
        const CScalar f = CScalar(1.0) - qnext;
        if (std::abs(f) < 1e-12)
            throw Error(Errc::DenominatorPole, "(q;q)_j vanishes inside the sum range");
        term *= z / f;
        if (balance != 0) {
            // ((-1)^j q^C(j,2))^balance steps by (-q^j) each increment of j
            term *= cpow_int(-qj, balance);
        }
        qj = qnext;
        sum += term;
    }
    return sum;
}

} // namespace awc
