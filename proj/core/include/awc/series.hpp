#ifndef AWC_SERIES_HPP
#define AWC_SERIES_HPP

#include <span>
#include <vector>

#include "awc/scalar.hpp"

namespace awc {

/* Symmetric q-integer [m] = (lambda^m - lambda^-m)/(lambda - lambda^-1).
 * Limits: m at lambda = 1, (-1)^(m-1) m at lambda = -1. */
CScalar q_int(const QContext& ctx, std::int64_t m);

/* Companion half-sum (lambda^m + lambda^-m)/2, with the same limits
 * (1 resp. (-1)^m).  This is the main coefficient of the subsampled
 * polynomial P_m. */
CScalar q_int_sym(const QContext& ctx, std::int64_t m);

/* prod_{j=0}^{k-1} [r-j]/[k-j] = lambda^{-k(r-k)} [r choose k]_q.
 * Requires 0 <= k <= r. */
CScalar q_binomial(const QContext& ctx, int r, int k);

/* q-shifted factorial (a;q)_n = prod_{j=0}^{n-1} (1 - a q^j). */
CScalar qpoch_finite(CScalar a, CScalar q, int n);

/* (a;q)_infinity, truncated once the tail term |a q^N| drops below 1e-17
 * (capped at 1e5 factors).  Requires |q| <= 0.99. */
CScalar qpoch_infinite(CScalar a, CScalar q);

/* Reciprocal Gamma function 1/Gamma(z); entire, so no poles to guard. */
CScalar recip_gamma(CScalar z);

/* Terminating hypergeometric sum sum_{j=0}^{k} prod (num)_j / prod (den)_j
 * * z^j / j!.  The caller supplies -k among the numerator parameters. */
CScalar hyper_terminating(std::span<const CScalar> num, std::span<const CScalar> den,
                          CScalar z, int k);

/* Terminating basic hypergeometric sum with (a;q)_j factors, z^j/(q;q)_j
 * and the usual ((-1)^j q^C(j,2))^(1+s-r) balancing factor.  The caller
 * supplies q^-k among the numerator parameters. */
CScalar qhyper_terminating(std::span<const CScalar> num, std::span<const CScalar> den,
                           CScalar q, CScalar z, int k);

} // namespace awc

#endif
