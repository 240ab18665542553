#ifndef AWC_ORTHO_HPP
#define AWC_ORTHO_HPP

#include <vector>

#include "awc/rodrigues.hpp"

namespace awc {

/* Wronskian bilinear form W(f,g)(x) = h(u(x), v(x)) where h(u,v) is the
 * symmetric polynomial (f(u)g(v) - f(v)g(u))/(v - u).  Expanded through
 * W(x^m, x^n) = B(x)^m D(x^{n-m}) for m <= n, so no square roots appear. */
Poly wronskian(const SymP& P, const Poly& f, const Poly& g);

/* Discrete measure: nodes x_0..x_m on a lattice, weights
 * w_i = rho(x_i)(x_{i+1/2} - x_{i-1/2}).  Construction checks the boundary
 * condition rho_1(x_{-1/2}) = rho_1(x_{m+1/2}) = 0 (within 1e-8 of the
 * interior rho_1 magnitude). */
struct GridMeasure {
    PSeq seq;
    int m = 0;
    std::vector<CScalar> nodes;
    std::vector<CScalar> weights;
};

GridMeasure make_grid_measure(const RhoChain& chain, int m);

/* Scans rho_1 along half-lattice points for the first vanishing boundary
 * t = m + 1/2 (the left boundary t = -1/2 must already vanish). */
int find_support(const RhoChain& chain, int max_m = 1000);

/* Gram matrix G_{jk} = sum_i f_j(x_i) f_k(x_i) w_i (complex bilinear,
 * no conjugation). */
std::vector<std::vector<CScalar>> gram(const GridMeasure& measure,
                                       const std::vector<Poly>& fs);

/* Largest off-diagonal magnitude relative to sqrt(G_jj G_kk). */
double max_offdiagonal(const std::vector<std::vector<CScalar>>& g);

} // namespace awc

#endif
