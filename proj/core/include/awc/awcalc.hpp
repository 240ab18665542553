#ifndef AWC_AWCALC_HPP
#define AWC_AWCALC_HPP

#include <functional>
#include <span>
#include <vector>

#include "awc/poly.hpp"
#include "awc/pseq.hpp"

namespace awc {

/* Companion operator S: f -> (f(u) + f(v))/2 on the root pair u, v of
 * P(x, .).  Computed through the power-sum recurrence
 *   p_k = 2A p_{k-1} - B p_{k-2},  p_0 = 2, p_1 = 2A,
 * so no square roots of the discriminant appear. */
Poly op_s(const SymP& P, const Poly& f);

/* Divided-difference operator D: f -> (f(u) - f(v))/(u - v), via
 *   d_k = 2A d_{k-1} - B d_{k-2},  d_0 = 0, d_1 = 1. */
Poly op_d(const SymP& P, const Poly& f);

/* Divided power of D^k: D^k f / prod_{j=1}^{k} [j], with the continuity
 * limits at lambda = +-1 (D^k/k! in the classical case). */
Poly op_partial(const SymP& P, const Poly& f, int k);

/* Monic node polynomial prod_{j=0}^{k-1} (y - x_j). */
Poly phi_nodes(const PSeq& s, int k);

/* Phi_k(x, .) materialized as a polynomial in the second variable from the
 * P_j factor products:
 *   Phi_{2m} = prod_{j=1}^{m} P_{2j-1}(x, .),
 *   Phi_{2m+1} = (. - x) prod_{j=1}^{m} P_{2j}(x, .).  */
Poly phi_xy(const SymP& P, int k, CScalar x);

/* Phi_k(., y) as a polynomial in the first variable, from the symmetry
 * Phi_k(x,y) = (-1)^k Phi_k(y,x). */
Poly phi_yx(const SymP& P, int k, CScalar y);

/* Both descriptions of the Phi family for a fixed first argument; the node
 * products use a sequence based at x. */
struct PhiBasis {
    SymP parent;
    int order;
    std::vector<Poly> members; // members[k] = Phi_k(x, .)

    static PhiBasis at(const SymP& P, CScalar x, int order);
};

/* Generalized Taylor coefficients c_k = (partial_k f)(x_{k/2}); the
 * expansion f(y) = sum_k c_k prod_{j<k}(y - x_j) reconstructs f. */
std::vector<CScalar> taylor_coeffs(const SymP& P, const PSeq& s, const Poly& f);

Poly taylor_reconstruct(const PSeq& s, std::span<const CScalar> coeffs);

/* Brute-force residue sum
 *   sum_j f(x_{j-k/2}) / prod_{i != j} (x_{j-k/2} - x_{i-k/2})
 * over the k+1 lattice nodes around the base point; equals partial_k f at
 * the base point for polynomial f.  Independent oracle for op_partial and
 * for the Rodrigues displays. */
CScalar divided_diff_oracle(const PSeq& s, const std::function<CScalar(CScalar)>& f, int k);

/* Same sum from precomputed node values. */
CScalar divided_diff_nodes(std::span<const CScalar> nodes, std::span<const CScalar> values);

} // namespace awc

#endif
