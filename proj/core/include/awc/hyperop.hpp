#ifndef AWC_HYPEROP_HPP
#define AWC_HYPEROP_HPP

#include <utility>
#include <vector>

#include "awc/awcalc.hpp"
#include "awc/poly.hpp"
#include "awc/pseq.hpp"

namespace awc {

/* Eigenvalue problem data for L = sigma D^2 + tau S D with sigma quadratic
 * and tau linear.  Construction rejects the O and E canonical forms and any
 * eigenvalue collision among mu_0..mu_dmax. */
class HProblem {
public:
    HProblem(SymP P, Poly sigma, Poly tau, int dmax = 32);

    const SymP& P() const { return P_; }
    const Poly& sigma() const { return sigma_; }
    const Poly& tau() const { return tau_; }
    const QContext& ctx() const { return P_.ctx(); }
    int dmax() const { return dmax_; }
    FormTag tag() const { return tag_; }

    CScalar alpha2() const { return sigma_.coeff(2); }
    CScalar beta1() const { return tau_.coeff(1); }

    /* Eigenvalue of L on the degree-k leading term: L x^k = -mu_k x^k + ... */
    CScalar mu(int k) const;

private:
    SymP P_;
    Poly sigma_, tau_;
    int dmax_;
    FormTag tag_;
    std::vector<CScalar> mu_;
};

/* L f = sigma D^2 f + tau S D f. */
Poly op_l(const HProblem& p, const Poly& f);

/* Closed form for mu_k - mu_j (used by the per-family displays). */
CScalar mu_diff_formula(const HProblem& p, int k, int j);

/* Iterated operator data L_j = sigma_j D^2 + tau_j S D obtained from
 *   sigma_{j+1} = S sigma_j + (a+1)(A - x) S tau_j + a delta D tau_j
 *   tau_{j+1}   = D sigma_j + a S tau_j + (a+1)(A - x) D tau_j
 * so that D (L_j - mu_j) = (L_{j+1} - mu_{j+1}) D. */
struct IterChain {
    std::vector<Poly> sigma;
    std::vector<Poly> tau;

    int size() const { return static_cast<int>(sigma.size()); }
};

IterChain iterate_chain(const HProblem& p, int jmax);

/* Auxiliary lattice function
 *   sigma~_j^{+-}(t) = sigma_j(theta_t) +- (theta_{t+1/2}-theta_{t-1/2})/2 * tau_j(theta_t).
 * Satisfies the shift law sigma~_j^+(t) = sigma~^+(t + j/2),
 * sigma~_j^-(t) = sigma~^-(t - j/2). */
CScalar sigma_tilde_at(const Poly& sigma_j, const Poly& tau_j, const PFun& theta,
                       int sign, HalfInt t);

CScalar sigma_tilde(const HProblem& p, const PFun& theta, int sign, int j, HalfInt t);

/* All lattice base functions theta with sigma~^-(0) = 0: one for each root
 * of Q(x) = sigma(x)^2 - delta(x) tau(x)^2, orientation fixed by minimizing
 * |sigma~^-(0)|.  Ordered lexicographically by (re, im) of theta_0.
 * Throws NoThetaRoot when Q has no roots (Hermite-like data). */
std::vector<PFun> find_theta0(const HProblem& p);

/* Roots of a polynomial via the companion matrix, one Newton polish step,
 * near-duplicates collapsed.  Exposed for reuse by the family module. */
std::vector<CScalar> poly_roots(const Poly& p, double collapse_tol = 1e-8);

enum class Normalization { Monic, AtTheta0 };

struct Eigenfunction {
    int k = 0;
    Poly poly;
    Normalization normalization = Normalization::Monic;
    std::vector<CScalar> taylor_seq; // partial_j f_k at theta_{j/2}, j = 0..k
    double residual = 0.0;           // ||L f + mu_k f|| / ||f||, coefficientwise
};

/* Explicit eigenfunction through the generalized Taylor expansion around a
 * base theta with sigma~^-(0) = 0:
 *   monic:    c_j = prod_{i=j}^{k-1} [1+i] tau_i(theta_{i/2}) / (mu_i - mu_k)
 *   at theta0:c_j = prod_{i=0}^{j-1} (mu_i - mu_k) / ([1+i] tau_i(theta_{i/2}))
 * and f_k = sum_j c_j prod_{i<j}(x - theta_i). */
Eigenfunction eigenfunction(const HProblem& p, const PFun& theta, int k,
                            Normalization normalization);

/* Independent oracle: assemble the triangular matrix of L on the monomial
 * basis (diagonal -mu_0..-mu_k) and solve (L + mu_k I) f = 0 with leading
 * coefficient 1 by back substitution. */
Poly eigen_matrix_oracle(const HProblem& p, int k);

} // namespace awc

#endif
