#ifndef AWC_RODRIGUES_HPP
#define AWC_RODRIGUES_HPP

#include <optional>
#include <utility>
#include <vector>

#include "awc/families.hpp"
#include "awc/hyperop.hpp"

namespace awc {

/* Non-zero rational function in factored form
 *   R(x) = zeta x^r prod_k (1 - zeros_k x) / prod_k (1 - poles_k x).
 * Zero/pole factors that coincide are cancelled at construction. */
struct RationalFactored {
    CScalar zeta{1.0};
    int r = 0;
    std::vector<CScalar> zeros;
    std::vector<CScalar> poles;

    RationalFactored() = default;
    RationalFactored(CScalar zeta_, int r_, std::vector<CScalar> zeros_,
                     std::vector<CScalar> poles_);

    CScalar eval(CScalar x) const;

    friend RationalFactored operator*(const RationalFactored& a, const RationalFactored& b);
};

/* Meromorphic solution of F(x) = R(x) F(qx) on C \ {0}, assembled from the
 * q-shifted factorial blocks g_xi(x) = (xi x;q)_inf and
 * h_xi(x) = (q/(xi x);q)_inf:
 *   F = [g_gamma h_gamma / g_1 h_1] (g_1 h_1)^r prod g_{zeros} / g_{poles},
 * gamma = (-1)^r zeta.  |q| > 1 inputs are reduced through the inversion
 * F(x) = S(x) F(x/q), S(x) = 1/R(x/q). */
class FeqSolution {
public:
    FeqSolution(RationalFactored R, CScalar q);

    CScalar eval(CScalar x) const;
    CScalar operator()(CScalar x) const { return eval(x); }

    const RationalFactored& reduced() const { return R_; }
    CScalar effective_q() const { return q_; }

private:
    RationalFactored R_; // after inversion, if any
    CScalar q_;
    CScalar gamma_;
};

FeqSolution solve_feq(const RationalFactored& R, CScalar q);

/* Rodrigues weight chain rho_0 = rho, rho_1, rho_2, ... for a problem over
 * the canonical representative of its form, evaluated in closed form on the
 * lattice of a given theta.  The closed forms satisfy
 *   rho(theta_t) sigma~^+(t) = rho(theta_{t+1}) sigma~^-(t+1)
 * and the two half-step recurrences of the chain. */
class RhoChain {
public:
    const HProblem& problem() const { return *problem_; }
    const PFun& theta() const { return theta_; }
    FormTag form() const { return form_; }

    /* Closed-form rho_j at the lattice point theta_t. */
    CScalar rho(int j, HalfInt t) const;

    /* sigma~^{+-}(t) of the underlying problem on this theta. */
    CScalar sigma_tilde(int sign, HalfInt t) const;

    /* For the continuous form: weight logderivative data sigma, tau are in
     * the problem; rho_j = rho sigma^j. */

    friend RhoChain solve_rho(const HProblem& p, const PFun& theta);

private:
    RhoChain(const HProblem& p, PFun theta) : problem_(&p), theta_(std::move(theta)) {}

    const HProblem* problem_;
    PFun theta_;
    FormTag form_ = FormTag::C;

    // arithmetic: Gamma atoms and exponential constants
    std::vector<CScalar> arith_right_; // chi^- roots: 1/Gamma(1 + x - j/2 - xi)
    std::vector<CScalar> arith_left_;  // chi^+ roots: e^{i pi (x + j/2)}/Gamma(1 - x - j/2 + xi)
    CScalar arith_zeta_plus_{1.0}, arith_zeta_minus_{1.0};

    // quadratic: chi(t) = lead prod (t + xi); rho_j(u^2) per atom is
    // (-1)^j / (Gamma(1 - xi - j/2 + u) Gamma(1 - xi - j/2 - u))
    std::vector<CScalar> quad_xi_;
    CScalar quad_lead_{1.0};
    CScalar quad_t0_{0.0};

    // geometric: paired linear factors and one pure-power block
    std::vector<std::pair<CScalar, CScalar>> geom_pairs_; // (xi^+, xi^-)
    int geom_mp_ = 0, geom_mm_ = 0;
    CScalar geom_zp_{1.0}, geom_zm_{1.0};
    std::optional<FeqSolution> geom_pure_;

    // trigonometric: chi(u) = zeta u^{-s} prod (1 - xi u)
    std::vector<CScalar> trig_xi_;
    int trig_s_ = 0;
    CScalar trig_zeta_{1.0};
    CScalar trig_u0_{1.0};

    // continuous preset exponents: jacobi (1-x)^A (1+x)^B, laguerre x^A e^{Cx},
    // hermite exp((b1 x^2/2 + b0 x)/a0)
    enum class ContPreset { Jacobi, Laguerre, Hermite };
    ContPreset cont_preset_ = ContPreset::Hermite;
    CScalar cont_e1_{0.0}, cont_e2_{0.0};

    CScalar rho_arith(int j, CScalar x) const;
    CScalar rho_quad(int j, HalfInt t) const;
    CScalar rho_geom(int j, CScalar x) const;
    CScalar rho_trig(int j, HalfInt t) const;
    CScalar rho_cont(int j, CScalar x) const;
};

/* Builds the closed-form chain for the problem's canonical form.  Throws
 * RamifiedOnly for continuous data outside the Jacobi/Laguerre/Hermite
 * presets, QOutOfRange for |q| > 0.99 in the geometric/trigonometric forms. */
RhoChain solve_rho(const HProblem& p, const PFun& theta);

/* rho_1 through the averaged half-step identity
 * rho_1(theta_t) = (rho(theta_{t-1/2}) sigma~^+(t-1/2)
 *                 + rho(theta_{t+1/2}) sigma~^-(t+1/2)) / 2. */
CScalar rho1_from_rho(const RhoChain& chain, HalfInt t);

/* D^k rho_k at theta_t through the divided-difference display
 *   D^k rho_k(x) = (prod_{j<k} [k-j]) sum_j rho_k(x_{j-k/2}) / prod_{i!=j}(...).
 * Throws CoincidentNodes on a constant lattice (continuous form). */
CScalar rodrigues_eval(const RhoChain& chain, int k, HalfInt t);

/* Max relative residual of
 *   prod_{j<k}(mu_j - mu_k) rho(x) f_k(x) = (prod_{j<k} [k-j]) D^k rho_k(x)
 * over the sample lattice points, with the monic f_k from the matrix oracle.
 * The continuous form is verified through the equivalent polynomial identity
 * prod_{j<k}(mu_j - mu_k) f_k sigma^k = k! N_k with
 * N_{i+1} = N_i (tau - sigma') + sigma N_i' - i N_i sigma'. */
double rodrigues_verify(const HProblem& p, const RhoChain& chain, int k,
                        std::span<const HalfInt> sample_ts);

struct ChainWindowReport {
    double functional_equation = 0.0; // rho sigma~^+ vs shifted rho sigma~^-
    double chain_consistency = 0.0;   // closed form vs both grid recurrences
};

/* Residuals over a symmetric window of half-steps, normalized per point with
 * a floor of 1e-6 times the window magnitude (classical weights have exact
 * lattice zeros where a bare relative error is floating noise). */
ChainWindowReport chain_window_residuals(const RhoChain& chain, int jmax, int half_steps);

} // namespace awc

#endif
