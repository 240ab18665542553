#ifndef AWC_FAMILIES_HPP
#define AWC_FAMILIES_HPP

#include <array>
#include <string>
#include <vector>

#include "awc/hyperop.hpp"

namespace awc {

enum class FamilyForm { Arithmetic, Quadratic, Geometric, Trigonometric, Continuous };

const char* family_form_name(FamilyForm form);

/* Parameterization data for (sigma, tau) in each canonical form:
 *   arithmetic:     chi^{+-}(x) = g2 x^2 + g1^{+-} x + g0^{+-} (shared g2),
 *                   sigma = (chi^+ + chi^-)/2, tau = chi^+ - chi^-
 *   quadratic:      chi(t) quartic, chi(t) = sigma(t^2) + t tau(t^2)
 *   geometric:      chi^{+-}(x) = g2^{+-} x^2 + g1^{+-} x + g0 (shared g0),
 *                   tau = (chi^+ - chi^-)/((lambda - 1/lambda) x)
 *   trigonometric:  Laurent chi(u) = sum_{k=-2}^{2} g_k u^k,
 *                   evaluated on x = (u + 1/u)/2
 *   continuous:     (sigma, tau) directly.
 * All of them live over the canonical representative of the matching form. */
struct ChiData {
    FamilyForm form = FamilyForm::Continuous;
    CScalar q{0.0}; // required for geometric/trigonometric

    // arithmetic
    CScalar a_g2, a_g1p, a_g0p, a_g1m, a_g0m;
    // quadratic: ascending coefficients of chi(t), gamma_0..gamma_4
    std::array<CScalar, 5> q_gamma{};
    // geometric
    CScalar g_g2p, g_g1p, g_g2m, g_g1m, g_g0;
    // trigonometric: gamma_{-2}..gamma_{2}
    std::array<CScalar, 5> t_gamma{};
    // continuous
    Poly c_sigma, c_tau;

    static ChiData arithmetic(CScalar g2, CScalar g1p, CScalar g0p, CScalar g1m, CScalar g0m);
    static ChiData quadratic(std::array<CScalar, 5> gammas_ascending);
    static ChiData geometric(CScalar q, CScalar g2p, CScalar g1p, CScalar g2m, CScalar g1m,
                             CScalar g0);
    static ChiData trigonometric(CScalar q, std::array<CScalar, 5> gammas_m2_to_2);
    static ChiData continuous(Poly sigma, Poly tau);

    /* chi^{+-} as polynomials (arithmetic/geometric); chi as a polynomial in
     * t (quadratic); Laurent coefficients directly (trigonometric). */
    Poly chi_plus() const;
    Poly chi_minus() const;
    Poly chi_quartic() const;
};

/* Assemble the eigenvalue problem over the canonical symmetric polynomial
 * of the matching form.  Throws DegenerateChi when the tau extraction would
 * divide by a vanishing factor (lambda = +-1 for geometric/trigonometric). */
HProblem chi_to_problem(const ChiData& chi, int dmax = 32);

/* Inverse of chi_to_problem; requires the problem to live over the
 * canonical representative of its form. */
ChiData chi_from_problem(const HProblem& p);

enum class FamilyName { Jacobi, Hahn, Wilson, QHahn, AskeyWilson, Hermite, QHermite };

const char* family_name(FamilyName name);

/* Classical family presets:
 *   Jacobi(alpha, beta)            continuous, sigma = x^2 - 1
 *   Hahn(xi0+, xi1+, xi0-, xi1-)   arithmetic, chi^+- = (x - xi0^+-)(x - xi1^+-)
 *   Wilson(xi0..xi3)               quadratic, chi = prod (t + xi_nu)
 *   QHahn(q; xi0+, xi1+, xi0-, xi1-) geometric, chi^+- = (1 - xi0^+- x)(1 - xi1^+- x)
 *   AskeyWilson(q; xi0..xi3)       trigonometric, chi = u^-2 prod (1 - xi_nu u)
 *   Hermite / QHermite             designed NoThetaRoot error paths. */
struct FamilySpec {
    FamilyName name;
    std::vector<CScalar> params;
    CScalar q{0.0};

    static FamilySpec jacobi(CScalar alpha, CScalar beta);
    static FamilySpec hahn(CScalar xi0p, CScalar xi1p, CScalar xi0m, CScalar xi1m);
    static FamilySpec wilson(std::array<CScalar, 4> xi);
    static FamilySpec q_hahn(CScalar q, CScalar xi0p, CScalar xi1p, CScalar xi0m, CScalar xi1m);
    static FamilySpec askey_wilson(CScalar q, std::array<CScalar, 4> xi);
    static FamilySpec hermite();
    static FamilySpec q_hermite(CScalar q);
};

ChiData family_chi(const FamilySpec& spec);
HProblem family_problem(const FamilySpec& spec, int dmax = 32);

/* The Taylor base lattice used by the family's classical expression
 * (theta_0 = xi0^- for Hahn, xi0^2 for Wilson, 1/xi0^- for q-Hahn,
 * (xi0 + 1/xi0)/2 for Askey-Wilson, the sigma root +1 for Jacobi).
 * Throws NoThetaRoot for Hermite/QHermite. */
PFun family_theta(const FamilySpec& spec, const HProblem& p);

/* Classical closed form normalized to f_k(theta_0) = 1: 2F1 for Jacobi,
 * 3F2 for Hahn, 4F3 for Wilson, 3phi2 for q-Hahn, 4phi3 for Askey-Wilson. */
CScalar family_closed_form(const FamilySpec& spec, int k, CScalar x);

/* Max deviation between the operator eigenfunctions (AtTheta0) and the
 * classical closed form over k <= kmax and 20 lattice sample points. */
double cross_check(const FamilySpec& spec, int kmax);

/* Per-form closed form for the monic Taylor coefficient partial_j f_k at
 * theta_{j/2} (binomial/q-binomial prefactors and one product). */
CScalar taylor_coeff_formula(const FamilySpec& spec, int j, int k);

/* Bare q-binomial [r choose k]_q = (q;q)_r / ((q;q)_k (q;q)_{r-k}),
 * with the lambda = +-1 limits. */
CScalar q_binomial_bare(const QContext& ctx, int r, int k);

} // namespace awc

#endif
