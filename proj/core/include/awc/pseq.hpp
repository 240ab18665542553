#ifndef AWC_PSEQ_HPP
#define AWC_PSEQ_HPP

#include <string>

#include "awc/poly.hpp"
#include "awc/scalar.hpp"

namespace awc {

/* Affine map x -> zeta x + eta acting on symmetric polynomials by
 * (g.P)(x,y) = zeta^2 P(g^-1 x, g^-1 y). */
struct AffineMap {
    CScalar zeta{1.0};
    CScalar eta{0.0};

    CScalar apply(CScalar x) const { return zeta * x + eta; }
    CScalar apply_inverse(CScalar x) const { return (x - eta) / zeta; }
};

enum class FormTag { T, G, Q, A, C, O, E };

const char* form_name(FormTag tag);

/* Symmetric quadratic P(x,y) = x^2 + y^2 - 2axy - 2b(x+y) + c, together
 * with the deformation context for its main coefficient a. */
class SymP {
public:
    SymP(CScalar a, CScalar b, CScalar c);

    CScalar a() const { return a_; }
    CScalar b() const { return b_; }
    CScalar c() const { return c_; }
    const QContext& ctx() const { return ctx_; }

    /* P(x,y) = y^2 - 2A(x)y + B(x); delta = A^2 - B is the discriminant. */
    CScalar A_at(CScalar x) const { return a_ * x + b_; }
    CScalar B_at(CScalar x) const { return x * x - 2.0 * b_ * x + c_; }
    CScalar delta_at(CScalar x) const;
    CScalar eval(CScalar x, CScalar y) const;

    Poly A_poly() const { return Poly({b_, a_}); }
    Poly B_poly() const { return Poly({c_, -2.0 * b_, CScalar(1.0)}); }
    Poly delta_poly() const;

    /* max(1, |a|, |b|, sqrt|c|): the x-dimension scale used by the
     * classification thresholds. */
    double scale() const;

private:
    CScalar a_, b_, c_;
    QContext ctx_;
};

/* Degree-<=2 discriminant delta(x) = (a^2-1)x^2 + 2b(a+1)x + b^2 - c. */
Poly discriminant(const SymP& P);

SymP affine_act(const AffineMap& g, const SymP& P);

struct CanonicalForm {
    FormTag tag;
    AffineMap witness;          // maps the input onto the Table row representative
    CScalar a;
    int deg_delta;              // -1 encodes degree -infinity (delta = 0)
    int ev_p;                   // -1 encodes infinitely many even points
    std::string isotropy_label;
};

/* Orbit classification by the invariants (a, deg delta, number of even
 * points), with exact-zero detection at 1e-10 on normalized coefficients. */
CanonicalForm classify(const SymP& P);

/* Canonical representative (a,b,c) for each tag; T and G keep the main
 * coefficient of the given context. */
SymP canonical_rep(FormTag tag, const QContext& ctx);

enum class SeqMode { Generic, AOne, AMinusOne };

/* Closed-form lattice sequence x_t indexed by half-integers:
 *   Generic:  x_t = k0 + k1 lambda^{2t} + k2 lambda^{-2t}
 *   AOne:     x_t = k0 + k1 t + k2 t^2
 *   AMinusOne:x_t = k0 + (-1)^{2t} (k1 + k2 t)
 * Consecutive values x_{t +- 1/2} are the two roots of P(x_t, .). */
class PSeq {
public:
    PSeq(SymP parent, SeqMode mode, CScalar k0, CScalar k1, CScalar k2)
        : P_(std::move(parent)), mode_(mode), k0_(k0), k1_(k1), k2_(k2) {}

    CScalar at(HalfInt t) const;
    CScalar operator()(HalfInt t) const { return at(t); }

    const SymP& parent() const { return P_; }
    SeqMode mode() const { return mode_; }
    CScalar k0() const { return k0_; }
    CScalar k1() const { return k1_; }
    CScalar k2() const { return k2_; }

    /* Time reversal t -> -t (the other sequence with the same base point). */
    PSeq reversed() const;

    /* Half-step difference (x_{t+1/2} - x_{t-1/2})/2; equals a square root
     * of delta(x_t) with the branch fixed by the sequence itself. */
    CScalar half_diff(HalfInt t) const { return 0.5 * (at(t + HalfInt::half()) - at(t - HalfInt::half())); }

private:
    SymP P_;
    SeqMode mode_;
    CScalar k0_, k1_, k2_;
};

/* An entire P-function restricted to a half-integer lattice has the same
 * closed form with complex coefficients; the same type carries both. */
using PFun = PSeq;

/* Sequence with base point x0; sign selects which root of P(x0, .) becomes
 * x_{1/2} via x_{1/2} = A(x0) + sign * principal sqrt(delta(x0)). */
PSeq make_pseq(const SymP& P, CScalar x0, int sign);

/* Max normalized residual of the two shift relations
 *   (x_{t+h} + x_{t-h})/2 = q_int_sym(2h) x_t + bshift(2h) b
 *   x_{t+h} - x_{t-h}     = [2h] (x_{t+1/2} - x_{t-1/2})
 * and the three corollary identities linking x_{t+-1}, x_{t+-1/2}, delta. */
double shift_identities_check(const PSeq& s, HalfInt t, HalfInt h);

/* The symmetric polynomial P_j governing the subsequence y_t = x_{jt}:
 * main coefficient (lambda^j + lambda^-j)/2, translation
 * b_j = ((lambda^j + lambda^-j - 2)/(lambda + lambda^-1 - 2)) b and
 * discriminant [j]^2 delta. */
SymP pj_context(const SymP& P, int j);

/* Coefficient (lambda^j + lambda^-j - 2)/(lambda + lambda^-1 - 2) with its
 * continuity limits (j^2 at lambda = 1). */
CScalar bshift_coeff(const QContext& ctx, std::int64_t j);

} // namespace awc

#endif
