#include "awc/pseq.hpp"

#include <cmath>

#include "awc/series.hpp"

namespace awc {

namespace {
constexpr double kClassifyTol = 1e-10;
}

const char* form_name(FormTag tag) {
    switch (tag) {
    case FormTag::T: return "T";
    case FormTag::G: return "G";
    case FormTag::Q: return "Q";
    case FormTag::A: return "A";
    case FormTag::C: return "C";
    case FormTag::O: return "O";
    case FormTag::E: return "E";
    }
    return "?";
}

SymP::SymP(CScalar a, CScalar b, CScalar c)
    : a_(a), b_(b), c_(c), ctx_(QContext::from_main_coeff(a)) {}

CScalar SymP::delta_at(CScalar x) const {
    const CScalar A = A_at(x);
    return A * A - B_at(x);
}

CScalar SymP::eval(CScalar x, CScalar y) const {
    return y * y - 2.0 * A_at(x) * y + B_at(x);
}

Poly SymP::delta_poly() const {
    return Poly({b_ * b_ - c_, 2.0 * b_ * (a_ + CScalar(1.0)), a_ * a_ - CScalar(1.0)});
}

double SymP::scale() const {
    return std::max({1.0, std::abs(a_), std::abs(b_), std::sqrt(std::abs(c_))});
}

Poly discriminant(const SymP& P) { return P.delta_poly(); }

SymP affine_act(const AffineMap& g, const SymP& P) {
    if (std::abs(g.zeta) == 0.0)
        throw Error(Errc::SingularMap, "affine map requires zeta != 0");
    // zeta^2 P((x-eta)/zeta, (y-eta)/zeta) expanded back into (a, b, c):
    // the main coefficient is invariant.
    const CScalar a = P.a();
    const CScalar b = g.eta * (CScalar(1.0) - a) + P.b() * g.zeta;
    const CScalar c = 2.0 * g.eta * g.eta * (CScalar(1.0) - a) +
                      4.0 * P.b() * g.zeta * g.eta + P.c() * g.zeta * g.zeta;
    return SymP(a, b, c);
}

namespace {

const char* isotropy_label(FormTag tag) {
    switch (tag) {
    case FormTag::T: return "{+1,-1}";
    case FormTag::G: return "GL(C)";
    case FormTag::Q: return "trivial";
    case FormTag::A: return "T(C) x {+1,-1}";
    case FormTag::C: return "Aff(C)";
    case FormTag::O: return "{+1,-1}";
    case FormTag::E: return "GL(C)";
    }
    return "";
}

} // namespace

SymP canonical_rep(FormTag tag, const QContext& ctx) {
    const CScalar a = ctx.main_coeff();
    switch (tag) {
    case FormTag::T: return SymP(a, CScalar(0.0), a * a - CScalar(1.0));
    case FormTag::G: return SymP(a, CScalar(0.0), CScalar(0.0));
    case FormTag::Q: return SymP(CScalar(1.0), CScalar(0.25), CScalar(0.0625));
    case FormTag::A: return SymP(CScalar(1.0), CScalar(0.0), CScalar(-0.25));
    case FormTag::C: return SymP(CScalar(1.0), CScalar(0.0), CScalar(0.0));
    case FormTag::O: return SymP(CScalar(-1.0), CScalar(0.0), CScalar(-0.25));
    case FormTag::E: return SymP(CScalar(-1.0), CScalar(0.0), CScalar(0.0));
    }
    throw Error(Errc::UnsupportedForm, "unknown canonical form");
}

CanonicalForm classify(const SymP& P) {
    const CScalar a = P.a(), b = P.b(), c = P.c();
    const double s = P.scale();

    CanonicalForm out;
    out.a = a;

    const bool a_one = std::abs(a - CScalar(1.0)) <= kClassifyTol * std::max(1.0, std::abs(a));
    const bool a_minus_one = std::abs(a + CScalar(1.0)) <= kClassifyTol * std::max(1.0, std::abs(a));

    if (!a_one && !a_minus_one) {
        // deg delta = 2 automatically; T vs G by root multiplicity of delta.
        const CScalar d2 = a * a - CScalar(1.0);
        const CScalar d1 = 2.0 * b * (a + CScalar(1.0));
        const CScalar d0 = b * b - c;
        const CScalar disc = d1 * d1 - 4.0 * d2 * d0;
        const double disc_scale = std::norm(d1) + 4.0 * std::abs(d2) * std::abs(d0);
        const bool double_root = std::abs(disc) <= kClassifyTol * std::max(disc_scale, 1e-30);
        out.deg_delta = 2;
        if (double_root) {
            out.tag = FormTag::G;
            out.ev_p = 1;
            // b' = eta(1-a) + b zeta = 0 with zeta = 1
            out.witness = AffineMap{CScalar(1.0), b / (a - CScalar(1.0))};
        } else {
            out.tag = FormTag::T;
            out.ev_p = 2;
            // After centering (b' = 0) the constant of delta is
            // zeta^2 (c + 2b^2/(a-1)); scale it onto a^2 - 1.
            const CScalar denom = c + 2.0 * b * b / (a - CScalar(1.0));
            const CScalar zeta = std::sqrt((a * a - CScalar(1.0)) / denom);
            out.witness = AffineMap{zeta, b * zeta / (a - CScalar(1.0))};
        }
    } else if (a_one) {
        const CScalar d0 = b * b - c;
        if (std::abs(b) > kClassifyTol * s) {
            out.tag = FormTag::Q;
            out.deg_delta = 1;
            out.ev_p = 1;
            const CScalar zeta = CScalar(1.0) / (4.0 * b);
            out.witness = AffineMap{zeta, (b * b - c) / (16.0 * b * b)};
        } else if (std::abs(d0) > kClassifyTol * s * s) {
            out.tag = FormTag::A;
            out.deg_delta = 0;
            out.ev_p = 0;
            out.witness = AffineMap{std::sqrt(CScalar(-0.25) / c), CScalar(0.0)};
        } else {
            out.tag = FormTag::C;
            out.deg_delta = -1;
            out.ev_p = -1;
            out.witness = AffineMap{};
        }
    } else {
        const CScalar d0 = b * b - c;
        if (std::abs(d0) > kClassifyTol * s * s) {
            out.tag = FormTag::O;
            out.deg_delta = 0;
            out.ev_p = 0;
            out.witness = AffineMap{std::sqrt(CScalar(0.25) / d0), -0.5 * b * std::sqrt(CScalar(0.25) / d0)};
        } else {
            out.tag = FormTag::E;
            out.deg_delta = -1;
            out.ev_p = -1;
            out.witness = AffineMap{CScalar(1.0), -0.5 * b};
        }
    }
    out.isotropy_label = isotropy_label(out.tag);
    return out;
}

CScalar PSeq::at(HalfInt t) const {
    switch (mode_) {
    case SeqMode::Generic: {
        const CScalar lambda = P_.ctx().lambda();
        return k0_ + k1_ * cpow_int(lambda, t.twice) + k2_ * cpow_int(lambda, -t.twice);
    }
    case SeqMode::AOne: {
        const double tv = t.value();
        return k0_ + k1_ * tv + k2_ * tv * tv;
    }
    case SeqMode::AMinusOne: {
        const double sgn = (t.twice % 2 == 0) ? 1.0 : -1.0;
        return k0_ + sgn * (k1_ + k2_ * t.value());
    }
    }
    return CScalar(0.0);
}

PSeq PSeq::reversed() const {
    switch (mode_) {
    case SeqMode::Generic: return PSeq(P_, mode_, k0_, k2_, k1_);
    case SeqMode::AOne: return PSeq(P_, mode_, k0_, -k1_, k2_);
    case SeqMode::AMinusOne: return PSeq(P_, mode_, k0_, k1_, -k2_);
    }
    return *this;
}

PSeq make_pseq(const SymP& P, CScalar x0, int sign) {
    const CScalar a = P.a(), b = P.b(), c = P.c();
    const CScalar root = std::sqrt(P.delta_at(x0));
    const CScalar x_half = P.A_at(x0) + (sign >= 0 ? root : -root);

    switch (P.ctx().mode()) {
    case DegMode::LambdaOne: {
        // x_t = k0 + k1 t + k2 t^2 with k0 = x0, k2 = 4b, k1 = 2 sign sqrt(delta(x0))
        const CScalar k2 = 4.0 * b;
        const CScalar k1 = 2.0 * (x_half - P.A_at(x0));
        return PSeq(P, SeqMode::AOne, x0, k1, k2);
    }
    case DegMode::LambdaMinusOne: {
        // x_t = k0 + (-1)^{2t}(k1 + k2 t) with k0 = b/2, k2 = -2 sign sqrt(delta(x0))
        const CScalar k0 = 0.5 * b;
        const CScalar k1 = x0 - k0;
        const CScalar k2 = -2.0 * (x_half - P.A_at(x0));
        return PSeq(P, SeqMode::AMinusOne, k0, k1, k2);
    }
    default: {
        const CScalar lambda = P.ctx().lambda();
        const CScalar k0 = b / (CScalar(1.0) - a);
        const CScalar sum = x0 - k0;                              // k1 + k2
        const CScalar prod = (c - 2.0 * b * k0) / (4.0 * (a * a - CScalar(1.0)));
        const CScalar disc = std::sqrt(sum * sum - 4.0 * prod);
        const CScalar z1 = 0.5 * (sum + disc);
        const CScalar z2 = 0.5 * (sum - disc);
        // Pick the assignment whose x_{1/2} matches the requested root.
        const CScalar cand1 = k0 + z1 * lambda + z2 / lambda;
        const CScalar cand2 = k0 + z2 * lambda + z1 / lambda;
        if (std::abs(cand1 - x_half) <= std::abs(cand2 - x_half))
            return PSeq(P, SeqMode::Generic, k0, z1, z2);
        return PSeq(P, SeqMode::Generic, k0, z2, z1);
    }
    }
}

CScalar bshift_coeff(const QContext& ctx, std::int64_t j) {
    switch (ctx.mode()) {
    case DegMode::LambdaOne:
        return CScalar(static_cast<double>(j) * static_cast<double>(j));
    case DegMode::LambdaMinusOne:
        return CScalar((j % 2 == 0) ? 0.0 : 1.0);
    default: {
        const CScalar lambda = ctx.lambda();
        const CScalar num = cpow_int(lambda, j) + cpow_int(lambda, -j) - CScalar(2.0);
        const CScalar den = lambda + CScalar(1.0) / lambda - CScalar(2.0);
        return num / den;
    }
    }
}

double shift_identities_check(const PSeq& s, HalfInt t, HalfInt h) {
    const SymP& P = s.parent();
    const QContext& ctx = P.ctx();
    const HalfInt half = HalfInt::half();
    const CScalar xt = s.at(t);
    const CScalar xp = s.at(t + h), xm = s.at(t - h);
    const CScalar x_up = s.at(t + half), x_dn = s.at(t - half);
    const CScalar x1 = s.at(t + HalfInt(1)), xm1 = s.at(t - HalfInt(1));
    const CScalar a = P.a();

    auto norm = [](CScalar lhs, CScalar rhs) {
        return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1.0});
    };

    double worst = 0.0;
    // mean shift: (x_{t+h} + x_{t-h})/2 = ((l^{2h}+l^{-2h})/2) x_t + bshift(2h) b
    worst = std::max(worst, norm(0.5 * (xp + xm),
                                 q_int_sym(ctx, h.twice) * xt +
                                     bshift_coeff(ctx, h.twice) * P.b()));
    // difference shift: x_{t+h} - x_{t-h} = [2h](x_{t+1/2} - x_{t-1/2})
    worst = std::max(worst, norm(xp - xm, q_int(ctx, h.twice) * (x_up - x_dn)));
    // corollary (a), (b), (c)
    worst = std::max(worst, norm(x1 - xm1, 2.0 * a * (x_up - x_dn)));
    worst = std::max(worst, norm(8.0 * a * P.delta_at(xt), (x1 - xm1) * (x_up - x_dn)));
    worst = std::max(worst, norm(x1 - 2.0 * xt + xm1,
                                 4.0 * (a + CScalar(1.0)) * (P.A_at(xt) - xt)));
    return worst;
}

SymP pj_context(const SymP& P, int j) {
    if (j < 1) throw Error(Errc::UnsupportedForm, "pj_context requires j >= 1");
    const QContext& ctx = P.ctx();
    const CScalar aj = q_int_sym(ctx, j);
    const CScalar bj = bshift_coeff(ctx, j) * P.b();
    const CScalar qj = q_int(ctx, j);
    // delta_j(x) = [j]^2 delta(x); matching constant terms gives c_j.
    const CScalar cj = bj * bj - qj * qj * (P.b() * P.b() - P.c());
    return SymP(aj, bj, cj);
}

} // namespace awc
