#include "awc/families.hpp"

#include <cmath>

#include "awc/series.hpp"

namespace awc {

const char* family_form_name(FamilyForm form) {
    switch (form) {
    case FamilyForm::Arithmetic: return "arithmetic";
    case FamilyForm::Quadratic: return "quadratic";
    case FamilyForm::Geometric: return "geometric";
    case FamilyForm::Trigonometric: return "trigonometric";
    case FamilyForm::Continuous: return "continuous";
    }
    return "?";
}

const char* family_name(FamilyName name) {
    switch (name) {
    case FamilyName::Jacobi: return "jacobi";
    case FamilyName::Hahn: return "hahn";
    case FamilyName::Wilson: return "wilson";
    case FamilyName::QHahn: return "qhahn";
    case FamilyName::AskeyWilson: return "askey-wilson";
    case FamilyName::Hermite: return "hermite";
    case FamilyName::QHermite: return "q-hermite";
    }
    return "?";
}

ChiData ChiData::arithmetic(CScalar g2, CScalar g1p, CScalar g0p, CScalar g1m, CScalar g0m) {
    ChiData chi;
    chi.form = FamilyForm::Arithmetic;
    chi.a_g2 = g2;
    chi.a_g1p = g1p;
    chi.a_g0p = g0p;
    chi.a_g1m = g1m;
    chi.a_g0m = g0m;
    return chi;
}

ChiData ChiData::quadratic(std::array<CScalar, 5> gammas_ascending) {
    ChiData chi;
    chi.form = FamilyForm::Quadratic;
    chi.q_gamma = gammas_ascending;
    return chi;
}

ChiData ChiData::geometric(CScalar q, CScalar g2p, CScalar g1p, CScalar g2m, CScalar g1m,
                           CScalar g0) {
    ChiData chi;
    chi.form = FamilyForm::Geometric;
    chi.q = q;
    chi.g_g2p = g2p;
    chi.g_g1p = g1p;
    chi.g_g2m = g2m;
    chi.g_g1m = g1m;
    chi.g_g0 = g0;
    return chi;
}

ChiData ChiData::trigonometric(CScalar q, std::array<CScalar, 5> gammas_m2_to_2) {
    ChiData chi;
    chi.form = FamilyForm::Trigonometric;
    chi.q = q;
    chi.t_gamma = gammas_m2_to_2;
    return chi;
}

ChiData ChiData::continuous(Poly sigma, Poly tau) {
    ChiData chi;
    chi.form = FamilyForm::Continuous;
    chi.c_sigma = std::move(sigma);
    chi.c_tau = std::move(tau);
    return chi;
}

Poly ChiData::chi_plus() const {
    switch (form) {
    case FamilyForm::Arithmetic: return Poly({a_g0p, a_g1p, a_g2});
    case FamilyForm::Geometric: return Poly({g_g0, g_g1p, g_g2p});
    default: throw Error(Errc::UnsupportedForm, "chi_plus only for arithmetic/geometric");
    }
}

Poly ChiData::chi_minus() const {
    switch (form) {
    case FamilyForm::Arithmetic: return Poly({a_g0m, a_g1m, a_g2});
    case FamilyForm::Geometric: return Poly({g_g0, g_g1m, g_g2m});
    default: throw Error(Errc::UnsupportedForm, "chi_minus only for arithmetic/geometric");
    }
}

Poly ChiData::chi_quartic() const {
    if (form != FamilyForm::Quadratic)
        throw Error(Errc::UnsupportedForm, "chi_quartic only for the quadratic form");
    return Poly({q_gamma[0], q_gamma[1], q_gamma[2], q_gamma[3], q_gamma[4]});
}

namespace {

CScalar lambda_gap(const QContext& ctx) {
    if (ctx.mode() != DegMode::Generic)
        throw Error(Errc::DegenerateChi,
                    "parameterization divides by lambda - 1/lambda, which vanishes");
    return ctx.lambda() - CScalar(1.0) / ctx.lambda();
}

} // namespace

HProblem chi_to_problem(const ChiData& chi, int dmax) {
    switch (chi.form) {
    case FamilyForm::Arithmetic: {
        const Poly cp = chi.chi_plus(), cm = chi.chi_minus();
        return HProblem(canonical_rep(FormTag::A, QContext::lambda_one()),
                        (cp + cm) * CScalar(0.5), cp - cm, dmax);
    }
    case FamilyForm::Quadratic: {
        const auto& g = chi.q_gamma;
        return HProblem(canonical_rep(FormTag::Q, QContext::lambda_one()),
                        Poly({g[0], g[2], g[4]}), Poly({g[1], g[3]}), dmax);
    }
    case FamilyForm::Geometric: {
        const QContext ctx = QContext::from_q(chi.q);
        const CScalar gap = lambda_gap(ctx);
        const Poly sigma({chi.g_g0, 0.5 * (chi.g_g1p + chi.g_g1m), 0.5 * (chi.g_g2p + chi.g_g2m)});
        const Poly tau({(chi.g_g1p - chi.g_g1m) / gap, (chi.g_g2p - chi.g_g2m) / gap});
        return HProblem(canonical_rep(FormTag::G, ctx), sigma, tau, dmax);
    }
    case FamilyForm::Trigonometric: {
        const QContext ctx = QContext::from_q(chi.q);
        const CScalar gap = lambda_gap(ctx);
        const auto& g = chi.t_gamma; // g[0] = gamma_{-2} .. g[4] = gamma_{2}
        const Poly sigma({g[2] - g[4] - g[0], g[3] + g[1], 2.0 * (g[4] + g[0])});
        const Poly tau({2.0 * (g[3] - g[1]) / gap, 4.0 * (g[4] - g[0]) / gap});
        return HProblem(canonical_rep(FormTag::T, ctx), sigma, tau, dmax);
    }
    case FamilyForm::Continuous:
        return HProblem(canonical_rep(FormTag::C, QContext::lambda_one()), chi.c_sigma,
                        chi.c_tau, dmax);
    }
    throw Error(Errc::UnsupportedForm, "unknown chi form");
}

namespace {

void require_canonical(const HProblem& p, FormTag tag) {
    const SymP rep = canonical_rep(tag, p.ctx());
    const double s = rep.scale();
    const bool ok = std::abs(p.P().a() - rep.a()) <= 1e-9 * s &&
                    std::abs(p.P().b() - rep.b()) <= 1e-9 * s &&
                    std::abs(p.P().c() - rep.c()) <= 1e-9 * s * s;
    if (!ok)
        throw Error(Errc::NonCanonicalForm,
                    "parameterization requires the canonical representative of the form; "
                    "conjugate the problem first");
}

} // namespace

ChiData chi_from_problem(const HProblem& p) {
    const FormTag tag = p.tag();
    require_canonical(p, tag);
    const Poly& sigma = p.sigma();
    const Poly& tau = p.tau();
    switch (tag) {
    case FormTag::A: {
        const Poly cp = sigma + tau * CScalar(0.5);
        const Poly cm = sigma - tau * CScalar(0.5);
        return ChiData::arithmetic(cp.coeff(2), cp.coeff(1), cp.coeff(0), cm.coeff(1),
                                   cm.coeff(0));
    }
    case FormTag::Q:
        return ChiData::quadratic({sigma.coeff(0), tau.coeff(0), sigma.coeff(1),
                                   tau.coeff(1), sigma.coeff(2)});
    case FormTag::G: {
        const CScalar gap = lambda_gap(p.ctx());
        return ChiData::geometric(p.ctx().q(),
                                  sigma.coeff(2) + 0.5 * gap * tau.coeff(1),
                                  sigma.coeff(1) + 0.5 * gap * tau.coeff(0),
                                  sigma.coeff(2) - 0.5 * gap * tau.coeff(1),
                                  sigma.coeff(1) - 0.5 * gap * tau.coeff(0), sigma.coeff(0));
    }
    case FormTag::T: {
        const CScalar gap = lambda_gap(p.ctx());
        const CScalar a2 = sigma.coeff(2), a1 = sigma.coeff(1), a0 = sigma.coeff(0);
        const CScalar b1 = tau.coeff(1), b0 = tau.coeff(0);
        return ChiData::trigonometric(
            p.ctx().q(), {0.25 * a2 - 0.125 * gap * b1, 0.5 * a1 - 0.25 * gap * b0,
                          a0 + 0.5 * a2, 0.5 * a1 + 0.25 * gap * b0,
                          0.25 * a2 + 0.125 * gap * b1});
    }
    case FormTag::C:
        return ChiData::continuous(sigma, tau);
    default:
        throw Error(Errc::UnsupportedForm, "no parameterization for forms O/E");
    }
}

FamilySpec FamilySpec::jacobi(CScalar alpha, CScalar beta) {
    return FamilySpec{FamilyName::Jacobi, {alpha, beta}, CScalar(0.0)};
}
FamilySpec FamilySpec::hahn(CScalar xi0p, CScalar xi1p, CScalar xi0m, CScalar xi1m) {
    return FamilySpec{FamilyName::Hahn, {xi0p, xi1p, xi0m, xi1m}, CScalar(0.0)};
}
FamilySpec FamilySpec::wilson(std::array<CScalar, 4> xi) {
    return FamilySpec{FamilyName::Wilson, {xi[0], xi[1], xi[2], xi[3]}, CScalar(0.0)};
}
FamilySpec FamilySpec::q_hahn(CScalar q, CScalar xi0p, CScalar xi1p, CScalar xi0m, CScalar xi1m) {
    return FamilySpec{FamilyName::QHahn, {xi0p, xi1p, xi0m, xi1m}, q};
}
FamilySpec FamilySpec::askey_wilson(CScalar q, std::array<CScalar, 4> xi) {
    return FamilySpec{FamilyName::AskeyWilson, {xi[0], xi[1], xi[2], xi[3]}, q};
}
FamilySpec FamilySpec::hermite() { return FamilySpec{FamilyName::Hermite, {}, CScalar(0.0)}; }
FamilySpec FamilySpec::q_hermite(CScalar q) { return FamilySpec{FamilyName::QHermite, {}, q}; }

ChiData family_chi(const FamilySpec& spec) {
    switch (spec.name) {
    case FamilyName::Jacobi: {
        const CScalar alpha = spec.params[0], beta = spec.params[1];
        return ChiData::continuous(Poly({CScalar(-1.0), CScalar(0.0), CScalar(1.0)}),
                                   Poly({alpha - beta, alpha + beta + CScalar(2.0)}));
    }
    case FamilyName::Hahn: {
        const CScalar s_p = spec.params[0] + spec.params[1], p_p = spec.params[0] * spec.params[1];
        const CScalar s_m = spec.params[2] + spec.params[3], p_m = spec.params[2] * spec.params[3];
        return ChiData::arithmetic(CScalar(1.0), -s_p, p_p, -s_m, p_m);
    }
    case FamilyName::Wilson: {
        // chi(t) = prod (t + xi_nu), ascending coefficients
        Poly chi = Poly::constant(CScalar(1.0));
        for (const CScalar& xi : spec.params) chi *= Poly({xi, CScalar(1.0)});
        return ChiData::quadratic({chi.coeff(0), chi.coeff(1), chi.coeff(2), chi.coeff(3),
                                   chi.coeff(4)});
    }
    case FamilyName::QHahn: {
        // chi^{+-}(x) = (1 - xi0 x)(1 - xi1 x) = 1 - (xi0+xi1) x + xi0 xi1 x^2
        const CScalar s_p = spec.params[0] + spec.params[1], p_p = spec.params[0] * spec.params[1];
        const CScalar s_m = spec.params[2] + spec.params[3], p_m = spec.params[2] * spec.params[3];
        return ChiData::geometric(spec.q, p_p, -s_p, p_m, -s_m, CScalar(1.0));
    }
    case FamilyName::AskeyWilson: {
        // chi(u) = u^-2 prod (1 - xi_nu u): gamma_{-2+k} = (-1)^k e_k(xi)
        Poly prod = Poly::constant(CScalar(1.0));
        for (const CScalar& xi : spec.params) prod *= Poly({CScalar(1.0), -xi});
        return ChiData::trigonometric(spec.q, {prod.coeff(0), prod.coeff(1), prod.coeff(2),
                                               prod.coeff(3), prod.coeff(4)});
    }
    case FamilyName::Hermite:
        return ChiData::continuous(Poly::constant(CScalar(1.0)), Poly({CScalar(0.0), CScalar(-2.0)}));
    case FamilyName::QHermite:
        return ChiData::trigonometric(spec.q, {CScalar(1.0), CScalar(0.0), CScalar(0.0),
                                               CScalar(0.0), CScalar(0.0)});
    }
    throw Error(Errc::UnsupportedForm, "unknown family");
}

HProblem family_problem(const FamilySpec& spec, int dmax) {
    return chi_to_problem(family_chi(spec), dmax);
}

namespace {

PFun oriented_theta(const HProblem& p, CScalar x0) {
    PFun best = make_pseq(p.P(), x0, +1);
    double best_res = std::abs(sigma_tilde_at(p.sigma(), p.tau(), best, -1, HalfInt(0)));
    PFun other = make_pseq(p.P(), x0, -1);
    const double other_res =
        std::abs(sigma_tilde_at(p.sigma(), p.tau(), other, -1, HalfInt(0)));
    if (other_res < best_res) {
        best = other;
        best_res = other_res;
    }
    const double scale =
        std::max({1.0, std::abs(p.sigma().eval(x0)),
                  std::abs(best.half_diff(HalfInt(0)) * p.tau().eval(x0))});
    if (best_res >= 1e-8 * scale)
        throw Error(Errc::ThetaMismatch, "family base point does not satisfy sigma~^-(0) = 0");
    return best;
}

} // namespace

PFun family_theta(const FamilySpec& spec, const HProblem& p) {
    switch (spec.name) {
    case FamilyName::Jacobi:
        return oriented_theta(p, CScalar(1.0));
    case FamilyName::Hahn:
        return oriented_theta(p, spec.params[2]); // xi0^-
    case FamilyName::Wilson:
        return oriented_theta(p, spec.params[0] * spec.params[0]); // xi0^2
    case FamilyName::QHahn:
        return oriented_theta(p, CScalar(1.0) / spec.params[2]); // 1/xi0^-
    case FamilyName::AskeyWilson:
        return oriented_theta(p, 0.5 * (spec.params[0] + CScalar(1.0) / spec.params[0]));
    case FamilyName::Hermite:
    case FamilyName::QHermite:
        throw Error(Errc::NoThetaRoot,
                    "no admissible Taylor base point: sigma^2 - delta tau^2 has no roots "
                    "for the (q-)Hermite data");
    }
    throw Error(Errc::UnsupportedForm, "unknown family");
}

CScalar family_closed_form(const FamilySpec& spec, int k, CScalar x) {
    switch (spec.name) {
    case FamilyName::Jacobi: {
        const CScalar alpha = spec.params[0], beta = spec.params[1];
        const CScalar num[] = {CScalar(-k), CScalar(k) + alpha + beta + CScalar(1.0)};
        const CScalar den[] = {alpha + CScalar(1.0)};
        return hyper_terminating(num, den, 0.5 * (CScalar(1.0) - x), k);
    }
    case FamilyName::Hahn: {
        const CScalar xi0p = spec.params[0], xi1p = spec.params[1];
        const CScalar xi0m = spec.params[2], xi1m = spec.params[3];
        const CScalar num[] = {CScalar(-k), xi0m - x,
                               CScalar(k - 1) + xi0m + xi1m - xi0p - xi1p};
        const CScalar den[] = {xi0m - xi0p, xi0m - xi1p};
        return hyper_terminating(num, den, CScalar(1.0), k);
    }
    case FamilyName::Wilson: {
        const CScalar t = std::sqrt(x);
        const CScalar xi0 = spec.params[0];
        const CScalar sum = spec.params[0] + spec.params[1] + spec.params[2] + spec.params[3];
        const CScalar num[] = {CScalar(-k), xi0 + t, xi0 - t, CScalar(k - 1) + sum};
        const CScalar den[] = {xi0 + spec.params[1], xi0 + spec.params[2],
                               xi0 + spec.params[3]};
        return hyper_terminating(num, den, CScalar(1.0), k);
    }
    case FamilyName::QHahn: {
        const CScalar q = spec.q;
        const CScalar xi0p = spec.params[0], xi1p = spec.params[1];
        const CScalar xi0m = spec.params[2], xi1m = spec.params[3];
        const CScalar num[] = {cpow_int(q, -k), CScalar(1.0) / (xi0m * x),
                               cpow_int(q, k - 1) * xi0p * xi1p / (xi0m * xi1m)};
        const CScalar den[] = {xi0p / xi0m, xi1p / xi0m};
        return qhyper_terminating(num, den, q, q * xi1m * x, k);
    }
    case FamilyName::AskeyWilson: {
        const CScalar q = spec.q;
        const CScalar u = x + std::sqrt(x * x - CScalar(1.0));
        const CScalar xi0 = spec.params[0];
        const CScalar prod = spec.params[0] * spec.params[1] * spec.params[2] * spec.params[3];
        const CScalar num[] = {cpow_int(q, -k), xi0 * u, xi0 / u, prod * cpow_int(q, k - 1)};
        const CScalar den[] = {xi0 * spec.params[1], xi0 * spec.params[2],
                               xi0 * spec.params[3]};
        return qhyper_terminating(num, den, q, q, k);
    }
    default:
        throw Error(Errc::NoThetaRoot,
                    "no hypergeometric expression for the (q-)Hermite families");
    }
}

double cross_check(const FamilySpec& spec, int kmax) {
    const HProblem p = family_problem(spec);
    const PFun theta = family_theta(spec, p);
    double worst = 0.0;
    for (int k = 0; k <= kmax; ++k) {
        const Eigenfunction f = eigenfunction(p, theta, k, Normalization::AtTheta0);
        for (int i = 0; i < 20; ++i) {
            const CScalar x = theta.at(HalfInt::halves(i));
            const CScalar lhs = f.poly.eval(x);
            const CScalar rhs = family_closed_form(spec, k, x);
            worst = std::max(worst, rel_residual(lhs, rhs));
        }
    }
    return worst;
}

CScalar q_binomial_bare(const QContext& ctx, int r, int k) {
    CScalar factor(1.0);
    switch (ctx.mode()) {
    case DegMode::LambdaOne: break;
    case DegMode::LambdaMinusOne:
        factor = CScalar(((static_cast<std::int64_t>(k) * (r - k)) % 2 == 0) ? 1.0 : -1.0);
        break;
    default:
        factor = cpow_int(ctx.lambda(), static_cast<std::int64_t>(k) * (r - k));
        break;
    }
    return factor * q_binomial(ctx, r, k);
}

namespace {

CScalar binomial(int k, int j) {
    CScalar acc(1.0);
    for (int i = 0; i < j; ++i) acc *= CScalar(k - i) / CScalar(i + 1.0);
    return acc;
}

std::int64_t choose2(int n) { return static_cast<std::int64_t>(n) * (n - 1) / 2; }

} // namespace

CScalar taylor_coeff_formula(const FamilySpec& spec, int j, int k) {
    if (j < 0 || j > k)
        throw Error(Errc::UnsupportedForm, "taylor_coeff_formula requires 0 <= j <= k");
    switch (spec.name) {
    case FamilyName::Jacobi: {
        const ChiData chi = family_chi(spec);
        const CScalar x0(1.0);
        const CScalar tau0 = chi.c_tau.eval(x0);
        const CScalar dsig = chi.c_sigma.derivative().eval(x0);
        const CScalar a2 = chi.c_sigma.coeff(2), b1 = chi.c_tau.coeff(1);
        CScalar acc = binomial(k, j);
        for (int i = j; i < k; ++i)
            acc *= (tau0 + CScalar(i) * dsig) / (a2 * CScalar(k + i - 1) + b1);
        return acc;
    }
    case FamilyName::Hahn: {
        const ChiData chi = family_chi(spec);
        const Poly cp = chi.chi_plus();
        const CScalar x0 = spec.params[2];
        const CScalar g2 = chi.a_g2;
        const CScalar shift = chi.a_g1p - chi.a_g1m - g2;
        CScalar acc = binomial(k, j);
        for (int i = j; i < k; ++i)
            acc *= cp.eval(x0 + CScalar(i)) / (g2 * CScalar(i + k) + shift);
        return acc;
    }
    case FamilyName::Wilson: {
        const CScalar t0 = spec.params[0];
        const ChiData chi = family_chi(spec);
        const CScalar g4 = chi.q_gamma[4], g3 = chi.q_gamma[3];
        CScalar acc = binomial(k, j);
        for (int i = j; i < k; ++i) {
            // chi_0(t) = chi(t)/(t + t0) = prod_{nu >= 1} (t + xi_nu)
            CScalar chi0(1.0);
            for (size_t nu = 1; nu < 4; ++nu) chi0 *= CScalar(t0 + spec.params[nu]) + CScalar(i);
            acc *= chi0 / (g4 * CScalar(i + k - 1) + g3);
        }
        return acc;
    }
    case FamilyName::QHahn: {
        const QContext ctx = QContext::from_q(spec.q);
        const ChiData chi = family_chi(spec);
        const Poly cp = chi.chi_plus();
        const CScalar x0 = CScalar(1.0) / spec.params[2];
        CScalar acc = q_binomial_bare(ctx, k, j) *
                      cpow_int(spec.q, -2 * (choose2(k) - choose2(j)));
        for (int i = j; i < k; ++i)
            acc *= (cp.eval(cpow_int(spec.q, i) * x0) / x0) /
                   (chi.g_g2p - chi.g_g2m * cpow_int(spec.q, 1 - i - k));
        return acc;
    }
    case FamilyName::AskeyWilson: {
        const QContext ctx = QContext::from_q(spec.q);
        const ChiData chi = family_chi(spec);
        const CScalar u0 = spec.params[0];
        const CScalar g2 = chi.t_gamma[4], gm2 = chi.t_gamma[0];
        CScalar acc = q_binomial_bare(ctx, k, j) *
                      cpow_int(spec.q, -3 * (choose2(k) - choose2(j)));
        for (int i = j; i < k; ++i) {
            // chi(u) = (u - 1/u0) u^-2 chi_0(u) with chi_0(u) = -xi0 prod_{nu>=1}(1 - xi_nu u)
            CScalar chi0 = -u0;
            for (size_t nu = 1; nu < 4; ++nu)
                chi0 *= CScalar(1.0) - spec.params[nu] * cpow_int(spec.q, i) * u0;
            acc *= (chi0 / (u0 * u0)) /
                   (2.0 * (g2 - gm2 * cpow_int(spec.q, 1 - i - k)));
        }
        return acc;
    }
    default:
        throw Error(Errc::NoThetaRoot,
                    "Taylor coefficient expressions require an admissible base point");
    }
}

} // namespace awc
