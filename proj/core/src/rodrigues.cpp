#include "awc/rodrigues.hpp"

#include <algorithm>
#include <cmath>

#include "awc/series.hpp"

namespace awc {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

CScalar cpow_general(CScalar base, CScalar exponent) {
    return std::exp(exponent * std::log(base)); // principal logarithm branch
}

std::int64_t choose2(std::int64_t n) { return n * (n - 1) / 2; }

} // namespace

RationalFactored::RationalFactored(CScalar zeta_, int r_, std::vector<CScalar> zeros_,
                                   std::vector<CScalar> poles_)
    : zeta(zeta_), r(r_), zeros(std::move(zeros_)), poles(std::move(poles_)) {
    if (std::abs(zeta) == 0.0)
        throw Error(Errc::DegenerateChi, "rational factor requires zeta != 0");
    // cancel matching zero/pole factors
    for (size_t i = 0; i < zeros.size();) {
        bool cancelled = false;
        for (size_t j = 0; j < poles.size(); ++j) {
            if (std::abs(zeros[i] - poles[j]) <=
                1e-12 * std::max(1.0, std::abs(zeros[i]))) {
                zeros.erase(zeros.begin() + static_cast<std::ptrdiff_t>(i));
                poles.erase(poles.begin() + static_cast<std::ptrdiff_t>(j));
                cancelled = true;
                break;
            }
        }
        if (!cancelled) ++i;
    }
}

CScalar RationalFactored::eval(CScalar x) const {
    CScalar acc = zeta * cpow_int(x, r);
    for (const CScalar& z : zeros) acc *= CScalar(1.0) - z * x;
    for (const CScalar& p : poles) acc /= CScalar(1.0) - p * x;
    return acc;
}

RationalFactored operator*(const RationalFactored& a, const RationalFactored& b) {
    std::vector<CScalar> zeros = a.zeros;
    zeros.insert(zeros.end(), b.zeros.begin(), b.zeros.end());
    std::vector<CScalar> poles = a.poles;
    poles.insert(poles.end(), b.poles.begin(), b.poles.end());
    return RationalFactored(a.zeta * b.zeta, a.r + b.r, std::move(zeros), std::move(poles));
}

FeqSolution::FeqSolution(RationalFactored R, CScalar q) : R_(std::move(R)), q_(q) {
    const double abs_q = std::abs(q_);
    if (abs_q > 0.99 && abs_q < 1.0 / 0.99)
        throw Error(Errc::QOutOfRange, "functional equation requires |q| <= 0.99 on either side of 1");
    if (abs_q >= 1.0 / 0.99) {
        // Inversion: F solves F(x) = R(x)F(qx) iff F(x) = S(x)F(x/q) with
        // S(x) = 1/R(x/q); as a factored function S has zeta' = q^r/zeta,
        // r' = -r and swapped, scaled zero/pole lists.
        std::vector<CScalar> zeros, poles;
        for (const CScalar& p : R_.poles) zeros.push_back(p / q_);
        for (const CScalar& z : R_.zeros) poles.push_back(z / q_);
        R_ = RationalFactored(cpow_int(q_, R_.r) / R_.zeta, -R_.r, std::move(zeros),
                              std::move(poles));
        q_ = CScalar(1.0) / q_;
    }
    gamma_ = (R_.r % 2 == 0 ? R_.zeta : -R_.zeta);
}

CScalar FeqSolution::eval(CScalar x) const {
    auto gh = [&](CScalar a) {
        return qpoch_infinite(a * x, q_) * qpoch_infinite(q_ / (a * x), q_);
    };
    CScalar acc(1.0);
    const bool gamma_trivial = std::abs(gamma_ - CScalar(1.0)) <= 1e-14;
    if (!gamma_trivial) acc *= gh(gamma_) / gh(CScalar(1.0));
    if (R_.r != 0) acc *= cpow_int(gh(CScalar(1.0)), R_.r);
    for (const CScalar& z : R_.zeros) acc *= qpoch_infinite(z * x, q_);
    for (const CScalar& p : R_.poles) acc /= qpoch_infinite(p * x, q_);
    return acc;
}

FeqSolution solve_feq(const RationalFactored& R, CScalar q) { return FeqSolution(R, q); }

namespace {

/* Leading coefficient and reciprocal-root factorization chi = zeta x^m prod(1 - xi x).
 * m is the multiplicity of the root at 0. */
struct MonomialFactors {
    CScalar zeta{1.0};
    int m = 0;
    std::vector<CScalar> xi;
};

MonomialFactors factor_reciprocal(const Poly& chi) {
    MonomialFactors out;
    if (chi.is_zero())
        throw Error(Errc::DegenerateChi, "chi factor vanishes identically");
    std::vector<CScalar> c = chi.coeffs();
    const double floor = 1e-12 * chi.linf();
    size_t first = 0;
    while (first < c.size() && std::abs(c[first]) <= floor) ++first;
    out.m = static_cast<int>(first);
    std::vector<CScalar> reduced(c.begin() + static_cast<std::ptrdiff_t>(first), c.end());
    Poly p(std::move(reduced));
    out.zeta = p.coeff(0);
    for (const CScalar& root : poly_roots(p, -1.0)) // keep multiplicities
        out.xi.push_back(CScalar(1.0) / root);
    return out;
}

/* Monic-style factorization chi = zeta prod (x - root), multiplicities kept. */
struct RootFactors {
    CScalar zeta{1.0};
    std::vector<CScalar> roots;
};

RootFactors factor_roots(const Poly& chi) {
    if (chi.is_zero())
        throw Error(Errc::DegenerateChi, "chi factor vanishes identically");
    RootFactors out;
    out.zeta = chi.leading();
    out.roots = poly_roots(chi, -1.0);
    return out;
}

} // namespace

RhoChain solve_rho(const HProblem& p, const PFun& theta) {
    RhoChain chain(p, theta);
    chain.form_ = p.tag();
    const ChiData chi = chi_from_problem(p); // requires the canonical representative

    switch (p.tag()) {
    case FormTag::A: {
        const RootFactors plus = factor_roots(chi.chi_plus());
        const RootFactors minus = factor_roots(chi.chi_minus());
        chain.arith_left_ = plus.roots;
        chain.arith_right_ = minus.roots;
        chain.arith_zeta_plus_ = plus.zeta;
        chain.arith_zeta_minus_ = minus.zeta;
        break;
    }
    case FormTag::Q: {
        const RootFactors f = factor_roots(chi.chi_quartic());
        chain.quad_lead_ = f.zeta;
        for (const CScalar& r : f.roots) chain.quad_xi_.push_back(-r);
        // theta_t = (t + t0)^2 on the canonical lattice: k2 = 4b = 1, t0 = k1/2
        if (std::abs(theta.k2() - CScalar(1.0)) > 1e-9)
            throw Error(Errc::NonCanonicalForm, "quadratic theta must be (t + t0)^2");
        chain.quad_t0_ = 0.5 * theta.k1();
        break;
    }
    case FormTag::G: {
        if (std::abs(p.ctx().q()) > 0.99)
            throw Error(Errc::QOutOfRange, "geometric weights require |q| <= 0.99");
        const MonomialFactors plus = factor_reciprocal(chi.chi_plus());
        const MonomialFactors minus = factor_reciprocal(chi.chi_minus());
        std::vector<CScalar> xp = plus.xi, xm = minus.xi;
        std::sort(xp.begin(), xp.end(), [](CScalar a, CScalar b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        });
        std::sort(xm.begin(), xm.end(), [](CScalar a, CScalar b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        });
        const size_t n = std::max(xp.size(), xm.size());
        xp.resize(n, CScalar(0.0));
        xm.resize(n, CScalar(0.0));
        for (size_t i = 0; i < n; ++i) chain.geom_pairs_.push_back({xp[i], xm[i]});
        chain.geom_mp_ = plus.m;
        chain.geom_mm_ = minus.m;
        chain.geom_zp_ = plus.zeta;
        chain.geom_zm_ = minus.zeta;
        const int m = minus.m - plus.m;
        const CScalar q = p.ctx().q();
        // rho_pure solves rho(x) = R(x) rho(qx) with R(x) = chi^-(qx)/chi^+(x),
        // a pure power q^{m-} (zeta^-/zeta^+) x^m
        const CScalar zeta_R = minus.zeta * cpow_int(q, minus.m) / plus.zeta;
        if (m != 0 || std::abs(zeta_R - CScalar(1.0)) > 1e-14)
            chain.geom_pure_.emplace(RationalFactored(zeta_R, m, {}, {}), q);
        break;
    }
    case FormTag::T: {
        if (std::abs(p.ctx().q()) > 0.99)
            throw Error(Errc::QOutOfRange, "trigonometric weights require |q| <= 0.99");
        // chi(u) = zeta u^{-s} prod (1 - xi u) from the Laurent coefficients
        Poly laurent({chi.t_gamma[0], chi.t_gamma[1], chi.t_gamma[2], chi.t_gamma[3],
                      chi.t_gamma[4]}); // coefficient of u^{k-2} at index k
        const MonomialFactors f = factor_reciprocal(laurent);
        chain.trig_s_ = 2 - f.m;
        chain.trig_zeta_ = f.zeta;
        chain.trig_xi_ = f.xi;
        if (chain.trig_s_ % 2 != 0 && std::abs(p.ctx().lambda()) > 0.99)
            throw Error(Errc::QOutOfRange,
                        "odd u^{-1} powers need base-lambda products: |lambda| <= 0.99");
        if (std::abs(theta.k0()) > 1e-9 * p.P().scale() ||
            std::abs(4.0 * theta.k1() * theta.k2() - CScalar(1.0)) > 1e-9)
            throw Error(Errc::NonCanonicalForm,
                        "trigonometric theta must be (q^t u0 + q^{-t}/u0)/2");
        chain.trig_u0_ = 2.0 * theta.k1();
        break;
    }
    case FormTag::C: {
        const Poly& sigma = p.sigma();
        const Poly& tau = p.tau();
        const double s = std::max(1.0, sigma.linf());
        if (sigma.degree() == 2) {
            const std::vector<CScalar> roots = poly_roots(sigma);
            const bool jacobi = roots.size() == 2 &&
                                std::abs(roots[0] + CScalar(1.0)) <= 1e-9 * s &&
                                std::abs(roots[1] - CScalar(1.0)) <= 1e-9 * s;
            if (!jacobi)
                throw Error(Errc::RamifiedOnly,
                            "continuous weights are implemented for the classical presets "
                            "sigma ~ x^2-1, x, 1 only; other data is ramified");
            // (1-x)^A (1+x)^B from rho'/rho = (tau - sigma')/sigma
            const CScalar a2 = sigma.coeff(2);
            const CScalar cc = (tau.coeff(1) - 2.0 * a2) / a2;
            const CScalar dd = tau.coeff(0) / a2;
            chain.cont_preset_ = RhoChain::ContPreset::Jacobi;
            chain.cont_e1_ = 0.5 * (cc + dd); // exponent of (1-x)
            chain.cont_e2_ = 0.5 * (cc - dd); // exponent of (1+x)
        } else if (sigma.degree() == 1) {
            if (std::abs(sigma.coeff(0)) > 1e-9 * s)
                throw Error(Errc::RamifiedOnly,
                            "continuous degree-1 weights are implemented for sigma ~ x only");
            chain.cont_preset_ = RhoChain::ContPreset::Laguerre;
            chain.cont_e1_ = tau.coeff(0) / sigma.coeff(1) - CScalar(1.0); // power of x
            chain.cont_e2_ = tau.coeff(1) / sigma.coeff(1);                // e^{e2 x}
        } else if (sigma.degree() == 0) {
            chain.cont_preset_ = RhoChain::ContPreset::Hermite;
            chain.cont_e1_ = tau.coeff(0) / sigma.coeff(0);
            chain.cont_e2_ = 0.5 * tau.coeff(1) / sigma.coeff(0); // exp(e2 x^2 + e1 x)
        } else {
            throw Error(Errc::RamifiedOnly, "sigma = 0 admits no weight");
        }
        break;
    }
    default:
        throw Error(Errc::UnsupportedForm, "no Rodrigues chain for forms O/E");
    }
    return chain;
}

CScalar RhoChain::rho_arith(int j, CScalar x) const {
    CScalar acc(1.0);
    const double hj = 0.5 * j;
    for (const CScalar& xi : arith_right_)
        acc *= recip_gamma(CScalar(1.0) + x - hj - xi);
    for (const CScalar& xi : arith_left_) {
        // e^{i pi (x + j/2)} keeps the functional equation exact: without it
        // the Gamma form flips sign on each unit step.
        acc *= std::exp(CScalar(0.0, kPi) * (x + hj)) *
               recip_gamma(CScalar(1.0) - x - hj + xi);
    }
    const bool zp = std::abs(arith_zeta_plus_ - CScalar(1.0)) > 1e-14;
    const bool zm = std::abs(arith_zeta_minus_ - CScalar(1.0)) > 1e-14;
    if (zp) acc *= cpow_general(arith_zeta_plus_, x + hj);
    if (zm) acc *= cpow_general(arith_zeta_minus_, -x + hj);
    return acc;
}

CScalar RhoChain::rho_quad(int j, HalfInt t) const {
    const CScalar u = CScalar(t.value()) + quad_t0_;
    const double hj = 0.5 * j;
    CScalar acc = cpow_int(quad_lead_, j);
    const double sign = (static_cast<std::int64_t>(quad_xi_.size()) * j) % 2 == 0 ? 1.0 : -1.0;
    acc *= sign;
    for (const CScalar& xi : quad_xi_)
        acc *= recip_gamma(CScalar(1.0) - xi - hj + u) * recip_gamma(CScalar(1.0) - xi - hj - u);
    return acc;
}

CScalar RhoChain::rho_geom(int j, CScalar x) const {
    const CScalar q = problem_->ctx().q();
    const CScalar lambda = problem_->ctx().lambda();
    CScalar acc(1.0);
    for (const auto& [xp, xm] : geom_pairs_)
        acc *= qpoch_infinite(xm * q * cpow_int(lambda, -j) * x, q) /
               qpoch_infinite(xp * cpow_int(lambda, j) * x, q);
    // pure-power block (zeta^+ lambda^{-m+})^j x^{j m+} F(lambda^{-j} x)
    if (geom_mp_ != 0 || geom_mm_ != 0 || std::abs(geom_zp_ - CScalar(1.0)) > 1e-14 ||
        std::abs(geom_zm_ - CScalar(1.0)) > 1e-14) {
        acc *= cpow_int(geom_zp_ * cpow_int(lambda, -geom_mp_), j) *
               cpow_int(x, static_cast<std::int64_t>(j) * geom_mp_);
        if (geom_pure_) acc *= geom_pure_->eval(cpow_int(lambda, -j) * x);
    }
    return acc;
}

CScalar RhoChain::rho_trig(int j, HalfInt t) const {
    const CScalar q = problem_->ctx().q();
    const CScalar lambda = problem_->ctx().lambda();
    const CScalar u = cpow_int(lambda, t.twice) * trig_u0_;
    CScalar acc = cpow_int(trig_zeta_, j);
    const CScalar lj = cpow_int(lambda, j);
    for (const CScalar& xi : trig_xi_)
        acc /= qpoch_infinite(xi * lj * u, q) * qpoch_infinite(xi * lj / u, q);

    const int s = trig_s_;
    if (s != 0) {
        const int pairs = std::abs(s) / 2;
        const int odd = std::abs(s) % 2;
        CScalar power(1.0);
        if (pairs > 0) {
            // (k_j^+ h^+)(k_j^- h^-) = (-lambda)^j q^{-C(j,2)} (lambda u^2;q)(lambda/u^2;q)
            const CScalar pair_term = cpow_int(-lambda, j) *
                                      cpow_int(CScalar(1.0) / q, choose2(j)) *
                                      qpoch_infinite(lambda * u * u, q) *
                                      qpoch_infinite(lambda / (u * u), q);
            power *= cpow_int(pair_term, pairs);
        }
        if (odd == 1) {
            // single factor k_j^+ h^+(u), k_j^+ = lambda^{j/2 - C(j,2)}
            const CScalar sqrt_lambda = std::sqrt(lambda);
            const CScalar kj = cpow_int(sqrt_lambda, j) * cpow_int(CScalar(1.0) / lambda, choose2(j));
            const CScalar hplus = qpoch_infinite(-sqrt_lambda * u, lambda) *
                                  qpoch_infinite(-sqrt_lambda / u, lambda);
            power *= kj * hplus;
        }
        acc *= (s > 0) ? power : CScalar(1.0) / power;
    }
    return acc;
}

CScalar RhoChain::rho_cont(int j, CScalar x) const {
    CScalar rho0;
    switch (cont_preset_) {
    case ContPreset::Jacobi:
        rho0 = cpow_general(CScalar(1.0) - x, cont_e1_) * cpow_general(CScalar(1.0) + x, cont_e2_);
        break;
    case ContPreset::Laguerre:
        rho0 = cpow_general(x, cont_e1_) * std::exp(cont_e2_ * x);
        break;
    case ContPreset::Hermite:
        rho0 = std::exp(cont_e2_ * x * x + cont_e1_ * x);
        break;
    }
    return rho0 * cpow_int(problem_->sigma().eval(x), j);
}

CScalar RhoChain::rho(int j, HalfInt t) const {
    switch (form_) {
    case FormTag::A: return rho_arith(j, theta_.at(t));
    case FormTag::Q: return rho_quad(j, t);
    case FormTag::G: return rho_geom(j, theta_.at(t));
    case FormTag::T: return rho_trig(j, t);
    default: return rho_cont(j, theta_.at(t));
    }
}

CScalar RhoChain::sigma_tilde(int sign, HalfInt t) const {
    return sigma_tilde_at(problem_->sigma(), problem_->tau(), theta_, sign, t);
}

CScalar rho1_from_rho(const RhoChain& chain, HalfInt t) {
    const HalfInt half = HalfInt::half();
    return 0.5 * (chain.rho(0, t - half) * chain.sigma_tilde(+1, t - half) +
                  chain.rho(0, t + half) * chain.sigma_tilde(-1, t + half));
}

CScalar rodrigues_eval(const RhoChain& chain, int k, HalfInt t) {
    std::vector<CScalar> nodes(static_cast<size_t>(k) + 1);
    std::vector<CScalar> values(static_cast<size_t>(k) + 1);
    for (int j = 0; j <= k; ++j) {
        const HalfInt tj = HalfInt::halves(t.twice + 2 * j - k);
        nodes[static_cast<size_t>(j)] = chain.theta().at(tj);
        values[static_cast<size_t>(j)] = chain.rho(k, tj);
    }
    CScalar prefactor(1.0);
    for (int j = 0; j < k; ++j) prefactor *= q_int(chain.problem().ctx(), k - j);
    return prefactor * divided_diff_nodes(nodes, values);
}

namespace {

double continuous_rodrigues_residual(const HProblem& p, int k) {
    const Poly& sigma = p.sigma();
    const Poly& tau = p.tau();
    const Poly dsigma = sigma.derivative();
    // N_0 = sigma^k; N_{i+1} = N_i (tau - sigma') + sigma N_i' - i N_i sigma'
    Poly n = Poly::constant(CScalar(1.0));
    for (int i = 0; i < k; ++i) n *= sigma;
    for (int i = 0; i < k; ++i)
        n = n * (tau - dsigma) + sigma * n.derivative() - n * dsigma * CScalar(i);

    CScalar mu_prod(1.0);
    double factorial = 1.0;
    for (int j = 0; j < k; ++j) {
        mu_prod *= p.mu(j) - p.mu(k);
        factorial *= static_cast<double>(k - j);
    }
    Poly lhs = eigen_matrix_oracle(p, k) * mu_prod;
    for (int i = 0; i < k; ++i) lhs *= sigma;
    return poly_residual(lhs, n * CScalar(factorial));
}

} // namespace

double rodrigues_verify(const HProblem& p, const RhoChain& chain, int k,
                        std::span<const HalfInt> sample_ts) {
    if (chain.form() == FormTag::C) return continuous_rodrigues_residual(p, k);

    const Poly fk = eigen_matrix_oracle(p, k); // monic, so partial_k f_k = 1
    CScalar mu_prod(1.0);
    CScalar qint_prod(1.0);
    for (int j = 0; j < k; ++j) {
        mu_prod *= p.mu(j) - p.mu(k);
        qint_prod *= q_int(p.ctx(), k - j);
    }

    std::vector<CScalar> lhs(sample_ts.size()), rhs(sample_ts.size());
    double scale = 0.0;
    for (size_t i = 0; i < sample_ts.size(); ++i) {
        const CScalar x = chain.theta().at(sample_ts[i]);
        lhs[i] = mu_prod * chain.rho(0, sample_ts[i]) * fk.eval(x);
        rhs[i] = qint_prod * rodrigues_eval(chain, k, sample_ts[i]);
        scale = std::max({scale, std::abs(lhs[i]), std::abs(rhs[i])});
    }
    double worst = 0.0;
    for (size_t i = 0; i < sample_ts.size(); ++i) {
        const double local = std::max({std::abs(lhs[i]), std::abs(rhs[i]), 1e-6 * scale, 1e-300});
        worst = std::max(worst, std::abs(lhs[i] - rhs[i]) / local);
    }
    return worst;
}

ChainWindowReport chain_window_residuals(const RhoChain& chain, int jmax, int half_steps) {
    ChainWindowReport report;
    const int lo = -half_steps / 2, hi = half_steps / 2;

    // functional equation rho(theta_t) sigma~^+(t) = rho(theta_{t+1}) sigma~^-(t+1)
    {
        std::vector<CScalar> lhs, rhs;
        double scale = 0.0;
        for (int n = lo; n + 2 <= hi; ++n) {
            const HalfInt t = HalfInt::halves(n);
            lhs.push_back(chain.rho(0, t) * chain.sigma_tilde(+1, t));
            rhs.push_back(chain.rho(0, t + HalfInt(1)) * chain.sigma_tilde(-1, t + HalfInt(1)));
            scale = std::max({scale, std::abs(lhs.back()), std::abs(rhs.back())});
        }
        for (size_t i = 0; i < lhs.size(); ++i) {
            const double local =
                std::max({std::abs(lhs[i]), std::abs(rhs[i]), 1e-6 * scale, 1e-300});
            report.functional_equation =
                std::max(report.functional_equation, std::abs(lhs[i] - rhs[i]) / local);
        }
    }

    // both grid recurrences against the closed forms, level by level
    const HalfInt half = HalfInt::half();
    for (int j = 0; j < jmax; ++j) {
        std::vector<CScalar> closed, rec_up, rec_dn;
        double scale = 0.0;
        for (int n = lo + j + 1; n <= hi - j - 1; ++n) {
            const HalfInt t = HalfInt::halves(n);
            const HalfInt arg_up = HalfInt::halves(t.twice + j - 1); // t + (j-1)/2
            const HalfInt arg_dn = HalfInt::halves(t.twice - j + 1); // t - (j-1)/2
            closed.push_back(chain.rho(j + 1, t));
            rec_up.push_back(chain.rho(j, t - half) * chain.sigma_tilde(+1, arg_up));
            rec_dn.push_back(chain.rho(j, t + half) * chain.sigma_tilde(-1, arg_dn));
            scale = std::max({scale, std::abs(closed.back()), std::abs(rec_up.back()),
                              std::abs(rec_dn.back())});
        }
        for (size_t i = 0; i < closed.size(); ++i) {
            const double local = std::max({std::abs(closed[i]), 1e-6 * scale, 1e-300});
            report.chain_consistency = std::max(
                report.chain_consistency, std::abs(closed[i] - rec_up[i]) / local);
            report.chain_consistency = std::max(
                report.chain_consistency, std::abs(closed[i] - rec_dn[i]) / local);
        }
    }
    return report;
}

} // namespace awc
