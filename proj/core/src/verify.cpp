#include "awc/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>

#include "awc/families.hpp"
#include "awc/ortho.hpp"
#include "awc/rodrigues.hpp"
#include "awc/series.hpp"

namespace awc::verify {

namespace {

/* Deterministic uniform helper; std::uniform_real_distribution is
 * implementation-defined, this is not. */
struct Rng {
    std::mt19937_64 gen;

    explicit Rng(std::uint64_t seed) : gen(seed) {}

    double u01() { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }
    double range(double lo, double hi) { return lo + (hi - lo) * u01(); }
    int index(int n) { return static_cast<int>(gen() % static_cast<std::uint64_t>(n)); }

    CScalar disc(double radius) {
        while (true) {
            const double re = range(-1.0, 1.0), im = range(-1.0, 1.0);
            if (re * re + im * im <= 1.0) return radius * CScalar(re, im);
        }
    }
    CScalar ring(double lo, double hi) {
        const double r = range(lo, hi), phi = range(0.0, 6.283185307179586);
        return CScalar(r * std::cos(phi), r * std::sin(phi));
    }
};

constexpr double kPi = 3.141592653589793238462643383279502884;

/* lambda in an annulus close to (but bounded away from) the unit circle and
 * away from +-1; keeps all lattice windows well conditioned. */
CScalar random_lambda(Rng& rng) {
    const double rho = rng.range(0.97, 0.99);
    const double phi = rng.range(0.25, kPi - 0.25);
    const double sign = rng.u01() < 0.5 ? 1.0 : -1.0;
    return CScalar(rho * std::cos(phi), sign * rho * std::sin(phi));
}

struct Instance {
    SymP P;
    CScalar x0;
};

/* Random symmetric polynomial of the requested form together with a base
 * point whose lattice stays within a few units over the degree-12 windows
 * (the Newton-basis round trip is exact only in exact arithmetic; unbounded
 * node growth would drown it in rounding). */
Instance random_instance(FormTag form, Rng& rng) {
    switch (form) {
    case FormTag::T: {
        const CScalar lambda = random_lambda(rng);
        const CScalar a = 0.5 * (lambda + CScalar(1.0) / lambda);
        const CScalar k0 = rng.disc(0.25);
        const CScalar k1 = rng.ring(0.4, 0.9);
        const CScalar k2 = rng.ring(0.4, 0.9);
        const CScalar b = (CScalar(1.0) - a) * k0;
        const CScalar c = 2.0 * b * k0 + 4.0 * k1 * k2 * (a * a - CScalar(1.0));
        return {SymP(a, b, c), k0 + k1 + k2};
    }
    case FormTag::G: {
        const CScalar lambda = random_lambda(rng);
        const CScalar a = 0.5 * (lambda + CScalar(1.0) / lambda);
        const CScalar k0 = rng.disc(0.25);
        const CScalar k1 = rng.ring(0.4, 0.9);
        const CScalar b = (CScalar(1.0) - a) * k0;
        return {SymP(a, b, 2.0 * b * k0), k0 + k1};
    }
    case FormTag::Q: {
        const CScalar k0 = rng.disc(0.3);
        const CScalar k1 = rng.ring(0.01, 0.04);
        const CScalar k2 = rng.ring(0.004, 0.01);
        const CScalar b = 0.25 * k2;
        const CScalar c = k2 * k2 / 16.0 - 0.25 * k1 * k1 + k0 * k2;
        return {SymP(CScalar(1.0), b, c), k0};
    }
    case FormTag::A: {
        const CScalar k1 = rng.ring(0.1, 0.25);
        return {SymP(CScalar(1.0), CScalar(0.0), -0.25 * k1 * k1), rng.disc(0.4)};
    }
    default:
        return {SymP(CScalar(1.0), CScalar(0.0), CScalar(0.0)), rng.disc(1.0)};
    }
}

Poly random_poly(Rng& rng, int deg) {
    std::vector<CScalar> c(static_cast<size_t>(deg) + 1);
    for (int k = 0; k < deg; ++k) c[static_cast<size_t>(k)] = rng.disc(1.0);
    c[static_cast<size_t>(deg)] = rng.ring(0.3, 1.0);
    return Poly(std::move(c));
}

constexpr FormTag kEigenForms[5] = {FormTag::T, FormTag::G, FormTag::Q, FormTag::A,
                                    FormTag::C};

struct ProblemWithTheta {
    HProblem p;
    PFun theta;
};

/* Random well-separated eigenvalue problem of a given form with an
 * admissible Taylor base point. */
ProblemWithTheta random_problem(FormTag form, Rng& rng, int dmax) {
    for (int attempt = 0; attempt < 500; ++attempt) {
        const Instance inst = random_instance(form, rng);
        Poly sigma = random_poly(rng, 2);
        Poly tau = random_poly(rng, 1);
        try {
            HProblem p(inst.P, sigma, tau, dmax);
            // separation guards keep the Taylor products well conditioned
            double mu_scale = 0.0;
            for (int k = 0; k <= dmax; ++k) mu_scale = std::max(mu_scale, std::abs(p.mu(k)));
            double min_gap = mu_scale;
            for (int j = 0; j <= dmax; ++j)
                for (int k = j + 1; k <= dmax; ++k)
                    min_gap = std::min(min_gap, std::abs(p.mu(j) - p.mu(k)));
            if (min_gap < 3e-3 * mu_scale) continue;

            std::vector<PFun> thetas = find_theta0(p);
            for (const PFun& theta : thetas) {
                const IterChain chain = iterate_chain(p, dmax);
                bool tau_ok = true;
                for (int i = 0; i < dmax && tau_ok; ++i) {
                    const CScalar v = chain.tau[static_cast<size_t>(i)].eval(
                        theta.at(HalfInt::halves(i)));
                    if (std::abs(v) < 1e-3) tau_ok = false;
                }
                if (tau_ok) return {p, theta};
            }
        } catch (const Error&) {
            // resample
        }
    }
    throw Error(Errc::UnsupportedForm, "could not draw a well-separated random problem");
}

FamilySpec preset(FamilyName name) {
    switch (name) {
    case FamilyName::Jacobi: return FamilySpec::jacobi(CScalar(0.5), CScalar(0.5));
    case FamilyName::Hahn: return FamilySpec::hahn(CScalar(2.0), CScalar(3.0), CScalar(5.0), CScalar(7.0));
    case FamilyName::Wilson:
        return FamilySpec::wilson({CScalar(0.3), CScalar(0.7), CScalar(1.1), CScalar(1.9)});
    case FamilyName::QHahn:
        return FamilySpec::q_hahn(CScalar(0.3), CScalar(2.0), CScalar(3.0), CScalar(5.0), CScalar(7.0));
    case FamilyName::AskeyWilson:
        return FamilySpec::askey_wilson(CScalar(0.25),
                                        {CScalar(0.9), CScalar(0.6), CScalar(0.3), CScalar(0.2)});
    case FamilyName::Hermite: return FamilySpec::hermite();
    case FamilyName::QHermite: return FamilySpec::q_hermite(CScalar(0.25));
    }
    throw Error(Errc::UnsupportedForm, "unknown preset");
}

// ---------------------------------------------------------------------------
// acceptance items

CheckResult taylor_round_trip(std::uint64_t seed, double tol) {
    CheckResult r{"taylor-round-trip",
                  "f = sum_k partial_k f(x_{k/2}) prod_{j<k}(y - x_j) for deg f <= 12",
                  0, 0.0, tol, false, ""};
    Rng rng(seed);
    const auto start = std::chrono::steady_clock::now();
    for (int n = 0; n < 1000; ++n) {
        const FormTag form = kEigenForms[n % 5];
        const Instance inst = random_instance(form, rng);
        const PSeq s = make_pseq(inst.P, inst.x0, rng.u01() < 0.5 ? +1 : -1);
        const Poly f = random_poly(rng, rng.index(13));
        const std::vector<CScalar> coeffs = taylor_coeffs(inst.P, s, f);
        const Poly back = taylor_reconstruct(s, coeffs);
        r.max_residual = std::max(r.max_residual, poly_residual(f, back));
        ++r.cases;
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.note = "runtime " + std::to_string(secs) + " s";
    r.pass = r.max_residual < tol && secs < 5.0;
    return r;
}

CheckResult partial_phi_lowering(std::uint64_t seed, double tol) {
    CheckResult r{"partial-phi-lowering",
                  "partial_k Phi_r(x,.) = lambda^{-k(r-k)} [r k]_q Phi_{r-k}(x,.)",
                  0, 0.0, tol, false, ""};
    Rng rng(seed);
    for (const FormTag form : kEigenForms) {
        for (int inst_i = 0; inst_i < 3; ++inst_i) {
            const Instance inst = random_instance(form, rng);
            const CScalar x = rng.disc(1.2);
            for (int rr = 0; rr <= 10; ++rr) {
                const Poly phi_r = phi_xy(inst.P, rr, x);
                for (int k = 0; k <= rr; ++k) {
                    const Poly lhs = op_partial(inst.P, phi_r, k);
                    const Poly rhs =
                        phi_xy(inst.P, rr - k, x) * q_binomial(inst.P.ctx(), rr, k);
                    r.max_residual = std::max(r.max_residual, poly_residual(lhs, rhs));
                    ++r.cases;
                }
            }
        }
    }
    r.pass = r.max_residual < tol;
    return r;
}

CheckResult operator_identities(std::uint64_t seed, double tol) {
    CheckResult r{"operator-identities",
                  "S(fg) = Sf Sg + delta Df Dg; D(fg) = Df Sg + Sf Dg; "
                  "DS = (a+1)(A-x)D^2 + aSD; S^2 = a delta D^2 + (a+1)(A-x)SD + 1",
                  0, 0.0, tol, false, ""};
    Rng rng(seed);
    for (int n = 0; n < 500; ++n) {
        const FormTag form = kEigenForms[n % 5];
        const Instance inst = random_instance(form, rng);
        const SymP& P = inst.P;
        const Poly f = random_poly(rng, rng.index(9));
        const Poly g = random_poly(rng, rng.index(9));
        const Poly delta = P.delta_poly();
        const CScalar a = P.a();
        const Poly amx({P.b(), a - CScalar(1.0)});

        const Poly sf = op_s(P, f), sg = op_s(P, g);
        const Poly df = op_d(P, f), dg = op_d(P, g);

        double worst = poly_residual(op_s(P, f * g), sf * sg + delta * df * dg);
        worst = std::max(worst, poly_residual(op_d(P, f * g), df * sg + sf * dg));
        worst = std::max(worst,
                         poly_residual(op_d(P, sf), (a + CScalar(1.0)) * amx * op_d(P, df) +
                                                        a * op_s(P, df)));
        worst = std::max(worst,
                         poly_residual(op_s(P, sf), a * delta * op_d(P, df) +
                                                        (a + CScalar(1.0)) * amx * op_s(P, df) +
                                                        f));
        r.max_residual = std::max(r.max_residual, worst);
        ++r.cases;
    }
    r.pass = r.max_residual < tol;
    return r;
}

CheckResult eigenfunction_dual_oracle(std::uint64_t seed, double tol) {
    CheckResult r{"eigenfunction-dual-oracle",
                  "Taylor-expansion eigenfunctions equal the triangular matrix solve, k <= 10",
                  0, 0.0, tol, false, ""};
    Rng rng(seed);
    for (const FormTag form : kEigenForms) {
        for (int inst_i = 0; inst_i < 20; ++inst_i) {
            const ProblemWithTheta pt = random_problem(form, rng, 12);
            for (int k = 0; k <= 10; ++k) {
                const Eigenfunction f = eigenfunction(pt.p, pt.theta, k, Normalization::Monic);
                const Poly oracle = eigen_matrix_oracle(pt.p, k);
                r.max_residual = std::max(r.max_residual, poly_residual(f.poly, oracle));
                ++r.cases;
            }
        }
    }
    r.pass = r.max_residual < tol;
    return r;
}

CheckResult classical_family_match(std::uint64_t, double tol) {
    CheckResult r{"classical-family-match",
                  "normalized eigenfunctions equal the 2F1/3F2/4F3/3phi2/4phi3 forms, k <= 8",
                  0, 0.0, tol, false, ""};
    for (const FamilyName name : {FamilyName::Hahn, FamilyName::Wilson, FamilyName::QHahn,
                                  FamilyName::AskeyWilson, FamilyName::Jacobi}) {
        r.max_residual = std::max(r.max_residual, cross_check(preset(name), 8));
        r.cases += 9 * 20;
    }
    r.pass = r.max_residual < tol;
    return r;
}

std::vector<HalfInt> half_odd_samples(int k) {
    std::vector<HalfInt> ts;
    for (int i = 0; i <= k + 1; ++i) {
        ts.push_back(HalfInt::halves(2 * i + 1));
        ts.push_back(HalfInt::halves(-2 * i - 1));
    }
    return ts;
}

CheckResult rodrigues_identity(std::uint64_t, double tol) {
    CheckResult r{"rodrigues-identity",
                  "prod(mu_j - mu_k) rho f_k = prod[k-j] D^k rho_k on the lattice, k <= 6",
                  0, 0.0, tol, false, ""};
    for (const FamilyName name :
         {FamilyName::Hahn, FamilyName::Wilson, FamilyName::QHahn, FamilyName::AskeyWilson}) {
        const FamilySpec spec = preset(name);
        const HProblem p = family_problem(spec);
        const PFun theta = family_theta(spec, p);
        const RhoChain chain = solve_rho(p, theta);
        for (int k = 0; k <= 6; ++k) {
            const std::vector<HalfInt> ts = half_odd_samples(k);
            r.max_residual =
                std::max(r.max_residual, rodrigues_verify(p, chain, k, ts));
            r.cases += static_cast<int>(ts.size());
        }
    }

    // trigonometric chain constants (-lambda)^j q^{-C(j,2)}, extracted from a
    // recurrence-built rho_j rather than from the closed form
    {
        const FamilySpec spec = preset(FamilyName::AskeyWilson);
        const HProblem p = family_problem(spec);
        const PFun theta = family_theta(spec, p);
        const RhoChain chain = solve_rho(p, theta);
        const CScalar lambda = p.ctx().lambda();
        const CScalar q = p.ctx().q();
        const HalfInt half = HalfInt::half();

        HalfInt t = HalfInt::halves(1);
        CScalar rec = chain.rho(0, t);
        for (int j = 1; j <= 6; ++j) {
            // rho_{j}(theta_t) = rho_{j-1}(theta_{t-1/2}) sigma~^+(t + (j-2)/2)
            rec = chain.rho(j - 1, t - half) *
                  chain.sigma_tilde(+1, HalfInt::halves(t.twice + j - 2));
            const CScalar u = cpow_int(lambda, t.twice) * spec.params[0];
            CScalar shape = qpoch_infinite(lambda * u * u, q) *
                            qpoch_infinite(lambda / (u * u), q);
            for (const CScalar& xi : spec.params) {
                shape /= qpoch_infinite(xi * cpow_int(lambda, j) * u, q);
                shape /= qpoch_infinite(xi * cpow_int(lambda, j) / u, q);
            }
            const CScalar expected = cpow_int(-lambda, j) *
                                     cpow_int(CScalar(1.0) / q,
                                              static_cast<std::int64_t>(j) * (j - 1) / 2);
            r.max_residual = std::max(r.max_residual, rel_residual(rec / shape, expected));
            ++r.cases;
        }
    }
    r.pass = r.max_residual < tol;
    return r;
}

CheckResult rho_chain_consistency(std::uint64_t, double tol) {
    CheckResult r{"rho-chain-consistency",
                  "closed-form rho_j vs both grid recurrences (j <= 8, 40 half-steps) and "
                  "rho(theta_t) sigma~^+(t) = rho(theta_{t+1}) sigma~^-(t+1)",
                  0, 0.0, tol, false, ""};
    double fe_worst = 0.0;
    for (const FamilyName name :
         {FamilyName::Hahn, FamilyName::Wilson, FamilyName::QHahn, FamilyName::AskeyWilson}) {
        const FamilySpec spec = preset(name);
        const HProblem p = family_problem(spec);
        const PFun theta = family_theta(spec, p);
        const RhoChain chain = solve_rho(p, theta);
        const ChainWindowReport report = chain_window_residuals(chain, 8, 40);
        r.max_residual = std::max(r.max_residual, report.chain_consistency);
        fe_worst = std::max(fe_worst, report.functional_equation);
        r.cases += 8 * 40 + 40;
    }
    r.note = "functional equation residual " + std::to_string(fe_worst) + " (< 1e-8)";
    r.pass = r.max_residual < tol && fe_worst < 1e-8;
    return r;
}

CheckResult discrete_orthogonality(std::uint64_t, double tol) {
    CheckResult r{"discrete-orthogonality",
                  "sum_i f_j(x_i) f_k(x_i) rho(x_i)(x_{i+1/2} - x_{i-1/2}) = 0 for j != k",
                  0, 0.0, tol, false, ""};
    // boundary-vanishing data: chi^+ roots at 8, 8.5 and chi^- roots at 0, -0.5
    const FamilySpec spec =
        FamilySpec::hahn(CScalar(8.0), CScalar(8.5), CScalar(0.0), CScalar(-0.5));
    const int m = 8;
    const HProblem p = family_problem(spec, m);
    const PFun theta = family_theta(spec, p);
    const RhoChain chain = solve_rho(p, theta);
    if (find_support(chain) != m)
        throw Error(Errc::BoundaryViolated, "support scan disagrees with the preset");
    const GridMeasure measure = make_grid_measure(chain, m);
    std::vector<Poly> fs;
    for (int k = 0; k <= m; ++k)
        fs.push_back(eigenfunction(p, theta, k, Normalization::AtTheta0).poly);
    r.max_residual = max_offdiagonal(gram(measure, fs));
    r.cases = (m + 1) * (m + 1);
    r.pass = r.max_residual < tol;
    return r;
}

CheckResult classification_invariance(std::uint64_t seed, double tol) {
    CheckResult r{"classification-invariance",
                  "all 7 canonical representatives classify to themselves; affine "
                  "conjugation preserves the tag (100 draws per form)",
                  0, 0.0, tol, false, ""};
    Rng rng(seed);
    int failures = 0;
    const FormTag all[7] = {FormTag::T, FormTag::G, FormTag::Q, FormTag::A,
                            FormTag::C, FormTag::O, FormTag::E};
    for (const FormTag tag : all) {
        const QContext ctx = (tag == FormTag::T || tag == FormTag::G)
                                 ? QContext::generic(random_lambda(rng))
                                 : (tag == FormTag::O || tag == FormTag::E
                                        ? QContext::lambda_minus_one()
                                        : QContext::lambda_one());
        const SymP rep = canonical_rep(tag, ctx);
        if (classify(rep).tag != tag) ++failures;
        ++r.cases;
        for (int n = 0; n < 100; ++n) {
            const AffineMap g{rng.ring(0.5, 2.0), rng.disc(2.0)};
            const SymP conj = affine_act(g, rep);
            const CanonicalForm cf = classify(conj);
            if (cf.tag != tag) ++failures;
            // witness maps the conjugate back onto the canonical representative
            const SymP back = affine_act(cf.witness, conj);
            const double s = rep.scale();
            const double wr = std::max({std::abs(back.a() - rep.a()) / s,
                                        std::abs(back.b() - rep.b()) / s,
                                        std::abs(back.c() - rep.c()) / (s * s)});
            r.max_residual = std::max(r.max_residual, wr);
            if (wr > 1e-6) ++failures;
            ++r.cases;
        }
    }
    r.note = std::to_string(failures) + " failures";
    r.pass = failures == 0;
    return r;
}

CheckResult functional_equation_solver(std::uint64_t seed, double tol) {
    CheckResult r{"functional-equation-solver",
                  "F(x) = R(x) F(qx) for factored rational R; product law F_{R1 R2} ~ F_{R1} F_{R2}",
                  0, 0.0, tol, false, ""};
    Rng rng(seed);
    for (int n = 0; n < 50; ++n) {
        const CScalar q = rng.ring(0.1, 0.9);
        std::vector<CScalar> zeros, poles;
        const int nz = rng.index(4), np = rng.index(4);
        for (int i = 0; i < nz; ++i) zeros.push_back(rng.ring(0.3, 2.0));
        for (int i = 0; i < np; ++i) poles.push_back(rng.ring(0.3, 2.0));
        const CScalar zeta = rng.ring(0.5, 2.0);
        const int rr = rng.index(5) - 2;
        const RationalFactored R(zeta, rr, zeros, poles);
        const FeqSolution F = solve_feq(R, q);
        for (int i = 0; i < 10; ++i) {
            const CScalar x = rng.ring(0.3, 0.9);
            r.max_residual =
                std::max(r.max_residual, rel_residual(F.eval(x) / F.eval(q * x), R.eval(x)));
            ++r.cases;
        }
    }
    // product law on the subclass meromorphic at 0 (zeta = 1, r = 0), where
    // the solution is unique up to one constant
    for (int n = 0; n < 10; ++n) {
        const CScalar q = rng.ring(0.2, 0.8);
        auto draw = [&](int nz, int np) {
            std::vector<CScalar> zeros, poles;
            for (int i = 0; i < nz; ++i) zeros.push_back(rng.ring(0.3, 1.5));
            for (int i = 0; i < np; ++i) poles.push_back(rng.ring(0.3, 1.5));
            return RationalFactored(CScalar(1.0), 0, zeros, poles);
        };
        const RationalFactored r1 = draw(1 + rng.index(3), rng.index(3));
        const RationalFactored r2 = draw(rng.index(3), 1 + rng.index(3));
        const FeqSolution f1 = solve_feq(r1, q), f2 = solve_feq(r2, q),
                          f12 = solve_feq(r1 * r2, q);
        CScalar ratio0(0.0);
        for (int i = 0; i < 10; ++i) {
            const CScalar x = rng.ring(0.2, 0.8);
            const CScalar ratio = f12.eval(x) / (f1.eval(x) * f2.eval(x));
            if (i == 0)
                ratio0 = ratio;
            else
                r.max_residual = std::max(r.max_residual, rel_residual(ratio, ratio0));
            ++r.cases;
        }
    }
    r.pass = r.max_residual < tol;
    return r;
}

// ---------------------------------------------------------------------------
// extra module invariants (suite only)

CheckResult scalar_kernel_identities(std::uint64_t seed, double tol) {
    CheckResult r{"scalar-kernel-identities",
                  "Gamma and q-shifted factorial functional equations; q-binomial "
                  "transition identity; terminating series edge sums",
                  0, 0.0, tol, false, ""};
    Rng rng(seed);
    for (int n = 0; n < 200; ++n) {
        const CScalar z = rng.disc(8.0);
        // 1/Gamma(z+1) = (1/Gamma(z))/z
        const CScalar lhs = recip_gamma(z + CScalar(1.0)) * z;
        r.max_residual = std::max(r.max_residual, rel_residual(lhs, recip_gamma(z), 1e-2));
        ++r.cases;
    }
    for (int n = 0; n < 100; ++n) {
        const CScalar q = rng.ring(0.1, 0.9);
        const CScalar a = rng.disc(2.0);
        const int nn = rng.index(6), mm = rng.index(6);
        // (a;q)_{n+m} = (a;q)_n (a q^n; q)_m
        r.max_residual = std::max(
            r.max_residual,
            rel_residual(qpoch_finite(a, q, nn + mm),
                         qpoch_finite(a, q, nn) * qpoch_finite(a * cpow_int(q, nn), q, mm)));
        // (a;q)_inf = (1-a)(aq;q)_inf
        r.max_residual = std::max(
            r.max_residual,
            rel_residual(qpoch_infinite(a, q),
                         (CScalar(1.0) - a) * qpoch_infinite(a * q, q)));
        ++r.cases;
    }
    for (int n = 0; n < 100; ++n) {
        const QContext ctx = QContext::generic(random_lambda(rng));
        const int j = rng.index(4), extra_k = rng.index(4), extra_r = rng.index(4);
        const int k = j + extra_k, rr = k + extra_r;
        // [r k][k j] = [r j][r-j k-j]
        const CScalar lhs = q_binomial(ctx, rr, k) * q_binomial(ctx, k, j);
        const CScalar rhs = q_binomial(ctx, rr, j) * q_binomial(ctx, rr - j, k - j);
        r.max_residual = std::max(r.max_residual, rel_residual(lhs, rhs));
        ++r.cases;
    }
    for (int n = 0; n < 50; ++n) {
        // 2F1(-1, b; c; z) = 1 - bz/c
        const CScalar b = rng.disc(2.0), c = rng.ring(0.5, 2.0), z = rng.disc(1.0);
        const CScalar num[] = {CScalar(-1.0), b};
        const CScalar den[] = {c};
        r.max_residual = std::max(
            r.max_residual,
            rel_residual(hyper_terminating(num, den, z, 1), CScalar(1.0) - b * z / c));
        ++r.cases;
    }
    r.pass = r.max_residual < tol;
    return r;
}

CheckResult pseq_lattice_identities(std::uint64_t seed, double tol) {
    CheckResult r{"pseq-lattice-identities",
                  "P(x_t, x_{t+-1/2}) = 0; shift relations; time reversal; even base points",
                  0, 0.0, tol, false, ""};
    Rng rng(seed);
    for (const FormTag form : kEigenForms) {
        for (int n = 0; n < 25; ++n) {
            const Instance inst = random_instance(form, rng);
            const int sign = rng.u01() < 0.5 ? 1 : -1;
            const PSeq s = make_pseq(inst.P, inst.x0, sign);
            const double scale = std::max(1.0, std::abs(inst.x0));
            for (int tt = -20; tt <= 20; ++tt) {
                const HalfInt t = HalfInt::halves(tt);
                const CScalar xt = s.at(t);
                const double root_res =
                    std::max(std::abs(inst.P.eval(xt, s.at(t + HalfInt::half()))),
                             std::abs(inst.P.eval(xt, s.at(t - HalfInt::half()))));
                r.max_residual = std::max(r.max_residual, root_res / (scale * scale));
            }
            const HalfInt t = HalfInt::halves(rng.index(17) - 8);
            const HalfInt h = HalfInt::halves(rng.index(9));
            r.max_residual = std::max(r.max_residual, shift_identities_check(s, t, h));
            // reversal: x_t with the other sign equals x_{-t}
            const PSeq rev = make_pseq(inst.P, inst.x0, -sign);
            for (int tt = -6; tt <= 6; ++tt)
                r.max_residual = std::max(
                    r.max_residual, rel_residual(rev.at(HalfInt::halves(tt)),
                                                 s.at(HalfInt::halves(-tt))));
            ++r.cases;
        }
    }
    // a base point at a root of delta gives an even sequence
    for (int n = 0; n < 10; ++n) {
        const Instance inst = random_instance(FormTag::T, rng);
        for (const CScalar& root : poly_roots(inst.P.delta_poly())) {
            const PSeq s = make_pseq(inst.P, root, +1);
            for (int tt = 1; tt <= 8; ++tt)
                r.max_residual = std::max(
                    r.max_residual, rel_residual(s.at(HalfInt::halves(tt)),
                                                 s.at(HalfInt::halves(-tt))));
            ++r.cases;
        }
    }
    r.pass = r.max_residual < tol;
    return r;
}

CheckResult pj_subsequence(std::uint64_t seed, double tol) {
    CheckResult r{"pj-subsequence",
                  "y_t = x_{jt} is a P_j-sequence with a_j = (l^j + l^-j)/2, "
                  "b_j = ((l^j + l^-j - 2)/(l + 1/l - 2)) b, delta_j = [j]^2 delta",
                  0, 0.0, tol, false, ""};
    Rng rng(seed);
    for (const FormTag form : kEigenForms) {
        for (int n = 0; n < 10; ++n) {
            const Instance inst = random_instance(form, rng);
            const PSeq s = make_pseq(inst.P, inst.x0, +1);
            for (int j = 1; j <= 4; ++j) {
                const SymP pj = pj_context(inst.P, j);
                for (int tt = -4; tt <= 4; ++tt) {
                    const CScalar yt = s.at(HalfInt::halves(2 * j * tt)); // y at t = tt
                    const CScalar yup = s.at(HalfInt::halves(j * (2 * tt + 1)));
                    const CScalar ydn = s.at(HalfInt::halves(j * (2 * tt - 1)));
                    const double scale = std::max({1.0, std::abs(yt), std::abs(yup)});
                    r.max_residual = std::max(
                        r.max_residual, std::abs(pj.eval(yt, yup)) / (scale * scale));
                    r.max_residual = std::max(
                        r.max_residual, std::abs(pj.eval(yt, ydn)) / (scale * scale));
                }
                ++r.cases;
            }
        }
    }
    // lambda = 1 limit: b_2 = 4b
    {
        const Instance inst = random_instance(FormTag::Q, rng);
        const SymP p2 = pj_context(inst.P, 2);
        r.max_residual =
            std::max(r.max_residual, rel_residual(p2.b(), 4.0 * inst.P.b(), 1e-6));
        ++r.cases;
    }
    r.pass = r.max_residual < tol;
    return r;
}

CheckResult phi_basis_consistency(std::uint64_t seed, double tol) {
    CheckResult r{"phi-basis-consistency",
                  "node products equal the P_j factor products; Phi_k(x,y) = (-1)^k Phi_k(y,x); "
                  "D Phi_k(.,y) = -[k] Phi_{k-1}(.,y)",
                  0, 0.0, tol, false, ""};
    Rng rng(seed);
    for (const FormTag form : kEigenForms) {
        for (int n = 0; n < 5; ++n) {
            const Instance inst = random_instance(form, rng);
            const SymP& P = inst.P;
            for (int k = 0; k <= 8; ++k) {
                const PSeq s = make_pseq(P, inst.x0, +1);
                // nodes x_0..x_{k-1} are the lattice of Phi_k around x_{(k-1)/2}
                const Poly from_nodes = phi_nodes(s, k);
                const Poly from_pj = phi_xy(P, k, s.at(HalfInt::halves(k - 1)));
                r.max_residual = std::max(r.max_residual, poly_residual(from_nodes, from_pj));

                const CScalar x = rng.disc(1.0), y = rng.disc(1.0);
                const CScalar sym = phi_xy(P, k, x).eval(y) -
                                    (k % 2 == 0 ? 1.0 : -1.0) * phi_xy(P, k, y).eval(x);
                r.max_residual =
                    std::max(r.max_residual, std::abs(sym) / std::max(1.0, std::abs(phi_xy(P, k, x).eval(y))));

                if (k >= 1) {
                    const Poly lhs = op_d(P, phi_yx(P, k, y));
                    const Poly rhs = phi_yx(P, k - 1, y) * (-q_int(P.ctx(), k));
                    r.max_residual = std::max(r.max_residual, poly_residual(lhs, rhs));
                }
                ++r.cases;
            }
        }
    }
    r.pass = r.max_residual < tol;
    return r;
}

CheckResult divided_difference_oracle(std::uint64_t seed, double tol) {
    CheckResult r{"divided-difference-oracle",
                  "sum_j f(x_{j-k/2})/prod_{i!=j}(x_{j-k/2} - x_{i-k/2}) = partial_k f(x_0)",
                  0, 0.0, tol, false, ""};
    Rng rng(seed);
    for (const FormTag form : {FormTag::T, FormTag::G, FormTag::Q, FormTag::A}) {
        for (int n = 0; n < 10; ++n) {
            const Instance inst = random_instance(form, rng);
            const PSeq s = make_pseq(inst.P, inst.x0, +1);
            const Poly f = random_poly(rng, 6);
            for (int k = 0; k <= 6; ++k) {
                const CScalar via_sum =
                    divided_diff_oracle(s, [&](CScalar x) { return f.eval(x); }, k);
                const CScalar via_op = op_partial(inst.P, f, k).eval(s.at(HalfInt(0)));
                r.max_residual = std::max(r.max_residual, rel_residual(via_sum, via_op));
                ++r.cases;
            }
        }
    }
    r.pass = r.max_residual < tol;
    return r;
}

CheckResult sd_commutation_criterion(std::uint64_t seed, double tol) {
    CheckResult r{"sd-commutation-criterion",
                  "S and D commute exactly for a = 1, b = 0 and not otherwise",
                  0, 0.0, tol, false, ""};
    Rng rng(seed);
    double classical = 0.0;
    for (int n = 0; n < 20; ++n) {
        const Poly f = random_poly(rng, 6);
        const SymP c_form(CScalar(1.0), CScalar(0.0), CScalar(0.0));
        const SymP a_form(CScalar(1.0), CScalar(0.0), rng.ring(0.1, 1.0));
        for (const SymP& P : {c_form, a_form}) {
            const Poly comm = op_s(P, op_d(P, f)) - op_d(P, op_s(P, f));
            classical = std::max(classical, comm.linf() / std::max(f.linf(), 1.0));
        }
        ++r.cases;
    }
    // a generic trigonometric instance does not commute
    const Instance inst = random_instance(FormTag::T, rng);
    const Poly f = Poly::monomial(3);
    const Poly comm = op_s(inst.P, op_d(inst.P, f)) - op_d(inst.P, op_s(inst.P, f));
    const double generic = comm.linf();
    r.max_residual = classical;
    r.note = "generic commutator magnitude " + std::to_string(generic);
    r.pass = classical < tol && generic > 1e-4;
    return r;
}

CheckResult iterated_operator_identities(std::uint64_t seed, double tol) {
    CheckResult r{"iterated-operator-identities",
                  "D(L_j - mu_j) = (L_{j+1} - mu_{j+1})D; sigma~ shift law; lattice "
                  "three-term recurrence; mu difference display; normalization ratio",
                  0, 0.0, tol, false, ""};
    Rng rng(seed);
    for (const FormTag form : kEigenForms) {
        const ProblemWithTheta pt = random_problem(form, rng, 12);
        const HProblem& p = pt.p;
        const IterChain chain = iterate_chain(p, 8);

        // intertwining on random f
        for (int j = 0; j <= 6; ++j) {
            const Poly f = random_poly(rng, 10);
            const Poly lf = chain.sigma[static_cast<size_t>(j)] * op_d(p.P(), op_d(p.P(), f)) +
                            chain.tau[static_cast<size_t>(j)] * op_s(p.P(), op_d(p.P(), f));
            const Poly lhs = op_d(p.P(), lf - f * p.mu(j));
            const Poly df = op_d(p.P(), f);
            const Poly rhs = chain.sigma[static_cast<size_t>(j + 1)] * op_d(p.P(), op_d(p.P(), df)) +
                             chain.tau[static_cast<size_t>(j + 1)] * op_s(p.P(), op_d(p.P(), df)) -
                             df * p.mu(j + 1);
            r.max_residual = std::max(r.max_residual, poly_residual(lhs, rhs));
            ++r.cases;
        }

        // sigma~_j^{+-}(t) = sigma~^{+-}(t +- j/2)
        for (int j = 0; j <= 6; ++j) {
            const HalfInt t = HalfInt::halves(rng.index(13) - 6);
            const CScalar up = sigma_tilde_at(chain.sigma[static_cast<size_t>(j)],
                                              chain.tau[static_cast<size_t>(j)], pt.theta, +1, t);
            const CScalar dn = sigma_tilde_at(chain.sigma[static_cast<size_t>(j)],
                                              chain.tau[static_cast<size_t>(j)], pt.theta, -1, t);
            r.max_residual = std::max(
                r.max_residual,
                rel_residual(up, sigma_tilde(p, pt.theta, +1, 0, HalfInt::halves(t.twice + j))));
            r.max_residual = std::max(
                r.max_residual,
                rel_residual(dn, sigma_tilde(p, pt.theta, -1, 0, HalfInt::halves(t.twice - j))));
            ++r.cases;
        }

        // sigma~_j^-(t) f^{(j+2)}(theta_t) + tau_j(theta_t) f^{(j+1)}(theta_{t+1/2})
        //   + (mu_k - mu_j) f^{(j)}(theta_t) = 0
        for (int k = 3; k <= 6; ++k) {
            const Eigenfunction f = eigenfunction(p, pt.theta, k, Normalization::Monic);
            for (int j = 0; j + 2 <= k; ++j) {
                Poly dj = f.poly;
                for (int i = 0; i < j; ++i) dj = op_d(p.P(), dj);
                const Poly dj1 = op_d(p.P(), dj);
                const Poly dj2 = op_d(p.P(), dj1);
                for (int probe = 0; probe < 10; ++probe) {
                    const HalfInt t = HalfInt::halves(rng.index(13) - 6);
                    const CScalar term1 =
                        sigma_tilde_at(chain.sigma[static_cast<size_t>(j)],
                                       chain.tau[static_cast<size_t>(j)], pt.theta, -1, t) *
                        dj2.eval(pt.theta.at(t));
                    const CScalar term2 =
                        chain.tau[static_cast<size_t>(j)].eval(pt.theta.at(t)) *
                        dj1.eval(pt.theta.at(t + HalfInt::half()));
                    const CScalar term3 = (p.mu(k) - p.mu(j)) * dj.eval(pt.theta.at(t));
                    const double scale = std::max(
                        {std::abs(term1), std::abs(term2), std::abs(term3), 1e-300});
                    r.max_residual =
                        std::max(r.max_residual, std::abs(term1 + term2 + term3) / scale);
                }
                ++r.cases;
            }
        }

        // displayed mu_k - mu_j formula
        for (int j = 0; j <= 10; ++j)
            for (int k = 0; k <= 10; ++k) {
                r.max_residual = std::max(
                    r.max_residual,
                    rel_residual(p.mu(k) - p.mu(j), mu_diff_formula(p, k, j),
                                 1e-3 * std::abs(p.mu(10))));
            }
        ++r.cases;

        // the two normalizations are proportional
        for (int k = 1; k <= 6; ++k) {
            const Eigenfunction monic = eigenfunction(p, pt.theta, k, Normalization::Monic);
            const Eigenfunction unit = eigenfunction(p, pt.theta, k, Normalization::AtTheta0);
            const CScalar ratio = monic.poly.coeff(k) / unit.poly.coeff(k);
            r.max_residual =
                std::max(r.max_residual, poly_residual(monic.poly, unit.poly * ratio));
            ++r.cases;
        }
    }
    r.pass = r.max_residual < tol;
    return r;
}

CheckResult taylor_coefficient_displays(std::uint64_t, double tol) {
    CheckResult r{"taylor-coefficient-displays",
                  "per-form closed forms for partial_j f_k(theta_{j/2}) match the operator route",
                  0, 0.0, tol, false, ""};
    for (const FamilyName name : {FamilyName::Hahn, FamilyName::Wilson, FamilyName::QHahn,
                                  FamilyName::AskeyWilson, FamilyName::Jacobi}) {
        const FamilySpec spec = preset(name);
        const HProblem p = family_problem(spec);
        const PFun theta = family_theta(spec, p);
        for (int k = 0; k <= 8; ++k) {
            const Eigenfunction f = eigenfunction(p, theta, k, Normalization::Monic);
            for (int j = 0; j <= k; ++j) {
                r.max_residual = std::max(
                    r.max_residual,
                    rel_residual(f.taylor_seq[static_cast<size_t>(j)],
                                 taylor_coeff_formula(spec, j, k)));
                ++r.cases;
            }
        }
    }
    r.pass = r.max_residual < tol;
    return r;
}

CheckResult wronskian_summation_by_parts(std::uint64_t seed, double tol) {
    CheckResult r{"wronskian-summation-by-parts",
                  "rho (f Lg - g Lf) = D(rho_1 W(f,g)) on the lattice; telescoping to the "
                  "boundary; S rho_1 = rho sigma and D rho_1 = rho tau",
                  0, 0.0, tol, false, ""};
    Rng rng(seed);
    const FamilySpec spec = preset(FamilyName::Hahn);
    const HProblem p = family_problem(spec);
    const PFun theta = family_theta(spec, p);
    const RhoChain chain = solve_rho(p, theta);
    const HalfInt half = HalfInt::half();

    auto d_of_lattice = [&](const std::function<CScalar(HalfInt)>& h, HalfInt t) {
        return (h(t + half) - h(t - half)) /
               (theta.at(t + half) - theta.at(t - half));
    };

    for (int n = 0; n < 10; ++n) {
        const Poly f = random_poly(rng, 6), g = random_poly(rng, 6);
        const Poly w = wronskian(p.P(), f, g);
        const Poly lf = op_l(p, f), lg = op_l(p, g);
        auto rho1w = [&](HalfInt t) { return chain.rho(1, t) * w.eval(theta.at(t)); };
        std::vector<CScalar> lhs_v, rhs_v;
        for (int probe = -5; probe <= 5; ++probe) {
            const HalfInt t = HalfInt::halves(2 * probe + 1);
            const CScalar x = theta.at(t);
            lhs_v.push_back(chain.rho(0, t) * (f.eval(x) * lg.eval(x) - g.eval(x) * lf.eval(x)));
            rhs_v.push_back(d_of_lattice(rho1w, t));
        }
        double scale = 0.0;
        for (size_t i = 0; i < lhs_v.size(); ++i)
            scale = std::max({scale, std::abs(lhs_v[i]), std::abs(rhs_v[i])});
        for (size_t i = 0; i < lhs_v.size(); ++i)
            r.max_residual =
                std::max(r.max_residual, std::abs(lhs_v[i] - rhs_v[i]) /
                                             std::max(1e-6 * scale, std::max(std::abs(lhs_v[i]), std::abs(rhs_v[i]))));
        ++r.cases;

        // telescoping over 0..m
        const int m = 6;
        CScalar total(0.0);
        for (int i = 0; i <= m; ++i) {
            const HalfInt t(i);
            total += d_of_lattice(rho1w, t) * (theta.at(t + half) - theta.at(t - half));
        }
        const CScalar boundary = rho1w(HalfInt(m) + half) - rho1w(HalfInt(0) - half);
        r.max_residual = std::max(r.max_residual,
                                  rel_residual(total, boundary, std::max(1.0, std::abs(boundary))));
        ++r.cases;
    }

    // lemma clauses: S rho_1 = rho sigma, D rho_1 = rho tau, and the averaged
    // rho_1 identity, all via two-point half-shift formulas
    for (int probe = -5; probe <= 5; ++probe) {
        const HalfInt t = HalfInt::halves(2 * probe + 1);
        auto rho1 = [&](HalfInt tt) { return chain.rho(1, tt); };
        const CScalar x = theta.at(t);
        const CScalar s_rho1 = 0.5 * (rho1(t + half) + rho1(t - half));
        const CScalar d_rho1 = d_of_lattice(rho1, t);
        const CScalar rho0 = chain.rho(0, t);
        r.max_residual = std::max(r.max_residual,
                                  rel_residual(s_rho1, rho0 * p.sigma().eval(x)));
        r.max_residual = std::max(r.max_residual,
                                  rel_residual(d_rho1, rho0 * p.tau().eval(x)));
        r.max_residual = std::max(r.max_residual,
                                  rel_residual(rho1_from_rho(chain, t), chain.rho(1, t)));
        ++r.cases;
    }
    r.pass = r.max_residual < tol;
    return r;
}

using ItemFn = CheckResult (*)(std::uint64_t, double);

struct Item {
    ItemFn fn;
    double tolerance;
    bool acceptance;
};

const Item kItems[] = {
    {taylor_round_trip, 1e-9, true},
    {partial_phi_lowering, 1e-9, true},
    {operator_identities, 1e-9, true},
    {eigenfunction_dual_oracle, 1e-8, true},
    {classical_family_match, 1e-8, true},
    {rodrigues_identity, 1e-7, true},
    {rho_chain_consistency, 1e-9, true},
    {discrete_orthogonality, 1e-9, true},
    {classification_invariance, 1e-6, true},
    {functional_equation_solver, 1e-10, true},
    {scalar_kernel_identities, 1e-10, false},
    {pseq_lattice_identities, 1e-10, false},
    {pj_subsequence, 1e-10, false},
    {phi_basis_consistency, 1e-9, false},
    {divided_difference_oracle, 1e-9, false},
    {sd_commutation_criterion, 1e-12, false},
    {iterated_operator_identities, 1e-8, false},
    {taylor_coefficient_displays, 1e-8, false},
    {wronskian_summation_by_parts, 1e-8, false},
};

std::vector<CheckResult> run_items(std::uint64_t seed, bool acceptance_only,
                                   std::optional<double> tol_override) {
    std::vector<CheckResult> out;
    std::uint64_t salt = 0;
    for (const Item& item : kItems) {
        ++salt;
        if (acceptance_only && !item.acceptance) continue;
        const double tol = tol_override.value_or(item.tolerance);
        out.push_back(item.fn(seed + 0x9e3779b97f4a7c15ull * salt, tol));
    }
    return out;
}

} // namespace

std::vector<CheckResult> run_acceptance(std::uint64_t seed) {
    return run_items(seed, true, std::nullopt);
}

std::vector<CheckResult> run_suite(std::uint64_t seed, std::optional<double> tol_override) {
    return run_items(seed, false, tol_override);
}

std::vector<CheckResult> list_suite() {
    std::vector<CheckResult> out;
    // run nothing: call each item with zero cases by constructing the static
    // metadata; the item functions fill name/statement before any work, so a
    // cheap dedicated listing keeps this simple
    const char* names_and_statements[][2] = {
        {"taylor-round-trip", "f = sum_k partial_k f(x_{k/2}) prod_{j<k}(y - x_j) for deg f <= 12"},
        {"partial-phi-lowering", "partial_k Phi_r(x,.) = lambda^{-k(r-k)} [r k]_q Phi_{r-k}(x,.)"},
        {"operator-identities",
         "S(fg) = Sf Sg + delta Df Dg; D(fg) = Df Sg + Sf Dg; DS = (a+1)(A-x)D^2 + aSD; "
         "S^2 = a delta D^2 + (a+1)(A-x)SD + 1"},
        {"eigenfunction-dual-oracle",
         "Taylor-expansion eigenfunctions equal the triangular matrix solve, k <= 10"},
        {"classical-family-match",
         "normalized eigenfunctions equal the 2F1/3F2/4F3/3phi2/4phi3 forms, k <= 8"},
        {"rodrigues-identity",
         "prod(mu_j - mu_k) rho f_k = prod[k-j] D^k rho_k on the lattice, k <= 6"},
        {"rho-chain-consistency",
         "closed-form rho_j vs both grid recurrences (j <= 8, 40 half-steps) and "
         "rho(theta_t) sigma~^+(t) = rho(theta_{t+1}) sigma~^-(t+1)"},
        {"discrete-orthogonality",
         "sum_i f_j(x_i) f_k(x_i) rho(x_i)(x_{i+1/2} - x_{i-1/2}) = 0 for j != k"},
        {"classification-invariance",
         "all 7 canonical representatives classify to themselves; affine conjugation "
         "preserves the tag (100 draws per form)"},
        {"functional-equation-solver",
         "F(x) = R(x) F(qx) for factored rational R; product law F_{R1 R2} ~ F_{R1} F_{R2}"},
        {"scalar-kernel-identities",
         "Gamma and q-shifted factorial functional equations; q-binomial transition "
         "identity; terminating series edge sums"},
        {"pseq-lattice-identities",
         "P(x_t, x_{t+-1/2}) = 0; shift relations; time reversal; even base points"},
        {"pj-subsequence",
         "y_t = x_{jt} is a P_j-sequence with a_j = (l^j + l^-j)/2, b_j = ((l^j + l^-j - 2)/"
         "(l + 1/l - 2)) b, delta_j = [j]^2 delta"},
        {"phi-basis-consistency",
         "node products equal the P_j factor products; Phi_k(x,y) = (-1)^k Phi_k(y,x); "
         "D Phi_k(.,y) = -[k] Phi_{k-1}(.,y)"},
        {"divided-difference-oracle",
         "sum_j f(x_{j-k/2})/prod_{i!=j}(x_{j-k/2} - x_{i-k/2}) = partial_k f(x_0)"},
        {"sd-commutation-criterion", "S and D commute exactly for a = 1, b = 0 and not otherwise"},
        {"iterated-operator-identities",
         "D(L_j - mu_j) = (L_{j+1} - mu_{j+1})D; sigma~ shift law; lattice three-term "
         "recurrence; mu difference display; normalization ratio"},
        {"taylor-coefficient-displays",
         "per-form closed forms for partial_j f_k(theta_{j/2}) match the operator route"},
        {"wronskian-summation-by-parts",
         "rho (f Lg - g Lf) = D(rho_1 W(f,g)) on the lattice; telescoping to the boundary; "
         "S rho_1 = rho sigma and D rho_1 = rho tau"},
    };
    size_t i = 0;
    for (const Item& item : kItems) {
        CheckResult r;
        r.name = names_and_statements[i][0];
        r.statement = names_and_statements[i][1];
        r.tolerance = item.tolerance;
        out.push_back(std::move(r));
        ++i;
    }
    return out;
}

} // namespace awc::verify
