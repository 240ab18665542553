#include "awc/hyperop.hpp"

#include <algorithm>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "awc/series.hpp"

namespace awc {

HProblem::HProblem(SymP P, Poly sigma, Poly tau, int dmax)
    : P_(std::move(P)), sigma_(std::move(sigma)), tau_(std::move(tau)), dmax_(dmax) {
    if (sigma_.degree() > 2)
        throw Error(Errc::DegreeOverflow, "sigma must have degree <= 2");
    if (tau_.degree() > 1)
        throw Error(Errc::DegreeOverflow, "tau must have degree <= 1");
    tag_ = classify(P_).tag;
    if (tag_ == FormTag::O || tag_ == FormTag::E)
        throw Error(Errc::UnsupportedForm,
                    "forms O and E are not admissible for the hypergeometric operator");

    mu_.resize(static_cast<size_t>(dmax_) + 1);
    double mu_scale = 0.0;
    for (int k = 0; k <= dmax_; ++k) {
        mu_[static_cast<size_t>(k)] =
            -q_int(ctx(), k) * (alpha2() * q_int(ctx(), k - 1) + beta1() * q_int_sym(ctx(), k - 1));
        mu_scale = std::max(mu_scale, std::abs(mu_[static_cast<size_t>(k)]));
    }
    const double gap_tol = 1e-10 * std::max(mu_scale, 1e-300);
    for (int j = 0; j <= dmax_; ++j)
        for (int k = j + 1; k <= dmax_; ++k)
            if (std::abs(mu_[static_cast<size_t>(j)] - mu_[static_cast<size_t>(k)]) <= gap_tol) {
                std::ostringstream msg;
                msg << "eigenvalues mu_" << j << " and mu_" << k << " collide";
                throw Error(Errc::EigenvalueCollision, msg.str());
            }
}

CScalar HProblem::mu(int k) const {
    if (k >= 0 && k <= dmax_) return mu_[static_cast<size_t>(k)];
    return -q_int(ctx(), k) * (alpha2() * q_int(ctx(), k - 1) + beta1() * q_int_sym(ctx(), k - 1));
}

Poly op_l(const HProblem& p, const Poly& f) {
    const Poly df = op_d(p.P(), f);
    return p.sigma() * op_d(p.P(), df) + p.tau() * op_s(p.P(), df);
}

CScalar mu_diff_formula(const HProblem& p, int k, int j) {
    const QContext& ctx = p.ctx();
    return -q_int(ctx, k - j) *
           (p.alpha2() * q_int(ctx, j + k - 1) + p.beta1() * q_int_sym(ctx, j + k - 1));
}

namespace {

void check_degree(Poly& q, int bound, const char* what) {
    if (q.degree() <= bound) return;
    double spill = 0.0;
    for (int k = bound + 1; k <= q.degree(); ++k) spill = std::max(spill, std::abs(q.coeff(k)));
    if (spill > 1e-9 * std::max(q.linf(), 1e-300)) {
        std::ostringstream msg;
        msg << what << " exceeds degree " << bound << " beyond tolerance";
        throw Error(Errc::DegreeOverflow, msg.str());
    }
    std::vector<CScalar> trimmed(q.coeffs().begin(),
                                 q.coeffs().begin() + bound + 1);
    q = Poly(std::move(trimmed));
}

} // namespace

IterChain iterate_chain(const HProblem& p, int jmax) {
    const SymP& P = p.P();
    const CScalar a = P.a();
    const Poly amx = Poly({P.b(), a - CScalar(1.0)}); // A(x) - x
    const Poly delta = P.delta_poly();

    IterChain chain;
    chain.sigma.push_back(p.sigma());
    chain.tau.push_back(p.tau());
    for (int j = 0; j < jmax; ++j) {
        const Poly& sj = chain.sigma.back();
        const Poly& tj = chain.tau.back();
        Poly s_next = op_s(P, sj) + (a + CScalar(1.0)) * amx * op_s(P, tj) +
                      a * delta * op_d(P, tj);
        Poly t_next = op_d(P, sj) + a * op_s(P, tj) +
                      (a + CScalar(1.0)) * amx * op_d(P, tj);
        check_degree(s_next, 2, "sigma_j");
        check_degree(t_next, 1, "tau_j");
        chain.sigma.push_back(std::move(s_next));
        chain.tau.push_back(std::move(t_next));
    }
    return chain;
}

CScalar sigma_tilde_at(const Poly& sigma_j, const Poly& tau_j, const PFun& theta,
                       int sign, HalfInt t) {
    const CScalar x = theta.at(t);
    const CScalar half = theta.half_diff(t);
    const CScalar tail = half * tau_j.eval(x);
    return sigma_j.eval(x) + (sign >= 0 ? tail : -tail);
}

CScalar sigma_tilde(const HProblem& p, const PFun& theta, int sign, int j, HalfInt t) {
    const IterChain chain = iterate_chain(p, j);
    return sigma_tilde_at(chain.sigma[static_cast<size_t>(j)],
                          chain.tau[static_cast<size_t>(j)], theta, sign, t);
}

std::vector<CScalar> poly_roots(const Poly& p, double collapse_tol) {
    const int n = p.degree();
    if (n < 1) return {};

    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    const CScalar lead = p.leading();
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -p.coeff(i) / lead;
    for (int i = 1; i < n; ++i) companion(i, i - 1) = CScalar(1.0);

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    std::vector<CScalar> roots;
    roots.reserve(static_cast<size_t>(n));
    const Poly dp = p.derivative();
    for (int i = 0; i < n; ++i) {
        CScalar z = solver.eigenvalues()(i);
        const CScalar slope = dp.eval(z);
        if (std::abs(slope) > 1e-300) z -= p.eval(z) / slope; // one Newton polish
        roots.push_back(z);
    }
    std::sort(roots.begin(), roots.end(), [](CScalar lhs, CScalar rhs) {
        if (lhs.real() != rhs.real()) return lhs.real() < rhs.real();
        return lhs.imag() < rhs.imag();
    });
    if (collapse_tol < 0.0) return roots; // multiplicities kept
    std::vector<CScalar> unique;
    for (const CScalar& z : roots) {
        if (!unique.empty() &&
            std::abs(z - unique.back()) <= collapse_tol * std::max(1.0, std::abs(z)))
            continue;
        unique.push_back(z);
    }
    return unique;
}

namespace {

double theta_gate_scale(const HProblem& p, CScalar xi, CScalar half) {
    return std::max({1.0, std::abs(p.sigma().eval(xi)), std::abs(half * p.tau().eval(xi))});
}

} // namespace

std::vector<PFun> find_theta0(const HProblem& p) {
    Poly q_poly = p.sigma() * p.sigma() - p.P().delta_poly() * p.tau() * p.tau();
    if (q_poly.is_zero())
        throw Error(Errc::NoThetaRoot, "sigma^2 - delta tau^2 vanishes identically");
    if (q_poly.degree() < 1)
        throw Error(Errc::NoThetaRoot,
                    "sigma^2 - delta tau^2 has no roots, so no admissible Taylor "
                    "base point exists (Hermite-like data)");

    std::vector<PFun> out;
    for (const CScalar& xi : poly_roots(q_poly)) {
        PFun best = make_pseq(p.P(), xi, +1);
        double best_res = std::abs(sigma_tilde_at(p.sigma(), p.tau(), best, -1, HalfInt(0)));
        PFun other = make_pseq(p.P(), xi, -1);
        const double other_res =
            std::abs(sigma_tilde_at(p.sigma(), p.tau(), other, -1, HalfInt(0)));
        if (other_res < best_res) {
            best = other;
            best_res = other_res;
        }
        const double gate = 1e-8 * theta_gate_scale(p, xi, best.half_diff(HalfInt(0)));
        if (best_res < gate) out.push_back(best);
    }
    if (out.empty())
        throw Error(Errc::NoThetaRoot, "no orientation satisfies sigma~^-(0) = 0");
    return out;
}

Eigenfunction eigenfunction(const HProblem& p, const PFun& theta, int k,
                            Normalization normalization) {
    if (k < 0 || k > p.dmax())
        throw Error(Errc::UnsupportedForm, "eigenfunction index outside [0, dmax]");
    const double mismatch =
        std::abs(sigma_tilde_at(p.sigma(), p.tau(), theta, -1, HalfInt(0)));
    if (mismatch >= 1e-8 * theta_gate_scale(p, theta.at(HalfInt(0)), theta.half_diff(HalfInt(0))))
        throw Error(Errc::ThetaMismatch, "theta does not satisfy sigma~^-(0) = 0");

    const IterChain chain = iterate_chain(p, std::max(k - 1, 0));
    std::vector<CScalar> tau_on_lattice(static_cast<size_t>(std::max(k, 0)));
    for (int i = 0; i < k; ++i) {
        const CScalar v =
            chain.tau[static_cast<size_t>(i)].eval(theta.at(HalfInt::halves(i)));
        const double scale =
            std::max(1.0, chain.tau[static_cast<size_t>(i)].linf() *
                              std::max(1.0, std::abs(theta.at(HalfInt::halves(i)))));
        if (std::abs(v) < 1e-12 * scale)
            throw Error(Errc::ZeroTauOnLattice,
                        "tau_i vanishes on the Taylor lattice; the expansion is undefined");
        tau_on_lattice[static_cast<size_t>(i)] = v;
    }

    std::vector<CScalar> coeffs(static_cast<size_t>(k) + 1);
    const QContext& ctx = p.ctx();
    if (normalization == Normalization::Monic) {
        coeffs[static_cast<size_t>(k)] = CScalar(1.0);
        for (int j = k - 1; j >= 0; --j)
            coeffs[static_cast<size_t>(j)] = coeffs[static_cast<size_t>(j) + 1] *
                                             q_int(ctx, 1 + j) * tau_on_lattice[static_cast<size_t>(j)] /
                                             (p.mu(j) - p.mu(k));
    } else {
        coeffs[0] = CScalar(1.0);
        for (int j = 1; j <= k; ++j)
            coeffs[static_cast<size_t>(j)] = coeffs[static_cast<size_t>(j) - 1] *
                                             (p.mu(j - 1) - p.mu(k)) /
                                             (q_int(ctx, j) * tau_on_lattice[static_cast<size_t>(j) - 1]);
    }

    Eigenfunction out;
    out.k = k;
    out.normalization = normalization;
    out.taylor_seq = coeffs;
    out.poly = taylor_reconstruct(theta, coeffs);

    const Poly defect = op_l(p, out.poly) + out.poly * p.mu(k);
    out.residual = defect.linf() / std::max(out.poly.linf(), 1e-300);
    return out;
}

Poly eigen_matrix_oracle(const HProblem& p, int k) {
    if (k < 0 || k > p.dmax())
        throw Error(Errc::UnsupportedForm, "oracle index outside [0, dmax]");
    // columns[j] = coefficients of L x^j; lower degrees only (triangular)
    std::vector<Poly> columns;
    columns.reserve(static_cast<size_t>(k) + 1);
    for (int j = 0; j <= k; ++j) columns.push_back(op_l(p, Poly::monomial(j)));

    double mu_scale = 1.0;
    for (int j = 0; j <= k; ++j) mu_scale = std::max(mu_scale, std::abs(p.mu(j)));

    std::vector<CScalar> f(static_cast<size_t>(k) + 1, CScalar(0.0));
    f[static_cast<size_t>(k)] = CScalar(1.0);
    for (int i = k - 1; i >= 0; --i) {
        CScalar acc(0.0);
        for (int j = i + 1; j <= k; ++j)
            acc += columns[static_cast<size_t>(j)].coeff(i) * f[static_cast<size_t>(j)];
        const CScalar pivot = p.mu(k) - p.mu(i);
        if (std::abs(pivot) <= 1e-12 * mu_scale)
            throw Error(Errc::EigenvalueCollision, "zero pivot in the oracle solve");
        f[static_cast<size_t>(i)] = -acc / pivot;
    }
    return Poly(std::move(f));
}

} // namespace awc
