#include "awc/awcalc.hpp"

#include "awc/series.hpp"

namespace awc {

namespace {

/* Power sums p_k = u^k + v^k and difference quotients d_k = (u^k - v^k)/(u - v)
 * share the recurrence w_k = 2A w_{k-1} - B w_{k-2}. */
std::vector<Poly> recurrence_table(const SymP& P, int kmax, Poly w0, Poly w1) {
    std::vector<Poly> w;
    w.reserve(static_cast<size_t>(kmax) + 1);
    w.push_back(std::move(w0));
    if (kmax >= 1) w.push_back(std::move(w1));
    const Poly twoA = P.A_poly() * CScalar(2.0);
    const Poly B = P.B_poly();
    for (int k = 2; k <= kmax; ++k)
        w.push_back(twoA * w[static_cast<size_t>(k - 1)] - B * w[static_cast<size_t>(k - 2)]);
    return w;
}

} // namespace

Poly op_s(const SymP& P, const Poly& f) {
    if (f.is_zero()) return Poly();
    const int d = f.degree();
    const std::vector<Poly> p =
        recurrence_table(P, d, Poly::constant(CScalar(2.0)), P.A_poly() * CScalar(2.0));
    Poly out;
    for (int k = 0; k <= d; ++k) out += p[static_cast<size_t>(k)] * (0.5 * f.coeff(k));
    return out;
}

Poly op_d(const SymP& P, const Poly& f) {
    if (f.degree() < 1) return Poly();
    const int d = f.degree();
    const std::vector<Poly> dq =
        recurrence_table(P, d, Poly(), Poly::constant(CScalar(1.0)));
    Poly out;
    for (int k = 1; k <= d; ++k) out += dq[static_cast<size_t>(k)] * f.coeff(k);
    return out;
}

Poly op_partial(const SymP& P, const Poly& f, int k) {
    if (k < 0) throw Error(Errc::UnsupportedForm, "op_partial requires k >= 0");
    Poly out = f;
    CScalar denom(1.0);
    for (int j = 1; j <= k; ++j) {
        out = op_d(P, out);
        denom *= q_int(P.ctx(), j);
    }
    return out * (CScalar(1.0) / denom);
}

Poly phi_nodes(const PSeq& s, int k) {
    Poly out = Poly::constant(CScalar(1.0));
    for (int j = 0; j < k; ++j) out *= Poly({-s.at(HalfInt(j)), CScalar(1.0)});
    return out;
}

Poly phi_xy(const SymP& P, int k, CScalar x) {
    if (k == 0) return Poly::constant(CScalar(1.0));
    Poly out = (k % 2 == 1) ? Poly({-x, CScalar(1.0)}) : Poly::constant(CScalar(1.0));
    const int pairs = (k % 2 == 1) ? (k - 1) / 2 : k / 2;
    const int start = (k % 2 == 1) ? 2 : 1;
    for (int i = 0; i < pairs; ++i) {
        const int j = start + 2 * i;
        const SymP Pj = pj_context(P, j);
        // P_j(x, y) = (y - a_j x - b_j)^2 - [j]^2 delta(x), quadratic in y
        const CScalar mean = Pj.A_at(x);
        const CScalar qj = q_int(P.ctx(), j);
        const CScalar d = qj * qj * P.delta_at(x);
        out *= Poly({mean * mean - d, -2.0 * mean, CScalar(1.0)});
    }
    return out;
}

Poly phi_yx(const SymP& P, int k, CScalar y) {
    Poly g = phi_xy(P, k, y);
    return (k % 2 == 1) ? -g : g;
}

PhiBasis PhiBasis::at(const SymP& P, CScalar x, int order) {
    PhiBasis basis{P, order, {}};
    basis.members.reserve(static_cast<size_t>(order) + 1);
    for (int k = 0; k <= order; ++k) basis.members.push_back(phi_xy(P, k, x));
    return basis;
}

std::vector<CScalar> taylor_coeffs(const SymP& P, const PSeq& s, const Poly& f) {
    const int d = std::max(f.degree(), 0);
    std::vector<CScalar> coeffs(static_cast<size_t>(d) + 1);
    Poly dk = f;
    CScalar denom(1.0);
    for (int k = 0; k <= d; ++k) {
        if (k > 0) {
            dk = op_d(P, dk);
            denom *= q_int(P.ctx(), k);
        }
        coeffs[static_cast<size_t>(k)] = dk.eval(s.at(HalfInt::halves(k))) / denom;
    }
    return coeffs;
}

Poly taylor_reconstruct(const PSeq& s, std::span<const CScalar> coeffs) {
    Poly out;
    Poly nodes = Poly::constant(CScalar(1.0));
    for (size_t k = 0; k < coeffs.size(); ++k) {
        if (k > 0) nodes *= Poly({-s.at(HalfInt(static_cast<std::int64_t>(k) - 1)), CScalar(1.0)});
        out += nodes * coeffs[k];
    }
    return out;
}

CScalar divided_diff_nodes(std::span<const CScalar> nodes, std::span<const CScalar> values) {
    double scale = 0.0;
    for (const CScalar& x : nodes) scale = std::max(scale, std::abs(x));
    scale = std::max(scale, 1.0);
    CScalar sum(0.0);
    for (size_t j = 0; j < nodes.size(); ++j) {
        CScalar denom(1.0);
        for (size_t i = 0; i < nodes.size(); ++i) {
            if (i == j) continue;
            const CScalar gap = nodes[j] - nodes[i];
            if (std::abs(gap) <= 1e-10 * scale)
                throw Error(Errc::CoincidentNodes, "divided difference nodes coincide");
            denom *= gap;
        }
        sum += values[j] / denom;
    }
    return sum;
}

CScalar divided_diff_oracle(const PSeq& s, const std::function<CScalar(CScalar)>& f, int k) {
    std::vector<CScalar> nodes(static_cast<size_t>(k) + 1);
    std::vector<CScalar> values(static_cast<size_t>(k) + 1);
    for (int j = 0; j <= k; ++j) {
        nodes[static_cast<size_t>(j)] = s.at(HalfInt::halves(2 * j - k));
        values[static_cast<size_t>(j)] = f(nodes[static_cast<size_t>(j)]);
    }
    return divided_diff_nodes(nodes, values);
}

} // namespace awc
