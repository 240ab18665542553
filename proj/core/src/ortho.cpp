#include "awc/ortho.hpp"

#include <cmath>

namespace awc {

Poly wronskian(const SymP& P, const Poly& f, const Poly& g) {
    const int df = f.degree(), dg = g.degree();
    if (df < 0 || dg < 0) return Poly();
    // W(x^m, x^n) = B^m d_{n-m} for m < n, antisymmetric, zero on the diagonal
    const int dmax = std::max(df, dg);
    std::vector<Poly> bpow(static_cast<size_t>(dmax) + 1);
    bpow[0] = Poly::constant(CScalar(1.0));
    for (int m = 1; m <= dmax; ++m) bpow[static_cast<size_t>(m)] = bpow[static_cast<size_t>(m - 1)] * P.B_poly();

    Poly out;
    for (int m = 0; m <= dmax; ++m)
        for (int n = m + 1; n <= dmax; ++n) {
            const CScalar coeff = f.coeff(m) * g.coeff(n) - f.coeff(n) * g.coeff(m);
            if (std::abs(coeff) == 0.0) continue;
            out += bpow[static_cast<size_t>(m)] * op_d(P, Poly::monomial(n - m)) * coeff;
        }
    return out;
}

GridMeasure make_grid_measure(const RhoChain& chain, int m) {
    if (m < 0) throw Error(Errc::BoundaryViolated, "support size must be non-negative");
    const PFun& theta = chain.theta();
    const HalfInt half = HalfInt::half();

    // boundary condition rho_1(x_{-1/2}) = rho_1(x_{m+1/2}) = 0 relative to
    // the interior rho_1 magnitude
    double interior = 0.0;
    for (int i = 0; i <= m; ++i)
        interior = std::max(interior, std::abs(chain.rho(1, HalfInt(i))));
    const double tol = 1e-8 * std::max(interior, 1e-300);
    const CScalar left = chain.rho(1, HalfInt(0) - half);
    const CScalar right = chain.rho(1, HalfInt(m) + half);
    if (std::abs(left) > tol || std::abs(right) > tol)
        throw Error(Errc::BoundaryViolated,
                    "rho_1 does not vanish at the half-lattice boundary points");

    GridMeasure out{theta, m, {}, {}};
    out.nodes.reserve(static_cast<size_t>(m) + 1);
    out.weights.reserve(static_cast<size_t>(m) + 1);
    for (int i = 0; i <= m; ++i) {
        const HalfInt t(i);
        out.nodes.push_back(theta.at(t));
        out.weights.push_back(chain.rho(0, t) *
                              (theta.at(t + half) - theta.at(t - half)));
    }
    return out;
}

int find_support(const RhoChain& chain, int max_m) {
    const HalfInt half = HalfInt::half();
    double scale = std::abs(chain.rho(1, HalfInt(0)));
    for (int m = 1; m <= max_m; ++m) {
        const double v = std::abs(chain.rho(1, HalfInt(m) + half));
        scale = std::max(scale, std::abs(chain.rho(1, HalfInt(m))));
        if (v <= 1e-8 * std::max(scale, 1e-300)) return m;
    }
    throw Error(Errc::BoundaryViolated, "no vanishing rho_1 boundary found while scanning");
}

std::vector<std::vector<CScalar>> gram(const GridMeasure& measure,
                                       const std::vector<Poly>& fs) {
    const size_t n = fs.size();
    for (const Poly& f : fs)
        if (f.degree() > measure.m)
            throw Error(Errc::BoundaryViolated,
                        "orthogonality holds only for degrees up to the support size");

    // tabulate f_j at the nodes once
    std::vector<std::vector<CScalar>> values(n);
    for (size_t j = 0; j < n; ++j) {
        values[j].reserve(measure.nodes.size());
        for (const CScalar& x : measure.nodes) values[j].push_back(fs[j].eval(x));
    }
    std::vector<std::vector<CScalar>> g(n, std::vector<CScalar>(n, CScalar(0.0)));
    for (size_t j = 0; j < n; ++j)
        for (size_t k = j; k < n; ++k) {
            CScalar acc(0.0);
            for (size_t i = 0; i < measure.nodes.size(); ++i)
                acc += values[j][i] * values[k][i] * measure.weights[i];
            g[j][k] = acc;
            g[k][j] = acc; // symmetric by construction
        }
    return g;
}

double max_offdiagonal(const std::vector<std::vector<CScalar>>& g) {
    double worst = 0.0;
    for (size_t j = 0; j < g.size(); ++j)
        for (size_t k = 0; k < g.size(); ++k) {
            if (j == k) continue;
            const double denom =
                std::sqrt(std::abs(g[j][j]) * std::abs(g[k][k]));
            worst = std::max(worst, std::abs(g[j][k]) / std::max(denom, 1e-300));
        }
    return worst;
}

} // namespace awc
