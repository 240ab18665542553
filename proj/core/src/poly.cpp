#include "awc/poly.hpp"

#include <algorithm>

namespace awc {

Poly Poly::monomial(int degree, CScalar coeff) {
    std::vector<CScalar> c(static_cast<size_t>(degree) + 1, CScalar(0.0));
    c.back() = coeff;
    return Poly(std::move(c));
}

CScalar Poly::eval(CScalar x) const {
    CScalar acc(0.0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<CScalar> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k)
        d[k - 1] = static_cast<double>(k) * c_[k];
    return Poly(std::move(d));
}

Poly Poly::compose_affine(CScalar alpha, CScalar beta) const {
    Poly lin({beta, alpha});
    Poly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        acc *= lin;
        acc += Poly::constant(*it);
    }
    return acc;
}

double Poly::linf() const {
    double m = 0.0;
    for (const CScalar& c : c_) m = std::max(m, std::abs(c));
    return m;
}

void Poly::trim() {
    const double thresh = 1e-13 * linf();
    while (!c_.empty() && std::abs(c_.back()) <= thresh) c_.pop_back();
}

Poly& Poly::operator+=(const Poly& rhs) {
    if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), CScalar(0.0));
    for (size_t k = 0; k < rhs.c_.size(); ++k) c_[k] += rhs.c_[k];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
    if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), CScalar(0.0));
    for (size_t k = 0; k < rhs.c_.size(); ++k) c_[k] -= rhs.c_[k];
    trim();
    return *this;
}

Poly& Poly::operator*=(const Poly& rhs) {
    if (c_.empty() || rhs.c_.empty()) {
        c_.clear();
        return *this;
    }
    std::vector<CScalar> prod(c_.size() + rhs.c_.size() - 1, CScalar(0.0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < rhs.c_.size(); ++j)
            prod[i + j] += c_[i] * rhs.c_[j];
    c_ = std::move(prod);
    trim();
    return *this;
}

Poly& Poly::operator*=(CScalar s) {
    for (CScalar& c : c_) c *= s;
    trim();
    return *this;
}

double poly_residual(const Poly& a, const Poly& b) {
    const int deg = std::max(a.degree(), b.degree());
    double diff = 0.0;
    for (int k = 0; k <= deg; ++k) diff = std::max(diff, std::abs(a.coeff(k) - b.coeff(k)));
    return diff / std::max({a.linf(), b.linf(), 1.0});
}

} // namespace awc
