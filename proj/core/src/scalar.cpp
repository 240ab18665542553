#include "awc/scalar.hpp"

namespace awc {

const char* errc_name(Errc code) {
    switch (code) {
    case Errc::NearDegenerate: return "NearDegenerate";
    case Errc::QOutOfRange: return "QOutOfRange";
    case Errc::DenominatorPole: return "DenominatorPole";
    case Errc::SingularMap: return "SingularMap";
    case Errc::CoincidentNodes: return "CoincidentNodes";
    case Errc::EigenvalueCollision: return "EigenvalueCollision";
    case Errc::DegreeOverflow: return "DegreeOverflow";
    case Errc::NoThetaRoot: return "NoThetaRoot";
    case Errc::ZeroTauOnLattice: return "ZeroTauOnLattice";
    case Errc::ThetaMismatch: return "ThetaMismatch";
    case Errc::BoundaryViolated: return "BoundaryViolated";
    case Errc::RamifiedOnly: return "RamifiedOnly";
    case Errc::UnsupportedForm: return "UnsupportedForm";
    case Errc::DegenerateChi: return "DegenerateChi";
    case Errc::NonCanonicalForm: return "NonCanonicalForm";
    case Errc::ParseError: return "ParseError";
    }
    return "Unknown";
}

namespace {

constexpr double kDegenerateSnap = 1e-12;
constexpr double kDegenerateBand = 1e-6;

QContext checked_generic(CScalar lambda) {
    if (std::abs(lambda) == 0.0)
        throw Error(Errc::NearDegenerate, "lambda must be non-zero");
    // Normalize the reciprocal pair {lambda, 1/lambda} to |lambda| <= 1 so
    // q = lambda^2 stays inside the closed unit disc.
    if (std::abs(lambda) > 1.0) lambda = CScalar(1.0) / lambda;
    const double d_plus = std::abs(lambda - CScalar(1.0));
    const double d_minus = std::abs(lambda + CScalar(1.0));
    if (d_plus <= kDegenerateSnap) return QContext::lambda_one();
    if (d_minus <= kDegenerateSnap) return QContext::lambda_minus_one();
    if (d_plus < kDegenerateBand || d_minus < kDegenerateBand)
        throw Error(Errc::NearDegenerate,
                    "lambda within (1e-12, 1e-6) of +-1; construct the degenerate "
                    "mode explicitly instead");
    return QContext::generic(lambda);
}

} // namespace

QContext QContext::generic(CScalar lambda) {
    return QContext(lambda, DegMode::Generic);
}

QContext QContext::from_main_coeff(CScalar a) {
    if (std::abs(a - CScalar(1.0)) <= kDegenerateSnap * std::max(1.0, std::abs(a)))
        return lambda_one();
    if (std::abs(a + CScalar(1.0)) <= kDegenerateSnap * std::max(1.0, std::abs(a)))
        return lambda_minus_one();
    const CScalar lambda = a + std::sqrt(a * a - CScalar(1.0));
    return checked_generic(lambda);
}

QContext QContext::from_q(CScalar q) {
    if (std::abs(q) == 0.0)
        throw Error(Errc::QOutOfRange, "q must be non-zero");
    return checked_generic(std::sqrt(q));
}

CScalar QContext::main_coeff() const {
    switch (mode_) {
    case DegMode::LambdaOne: return CScalar(1.0);
    case DegMode::LambdaMinusOne: return CScalar(-1.0);
    default: return 0.5 * (lambda_ + CScalar(1.0) / lambda_);
    }
}

} // namespace awc
