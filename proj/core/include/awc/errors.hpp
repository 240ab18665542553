#ifndef AWC_ERRORS_HPP
#define AWC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace awc {

enum class Errc {
    NearDegenerate,
    QOutOfRange,
    DenominatorPole,
    SingularMap,
    CoincidentNodes,
    EigenvalueCollision,
    DegreeOverflow,
    NoThetaRoot,
    ZeroTauOnLattice,
    ThetaMismatch,
    BoundaryViolated,
    RamifiedOnly,
    UnsupportedForm,
    DegenerateChi,
    NonCanonicalForm,
    ParseError,
};

const char* errc_name(Errc code);

/* All mathematical precondition violations surface as this exception, so
 * callers (in particular the CLI) can map them to structured error codes. */
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const { return code_; }
    const char* code_name() const { return errc_name(code_); }

private:
    Errc code_;
};

} // namespace awc

#endif
