#pragma once

#include <stdexcept>
#include <string>

namespace fkwave {

// All solver failures derive from Error and carry a stable name that is
// echoed into report.json by the CLI.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define FKWAVE_DEFINE_ERROR(Name)                                    \
    class Name : public Error {                                      \
    public:                                                          \
        explicit Name(const std::string& what) : Error(#Name, what) {} \
    }

FKWAVE_DEFINE_ERROR(InvalidParams);
FKWAVE_DEFINE_ERROR(CertificationFailed);
FKWAVE_DEFINE_ERROR(DegenerateConstant);
FKWAVE_DEFINE_ERROR(TailTooLarge);
FKWAVE_DEFINE_ERROR(NonDecayingInput);
FKWAVE_DEFINE_ERROR(MomentViolated);
FKWAVE_DEFINE_ERROR(NearSingularMode);
FKWAVE_DEFINE_ERROR(SignConditionFailed);
FKWAVE_DEFINE_ERROR(DomainTooSmall);
FKWAVE_DEFINE_ERROR(IterationCapExceeded);
FKWAVE_DEFINE_ERROR(NonContraction);
FKWAVE_DEFINE_ERROR(BallEscaped);
FKWAVE_DEFINE_ERROR(NonPositiveEpsilon);
FKWAVE_DEFINE_ERROR(BlowUp);

#undef FKWAVE_DEFINE_ERROR

} // namespace fkwave
