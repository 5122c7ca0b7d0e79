#pragma once

#include <stdexcept>
#include <string>

namespace ratmod {

// Domain error with a stable machine-readable code. The CLI maps these to
// {"error": code, "detail": ...} with exit status 1.
class Error : public std::runtime_error {
  public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

  private:
    std::string code_;
};

#define RATMOD_ERROR_KIND(Name)                                      \
    class Name : public Error {                                      \
      public:                                                        \
        explicit Name(const std::string& detail = "")                \
            : Error(#Name, detail) {}                                \
    }

RATMOD_ERROR_KIND(DivisionByZero);
RATMOD_ERROR_KIND(FieldMismatch);
RATMOD_ERROR_KIND(UnknownVariablePair);
RATMOD_ERROR_KIND(IndexTooLarge);
RATMOD_ERROR_KIND(OrderMismatch);
RATMOD_ERROR_KIND(DegenerateMap);
RATMOD_ERROR_KIND(NotAFixedPoint);
RATMOD_ERROR_KIND(NonRescalable);
RATMOD_ERROR_KIND(DegenerateLocus);
RATMOD_ERROR_KIND(ZeroPoint);
RATMOD_ERROR_KIND(SingularConic);
RATMOD_ERROR_KIND(PointNotOnConic);
RATMOD_ERROR_KIND(PreconditionViolated);
RATMOD_ERROR_KIND(OnBadLocus);
RATMOD_ERROR_KIND(BetaNotInField);
RATMOD_ERROR_KIND(AutomorphismLocus);
RATMOD_ERROR_KIND(UnhandledLocus);
RATMOD_ERROR_KIND(UnsupportedField);
RATMOD_ERROR_KIND(ParseError);

#undef RATMOD_ERROR_KIND

}  // namespace ratmod
