#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mixfrac {

/// Base of every error raised by the solver. `kind()` is a stable short name
/// used in CLI messages and tests.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)), detail_(what) {}

    const std::string& kind() const noexcept { return kind_; }
    const std::string& detail() const noexcept { return detail_; }

    /// Throws a copy of the same type with "stage: " prepended to the detail.
    [[noreturn]] virtual void rethrow_in(const std::string& stage) const = 0;

private:
    std::string kind_;
    std::string detail_;
};

#define MIXFRAC_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(#Name, what) {}         \
        [[noreturn]] void rethrow_in(const std::string& stage) const override { \
            throw Name(stage + ": " + detail());                               \
        }                                                                      \
    }

MIXFRAC_DEFINE_ERROR(NonConvergence);
MIXFRAC_DEFINE_ERROR(DegenerateGrid);
MIXFRAC_DEFINE_ERROR(QuadratureFailure);
MIXFRAC_DEFINE_ERROR(DegenerateTime);
MIXFRAC_DEFINE_ERROR(OutOfDomain);
MIXFRAC_DEFINE_ERROR(DegenerateCoefficients);
MIXFRAC_DEFINE_ERROR(SingularStep);
MIXFRAC_DEFINE_ERROR(LinearSolveFailure);
MIXFRAC_DEFINE_ERROR(ValidationError);
MIXFRAC_DEFINE_ERROR(UnknownIdentifier);
MIXFRAC_DEFINE_ERROR(EvalError);
MIXFRAC_DEFINE_ERROR(UnsupportedDerivative);

#undef MIXFRAC_DEFINE_ERROR

/// Parse failure; `offset` is the 0-based character position in the source.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t offset, const std::string& what)
        : Error("SyntaxError", what + " at offset " + std::to_string(offset)),
          offset_(offset), message_(what) {}

    std::size_t offset() const noexcept { return offset_; }

    [[noreturn]] void rethrow_in(const std::string& stage) const override {
        throw SyntaxError(offset_, stage + ": " + message_);
    }

private:
    std::size_t offset_;
    std::string message_;
};

}  // namespace mixfrac
