#pragma once

#include <stdexcept>
#include <string>

namespace lorspin {

// Exit-code categories used by the CLI: 1 invariant failure,
// 2 input/schema error, 3 numerical failure.
enum class ErrorKind { Invariant = 1, Input = 2, Numerical = 3 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

struct InverseOfZeroDivisor : Error {
    explicit InverseOfZeroDivisor(const std::string& msg = "inverse of a zero divisor in the Lorentz numbers")
        : Error(ErrorKind::Numerical, msg) {}
};

struct NegativeSquareRoot : Error {
    explicit NegativeSquareRoot(const std::string& msg = "square root of a Lorentz number with a negative null component")
        : Error(ErrorKind::Numerical, msg) {}
};

struct NotUnitSpinor : Error {
    explicit NotUnitSpinor(const std::string& msg = "spinor is not H-unit")
        : Error(ErrorKind::Numerical, msg) {}
};

struct DegenerateMetric : Error {
    explicit DegenerateMetric(const std::string& msg = "metric coefficient vanishes")
        : Error(ErrorKind::Numerical, msg) {}
};

struct GaussMapNotRegular : Error {
    explicit GaussMapNotRegular(const std::string& msg = "Gauss map differential is rank deficient")
        : Error(ErrorKind::Numerical, msg) {}
};

struct NotClosed : Error {
    explicit NotClosed(const std::string& msg = "1-form is not closed to tolerance")
        : Error(ErrorKind::Numerical, msg) {}
};

struct ZeroCrossing : Error {
    explicit ZeroCrossing(const std::string& msg = "metric factor crosses zero")
        : Error(ErrorKind::Numerical, msg) {}
};

struct IntegrabilityViolated : Error {
    explicit IntegrabilityViolated(const std::string& msg = "Gauss-Codazzi-Ricci residuals exceed threshold")
        : Error(ErrorKind::Numerical, msg) {}
};

struct NotNormalized : Error {
    explicit NotNormalized(const std::string& msg = "spinor field is not normalized")
        : Error(ErrorKind::Numerical, msg) {}
};

struct IntrinsicEquationViolated : Error {
    explicit IntrinsicEquationViolated(const std::string& msg = "intrinsic Dirac equation residual exceeds threshold")
        : Error(ErrorKind::Numerical, msg) {}
};

struct DegenerateRuling : Error {
    explicit DegenerateRuling(const std::string& msg = "ruling direction is parallel to the directrix tangent")
        : Error(ErrorKind::Numerical, msg) {}
};

struct SingularSystem : Error {
    explicit SingularSystem(const std::string& msg = "linear system is singular")
        : Error(ErrorKind::Numerical, msg) {}
};

struct NonConvergent : Error {
    explicit NonConvergent(const std::string& msg = "solver did not converge")
        : Error(ErrorKind::Numerical, msg) {}
};

struct NoSolution : Error {
    explicit NoSolution(const std::string& msg = "constraint system has no solution")
        : Error(ErrorKind::Numerical, msg) {}
};

struct SchemaError : Error {
    explicit SchemaError(const std::string& msg) : Error(ErrorKind::Input, msg) {}
};

} // namespace lorspin
