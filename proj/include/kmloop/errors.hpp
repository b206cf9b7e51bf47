#ifndef KMLOOP_ERRORS_HPP
#define KMLOOP_ERRORS_HPP

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace kmloop {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad user input: dimension mismatch, malformed file, violated precondition.
struct InputError : Error {
    explicit InputError(const std::string& what) : Error(what) {}
};

struct DimensionMismatch : InputError {
    explicit DimensionMismatch(const std::string& what) : InputError(what) {}
};

// Numeric degeneracy: the requested quantity exists but cannot be computed
// reliably for this input (defective matrix, branch cut, step-cap hit).
struct DegeneracyError : Error {
    explicit DegeneracyError(const std::string& what) : Error(what) {}
};

struct NonSemisimpleError : DegeneracyError {
    explicit NonSemisimpleError(const std::string& what) : DegeneracyError(what) {}
};

struct BranchError : DegeneracyError {
    explicit BranchError(const std::string& what) : DegeneracyError(what) {}
};

// exp of a Laurent-polynomial loop is generally not a Laurent polynomial;
// thrown when a requested coefficient window cannot hold the result.
struct TruncationError : DegeneracyError {
    TruncationError(const std::string& what, double residual_)
        : DegeneracyError(what), residual(residual_) {}
    double residual;
};

// A 1-form with non-trivial period cannot be integrated to a single-valued
// loop; carries the offending transport.
struct MonodromyObstruction : DegeneracyError {
    MonodromyObstruction(const std::string& what, Eigen::MatrixXcd transport_)
        : DegeneracyError(what), transport(std::move(transport_)) {}
    Eigen::MatrixXcd transport;
};

struct ConvergenceError : DegeneracyError {
    explicit ConvergenceError(const std::string& what) : DegeneracyError(what) {}
};

}  // namespace kmloop

#endif
