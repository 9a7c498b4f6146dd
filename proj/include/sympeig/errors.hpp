#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sympeig {

/// Shape or parity mismatch between operands.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Cholesky pivot failed: the matrix is not positive definite.
/// `minor_index` is the 1-based order of the leading principal minor
/// whose pivot fell below tolerance.
struct NotPdError : std::runtime_error {
    std::size_t minor_index;
    NotPdError(const std::string& what, std::size_t index)
        : std::runtime_error(what), minor_index(index) {}
};

/// An eigenvalue fell below the PSD tolerance.
struct NotPsdError : std::runtime_error {
    double min_eigenvalue;
    NotPsdError(const std::string& what, double min_ev)
        : std::runtime_error(what), min_eigenvalue(min_ev) {}
};

/// Jacobi sweeps hit the iteration cap; carries the remaining
/// off-diagonal Frobenius norm.
struct ConvergenceError : std::runtime_error {
    double off_diagonal;
    ConvergenceError(const std::string& what, double off)
        : std::runtime_error(what), off_diagonal(off) {}
};

/// Eigenvalues of -S^2 could not be grouped into pairs within tolerance.
struct PairingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Eigenspace pairing inside a degenerate cluster failed.
struct DegeneracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input file (matrix text or model config).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Sampled kernel values violate k(s,t) = k(t,s).
struct NonsymmetricKernelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sympeig
