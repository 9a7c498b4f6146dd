#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "sympeig/errors.hpp"
#include "sympeig/linalg.hpp"
#include "sympeig/matrix.hpp"
#include "sympeig/symplectic.hpp"

namespace sympeig {

/// Verdicts for the two interlacing families between ordinary eigenvalues
/// and symplectic eigenvalues:
///   d_j (descending) <= lambda_j (descending) + slack, and
///   lambda_j (ascending) <= d_j (ascending) + slack, for j = 1..n.
struct InterlacingReport {
    std::size_t order;               // 2n
    std::vector<double> lambda_desc;
    std::vector<double> d_desc;
    std::vector<bool> down_ok;
    std::vector<bool> up_ok;
    double slack;
    bool all_ok;
};

/// Check the interlacing inequalities on spectra supplied separately.
/// Ascending sequences are order-reversals of the descending ones.
inline InterlacingReport interlacing_check(std::vector<double> lambda,
                                           std::vector<double> d, double slack) {
    if (lambda.size() != 2 * d.size())
        throw DimensionError("interlacing_check: need |lambda| = 2 |d|, got " +
                             std::to_string(lambda.size()) + " and " +
                             std::to_string(d.size()));
    std::stable_sort(lambda.begin(), lambda.end(), std::greater<>());
    std::stable_sort(d.begin(), d.end(), std::greater<>());
    const std::size_t n = d.size();
    InterlacingReport r;
    r.order = lambda.size();
    r.lambda_desc = std::move(lambda);
    r.d_desc = std::move(d);
    r.slack = slack;
    r.down_ok.resize(n);
    r.up_ok.resize(n);
    r.all_ok = true;
    for (std::size_t j = 0; j < n; ++j) {
        r.down_ok[j] = r.d_desc[j] <= r.lambda_desc[j] + slack;
        // j-th ascending entry = reversal of the descending list
        const double lambda_up = r.lambda_desc[r.order - 1 - j];
        const double d_up = r.d_desc[n - 1 - j];
        r.up_ok[j] = lambda_up <= d_up + slack;
        r.all_ok = r.all_ok && r.down_ok[j] && r.up_ok[j];
    }
    return r;
}

/// Interlacing verdict for a positive definite matrix with
/// slack = 1e-10 * (1 + max|A|). A false verdict here contradicts the
/// finite-dimensional interlacing theorem and is surfaced, never repaired.
inline InterlacingReport interlace_matrix(const SymmetricMatrix& a) {
    const double slack = 1e-10 * (1.0 + max_abs(a));
    return interlacing_check(sym_eigen(a).values, symplectic_eigenvalues(a), slack);
}

}  // namespace sympeig
