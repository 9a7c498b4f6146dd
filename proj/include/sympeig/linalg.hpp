#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "sympeig/errors.hpp"
#include "sympeig/matrix.hpp"

namespace sympeig {

/// Eigenvalues (descending) paired with the columns of an orthogonal matrix.
struct EigenDecomposition {
    std::vector<double> values;
    Matrix vectors;  // column j belongs to values[j]
};

namespace detail {

inline double offdiag_frobenius(const Matrix& a) {
    double s = 0.0;
    for (std::size_t p = 0; p + 1 < a.rows(); ++p)
        for (std::size_t q = p + 1; q < a.cols(); ++q) s += a(p, q) * a(p, q);
    return std::sqrt(2.0 * s);
}

/// Cyclic Jacobi with threshold pivoting for any symmetric matrix.
/// Deterministic: fixed row-major sweep order, stable descending sort,
/// and a fixed sign convention for the eigenvector columns.
inline EigenDecomposition jacobi_eigen(const Matrix& input) {
    if (!input.square()) throw DimensionError("eigensolver: matrix must be square");
    if (!input.all_finite()) throw DimensionError("eigensolver: non-finite entry");
    const std::size_t n = input.rows();
    Matrix a = symmetrized(input);
    Matrix v = Matrix::identity(n);

    const double norm_f = frobenius_norm(a);
    const double stop = 1e-13 * norm_f;
    constexpr int max_sweeps = 100;

    bool converged = (n == 1);
    double off = 0.0;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        off = offdiag_frobenius(a);
        if (off <= stop) {
            converged = true;
            break;
        }
        // threshold: generous early on, every nonzero pivot later
        const double tresh = (sweep < 3) ? 0.2 * off / static_cast<double>(n * n) : 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                const double small = 100.0 * std::abs(apq);
                if (sweep > 3 && std::abs(a(p, p)) + small == std::abs(a(p, p)) &&
                    std::abs(a(q, q)) + small == std::abs(a(q, q))) {
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    continue;
                }
                if (std::abs(apq) <= tresh || apq == 0.0) continue;

                const double h = a(q, q) - a(p, p);
                double t;
                if (std::abs(h) + small == std::abs(h)) {
                    t = apq / h;
                } else {
                    const double theta = 0.5 * h / apq;
                    t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const double tau = s / (1.0 + c);
                const double delta = t * apq;

                a(p, p) -= delta;
                a(q, q) += delta;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                auto rotate = [&](Matrix& m, std::size_t i1, std::size_t j1,
                                  std::size_t i2, std::size_t j2) {
                    const double g = m(i1, j1);
                    const double h2 = m(i2, j2);
                    m(i1, j1) = g - s * (h2 + g * tau);
                    m(i2, j2) = h2 + s * (g - h2 * tau);
                };
                // only the upper triangle is read below; the mirror is dead
                for (std::size_t k = 0; k < p; ++k) rotate(a, k, p, k, q);
                for (std::size_t k = p + 1; k < q; ++k) rotate(a, p, k, k, q);
                for (std::size_t k = q + 1; k < n; ++k) rotate(a, p, k, q, k);
                for (std::size_t k = 0; k < n; ++k) rotate(v, k, p, k, q);
            }
        }
    }
    if (!converged) {
        off = offdiag_frobenius(a);
        if (off > stop)
            throw ConvergenceError("Jacobi eigensolver: no convergence after 100 sweeps, "
                                   "off-diagonal Frobenius norm " + std::to_string(off),
                                   off);
    }

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = idx[j];
        out.values[j] = a(src, src);
        double sign = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(v(i, src)) > 1e-12) {
                sign = v(i, src) < 0.0 ? -1.0 : 1.0;
                break;
            }
        }
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = sign * v(i, src);
    }
    return out;
}

}  // namespace detail

/// Full eigendecomposition of a symmetric matrix of any order >= 1.
inline EigenDecomposition eigen_symmetric(const Matrix& a) {
    return detail::jacobi_eigen(a);
}

inline EigenDecomposition sym_eigen(const SymmetricMatrix& a) {
    return detail::jacobi_eigen(a.mat());
}

/// Symmetric PSD square root. Eigenvalues within -1e-10*max|A| of zero are
/// clamped to zero; anything lower raises NotPsdError.
inline SymmetricMatrix sqrt_psd(const SymmetricMatrix& a) {
    const EigenDecomposition eig = sym_eigen(a);
    const double tol = 1e-10 * max_abs(a);
    std::vector<double> roots(eig.values.size());
    for (std::size_t i = 0; i < eig.values.size(); ++i) {
        const double ev = eig.values[i];
        if (ev < -tol)
            throw NotPsdError("sqrt_psd: eigenvalue " + std::to_string(ev) +
                              " below PSD tolerance " + std::to_string(-tol), ev);
        roots[i] = ev > 0.0 ? std::sqrt(ev) : 0.0;
    }
    const std::size_t n = a.order();
    Matrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += eig.vectors(i, k) * roots[k] * eig.vectors(j, k);
            r(i, j) = s;
        }
    return SymmetricMatrix(r);
}

/// Cholesky factor L with A = L L^T. Success certifies positive
/// definiteness; a pivot at or below 1e-12*max|A| raises NotPdError with
/// the 1-based index of the failing leading principal minor.
inline Matrix cholesky_pd(const SymmetricMatrix& a) {
    const std::size_t n = a.order();
    const double pivot_tol = 1e-12 * max_abs(a);
    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double diag = a(j, j);
        for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
        if (diag <= pivot_tol)
            throw NotPdError("cholesky_pd: pivot " + std::to_string(diag) +
                             " at leading minor " + std::to_string(j + 1) +
                             " is not positive", j + 1);
        l(j, j) = std::sqrt(diag);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

inline bool is_positive_definite(const SymmetricMatrix& a) {
    try {
        cholesky_pd(a);
        return true;
    } catch (const NotPdError&) {
        return false;
    }
}

/// Whether the Hermitian matrix X + iY is PSD, where X is symmetric and Y is
/// skew-symmetric. Decided on the real embedding [[X, -Y], [Y, X]], whose
/// spectrum doubles that of X + iY.
inline bool complex_hermitian_psd(const Matrix& x, const Matrix& y) {
    if (!x.square() || !y.square() || x.rows() != y.rows())
        throw DimensionError("complex_hermitian_psd: X and Y must be square of equal order");
    const std::size_t n = x.rows();
    const double tol_sym = 1e-12 * (1.0 + max_abs(x) + max_abs(y));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(x(i, j) - x(j, i)) > tol_sym)
                throw DimensionError("complex_hermitian_psd: X is not symmetric");
            if (std::abs(y(i, j) + y(j, i)) > tol_sym)
                throw DimensionError("complex_hermitian_psd: Y is not skew-symmetric");
        }
    Matrix e(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            e(i, j) = x(i, j);
            e(n + i, n + j) = x(i, j);
            e(i, n + j) = -y(i, j);
            e(n + i, j) = y(i, j);
        }
    const EigenDecomposition eig = eigen_symmetric(e);
    return eig.values.back() >= -1e-10 * (1.0 + max_abs(x));
}

}  // namespace sympeig
