#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "sympeig/errors.hpp"
#include "sympeig/linalg.hpp"
#include "sympeig/matrix.hpp"

namespace sympeig {

/// The standard symplectic form [[0, I], [-I, 0]] of order 2n.
inline Matrix standard_J(std::size_t n) {
    if (n < 1) throw DimensionError("standard_J: n must be >= 1");
    Matrix j(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        j(i, n + i) = 1.0;
        j(n + i, i) = -1.0;
    }
    return j;
}

/// True iff ||M^T J M - J||_max <= tol.
inline bool is_symplectic(const Matrix& m, double tol) {
    if (!m.square() || m.rows() % 2 != 0 || m.rows() == 0)
        throw DimensionError("is_symplectic: matrix order must be even");
    const Matrix j = standard_J(m.rows() / 2);
    return max_abs(m.transposed() * j * m - j) <= tol;
}

namespace detail {

/// S = sqrt(A) J sqrt(A); skew-symmetric whenever A is symmetric.
inline Matrix symplectic_kernel(const SymmetricMatrix& a) {
    const Matrix w = sqrt_psd(a).mat();
    return w * standard_J(a.half_order()) * w;
}

/// Eigen-decomposition of -S^2 = S^T S, exactly symmetrized first.
inline EigenDecomposition minus_s_squared_eigen(const Matrix& s) {
    Matrix m2 = s * s;
    m2 *= -1.0;
    return eigen_symmetric(symmetrized(m2));
}

}  // namespace detail

/// Symplectic eigenvalues d_1 >= ... >= d_n of a positive definite matrix,
/// read off as the square roots of the doubled spectrum of -S^2 with
/// S = sqrt(A) J sqrt(A). Adjacent sorted eigenvalues of -S^2 must pair up
/// within a relative gap of 1e-7.
inline std::vector<double> symplectic_eigenvalues(const SymmetricMatrix& a) {
    cholesky_pd(a);  // positive definiteness gate
    const Matrix s = detail::symplectic_kernel(a);
    const EigenDecomposition eig = detail::minus_s_squared_eigen(s);
    const std::size_t n = a.half_order();
    std::vector<double> d(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double hi = eig.values[2 * k];
        const double lo = eig.values[2 * k + 1];
        if (hi - lo > 1e-7 * std::max(std::abs(hi), 1e-300))
            throw PairingError("symplectic_eigenvalues: eigenvalues of -S^2 at positions " +
                               std::to_string(2 * k) + "," + std::to_string(2 * k + 1) +
                               " differ by " + std::to_string(hi - lo) +
                               ", beyond pairing tolerance");
        d[k] = std::sqrt(0.5 * (hi + lo));
    }
    return d;
}

/// Williamson normal form A = M^T diag(d, d) M with M symplectic.
struct WilliamsonForm {
    Matrix m;                // the symplectic factor
    std::vector<double> d;   // symplectic eigenvalues, descending
    double residual_factor;      // ||M^T diag(d,d) M - A||_max
    double residual_symplectic;  // ||M^T J M - J||_max
};

/// Constructive Williamson decomposition of a positive definite matrix.
///
/// With S = sqrt(A) J sqrt(A), each eigenvalue d^2 of -S^2 carries an
/// even-dimensional eigenspace on which S/d is a complex structure. Picking
/// u in the eigenspace and v = -S u / d yields an orthonormal symplectic
/// frame; O = [u_1..u_n | v_1..v_n] then satisfies O^T S O = [[0, D], [-D, 0]]
/// and M = diag(d,d)^{-1/2} O^T sqrt(A) is the symplectic factor.
/// Clusters are cut at a relative eigenvalue gap of 1e-7; a cluster of odd
/// size or a collapsed Gram-Schmidt step raises DegeneracyError.
inline WilliamsonForm williamson(const SymmetricMatrix& a) {
    cholesky_pd(a);
    const std::size_t order = a.order();
    const std::size_t n = a.half_order();
    const Matrix w = sqrt_psd(a).mat();
    const Matrix j = standard_J(n);
    const Matrix s = w * j * w;
    const EigenDecomposition eig = detail::minus_s_squared_eigen(s);

    std::vector<std::vector<double>> us, vs;
    std::vector<double> d;
    us.reserve(n);
    vs.reserve(n);
    d.reserve(n);

    auto dot = [order](const std::vector<double>& x, const std::vector<double>& y) {
        double r = 0.0;
        for (std::size_t i = 0; i < order; ++i) r += x[i] * y[i];
        return r;
    };
    auto apply_s = [&](const std::vector<double>& x) {
        std::vector<double> y(order, 0.0);
        for (std::size_t i = 0; i < order; ++i)
            for (std::size_t k = 0; k < order; ++k) y[i] += s(i, k) * x[k];
        return y;
    };

    std::size_t begin = 0;
    while (begin < order) {
        std::size_t end = begin;
        while (end + 1 < order &&
               eig.values[end] - eig.values[end + 1] <=
                   1e-7 * std::max(std::abs(eig.values[end]), 1e-300))
            ++end;
        ++end;  // half-open [begin, end)
        const std::size_t size = end - begin;
        if (size % 2 != 0)
            throw DegeneracyError("williamson: eigenvalue cluster of -S^2 at [" +
                                  std::to_string(begin) + "," + std::to_string(end) +
                                  ") has odd multiplicity " + std::to_string(size));
        double mean = 0.0;
        for (std::size_t k = begin; k < end; ++k) mean += eig.values[k];
        mean /= static_cast<double>(size);
        const double dj = std::sqrt(mean);

        // frame of already accepted u, v pairs inside this cluster
        std::vector<std::vector<double>> frame;
        for (std::size_t c = begin; c < end && frame.size() < size; ++c) {
            std::vector<double> u(order);
            for (std::size_t i = 0; i < order; ++i) u[i] = eig.vectors(i, c);
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& f : frame) {
                    const double proj = dot(f, u);
                    for (std::size_t i = 0; i < order; ++i) u[i] -= proj * f[i];
                }
            const double nu = std::sqrt(dot(u, u));
            if (nu < 1e-8) continue;  // direction already represented
            for (double& x : u) x /= nu;

            std::vector<double> v = apply_s(u);
            for (double& x : v) x /= -dj;
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& f : frame) {
                    const double proj = dot(f, v);
                    for (std::size_t i = 0; i < order; ++i) v[i] -= proj * f[i];
                }
            const double nv = std::sqrt(dot(v, v));
            if (std::abs(nv - 1.0) > 1e-6)
                throw DegeneracyError("williamson: conjugate vector collapsed in cluster at " +
                                      std::to_string(begin) + " (norm " + std::to_string(nv) +
                                      ")");
            for (double& x : v) x /= nv;

            frame.push_back(u);
            frame.push_back(v);
            us.push_back(std::move(u));
            vs.push_back(std::move(v));
            d.push_back(dj);
        }
        if (frame.size() != size)
            throw DegeneracyError("williamson: extracted " + std::to_string(frame.size() / 2) +
                                  " pairs from a cluster of multiplicity " +
                                  std::to_string(size));
        begin = end;
    }
    if (d.size() != n)
        throw DegeneracyError("williamson: expected " + std::to_string(n) + " pairs, got " +
                              std::to_string(d.size()));

    Matrix o(order, order);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < order; ++i) {
            o(i, k) = us[k][i];
            o(i, n + k) = vs[k][i];
        }

    // M = diag(d, d)^{-1/2} O^T W
    Matrix m = o.transposed() * w;
    for (std::size_t r = 0; r < order; ++r) {
        const double scale = 1.0 / std::sqrt(d[r % n]);
        for (std::size_t c = 0; c < order; ++c) m(r, c) *= scale;
    }

    Matrix lam(order, order);
    for (std::size_t k = 0; k < n; ++k) {
        lam(k, k) = d[k];
        lam(n + k, n + k) = d[k];
    }
    WilliamsonForm out;
    out.residual_factor = max_abs(m.transposed() * lam * m - a.mat());
    out.residual_symplectic = max_abs(m.transposed() * j * m - j);
    out.m = std::move(m);
    out.d = std::move(d);
    return out;
}

}  // namespace sympeig
