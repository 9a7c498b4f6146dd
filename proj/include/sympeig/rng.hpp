#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "sympeig/matrix.hpp"

namespace sympeig {

/// Deterministic random source. The uniform and Gaussian mappings are spelled
/// out here (rather than using distribution adaptors) so identical seeds give
/// identical streams on every standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// uniform on [0, 1)
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// standard normal via Box-Muller
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u = uniform();
        while (u <= 0.0) u = uniform();
        const double r = std::sqrt(-2.0 * std::log(u));
        const double theta = 2.0 * 3.14159265358979323846 * uniform();
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// k orthonormal columns of dimension dim, from a Gaussian frame with
/// twice-applied Gram-Schmidt. Columns that collapse are redrawn.
inline Matrix random_orthonormal_columns(std::size_t dim, std::size_t k, Rng& rng) {
    Matrix q(dim, k);
    for (std::size_t col = 0; col < k; ++col) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            std::vector<double> v(dim);
            for (auto& x : v) x = rng.gaussian();
            for (int pass = 0; pass < 2; ++pass)
                for (std::size_t prev = 0; prev < col; ++prev) {
                    double proj = 0.0;
                    for (std::size_t i = 0; i < dim; ++i) proj += q(i, prev) * v[i];
                    for (std::size_t i = 0; i < dim; ++i) v[i] -= proj * q(i, prev);
                }
            double norm = 0.0;
            for (const double x : v) norm += x * x;
            norm = std::sqrt(norm);
            if (norm > 1e-8) {
                for (std::size_t i = 0; i < dim; ++i) q(i, col) = v[i] / norm;
                break;
            }
        }
    }
    return q;
}

/// Deterministic orthonormal basis of the orthogonal complement of the
/// column span of q, built by sweeping the coordinate directions.
inline Matrix orthonormal_complement(const Matrix& q) {
    const std::size_t dim = q.rows();
    const std::size_t k = q.cols();
    Matrix full(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < k; ++j) full(i, j) = q(i, j);
    std::size_t got = k;
    for (std::size_t e = 0; e < dim && got < dim; ++e) {
        std::vector<double> v(dim, 0.0);
        v[e] = 1.0;
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t prev = 0; prev < got; ++prev) {
                double proj = 0.0;
                for (std::size_t i = 0; i < dim; ++i) proj += full(i, prev) * v[i];
                for (std::size_t i = 0; i < dim; ++i) v[i] -= proj * full(i, prev);
            }
        double norm = 0.0;
        for (const double x : v) norm += x * x;
        norm = std::sqrt(norm);
        if (norm > 1e-8) {
            for (std::size_t i = 0; i < dim; ++i) full(i, got) = v[i] / norm;
            ++got;
        }
    }
    Matrix comp(dim, dim - k);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = k; j < dim; ++j) comp(i, j - k) = full(i, j);
    return comp;
}

/// Random symmetric positive definite matrix with spectrum drawn uniformly
/// from [lo, hi], conjugated by a random orthogonal matrix.
inline SymmetricMatrix random_pd(std::size_t order, Rng& rng, double lo = 0.5,
                                 double hi = 5.0) {
    const Matrix q = random_orthonormal_columns(order, order, rng);
    std::vector<double> spectrum(order);
    for (auto& s : spectrum) s = rng.uniform(lo, hi);
    Matrix a(order, order);
    for (std::size_t i = 0; i < order; ++i)
        for (std::size_t j = 0; j < order; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < order; ++k) s += q(i, k) * spectrum[k] * q(j, k);
            a(i, j) = s;
        }
    return SymmetricMatrix(a);
}

}  // namespace sympeig
