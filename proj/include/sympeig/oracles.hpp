#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sympeig/errors.hpp"
#include "sympeig/linalg.hpp"
#include "sympeig/matrix.hpp"
#include "sympeig/rng.hpp"
#include "sympeig/symplectic.hpp"

namespace sympeig {

/// Outcome of a variational probe against one eigenvalue.
struct ProbeResult {
    std::size_t target_index = 0;   // 1-based j
    double reference_value = 0.0;   // lambda_j from the eigensolver
    double sampled_bound = 0.0;     // tightest bound seen over all trials
    bool achieved_equality = false; // eigenvector-aligned subspace matches lambda_j
    std::size_t trials = 0;
    std::size_t violations = 0;     // trials crossing the one-sided tolerance
};

namespace detail {

inline Matrix compress(const SymmetricMatrix& a, const Matrix& basis) {
    return basis.transposed() * a.mat() * basis;
}

inline Matrix eigenvector_columns(const EigenDecomposition& eig, std::size_t count) {
    Matrix q(eig.vectors.rows(), count);
    for (std::size_t i = 0; i < eig.vectors.rows(); ++i)
        for (std::size_t j = 0; j < count; ++j) q(i, j) = eig.vectors(i, j);
    return q;
}

}  // namespace detail

/// Sample the min-max principle for lambda_j: over random (j-1)-dimensional
/// subspaces M, the maximal Rayleigh quotient on the orthogonal complement
/// of M is an upper witness, never below lambda_j. The span of the top j-1
/// eigenvectors attains equality. Trials draw their subspaces from seeds
/// seed + 1, ..., seed + trials.
inline ProbeResult minmax_probe(const SymmetricMatrix& a, std::size_t j,
                                std::size_t trials, std::uint64_t seed) {
    const std::size_t n = a.order();
    if (j < 1 || j > n)
        throw DimensionError("minmax_probe: index " + std::to_string(j) +
                             " outside 1.." + std::to_string(n));
    const EigenDecomposition eig = sym_eigen(a);
    const double lambda_j = eig.values[j - 1];

    ProbeResult r;
    r.target_index = j;
    r.reference_value = lambda_j;
    r.trials = trials;
    r.sampled_bound = HUGE_VAL;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(seed + t + 1);
        Matrix complement;
        if (j == 1) {
            complement = Matrix::identity(n);
        } else {
            const Matrix m = random_orthonormal_columns(n, j - 1, rng);
            complement = orthonormal_complement(m);
        }
        const double bound = eigen_symmetric(detail::compress(a, complement)).values.front();
        r.sampled_bound = std::min(r.sampled_bound, bound);
        if (bound < lambda_j - 1e-8) ++r.violations;
    }
    // the theorem's optimal subspace: the top j-1 eigenvectors
    const Matrix aligned = detail::eigenvector_columns(eig, j - 1);
    const Matrix complement = orthonormal_complement(aligned);
    const double attained = eigen_symmetric(detail::compress(a, complement)).values.front();
    r.achieved_equality = std::abs(attained - lambda_j) <= 1e-8;
    if (trials == 0) r.sampled_bound = attained;
    return r;
}

/// Sample the max-min principle for lambda_j: over random j-dimensional
/// subspaces N, the minimal Rayleigh quotient on N never exceeds lambda_j.
/// The span of the top j eigenvectors attains equality.
inline ProbeResult maxmin_probe(const SymmetricMatrix& a, std::size_t j,
                                std::size_t trials, std::uint64_t seed) {
    const std::size_t n = a.order();
    if (j < 1 || j > n)
        throw DimensionError("maxmin_probe: index " + std::to_string(j) +
                             " outside 1.." + std::to_string(n));
    const EigenDecomposition eig = sym_eigen(a);
    const double lambda_j = eig.values[j - 1];

    ProbeResult r;
    r.target_index = j;
    r.reference_value = lambda_j;
    r.trials = trials;
    r.sampled_bound = -HUGE_VAL;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(seed + t + 1);
        const Matrix subspace = random_orthonormal_columns(n, j, rng);
        const double bound = eigen_symmetric(detail::compress(a, subspace)).values.back();
        r.sampled_bound = std::max(r.sampled_bound, bound);
        if (bound > lambda_j + 1e-8) ++r.violations;
    }
    const Matrix aligned = detail::eigenvector_columns(eig, j);
    const double attained = eigen_symmetric(detail::compress(a, aligned)).values.back();
    r.achieved_equality = std::abs(attained - lambda_j) <= 1e-8;
    if (trials == 0) r.sampled_bound = attained;
    return r;
}

/// Eigenvalue comparison: A >= B (PSD order) implies lambda_j(A) >= lambda_j(B).
/// The precondition is checked through the smallest eigenvalue of A - B.
inline bool monotone_eig_check(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    if (a.order() != b.order())
        throw DimensionError("monotone_eig_check: orders disagree");
    const Matrix diff = a.mat() - b.mat();
    const double min_gap = eigen_symmetric(diff).values.back();
    if (min_gap < -1e-10 * (1.0 + max_abs(diff)))
        throw DimensionError("monotone_eig_check: A - B is not PSD (min eigenvalue " +
                             std::to_string(min_gap) + ")");
    const std::vector<double> la = sym_eigen(a).values;
    const std::vector<double> lb = sym_eigen(b).values;
    const double tol = 1e-8 * (1.0 + max_abs(a));
    for (std::size_t j = 0; j < la.size(); ++j)
        if (la[j] < lb[j] - tol) return false;
    return true;
}

/// Max-norm residuals of three exact matrix identities underlying the
/// compact-perturbation arguments, each zero in exact arithmetic:
///   joint_square : (JT)^2 + a^2 I = J(T-aI)J(T+aI) - aJ(T-aI)J - a(T-aI)
///   inverse_shift: T^{-1} - a^{-1} I = -a^{-1} T^{-1} (T - aI)
///   similarity   : (sqrt(T) J sqrt(T))^T (sqrt(T) J sqrt(T))
///                    = -sqrt(T) (JT)^2 sqrt(T)^{-1}
struct IdentityResiduals {
    double joint_square;
    double inverse_shift;
    double similarity;
    double max() const {
        return std::max(joint_square, std::max(inverse_shift, similarity));
    }
};

inline IdentityResiduals compactness_identity_check(const SymmetricMatrix& t, double alpha) {
    if (alpha == 0.0)
        throw DimensionError("compactness_identity_check: alpha must be nonzero");
    cholesky_pd(t);
    const std::size_t order = t.order();
    const Matrix j = standard_J(t.half_order());
    const Matrix id = Matrix::identity(order);
    const Matrix tm = t.mat();

    const Matrix jt = j * tm;
    const Matrix shifted_down = tm - alpha * id;  // T - aI
    const Matrix shifted_up = tm + alpha * id;    // T + aI

    const Matrix lhs1 = jt * jt + (alpha * alpha) * id;
    const Matrix rhs1 = j * shifted_down * j * shifted_up -
                        alpha * (j * shifted_down * j) - alpha * shifted_down;

    const EigenDecomposition eig = sym_eigen(t);
    auto spectral_map = [&](auto f) {
        Matrix m(order, order);
        for (std::size_t r = 0; r < order; ++r)
            for (std::size_t c = 0; c < order; ++c) {
                double s = 0.0;
                for (std::size_t k = 0; k < order; ++k)
                    s += eig.vectors(r, k) * f(eig.values[k]) * eig.vectors(c, k);
                m(r, c) = s;
            }
        return m;
    };
    const Matrix inv = spectral_map([](double x) { return 1.0 / x; });
    const Matrix root = spectral_map([](double x) { return std::sqrt(x); });
    const Matrix root_inv = spectral_map([](double x) { return 1.0 / std::sqrt(x); });

    const Matrix lhs2 = inv - (1.0 / alpha) * id;
    const Matrix rhs2 = (-1.0 / alpha) * (inv * shifted_down);

    const Matrix r = root * j * root;
    const Matrix lhs3 = r.transposed() * r;
    const Matrix rhs3 = -1.0 * (root * (jt * jt) * root_inv);

    IdentityResiduals res;
    res.joint_square = max_abs(lhs1 - rhs1);
    res.inverse_shift = max_abs(lhs2 - rhs2);
    res.similarity = max_abs(lhs3 - rhs3);
    return res;
}

}  // namespace sympeig
