#pragma once

#include <cstdint>
#include <vector>

#include <sympeig/matrix.hpp>
#include <sympeig/rng.hpp>
#include <sympeig/symplectic.hpp>

namespace test_util {

using sympeig::Matrix;
using sympeig::Rng;
using sympeig::SymmetricMatrix;

inline SymmetricMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    Matrix m(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    return SymmetricMatrix(m);
}

/// Random symplectic matrix composed of shear and block-orthogonal
/// generators, keeping the conditioning mild.
inline Matrix random_symplectic(std::size_t n, Rng& rng) {
    const std::size_t order = 2 * n;
    Matrix m = Matrix::identity(order);
    for (int layer = 0; layer < 3; ++layer) {
        // block-orthogonal [[O, 0], [0, O]]
        const Matrix o = sympeig::random_orthonormal_columns(n, n, rng);
        Matrix rot(order, order);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                rot(i, j) = o(i, j);
                rot(n + i, n + j) = o(i, j);
            }
        // shear [[I, 0], [C, I]] with C symmetric and small
        Matrix shear = Matrix::identity(order);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const double c = rng.uniform(-0.4, 0.4);
                shear(n + i, j) = c;
                shear(n + j, i) = c;
            }
        m = rot * shear * m;
    }
    return m;
}

}  // namespace test_util
