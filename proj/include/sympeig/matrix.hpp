#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sympeig/errors.hpp"

namespace sympeig {

/// Dense real matrix, row-major double storage.
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix& operator+=(const Matrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }

    Matrix& operator-=(const Matrix& o) {
        require_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }

    Matrix& operator*=(double c) {
        for (double& v : data_) v *= c;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, double c) { return a *= c; }
    friend Matrix operator*(double c, Matrix a) { return a *= c; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw DimensionError("matrix product: inner dimensions disagree");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const double aik = a(i, k);
                if (aik == 0.0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        }
        return c;
    }

    bool square() const { return rows_ == cols_; }

    bool all_finite() const {
        return std::all_of(data_.begin(), data_.end(),
                           [](double v) { return std::isfinite(v); });
    }

private:
    void require_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw DimensionError("matrix sum: shapes disagree");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Largest absolute entry.
inline double max_abs(const Matrix& m) {
    double r = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r = std::max(r, std::abs(m(i, j)));
    return r;
}

inline double frobenius_norm(const Matrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * m(i, j);
    return std::sqrt(s);
}

/// (A + A^T)/2 with the off-diagonal mirror copied exactly.
inline Matrix symmetrized(const Matrix& a) {
    if (!a.square()) throw DimensionError("symmetrized: matrix must be square");
    Matrix s(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        s(i, i) = a(i, i);
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            const double v = 0.5 * (a(i, j) + a(j, i));
            s(i, j) = v;
            s(j, i) = v;
        }
    }
    return s;
}

/// Real symmetric matrix of even order 2n. Entries are symmetrized on
/// construction so entries(i,j) == entries(j,i) holds exactly.
class SymmetricMatrix {
public:
    explicit SymmetricMatrix(const Matrix& entries) : mat_(symmetrized(entries)) {
        if (mat_.rows() < 2 || mat_.rows() % 2 != 0)
            throw DimensionError("symmetric matrix order must be even and >= 2, got " +
                                 std::to_string(mat_.rows()));
    }

    static SymmetricMatrix diagonal(const std::vector<double>& d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return SymmetricMatrix(m);
    }

    static SymmetricMatrix identity(std::size_t order) {
        return SymmetricMatrix(Matrix::identity(order));
    }

    std::size_t order() const { return mat_.rows(); }
    std::size_t half_order() const { return mat_.rows() / 2; }

    double operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }

    const Matrix& mat() const { return mat_; }

private:
    Matrix mat_;
};

inline double max_abs(const SymmetricMatrix& m) { return max_abs(m.mat()); }

// --- shared matrix text format ---------------------------------------------
//
// line 1: integer order 2n
// next 2n lines: 2n whitespace-separated decimal numbers
// '#' starts a comment that runs to end of line

inline SymmetricMatrix read_matrix_text(std::istream& in, const std::string& source = "<stream>") {
    std::vector<double> numbers;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream fields(line);
        std::string tok;
        while (fields >> tok) {
            try {
                std::size_t used = 0;
                const double v = std::stod(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                numbers.push_back(v);
            } catch (const std::exception&) {
                throw IoError(source + ":" + std::to_string(line_no) +
                              ": expected a number, got '" + tok + "'");
            }
        }
    }
    if (numbers.empty()) throw IoError(source + ": empty matrix file");
    const double order_val = numbers.front();
    const auto order = static_cast<std::size_t>(order_val);
    if (order_val != static_cast<double>(order) || order < 2 || order % 2 != 0)
        throw IoError(source + ": order must be a positive even integer, got " +
                      std::to_string(order_val));
    if (numbers.size() != 1 + order * order)
        throw IoError(source + ": expected " + std::to_string(order * order) +
                      " entries for order " + std::to_string(order) + ", got " +
                      std::to_string(numbers.size() - 1));
    Matrix m(order, order);
    for (std::size_t i = 0; i < order; ++i)
        for (std::size_t j = 0; j < order; ++j) m(i, j) = numbers[1 + i * order + j];
    if (!m.all_finite()) throw IoError(source + ": non-finite entry");
    return SymmetricMatrix(m);
}

inline SymmetricMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open matrix file '" + path + "'");
    return read_matrix_text(in, path);
}

inline void write_matrix_text(std::ostream& out, const SymmetricMatrix& m) {
    out << m.order() << '\n';
    char buf[64];
    for (std::size_t i = 0; i < m.order(); ++i) {
        for (std::size_t j = 0; j < m.order(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
            out << (j ? " " : "") << buf;
        }
        out << '\n';
    }
}

}  // namespace sympeig
