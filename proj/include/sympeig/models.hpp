#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sympeig/errors.hpp"
#include "sympeig/expr.hpp"
#include "sympeig/interlacing.hpp"
#include "sympeig/linalg.hpp"
#include "sympeig/matrix.hpp"
#include "sympeig/symplectic.hpp"

namespace sympeig {

enum class ModelKind { DiagonalPair, InfiniteMatrix, Integral };

inline const char* to_string(ModelKind k) {
    switch (k) {
        case ModelKind::DiagonalPair: return "diagonal_pair";
        case ModelKind::InfiniteMatrix: return "infinite_matrix";
        case ModelKind::Integral: return "integral";
    }
    return "?";
}

/// Declarative description of an infinite-dimensional operator on H + H.
///
/// diagonal_pair   : the operator itself is diag(p_1, p_2, ...) + diag(q_1, ...);
///                   alpha only declares the scalar the operator is a compact
///                   perturbation of.
/// infinite_matrix : the entry rules define the compact part K = [[A, B], [B^T, D]];
///                   truncations are K_m + alpha I.
/// integral        : kernel k(s, t) on [a, b] defines the compact part;
///                   truncations are blockdiag(F + alpha I, F + alpha I) with F the
///                   symmetric Nystrom matrix.
struct OperatorModel {
    ModelKind kind;
    double alpha = 1.0;

    // diagonal_pair
    expr::Ast p, q;

    // infinite_matrix
    expr::Ast a_entry, b_entry, d_entry;

    // integral
    expr::Ast kernel;
    double interval_a = 0.0;
    double interval_b = 1.0;
    bool continuity_declared = true;
};

/// Nodes and weights of the exact m-point Gauss-Legendre rule on [a, b],
/// found by Newton iteration on the Legendre roots. Weights are positive
/// and sum to b - a.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline QuadratureRule nystrom_nodes(double a, double b, std::size_t m) {
    if (!(a < b)) throw DimensionError("nystrom_nodes: need a < b");
    if (m < 1) throw DimensionError("nystrom_nodes: need m >= 1");
    QuadratureRule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    const double pi = std::acos(-1.0);
    for (std::size_t i = 0; i < m; ++i) {
        // i-th root of P_m on [-1, 1], Newton from the Chebyshev estimate
        double x = std::cos(pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(m) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= m; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = static_cast<double>(m) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = a + (b - a) * (x + 1.0) / 2.0;
        rule.weights[i] = (b - a) / ((1.0 - x * x) * dp * dp);
    }
    // ascending nodes read better in reports
    std::reverse(rule.nodes.begin(), rule.nodes.end());
    std::reverse(rule.weights.begin(), rule.weights.end());
    return rule;
}

/// Symmetric Nystrom matrix W^{1/2} K W^{1/2} of the compact part of an
/// integral model, at m quadrature nodes. The kernel must satisfy
/// k(s,t) = k(t,s) on the sampled grid to 1e-12.
inline Matrix nystrom_matrix(const OperatorModel& model, std::size_t m) {
    if (model.kind != ModelKind::Integral)
        throw DimensionError("nystrom_matrix: model is not of integral kind");
    const QuadratureRule rule = nystrom_nodes(model.interval_a, model.interval_b, m);
    Matrix k(m, m);
    std::map<std::string, double> vars;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            vars["s"] = rule.nodes[i];
            vars["t"] = rule.nodes[j];
            k(i, j) = expr::eval(model.kernel, vars);
        }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (std::abs(k(i, j) - k(j, i)) > 1e-12)
                throw NonsymmetricKernelError(
                    "kernel is not symmetric at nodes (" + std::to_string(rule.nodes[i]) +
                    ", " + std::to_string(rule.nodes[j]) + "): difference " +
                    std::to_string(k(i, j) - k(j, i)));
    Matrix f(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            f(i, j) = std::sqrt(rule.weights[i]) * k(i, j) * std::sqrt(rule.weights[j]);
    return symmetrized(f);
}

/// Finite section of order 2m.
inline SymmetricMatrix truncate(const OperatorModel& model, std::size_t m) {
    if (m < 1) throw DimensionError("truncate: need m >= 1");
    switch (model.kind) {
        case ModelKind::DiagonalPair: {
            std::vector<double> diag(2 * m);
            std::map<std::string, double> vars;
            for (std::size_t k = 1; k <= m; ++k) {
                vars["n"] = static_cast<double>(k);
                diag[k - 1] = expr::eval(model.p, vars);
                diag[m + k - 1] = expr::eval(model.q, vars);
            }
            return SymmetricMatrix::diagonal(diag);
        }
        case ModelKind::InfiniteMatrix: {
            Matrix s(2 * m, 2 * m);
            std::map<std::string, double> vars;
            Matrix a(m, m), b(m, m), d(m, m);
            for (std::size_t i = 1; i <= m; ++i)
                for (std::size_t j = 1; j <= m; ++j) {
                    vars["i"] = static_cast<double>(i);
                    vars["j"] = static_cast<double>(j);
                    a(i - 1, j - 1) = expr::eval(model.a_entry, vars);
                    b(i - 1, j - 1) = expr::eval(model.b_entry, vars);
                    d(i - 1, j - 1) = expr::eval(model.d_entry, vars);
                }
            a = symmetrized(a);
            d = symmetrized(d);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) {
                    s(i, j) = a(i, j) + (i == j ? model.alpha : 0.0);
                    s(i, m + j) = b(i, j);
                    s(m + j, i) = b(i, j);
                    s(m + i, m + j) = d(i, j) + (i == j ? model.alpha : 0.0);
                }
            return SymmetricMatrix(s);
        }
        case ModelKind::Integral: {
            const Matrix f = nystrom_matrix(model, m);
            Matrix s(2 * m, 2 * m);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) {
                    const double v = f(i, j) + (i == j ? model.alpha : 0.0);
                    s(i, j) = v;
                    s(m + i, m + j) = v;
                }
            return SymmetricMatrix(s);
        }
    }
    throw DimensionError("truncate: unknown model kind");
}

/// Per-order record from a truncation scan.
struct TruncationReport {
    std::size_t order = 0;  // 2m
    bool skipped = false;
    std::string skip_reason;
    std::vector<double> lambda_desc;
    std::vector<double> d_desc;
    std::optional<InterlacingReport> interlacing;
    double hs_partial = 0.0;     // sum of squared entries of S_2m - alpha I
    double trace_partial = 0.0;  // sum |entries| of (J S_2m)^2 + alpha^2 I
};

namespace detail {

inline double hs_partial_sum(const SymmetricMatrix& s, double alpha) {
    double sum = 0.0;
    for (std::size_t i = 0; i < s.order(); ++i)
        for (std::size_t j = 0; j < s.order(); ++j) {
            const double v = s(i, j) - (i == j ? alpha : 0.0);
            sum += v * v;
        }
    return sum;
}

inline double trace_partial_sum(const OperatorModel& model, const SymmetricMatrix& s,
                                std::size_t m) {
    if (model.kind == ModelKind::DiagonalPair) {
        // diagonal fast path: one half of (J S)^2 + alpha^2 I is
        // diag(alpha^2 - p_k q_k)
        double sum = 0.0;
        for (std::size_t k = 0; k < m; ++k)
            sum += std::abs(model.alpha * model.alpha - s(k, k) * s(m + k, m + k));
        return sum;
    }
    const Matrix js = standard_J(m) * s.mat();
    Matrix sq = js * js;
    for (std::size_t i = 0; i < sq.rows(); ++i) sq(i, i) += model.alpha * model.alpha;
    double sum = 0.0;
    for (std::size_t i = 0; i < sq.rows(); ++i)
        for (std::size_t j = 0; j < sq.cols(); ++j) sum += std::abs(sq(i, j));
    return sum;
}

}  // namespace detail

/// Truncate at each requested matrix order (each must be even) and collect
/// spectra, interlacing verdicts and summability diagnostics. A truncation
/// that fails positive definiteness is reported as skipped, not fatal.
inline std::vector<TruncationReport> truncation_scan(const OperatorModel& model,
                                                     const std::vector<std::size_t>& orders) {
    std::vector<TruncationReport> reports;
    reports.reserve(orders.size());
    for (const std::size_t order : orders) {
        TruncationReport rep;
        rep.order = order;
        if (order < 2 || order % 2 != 0) {
            rep.skipped = true;
            rep.skip_reason = "order must be a positive even integer";
            reports.push_back(std::move(rep));
            continue;
        }
        const std::size_t m = order / 2;
        try {
            const SymmetricMatrix s = truncate(model, m);
            rep.hs_partial = detail::hs_partial_sum(s, model.alpha);
            rep.trace_partial = detail::trace_partial_sum(model, s, m);
            try {
                rep.interlacing = interlace_matrix(s);
                rep.lambda_desc = rep.interlacing->lambda_desc;
                rep.d_desc = rep.interlacing->d_desc;
            } catch (const NotPdError& e) {
                rep.skipped = true;
                rep.skip_reason = e.what();
            }
        } catch (const std::exception& e) {
            rep.skipped = true;
            rep.skip_reason = e.what();
        }
        reports.push_back(std::move(rep));
    }
    return reports;
}

}  // namespace sympeig
