#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sympeig/errors.hpp"
#include "sympeig/linalg.hpp"
#include "sympeig/models.hpp"

namespace sympeig {

enum class Status { Satisfied, Violated, Inconclusive };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::Satisfied: return "Satisfied";
        case Status::Violated: return "Violated";
        case Status::Inconclusive: return "Inconclusive";
    }
    return "?";
}

/// Outcome of one membership condition, with a numeric witness.
/// A Violated verdict always carries a concrete finite witness.
struct ConditionVerdict {
    Status status = Status::Inconclusive;
    double evidence = 0.0;
    std::string detail;
};

namespace detail {

struct SequenceSample {
    std::vector<double> p, q;  // values at indices 1..k_max
};

inline SequenceSample sample_diagonal(const OperatorModel& model, std::size_t k_max) {
    SequenceSample s;
    s.p.resize(k_max);
    s.q.resize(k_max);
    std::map<std::string, double> vars;
    for (std::size_t k = 1; k <= k_max; ++k) {
        vars["n"] = static_cast<double>(k);
        s.p[k - 1] = expr::eval(model.p, vars);
        s.q[k - 1] = expr::eval(model.q, vars);
    }
    return s;
}

/// Ratio-test verdict for a summability claim over per-index terms.
/// Satisfied needs (last-window increment)/(previous-window increment) <= 0.9
/// or full underflow of both increments; Violated needs the per-entry
/// witness values to stay >= 1e-6 across the tail window.
inline ConditionVerdict summability_verdict(const std::vector<double>& terms,
                                            const std::vector<double>& witnesses,
                                            std::size_t tail_window,
                                            const std::string& label) {
    const std::size_t k_max = terms.size();
    if (k_max < 4 || tail_window < 1) {
        ConditionVerdict v;
        v.status = Status::Inconclusive;
        v.detail = label + ": too few terms for a window comparison";
        return v;
    }
    const std::size_t w = std::min(tail_window, k_max / 2);
    double last = 0.0, prev = 0.0;
    for (std::size_t k = k_max - w; k < k_max; ++k) last += terms[k];
    for (std::size_t k = k_max - 2 * w; k < k_max - w; ++k) prev += terms[k];

    ConditionVerdict v;
    if (last == 0.0 && prev == 0.0) {
        v.status = Status::Satisfied;
        v.evidence = 0.0;
        v.detail = label + ": tail increments vanish";
        return v;
    }
    const double ratio = prev > 0.0 ? last / prev : HUGE_VAL;
    if (ratio <= 0.9) {
        v.status = Status::Satisfied;
        v.evidence = ratio;
        v.detail = label + ": window increment ratio " + std::to_string(ratio);
        return v;
    }
    double tail_min = HUGE_VAL;
    std::size_t tail_min_index = 0;
    const std::size_t per_index = witnesses.size() / k_max;
    for (std::size_t k = k_max - w; k < k_max; ++k)
        for (std::size_t e = 0; e < per_index; ++e) {
            const double x = witnesses[k * per_index + e];
            if (x < tail_min) {
                tail_min = x;
                tail_min_index = k + 1;
            }
        }
    if (tail_min >= 1e-6) {
        v.status = Status::Violated;
        v.evidence = tail_min;
        v.detail = label + ": terms stay >= " + std::to_string(tail_min) +
                   " through the tail window (index " + std::to_string(tail_min_index) + ")";
        return v;
    }
    v.status = Status::Inconclusive;
    v.evidence = ratio;
    v.detail = label + ": window ratio " + std::to_string(ratio) +
               " > 0.9 but terms dip to " + std::to_string(tail_min);
    return v;
}

}  // namespace detail

/// The three membership conditions for a Gaussian covariance operator,
/// evaluated against the identity shift (the definition is stated at
/// alpha = 1; models declaring any other alpha are rejected):
///   (1) the complexified operator dominates iJ,
///   (2) S - I is Hilbert-Schmidt,
///   (3) (JS)^2 + I is trace class.
/// Supported kinds: diagonal_pair (closed forms) and infinite_matrix
/// (condition (1) through the Hermitian embedding of truncations,
/// conditions (2) and (3) inconclusive by design). Integral models go
/// through integral_gco_precheck instead.
inline std::array<ConditionVerdict, 3> gco_conditions(const OperatorModel& model,
                                                      std::size_t k_max = 10000,
                                                      std::size_t tail_window = 1000) {
    if (model.alpha != 1.0)
        throw DimensionError("gco_conditions: defined against shift 1, model declares alpha = " +
                             std::to_string(model.alpha));

    std::array<ConditionVerdict, 3> out;
    if (model.kind == ModelKind::DiagonalPair) {
        const detail::SequenceSample s = detail::sample_diagonal(model, k_max);

        // (1) closed form of the Hermitian embedding: p_k q_k >= 1
        out[0].status = Status::Satisfied;
        out[0].detail = "p_k q_k >= 1 for all k <= " + std::to_string(k_max);
        out[0].evidence = HUGE_VAL;
        for (std::size_t k = 0; k < k_max; ++k) {
            const double pq = s.p[k] * s.q[k];
            out[0].evidence = std::min(out[0].evidence, pq);
            if (pq < 1.0 - 1e-12) {
                out[0].status = Status::Violated;
                out[0].evidence = pq;
                out[0].detail = "p_k q_k = " + std::to_string(pq) + " < 1 at k = " +
                                std::to_string(k + 1);
                break;
            }
        }

        // (2) sum of squared diagonal deviations from 1
        std::vector<double> hs_terms(k_max), hs_witnesses(2 * k_max);
        for (std::size_t k = 0; k < k_max; ++k) {
            const double dp = (s.p[k] - 1.0) * (s.p[k] - 1.0);
            const double dq = (s.q[k] - 1.0) * (s.q[k] - 1.0);
            hs_terms[k] = dp + dq;
            hs_witnesses[2 * k] = dp;
            hs_witnesses[2 * k + 1] = dq;
        }
        out[1] = detail::summability_verdict(hs_terms, hs_witnesses, tail_window,
                                             "sum (p_k - 1)^2 + (q_k - 1)^2");

        // (3) trace sum |1 - p_k q_k|
        std::vector<double> tr_terms(k_max);
        for (std::size_t k = 0; k < k_max; ++k) tr_terms[k] = std::abs(1.0 - s.p[k] * s.q[k]);
        out[2] = detail::summability_verdict(tr_terms, tr_terms, tail_window,
                                             "sum |1 - p_k q_k|");
        return out;
    }

    if (model.kind == ModelKind::InfiniteMatrix) {
        // (1): S - iJ >= 0 through the real embedding, on a ladder of truncations
        out[0].status = Status::Satisfied;
        out[0].detail = "S - iJ PSD on truncations of half-order 4, 8, 16, 32";
        for (const std::size_t m : {4u, 8u, 16u, 32u}) {
            const SymmetricMatrix s = truncate(model, m);
            const Matrix y = standard_J(m) * -1.0;
            if (!complex_hermitian_psd(s.mat(), y)) {
                out[0].status = Status::Violated;
                out[0].evidence = static_cast<double>(2 * m);
                out[0].detail = "S - iJ has a negative eigenvalue at truncation order " +
                                std::to_string(2 * m);
                break;
            }
        }
        out[1].status = Status::Inconclusive;
        out[1].detail = "Hilbert-Schmidt membership not decided beyond truncation evidence";
        out[2].status = Status::Inconclusive;
        out[2].detail = "trace-class membership not decided beyond truncation evidence";
        return out;
    }

    for (auto& v : out) {
        v.status = Status::Inconclusive;
        v.detail = "integral models use the sufficient-condition precheck";
    }
    return out;
}

/// Membership test for the positive absolutely-norm-attaining class on
/// diagonal models: the operator must be beta I + (positive compact) +
/// (finite rank), i.e. only finitely many diagonal entries may sit below
/// the essential-spectrum point beta.
///
/// beta is estimated as the common tail limit of p and q. The finiteness
/// question is decided by the sign of the deviation min(p_k, q_k) - beta at
/// the deepest index where it still resolves above 1e-12: a negative last
/// resolvable deviation means the sequence approaches beta from below, so
/// entries below beta never stop occurring.
inline ConditionVerdict an_plus_check(const OperatorModel& model, std::size_t k_max = 10000,
                                      std::size_t tail_window = 1000) {
    ConditionVerdict v;
    if (model.kind != ModelKind::DiagonalPair) {
        v.status = Status::Inconclusive;
        v.detail = std::string("no decision procedure for kind ") + to_string(model.kind);
        return v;
    }
    const detail::SequenceSample s = detail::sample_diagonal(model, k_max);
    const std::size_t w = std::min(tail_window, k_max - 1);

    double step = 0.0;
    for (std::size_t k = k_max - w; k < k_max; ++k) {
        step = std::max(step, std::abs(s.p[k] - s.p[k - 1]));
        step = std::max(step, std::abs(s.q[k] - s.q[k - 1]));
    }
    const double split = std::abs(s.p[k_max - 1] - s.q[k_max - 1]);
    if (step > 1e-9 || split > 1e-9) {
        v.status = Status::Inconclusive;
        v.evidence = std::max(step, split);
        v.detail = "p and q do not settle to a common limit over the tail window";
        return v;
    }
    const double beta = 0.5 * (s.p[k_max - 1] + s.q[k_max - 1]);
    v.evidence = beta;

    if (beta <= 1e-12) {
        v.status = Status::Violated;
        v.detail = "limit " + std::to_string(beta) +
                   " <= 0: the operator is compact, hence not invertible";
        return v;
    }

    std::size_t last_resolvable = 0;
    double last_deviation = 0.0;
    std::size_t below_count = 0;
    std::size_t last_below = 0;
    for (std::size_t k = 0; k < k_max; ++k) {
        const double dev = std::min(s.p[k], s.q[k]) - beta;
        if (std::abs(dev) > 1e-12) {
            last_resolvable = k + 1;
            last_deviation = dev;
        }
        if (dev < -1e-12) {
            ++below_count;
            last_below = k + 1;
        }
    }
    if (below_count == 0) {
        v.status = Status::Satisfied;
        v.detail = "beta = " + std::to_string(beta) + ", no entries below beta";
        return v;
    }
    if (last_deviation < 0.0) {
        v.status = Status::Violated;
        v.evidence = std::min(s.p[last_resolvable - 1], s.q[last_resolvable - 1]);
        v.detail = "entries stay below beta = " + std::to_string(beta) +
                   " down to the resolution limit (index " +
                   std::to_string(last_resolvable) + ", " + std::to_string(below_count) +
                   " resolvable violations)";
        return v;
    }
    if (last_below < last_resolvable) {
        v.status = Status::Satisfied;
        v.detail = "beta = " + std::to_string(beta) + ", " + std::to_string(below_count) +
                   " entries below beta, none after index " + std::to_string(last_below);
        return v;
    }
    v.status = Status::Inconclusive;
    v.detail = "violation pattern does not stabilize before the resolution limit";
    return v;
}

/// Sufficient-condition precheck for an integral model to be a Gaussian
/// covariance operator: the kernel is declared continuous and F + 2I is PSD
/// at the requested discretization order. This is a finite-order check of a
/// sufficient condition only; evidence is the smallest Nystrom eigenvalue.
inline ConditionVerdict integral_gco_precheck(const OperatorModel& model, std::size_t m) {
    if (model.kind != ModelKind::Integral)
        throw DimensionError("integral_gco_precheck: model is not of integral kind");
    if (model.alpha != 1.0)
        throw DimensionError("integral_gco_precheck: defined against shift 1, model declares "
                             "alpha = " + std::to_string(model.alpha));
    const Matrix f = nystrom_matrix(model, m);
    const EigenDecomposition eig = eigen_symmetric(f);
    const double min_f = eig.values.back();
    const double min_shifted = min_f + 2.0;
    ConditionVerdict v;
    v.evidence = min_f;
    if (!model.continuity_declared) {
        v.status = Status::Inconclusive;
        v.detail = "sufficient-condition precheck at finite order: kernel continuity not "
                   "declared";
        return v;
    }
    if (min_shifted >= -1e-10 * (1.0 + max_abs(f))) {
        v.status = Status::Satisfied;
        v.detail = "sufficient-condition precheck at finite order: min eig(F + 2I) = " +
                   std::to_string(min_shifted) + " at m = " + std::to_string(m);
    } else {
        v.status = Status::Violated;
        v.detail = "sufficient-condition precheck at finite order: F has eigenvalue " +
                   std::to_string(min_f) + ", so F + 2I has eigenvalue " +
                   std::to_string(min_shifted) + " at m = " + std::to_string(m);
    }
    return v;
}

/// Combined classification row for reporting.
struct ClassificationReport {
    ConditionVerdict gco_cond1, gco_cond2, gco_cond3;
    Status is_gco = Status::Inconclusive;
    ConditionVerdict an_plus;
    double beta_estimate = std::numeric_limits<double>::quiet_NaN();
    std::optional<ConditionVerdict> integral_precheck;
};

inline ClassificationReport classify(const OperatorModel& model, std::size_t k_max = 10000,
                                     std::size_t tail_window = 1000,
                                     std::size_t integral_order = 16) {
    ClassificationReport r;
    if (model.kind == ModelKind::Integral) {
        r.integral_precheck = integral_gco_precheck(model, integral_order);
        r.gco_cond1.detail = r.gco_cond2.detail = r.gco_cond3.detail =
            "see integral precheck";
        r.is_gco = r.integral_precheck->status == Status::Satisfied ? Status::Satisfied
                                                                    : Status::Inconclusive;
        r.an_plus = an_plus_check(model, k_max, tail_window);
        return r;
    }
    const auto conds = gco_conditions(model, k_max, tail_window);
    r.gco_cond1 = conds[0];
    r.gco_cond2 = conds[1];
    r.gco_cond3 = conds[2];
    std::size_t satisfied = 0, violated = 0;
    for (const auto& c : conds) {
        satisfied += c.status == Status::Satisfied;
        violated += c.status == Status::Violated;
    }
    r.is_gco = violated > 0 ? Status::Violated
                            : (satisfied == 3 ? Status::Satisfied : Status::Inconclusive);
    r.an_plus = an_plus_check(model, k_max, tail_window);
    if (model.kind == ModelKind::DiagonalPair) {
        if (r.an_plus.status == Status::Satisfied) {
            r.beta_estimate = r.an_plus.evidence;  // evidence of Satisfied is beta
        } else {
            const detail::SequenceSample s = detail::sample_diagonal(model, k_max);
            const double split = std::abs(s.p[k_max - 1] - s.q[k_max - 1]);
            if (split <= 1e-9) r.beta_estimate = 0.5 * (s.p[k_max - 1] + s.q[k_max - 1]);
        }
    }
    return r;
}

}  // namespace sympeig
