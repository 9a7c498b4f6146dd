#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <sympeig/models.hpp>

#include "test_util.hpp"

using namespace sympeig;

namespace {

OperatorModel diagonal_model(const std::string& p, const std::string& q, double alpha) {
    OperatorModel m;
    m.kind = ModelKind::DiagonalPair;
    m.alpha = alpha;
    m.p = expr::parse(p, {"n"});
    m.q = expr::parse(q, {"n"});
    return m;
}

OperatorModel integral_model(const std::string& kernel, double a, double b, double alpha) {
    OperatorModel m;
    m.kind = ModelKind::Integral;
    m.alpha = alpha;
    m.kernel = expr::parse(kernel, {"s", "t"});
    m.interval_a = a;
    m.interval_b = b;
    return m;
}

}  // namespace

TEST_CASE("gauss-legendre nodes for tiny rules") {
    const auto r1 = nystrom_nodes(0.0, 1.0, 1);
    CHECK(r1.nodes[0] == Catch::Approx(0.5).margin(1e-15));
    CHECK(r1.weights[0] == Catch::Approx(1.0).margin(1e-15));

    const auto r2 = nystrom_nodes(-1.0, 1.0, 2);
    CHECK(r2.nodes[0] == Catch::Approx(-1.0 / std::sqrt(3.0)).margin(1e-14));
    CHECK(r2.nodes[1] == Catch::Approx(1.0 / std::sqrt(3.0)).margin(1e-14));
    CHECK(r2.weights[0] == Catch::Approx(1.0).margin(1e-14));
    CHECK(r2.weights[1] == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("gauss-legendre weights sum to the interval length") {
    const auto rule = nystrom_nodes(0.0, 2.0, 8);
    double sum = 0.0;
    for (const double w : rule.weights) sum += w;
    CHECK(sum == Catch::Approx(2.0).margin(1e-12));
}

TEST_CASE("gauss-legendre integrates low-degree polynomials exactly") {
    // m = 3 is exact through degree 5; check x^4 on [0, 1]
    const auto rule = nystrom_nodes(0.0, 1.0, 3);
    double integral = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        integral += rule.weights[i] * std::pow(rule.nodes[i], 4);
    CHECK(integral == Catch::Approx(0.2).margin(1e-14));
}

TEST_CASE("diagonal-pair truncation lays out p then q") {
    const auto m = diagonal_model("1", "1", 1.0);
    const SymmetricMatrix id = truncate(m, 2);
    CHECK(max_abs(id.mat() - Matrix::identity(4)) == 0.0);

    const auto block = diagonal_model("1 - 4^(-n)", "1 + 2^(-n)", 1.0);
    const SymmetricMatrix t = truncate(block, 1);
    CHECK(t(0, 0) == 0.75);
    CHECK(t(1, 1) == 1.5);
}

TEST_CASE("integral truncation of the zero kernel is the shifted identity") {
    const auto m = integral_model("0", 0.0, 1.0, 1.0);
    const SymmetricMatrix t = truncate(m, 3);
    CHECK(max_abs(t.mat() - Matrix::identity(6)) == 0.0);
}

TEST_CASE("integral truncations duplicate each eigenvalue") {
    const auto m = integral_model("exp(-abs(s-t))", 0.0, 1.0, 1.0);
    const SymmetricMatrix t = truncate(m, 6);
    const auto values = sym_eigen(t).values;
    for (std::size_t k = 0; k + 1 < values.size(); k += 2)
        CHECK(values[k] - values[k + 1] <= 1e-10 * std::abs(values[k]));
}

TEST_CASE("asymmetric kernels are rejected") {
    const auto m = integral_model("s - t", 0.0, 1.0, 1.0);
    CHECK_THROWS_AS(truncate(m, 4), NonsymmetricKernelError);
}

TEST_CASE("infinite-matrix truncation assembles the shifted block form") {
    OperatorModel m;
    m.kind = ModelKind::InfiniteMatrix;
    m.alpha = 1.0;
    m.a_entry = expr::parse("1/2^(i+j)", {"i", "j"});
    m.b_entry = expr::parse("0", {"i", "j"});
    m.d_entry = expr::parse("1/2^(i+j)", {"i", "j"});
    const SymmetricMatrix t = truncate(m, 2);
    CHECK(t(0, 0) == Catch::Approx(0.25 + 1.0));
    CHECK(t(0, 1) == Catch::Approx(0.125));
    CHECK(t(0, 2) == 0.0);
    CHECK(t(2, 2) == Catch::Approx(0.25 + 1.0));
    CHECK(is_positive_definite(t));
}

TEST_CASE("scan of a p=q model reproduces the sequence as its symplectic spectrum") {
    const auto m = diagonal_model("1 + 1/n^2", "1 + 1/n^2", 1.0);
    for (const auto& rep : truncation_scan(m, {2, 4, 8})) {
        REQUIRE_FALSE(rep.skipped);
        CHECK(rep.interlacing->all_ok);
        // d equals the p-values sorted descending, exactly up to solver noise
        std::vector<double> expected;
        for (std::size_t k = 1; k <= rep.order / 2; ++k)
            expected.push_back(1.0 + 1.0 / static_cast<double>(k * k));
        std::sort(expected.rbegin(), expected.rend());
        for (std::size_t i = 0; i < expected.size(); ++i)
            CHECK(rep.d_desc[i] == Catch::Approx(expected[i]).epsilon(1e-10));
    }
}

TEST_CASE("scan of the geometric block model matches the closed form") {
    const auto m = diagonal_model("1 - 4^(-n)", "1 + 2^(-n)", 1.0);
    for (const auto& rep : truncation_scan(m, {4, 8})) {
        REQUIRE_FALSE(rep.skipped);
        std::vector<double> expected;
        for (std::size_t k = 1; k <= rep.order / 2; ++k) {
            const double p = 1.0 - std::pow(4.0, -static_cast<double>(k));
            const double q = 1.0 + std::pow(2.0, -static_cast<double>(k));
            expected.push_back(std::sqrt(p * q));
        }
        std::sort(expected.rbegin(), expected.rend());
        for (std::size_t i = 0; i < expected.size(); ++i)
            CHECK(rep.d_desc[i] == Catch::Approx(expected[i]).epsilon(1e-10));
        CHECK(rep.interlacing->all_ok);
    }
}

TEST_CASE("summability diagnostics grow monotonically for diagonal models") {
    const auto m = diagonal_model("3 - 1/n^2", "3 - 1/n^2", 3.0);
    const auto reports = truncation_scan(m, {2, 4, 8, 16});
    for (std::size_t i = 1; i < reports.size(); ++i) {
        CHECK(reports[i].hs_partial >= reports[i - 1].hs_partial);
        CHECK(reports[i].trace_partial >= reports[i - 1].trace_partial);
    }
}

TEST_CASE("diagonal fast path matches the matrix trace diagnostic") {
    // alpha = 1: trace_partial should be sum |1 - p_k q_k|
    const auto m = diagonal_model("1 - 4^(-n)", "1 + 2^(-n)", 1.0);
    const auto reports = truncation_scan(m, {4});
    double expected = 0.0;
    for (int k = 1; k <= 2; ++k) {
        const double p = 1.0 - std::pow(4.0, -k);
        const double q = 1.0 + std::pow(2.0, -k);
        expected += std::abs(1.0 - p * q);
    }
    CHECK(reports[0].trace_partial == Catch::Approx(expected).margin(1e-14));
}

TEST_CASE("grid refinement is self-consistent for a smooth-enough kernel") {
    const auto m = integral_model("exp(-abs(s-t))", 0.0, 1.0, 1.0);
    const auto reports = truncation_scan(m, {16, 32, 64});
    std::vector<double> diffs;
    for (std::size_t i = 0; i + 1 < reports.size(); ++i) {
        REQUIRE_FALSE(reports[i].skipped);
        CHECK(reports[i].interlacing->all_ok);
        const auto& coarse = reports[i].d_desc;
        const auto& fine = reports[i + 1].d_desc;
        double worst = 0.0;
        for (std::size_t k = 0; k < coarse.size(); ++k)
            worst = std::max(worst, std::abs(coarse[k] - fine[k]));
        diffs.push_back(worst);
    }
    CHECK(diffs[0] <= 1e-2);
    CHECK(diffs[1] < diffs[0]);  // refinement shrinks the discrepancy
}

TEST_CASE("non-PD truncations are skipped with a reason, not fatal") {
    const auto m = integral_model("-3", 0.0, 1.0, 1.0);
    const auto reports = truncation_scan(m, {4, 8});
    for (const auto& rep : reports) {
        CHECK(rep.skipped);
        CHECK(rep.skip_reason.find("not positive") != std::string::npos);
        CHECK(rep.hs_partial > 0.0);  // diagnostics still computed
    }
}

TEST_CASE("odd scan orders are reported, not computed") {
    const auto m = diagonal_model("1", "1", 1.0);
    const auto reports = truncation_scan(m, {3});
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].skipped);
}

TEST_CASE("evaluation failures surface as skips with the original message") {
    const auto m = diagonal_model("1/(n-1)", "1", 1.0);
    const auto reports = truncation_scan(m, {4});
    CHECK(reports[0].skipped);
    CHECK(reports[0].skip_reason.find("division by zero") != std::string::npos);
}
