#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>

#include <sympeig/classify.hpp>
#include <sympeig/rng.hpp>
#include <sympeig/symplectic.hpp>

using namespace sympeig;

namespace {

OperatorModel diagonal_model(const std::string& p, const std::string& q) {
    OperatorModel m;
    m.kind = ModelKind::DiagonalPair;
    m.alpha = 1.0;
    m.p = expr::parse(p, {"n"});
    m.q = expr::parse(q, {"n"});
    return m;
}

OperatorModel integral_model(const std::string& kernel, bool continuous = true) {
    OperatorModel m;
    m.kind = ModelKind::Integral;
    m.alpha = 1.0;
    m.kernel = expr::parse(kernel, {"s", "t"});
    m.interval_a = 0.0;
    m.interval_b = 1.0;
    m.continuity_declared = continuous;
    return m;
}

}  // namespace

TEST_CASE("diag(3 - 1/n^2): inside the compact-shift class but nothing more") {
    const auto m = diagonal_model("3 - 1/n^2", "3 - 1/n^2");
    const auto conds = gco_conditions(m);
    CHECK(conds[0].status == Status::Satisfied);
    CHECK(conds[1].status == Status::Violated);
    CHECK(conds[1].evidence == Catch::Approx(4.0).epsilon(1e-6));  // (p_k - 1)^2 -> 4
    CHECK(conds[2].status == Status::Violated);

    const auto an = an_plus_check(m);
    CHECK(an.status == Status::Violated);

    const auto report = classify(m);
    CHECK(report.is_gco == Status::Violated);
    CHECK(report.beta_estimate == Catch::Approx(3.0).margin(1e-6));
}

TEST_CASE("diag(3 + 1/n^2): positive-AN but not a covariance operator") {
    const auto m = diagonal_model("3 + 1/n^2", "3 + 1/n^2");
    const auto conds = gco_conditions(m);
    CHECK(conds[1].status == Status::Violated);

    const auto an = an_plus_check(m);
    CHECK(an.status == Status::Satisfied);
    CHECK(an.evidence == Catch::Approx(3.0).margin(1e-6));  // beta

    const auto report = classify(m);
    CHECK(report.is_gco == Status::Violated);
    CHECK(report.an_plus.status == Status::Satisfied);
    CHECK(report.beta_estimate == Catch::Approx(3.0).margin(1e-6));
}

TEST_CASE("geometric block model: covariance operator but not positive-AN") {
    const auto m = diagonal_model("1 - 4^(-n)", "1 + 2^(-n)");
    const auto conds = gco_conditions(m);
    CHECK(conds[0].status == Status::Satisfied);
    CHECK(conds[1].status == Status::Satisfied);
    CHECK(conds[2].status == Status::Satisfied);

    const auto an = an_plus_check(m);
    CHECK(an.status == Status::Violated);  // p climbs to 1 from below forever

    const auto report = classify(m);
    CHECK(report.is_gco == Status::Satisfied);
    CHECK(report.an_plus.status == Status::Violated);
}

TEST_CASE("diag(1 + 1/n^2): both memberships hold") {
    const auto m = diagonal_model("1 + 1/n^2", "1 + 1/n^2");
    const auto report = classify(m);
    CHECK(report.gco_cond1.status == Status::Satisfied);
    CHECK(report.gco_cond2.status == Status::Satisfied);
    CHECK(report.gco_cond3.status == Status::Satisfied);
    CHECK(report.is_gco == Status::Satisfied);
    CHECK(report.an_plus.status == Status::Satisfied);
    CHECK(report.beta_estimate == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("verdicts are stable when k_max grows") {
    const char* sequences[] = {"3 - 1/n^2", "3 + 1/n^2", "1 + 1/n^2"};
    for (const char* p : sequences) {
        const auto m = diagonal_model(p, p);
        const auto small = classify(m, 2000, 200);
        const auto big = classify(m, 10000, 1000);
        CHECK(small.is_gco == big.is_gco);
        CHECK(small.an_plus.status == big.an_plus.status);
    }
    const auto block = diagonal_model("1 - 4^(-n)", "1 + 2^(-n)");
    CHECK(classify(block, 2000, 200).is_gco == classify(block).is_gco);
}

TEST_CASE("gco conditions demand the identity shift") {
    auto m = diagonal_model("3 - 1/n^2", "3 - 1/n^2");
    m.alpha = 3.0;
    CHECK_THROWS_AS(gco_conditions(m), DimensionError);
}

TEST_CASE("closed-form embedding agrees with the Hermitian test on truncations") {
    Rng rng(631);
    const std::size_t m_trunc = 8;
    for (int trial = 0; trial < 50; ++trial) {
        // random affine-plus-geometric sequences around 1
        char pbuf[96], qbuf[96];
        std::snprintf(pbuf, sizeof(pbuf), "%.6f + %.6f*2^(-n)", rng.uniform(0.7, 1.3),
                      rng.uniform(-0.5, 0.5));
        std::snprintf(qbuf, sizeof(qbuf), "%.6f + %.6f/n", rng.uniform(0.7, 1.3),
                      rng.uniform(-0.5, 0.5));
        const auto model = diagonal_model(pbuf, qbuf);

        bool closed_form = true;
        std::map<std::string, double> vars;
        for (std::size_t k = 1; k <= m_trunc; ++k) {
            vars["n"] = static_cast<double>(k);
            if (expr::eval(model.p, vars) * expr::eval(model.q, vars) < 1.0 - 1e-12)
                closed_form = false;
        }
        const SymmetricMatrix s = truncate(model, m_trunc);
        const Matrix y = -1.0 * standard_J(m_trunc);
        const bool embedded = complex_hermitian_psd(s.mat(), y);
        CHECK(closed_form == embedded);
    }
}

TEST_CASE("integral precheck fixtures") {
    const auto zero = integral_gco_precheck(integral_model("0"), 8);
    CHECK(zero.status == Status::Satisfied);

    const auto neg = integral_gco_precheck(integral_model("-3"), 16);
    CHECK(neg.status == Status::Violated);
    CHECK(neg.evidence == Catch::Approx(-3.0).epsilon(0.05));  // -3 (b - a)

    const auto smooth = integral_gco_precheck(integral_model("exp(-abs(s-t))"), 16);
    CHECK(smooth.status == Status::Satisfied);
    CHECK(smooth.evidence >= -1e-10);  // positive-type kernel
}

TEST_CASE("integral precheck needs the continuity declaration") {
    const auto v = integral_gco_precheck(integral_model("exp(-abs(s-t))", false), 8);
    CHECK(v.status == Status::Inconclusive);
}

TEST_CASE("integral precheck validates kind and shift") {
    auto m = integral_model("0");
    m.alpha = 2.0;
    CHECK_THROWS_AS(integral_gco_precheck(m, 8), DimensionError);
    CHECK_THROWS_AS(integral_gco_precheck(diagonal_model("1", "1"), 8), DimensionError);
}

TEST_CASE("positive-AN check is inconclusive off the diagonal case") {
    const auto v = an_plus_check(integral_model("0"));
    CHECK(v.status == Status::Inconclusive);
}

TEST_CASE("infinite-matrix models classify through truncation evidence") {
    OperatorModel m;
    m.kind = ModelKind::InfiniteMatrix;
    m.alpha = 1.0;
    m.a_entry = expr::parse("1/2^(i+j)", {"i", "j"});
    m.b_entry = expr::parse("0", {"i", "j"});
    m.d_entry = expr::parse("1/2^(i+j)", {"i", "j"});
    const auto report = classify(m);
    CHECK(report.gco_cond1.status == Status::Satisfied);
    CHECK(report.gco_cond2.status == Status::Inconclusive);
    CHECK(report.gco_cond3.status == Status::Inconclusive);
    CHECK(report.is_gco == Status::Inconclusive);
    CHECK(report.an_plus.status == Status::Inconclusive);
}

TEST_CASE("integral models classify through the precheck") {
    const auto report = classify(integral_model("exp(-abs(s-t))"), 10000, 1000, 16);
    REQUIRE(report.integral_precheck.has_value());
    CHECK(report.integral_precheck->status == Status::Satisfied);
    CHECK(report.is_gco == Status::Satisfied);
    CHECK(std::isnan(report.beta_estimate));
}
