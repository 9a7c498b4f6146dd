#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <string>

#include <sympeig/classify.hpp>
#include <sympeig/config.hpp>

using namespace sympeig;

namespace {
const std::string kFixtures = SYMPEIG_FIXTURE_DIR;
}

TEST_CASE("model configs load with defaults applied") {
    const OperatorModel single = load_model_file(kFixtures + "/diag_1_plus_invsq.json");
    CHECK(single.kind == ModelKind::DiagonalPair);
    CHECK(single.alpha == 1.0);
    CHECK(single.q == single.p);  // q defaults to p

    const OperatorModel block = load_model_file(kFixtures + "/block_geometric.json");
    CHECK_FALSE(block.q == block.p);

    const OperatorModel integral = load_model_file(kFixtures + "/integral_const_neg3.json");
    CHECK(integral.kind == ModelKind::Integral);
    CHECK(integral.continuity_declared);  // default
    CHECK(integral.interval_a == 0.0);
    CHECK(integral.interval_b == 1.0);

    const OperatorModel infinite = load_model_file(kFixtures + "/matrix_rank_one.json");
    CHECK(infinite.kind == ModelKind::InfiniteMatrix);
}

TEST_CASE("model config rejections") {
    using nlohmann::json;
    CHECK_THROWS_AS(model_from_json(json{{"kind", "diagonal_pair"}, {"p", "1"}}), IoError);
    CHECK_THROWS_AS(
        model_from_json(json{{"kind", "diagonal_pair"}, {"alpha", 0.0}, {"p", "1"}}),
        IoError);
    CHECK_THROWS_AS(model_from_json(json{{"kind", "nope"}, {"alpha", 1.0}}), IoError);
    CHECK_THROWS_AS(
        model_from_json(json{{"kind", "diagonal_pair"}, {"alpha", 1.0}, {"p", "1 +"}}),
        IoError);
    CHECK_THROWS_AS(model_from_json(json{{"kind", "diagonal_pair"},
                                         {"alpha", 1.0},
                                         {"p", "s"}}),  // wrong variable
                    IoError);
    CHECK_THROWS_AS(model_from_json(json{{"kind", "integral"},
                                         {"alpha", 1.0},
                                         {"kernel", "0"},
                                         {"interval", {1.0, 0.0}}}),
                    IoError);
    CHECK_THROWS_AS(load_model_file(kFixtures + "/does_not_exist.json"), IoError);
}

TEST_CASE("matrix fixtures parse") {
    const SymmetricMatrix id4 = read_matrix_file(kFixtures + "/id4.txt");
    CHECK(id4.order() == 4);
    CHECK(max_abs(id4.mat() - Matrix::identity(4)) == 0.0);

    const SymmetricMatrix diag = read_matrix_file(kFixtures + "/diag_075_15.txt");
    CHECK(diag(0, 0) == 0.75);
    CHECK(diag(1, 1) == 1.5);

    const SymmetricMatrix notpd = read_matrix_file(kFixtures + "/notpd.txt");
    CHECK_FALSE(is_positive_definite(notpd));
}

TEST_CASE("fixture models reproduce their headline classifications") {
    // quick cross-check that the shipped fixtures wire up end to end;
    // exhaustive verdict checks live in test_classify.cpp
    const auto block = classify(load_model_file(kFixtures + "/block_geometric.json"));
    CHECK(block.is_gco == Status::Satisfied);
    CHECK(block.an_plus.status == Status::Violated);
}
