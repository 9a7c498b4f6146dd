#pragma once

#include <fstream>
#include <set>
#include <string>

#include <json.hpp>

#include "sympeig/errors.hpp"
#include "sympeig/expr.hpp"
#include "sympeig/models.hpp"

namespace sympeig {

/// Load an operator model from its JSON description.
///
/// Common fields: "kind" (diagonal_pair | infinite_matrix | integral) and
/// "alpha" (nonzero number). Kind-specific fields:
///   diagonal_pair   : "p" (expression in n), optional "q" (defaults to p)
///   infinite_matrix : "a_entry", "b_entry", "d_entry" (expressions in i, j)
///   integral        : "kernel" (expression in s, t), "interval" [a, b],
///                     optional "continuity_declared" (defaults to true)
inline OperatorModel model_from_json(const nlohmann::json& j,
                                     const std::string& source = "<json>") {
    auto fail = [&](const std::string& msg) -> IoError {
        return IoError(source + ": " + msg);
    };
    auto expression = [&](const char* field, const std::set<std::string>& vars) {
        if (!j.contains(field) || !j.at(field).is_string())
            throw fail(std::string("missing string field \"") + field + "\"");
        const std::string src = j.at(field).get<std::string>();
        try {
            return expr::parse(src, vars);
        } catch (const expr::ParseError& e) {
            throw fail(std::string("field \"") + field + "\": " + e.what());
        }
    };

    if (!j.contains("kind") || !j.at("kind").is_string())
        throw fail("missing string field \"kind\"");
    if (!j.contains("alpha") || !j.at("alpha").is_number())
        throw fail("missing numeric field \"alpha\"");

    OperatorModel model;
    model.alpha = j.at("alpha").get<double>();
    if (model.alpha == 0.0) throw fail("alpha must be nonzero");

    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "diagonal_pair") {
        model.kind = ModelKind::DiagonalPair;
        model.p = expression("p", {"n"});
        model.q = j.contains("q") ? expression("q", {"n"}) : model.p;
    } else if (kind == "infinite_matrix") {
        model.kind = ModelKind::InfiniteMatrix;
        model.a_entry = expression("a_entry", {"i", "j"});
        model.b_entry = expression("b_entry", {"i", "j"});
        model.d_entry = expression("d_entry", {"i", "j"});
    } else if (kind == "integral") {
        model.kind = ModelKind::Integral;
        model.kernel = expression("kernel", {"s", "t"});
        if (!j.contains("interval") || !j.at("interval").is_array() ||
            j.at("interval").size() != 2 || !j.at("interval")[0].is_number() ||
            !j.at("interval")[1].is_number())
            throw fail("field \"interval\" must be [a, b]");
        model.interval_a = j.at("interval")[0].get<double>();
        model.interval_b = j.at("interval")[1].get<double>();
        if (!(model.interval_a < model.interval_b)) throw fail("interval needs a < b");
        model.continuity_declared = j.value("continuity_declared", true);
    } else {
        throw fail("unknown kind \"" + kind + "\"");
    }
    return model;
}

inline OperatorModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path + ": invalid JSON: " + e.what());
    }
    return model_from_json(j, path);
}

}  // namespace sympeig
