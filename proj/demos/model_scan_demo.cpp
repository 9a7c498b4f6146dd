// Scan finite sections of a block-diagonal operator model and print its
// membership classification.

#include <cstdio>

#include <sympeig/sympeig.hpp>

int main() {
    using namespace sympeig;

    OperatorModel model;
    model.kind = ModelKind::DiagonalPair;
    model.alpha = 1.0;
    model.p = expr::parse("1 - 4^(-n)", {"n"});
    model.q = expr::parse("1 + 2^(-n)", {"n"});

    for (const TruncationReport& r : truncation_scan(model, {4, 8, 16, 32})) {
        std::printf("order %2zu: d_1 = %.12g, interlacing %s, hs partial %.6g\n", r.order,
                    r.d_desc.front(), r.interlacing->all_ok ? "ok" : "VIOLATED",
                    r.hs_partial);
    }

    const ClassificationReport c = classify(model);
    std::printf("GCO: %s,  positive-AN: %s,  beta = %.6g\n", to_string(c.is_gco),
                to_string(c.an_plus.status), c.beta_estimate);
    return 0;
}
