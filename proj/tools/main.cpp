// Command-line front door: decompositions, interlacing reports, operator-model
// scans, classification and the variational oracle suites.
//
// Exit codes: 0 success / all checks pass, 1 mathematical verdict failure,
// 2 usage error, 3 input parse or evaluation error.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <sympeig/sympeig.hpp>

namespace {

using namespace sympeig;

std::string fmt(double v) {
    if (v == 0.0) v = 0.0;  // collapse -0
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

const char* bool_str(bool b) { return b ? "true" : "false"; }

struct Options {
    std::string matrix_path;
    std::string model_path;
    bool check = false;
    std::size_t order = 8;
    std::vector<std::size_t> orders;
    std::size_t kmax = 10000;
    std::size_t tail = 1000;
    std::string suite;
    std::size_t trials = 100;
    std::uint64_t seed = 1;
};

int run_speig(const Options& opt) {
    const SymmetricMatrix a = read_matrix_file(opt.matrix_path);
    const EigenDecomposition eig = sym_eigen(a);
    const std::vector<double> d = symplectic_eigenvalues(a);
    std::string out;
    for (const double v : eig.values) out += "lambda," + fmt(v) + "\n";
    for (const double v : d) out += "d," + fmt(v) + "\n";
    std::fputs(out.c_str(), stdout);
    return 0;
}

int run_williamson(const Options& opt) {
    const SymmetricMatrix a = read_matrix_file(opt.matrix_path);
    const WilliamsonForm w = williamson(a);
    std::string out;
    for (const double v : w.d) out += "d," + fmt(v) + "\n";
    out += "residual_factor," + fmt(w.residual_factor) + "\n";
    out += "residual_symplectic," + fmt(w.residual_symplectic) + "\n";
    std::fputs(out.c_str(), stdout);
    if (opt.check) {
        const bool ok = w.residual_factor <= 1e-8 * (1.0 + max_abs(a)) &&
                        w.residual_symplectic <= 1e-8;
        return ok ? 0 : 1;
    }
    return 0;
}

int run_interlace(const Options& opt) {
    std::optional<SymmetricMatrix> a;
    if (!opt.matrix_path.empty()) {
        a = read_matrix_file(opt.matrix_path);
    } else {
        const OperatorModel model = load_model_file(opt.model_path);
        a = truncate(model, opt.order / 2);
    }
    const InterlacingReport r = interlace_matrix(*a);
    const std::size_t n = r.d_desc.size();
    std::string out = "j,d_down,lambda_down,down_ok,lambda_up,d_up,up_ok\n";
    for (std::size_t j = 0; j < n; ++j) {
        out += std::to_string(j + 1) + ",";
        out += fmt(r.d_desc[j]) + "," + fmt(r.lambda_desc[j]) + ",";
        out += std::string(bool_str(r.down_ok[j])) + ",";
        out += fmt(r.lambda_desc[r.order - 1 - j]) + "," + fmt(r.d_desc[n - 1 - j]) + ",";
        out += bool_str(r.up_ok[j]);
        out += "\n";
    }
    std::fputs(out.c_str(), stdout);
    return r.all_ok ? 0 : 1;
}

int run_scan(const Options& opt) {
    const OperatorModel model = load_model_file(opt.model_path);
    const std::vector<TruncationReport> reports = truncation_scan(model, opt.orders);
    std::string out = "order,min_lambda,max_lambda,min_d,max_d,all_ok,hs_partial,trace_partial\n";
    bool verdict_failure = false;
    for (const TruncationReport& r : reports) {
        out += std::to_string(r.order) + ",";
        if (r.skipped) {
            out += ",,,,skipped,";
            std::fprintf(stderr, "order %zu skipped: %s\n", r.order, r.skip_reason.c_str());
        } else {
            out += fmt(r.lambda_desc.back()) + "," + fmt(r.lambda_desc.front()) + ",";
            out += fmt(r.d_desc.back()) + "," + fmt(r.d_desc.front()) + ",";
            out += std::string(bool_str(r.interlacing->all_ok)) + ",";
            verdict_failure = verdict_failure || !r.interlacing->all_ok;
        }
        out += fmt(r.hs_partial) + "," + fmt(r.trace_partial) + "\n";
    }
    std::fputs(out.c_str(), stdout);
    return verdict_failure ? 1 : 0;
}

void verdict_row(std::string& out, const std::string& item, const ConditionVerdict& v) {
    out += item + "," + to_string(v.status) + "," + fmt(v.evidence) + "," +
           quoted(v.detail) + "\n";
}

int run_classify(const Options& opt) {
    const OperatorModel model = load_model_file(opt.model_path);
    const ClassificationReport r = classify(model, opt.kmax, opt.tail, opt.order);
    std::string out = "item,value,evidence,detail\n";
    if (r.integral_precheck) {
        verdict_row(out, "gco_precheck", *r.integral_precheck);
    } else {
        verdict_row(out, "gco_cond1", r.gco_cond1);
        verdict_row(out, "gco_cond2", r.gco_cond2);
        verdict_row(out, "gco_cond3", r.gco_cond3);
    }
    out += std::string("is_gco,") + to_string(r.is_gco) + ",,\"\"\n";
    verdict_row(out, "an_plus", r.an_plus);
    out += "beta_estimate," + fmt(r.beta_estimate) + ",,\"\"\n";
    std::fputs(out.c_str(), stdout);
    return 0;
}

int run_oracle(const Options& opt) {
    std::string out;
    bool any_fail = false;
    auto emit = [&](const std::string& suite, const std::string& kase, bool pass,
                    double value) {
        out += suite + "," + kase + "," + (pass ? "pass" : "fail") + "," + fmt(value) + "\n";
        any_fail = any_fail || !pass;
    };

    if (opt.suite == "minmax" || opt.suite == "maxmin") {
        Rng rng(opt.seed);
        const SymmetricMatrix a = random_pd(opt.order, rng);
        for (std::size_t j = 1; j <= opt.order; ++j) {
            const ProbeResult r = opt.suite == "minmax"
                                      ? minmax_probe(a, j, opt.trials, opt.seed + 1000 * j)
                                      : maxmin_probe(a, j, opt.trials, opt.seed + 1000 * j);
            emit(opt.suite, "bound_j" + std::to_string(j), r.violations == 0,
                 r.sampled_bound);
            emit(opt.suite, "equality_j" + std::to_string(j), r.achieved_equality,
                 r.reference_value);
        }
    } else if (opt.suite == "monotone") {
        for (std::size_t i = 0; i < opt.trials; ++i) {
            Rng rng(opt.seed + i);
            const SymmetricMatrix b = random_pd(opt.order, rng);
            Matrix bump(opt.order, opt.order);
            const Matrix g = random_orthonormal_columns(opt.order, 2, rng);
            const double w1 = rng.uniform(0.1, 2.0), w2 = rng.uniform(0.1, 2.0);
            for (std::size_t r = 0; r < opt.order; ++r)
                for (std::size_t c = 0; c < opt.order; ++c)
                    bump(r, c) = w1 * g(r, 0) * g(c, 0) + w2 * g(r, 1) * g(c, 1);
            const SymmetricMatrix a(b.mat() + bump);
            emit("monotone", "pair" + std::to_string(i), monotone_eig_check(a, b),
                 static_cast<double>(opt.order));
        }
    } else {  // identities
        for (std::size_t i = 0; i < opt.trials; ++i) {
            Rng rng(opt.seed + i);
            const SymmetricMatrix t = random_pd(opt.order, rng);
            double alpha = rng.uniform(0.5, 3.0);
            if (i % 2 == 1) alpha = -alpha;
            const IdentityResiduals res = compactness_identity_check(t, alpha);
            const double bound = 1e-8 * (1.0 + max_abs(t) * max_abs(t));
            emit("identities", "case" + std::to_string(i), res.max() <= bound, res.max());
        }
    }
    std::fputs(out.c_str(), stdout);
    return any_fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symplectic spectra, Williamson normal forms and interlacing "
                 "reports for positive definite matrices and operator models"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* speig = app.add_subcommand("speig", "eigenvalues and symplectic eigenvalues");
    speig->add_option("--matrix", opt.matrix_path, "matrix text file")->required();

    CLI::App* wil = app.add_subcommand("williamson", "Williamson normal form");
    wil->add_option("--matrix", opt.matrix_path, "matrix text file")->required();
    wil->add_flag("--check", opt.check, "exit nonzero if residuals exceed tolerance");

    CLI::App* inter = app.add_subcommand("interlace", "interlacing report as CSV");
    auto* im = inter->add_option("--matrix", opt.matrix_path, "matrix text file");
    auto* io = inter->add_option("--model", opt.model_path, "model config (JSON)");
    inter->add_option("--order", opt.order, "truncation order (even)")
        ->check(CLI::Range(std::size_t{2}, std::size_t{100000}));
    im->excludes(io);
    io->excludes(im);

    CLI::App* scan = app.add_subcommand("scan", "truncation scan over orders");
    scan->add_option("--model", opt.model_path, "model config (JSON)")->required();
    scan->add_option("--orders", opt.orders, "comma-separated truncation orders")
        ->required()
        ->delimiter(',');

    CLI::App* cls = app.add_subcommand("classify", "membership verdicts for a model");
    cls->add_option("--model", opt.model_path, "model config (JSON)")->required();
    cls->add_option("--kmax", opt.kmax, "sequence indices to examine");
    cls->add_option("--tail", opt.tail, "tail window length");
    cls->add_option("--order", opt.order, "discretization order for integral prechecks");

    CLI::App* oracle = app.add_subcommand("oracle", "variational oracle suites");
    oracle->add_option("--suite", opt.suite, "minmax | maxmin | monotone | identities")
        ->required()
        ->check(CLI::IsMember({"minmax", "maxmin", "monotone", "identities"}));
    oracle->add_option("--trials", opt.trials, "trials per case");
    oracle->add_option("--seed", opt.seed, "random seed");
    oracle->add_option("--order", opt.order, "matrix order")
        ->check(CLI::Range(std::size_t{2}, std::size_t{256}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (speig->parsed()) return run_speig(opt);
        if (wil->parsed()) return run_williamson(opt);
        if (inter->parsed()) {
            if (opt.matrix_path.empty() == opt.model_path.empty()) {
                std::fprintf(stderr, "interlace: give exactly one of --matrix or --model\n");
                return 2;
            }
            if (!opt.model_path.empty() && opt.order % 2 != 0) {
                std::fprintf(stderr, "interlace: --order must be even\n");
                return 2;
            }
            return run_interlace(opt);
        }
        if (scan->parsed()) return run_scan(opt);
        if (cls->parsed()) return run_classify(opt);
        if (oracle->parsed()) return run_oracle(opt);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 2;
}
