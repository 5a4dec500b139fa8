// slant: command-line front end over the C API.
//
// Exit codes: 0 success, 1 usage or parse error, 2 numeric or verification
// failure (including curves found inconsistent with the model structure).

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "slant/slant.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailure = 2;

int exit_for(slant_status st) {
    switch (st) {
        case SLANT_OK: return kExitOk;
        case SLANT_ERR_USAGE:
        case SLANT_ERR_PARSE:
        case SLANT_ERR_IO: return kExitUsage;
        default: return kExitFailure;
    }
}

struct Common {
    int m = 0;
    int s = 0;
    std::string grid;
    double tol_class = 0.0;
    double tol_slant = 0.0;
    std::optional<unsigned long long> seed;
    std::string out;
    std::string csv;
};

void add_output_flags(CLI::App* cmd, Common& c) {
    cmd->add_option("--out", c.out, "write the JSON report here instead of stdout");
}

void add_analysis_flags(CLI::App* cmd, Common& c) {
    cmd->add_option("--m", c.m, "m for sampled (CSV) curves")->check(CLI::Range(1, 64));
    cmd->add_option("--s", c.s, "s for sampled (CSV) curves")->check(CLI::Range(1, 64));
    cmd->add_option("--grid", c.grid, "parameter grid t_min:t_max:n (n >= 16)");
    cmd->add_option("--tol-class", c.tol_class, "class residual tolerance")->check(CLI::PositiveNumber);
    cmd->add_option("--tol-slant", c.tol_slant, "contact angle constancy tolerance")->check(CLI::PositiveNumber);
    add_output_flags(cmd, c);
}

class Failure {
public:
    Failure(slant_status st, std::string msg) : status(st), message(std::move(msg)) {}
    slant_status status;
    std::string message;
};

void check(slant_status st) {
    if (st != SLANT_OK) throw Failure(st, slant_last_error());
}

struct Options {
    slant_options* p = slant_options_new();
    ~Options() { slant_options_free(p); }
};

struct Curve {
    slant_curve* p = nullptr;
    ~Curve() { slant_curve_free(p); }
};

struct Text {
    char* p = nullptr;
    ~Text() { slant_string_free(p); }
};

void apply(const Common& c, Options& o) {
    if (!c.grid.empty()) {
        double a = 0.0, b = 0.0;
        int n = 0;
        char tail = 0;
        if (std::sscanf(c.grid.c_str(), "%lf:%lf:%d%c", &a, &b, &n, &tail) != 3)
            throw Failure(SLANT_ERR_USAGE, "--grid expects t_min:t_max:n, got '" + c.grid + "'");
        check(slant_options_set_grid(o.p, a, b, n));
    }
    if (c.tol_class > 0.0) check(slant_options_set_tolerance(o.p, "class", c.tol_class));
    if (c.tol_slant > 0.0) check(slant_options_set_tolerance(o.p, "slant", c.tol_slant));
    if (c.seed) check(slant_options_set_seed(o.p, *c.seed));
}

// A .csv path is a sampled curve; any other existing path is a curve file;
// otherwise the name is looked up among the bundled curves.
void open_curve(const std::string& arg, const Common& c, Curve& curve) {
    const std::filesystem::path p(arg);
    if (p.extension() == ".csv") {
        check(slant_curve_load_sampled(arg.c_str(), c.m, c.s, &curve.p));
        return;
    }
    if (std::filesystem::exists(p)) {
        check(slant_curve_load(arg.c_str(), &curve.p));
        return;
    }
    if (slant_curve_bundled(arg.c_str(), &curve.p) == SLANT_OK) return;
    throw Failure(SLANT_ERR_IO, "cannot open '" + arg + "' (no such file or bundled curve)");
}

void write_text(const std::string& path, const char* text) {
    if (path.empty()) {
        std::fputs(text, stdout);
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Failure(SLANT_ERR_IO, "cannot write '" + path + "'");
    os << text;
}

void write_outputs(const Common& c, const Text& json, const Text& csv) {
    if (json.p) write_text(c.out, json.p);
    if (!c.csv.empty()) {
        if (!csv.p) throw Failure(SLANT_ERR_NUMERIC, "no table to write to '" + c.csv + "'");
        write_text(c.csv, csv.p);
    }
}

int exit_for(slant_verdict v, bool denial_is_failure) {
    if (v == SLANT_VERDICT_PASS) return kExitOk;
    if (v == SLANT_VERDICT_FAIL && !denial_is_failure) return kExitOk;
    return kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frenet apparatus, slant-curve classification and helix synthesis in R^{2m+s}(-3s)"};
    app.require_subcommand(1);
    app.set_version_flag("--version", slant_version());

    Common axc, anc, clc, syc, exc;

    auto* axioms = app.add_subcommand("axioms", "check the structure identities at random points");
    int ax_samples = 200;
    unsigned long long ax_seed = 0;
    axioms->add_option("--m", axc.m, "m >= 1")->required();
    axioms->add_option("--s", axc.s, "s >= 1")->required();
    axioms->add_option("--samples", ax_samples, "random samples")->check(CLI::PositiveNumber);
    auto* seed_opt = axioms->add_option("--seed", ax_seed, "random seed");
    add_output_flags(axioms, axc);

    std::string an_curve;
    auto* analyze = app.add_subcommand("analyze", "speed, contact angle, Frenet apparatus");
    analyze->add_option("curve", an_curve, "curve file, sampled .csv, or bundled name")->required();
    add_analysis_flags(analyze, anc);
    analyze->add_option("--csv", anc.csv, "write t, coordinates, curvatures and frame here");

    std::string cl_curve, cl_which = "parallel-tangent";
    auto* classify = app.add_subcommand("classify", "C-parallel / C-proper test with lambda recovery");
    classify->add_option("curve", cl_curve, "curve file, sampled .csv, or bundled name")->required();
    classify->add_option("--which", cl_which, "parallel-tangent | parallel-normal | proper-tangent | proper-normal");
    add_analysis_flags(classify, clc);

    int sy_theorem = 1;
    double sy_theta = 2.0 * std::numbers::pi / 3.0, sy_kappa1 = 1.0;
    auto* synth = app.add_subcommand("synth", "integrate a C-parallel slant helix and round-trip it");
    synth->add_option("--theorem", sy_theorem, "1 (tangent bundle) or 2 (normal bundle)")->check(CLI::IsMember({1, 2}));
    synth->add_option("--m", syc.m, "m (default 1)");
    synth->add_option("--s", syc.s, "s (default 2)");
    synth->add_option("--theta", sy_theta, "contact angle for theorem 1");
    synth->add_option("--kappa1", sy_kappa1, "kappa1 for theorem 2");
    synth->add_option("--grid", syc.grid, "output grid t_min:t_max:n");
    add_output_flags(synth, syc);
    synth->add_option("--csv", syc.csv, "write t, coordinates and E1..E3 here");

    int ex_which = 0;
    auto* example = app.add_subcommand("example", "reproduce a published example (1 or 2)");
    example->add_option("which", ex_which, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
    example->add_option("--grid", exc.grid, "parameter grid t_min:t_max:n");
    add_output_flags(example, exc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        Options opts;
        Text json, csv;
        slant_verdict verdict = SLANT_VERDICT_PASS;
        if (*axioms) {
            if (*seed_opt) axc.seed = ax_seed;
            apply(axc, opts);
            check(slant_options_set_axiom_samples(opts.p, ax_samples));
            check(slant_axioms(axc.m, axc.s, opts.p, &json.p, &verdict));
            write_outputs(axc, json, csv);
            return exit_for(verdict, true);
        }
        if (*analyze) {
            apply(anc, opts);
            Curve curve;
            open_curve(an_curve, anc, curve);
            check(slant_analyze(curve.p, opts.p, &json.p, &csv.p, &verdict));
            if (verdict != SLANT_VERDICT_PASS && !anc.csv.empty() && !csv.p) anc.csv.clear();
            write_outputs(anc, json, csv);
            return exit_for(verdict, true);
        }
        if (*classify) {
            apply(clc, opts);
            Curve curve;
            open_curve(cl_curve, clc, curve);
            check(slant_classify(curve.p, cl_which.c_str(), opts.p, &json.p, &verdict));
            write_outputs(clc, json, csv);
            return exit_for(verdict, false);
        }
        if (*synth) {
            apply(syc, opts);
            check(slant_synth(sy_theorem, syc.m > 0 ? syc.m : 1, syc.s > 0 ? syc.s : 2, sy_theta, sy_kappa1, opts.p,
                              &json.p, &csv.p, &verdict));
            write_outputs(syc, json, csv);
            return exit_for(verdict, true);
        }
        if (*example) {
            apply(exc, opts);
            check(slant_example(ex_which, opts.p, &json.p, &verdict));
            write_outputs(exc, json, csv);
            return exit_for(verdict, true);
        }
    } catch (const Failure& f) {
        std::cerr << "slant: " << slant_status_name(f.status) << ": " << f.message << "\n";
        return exit_for(f.status);
    } catch (const std::exception& e) {
        std::cerr << "slant: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
