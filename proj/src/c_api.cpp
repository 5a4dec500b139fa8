#include "slant/slant.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <functional>
#include <memory>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include "slant/error.hpp"
#include "slant/report.hpp"

struct slant_curve {
    slant::CurveSource source;
};

struct slant_options {
    slant::RunOptions run;
};

namespace {

thread_local std::string g_last_error;

slant_status to_status(slant::ErrorKind k) {
    switch (k) {
        case slant::ErrorKind::Usage: return SLANT_ERR_USAGE;
        case slant::ErrorKind::Parse: return SLANT_ERR_PARSE;
        case slant::ErrorKind::Domain: return SLANT_ERR_DOMAIN;
        case slant::ErrorKind::Numeric: return SLANT_ERR_NUMERIC;
        case slant::ErrorKind::Io: return SLANT_ERR_IO;
        default: return SLANT_ERR_INTERNAL;
    }
}

slant_status guarded(const std::function<void()>& body) {
    try {
        g_last_error.clear();
        body();
        return SLANT_OK;
    } catch (const slant::Error& e) {
        g_last_error = e.what();
        return to_status(e.kind());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return SLANT_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SLANT_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return SLANT_ERR_INTERNAL;
    }
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

void require(const void* p, const char* what) {
    if (!p) slant::fail(slant::ErrorKind::Usage, std::string(what) + " must not be NULL");
}

const slant::RunOptions& options_or_default(const slant_options* opts) {
    static const slant::RunOptions defaults;
    return opts ? opts->run : defaults;
}

slant_verdict to_verdict(slant::Verdict v) {
    switch (v) {
        case slant::Verdict::Pass: return SLANT_VERDICT_PASS;
        case slant::Verdict::Fail: return SLANT_VERDICT_FAIL;
        default: return SLANT_VERDICT_INCONSISTENT;
    }
}

void emit(const slant::CommandResult& r, char** json, char** csv, slant_verdict* verdict) {
    // Allocate everything before handing anything out.
    char* j = json ? dup(r.report.dump(2) + "\n") : nullptr;
    char* c = nullptr;
    if (csv && !r.csv.empty()) {
        try {
            c = dup(r.csv);
        } catch (...) {
            std::free(j);
            throw;
        }
    }
    if (json) *json = j;
    if (csv) *csv = c;
    if (verdict) *verdict = to_verdict(r.verdict);
}

std::string read_file(const char* path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) slant::fail(slant::ErrorKind::Io, std::string("cannot open '") + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::optional<int> positive(int v) { return v > 0 ? std::optional<int>(v) : std::nullopt; }

}  // namespace

extern "C" {

const char* slant_version(void) { return "1.0.0"; }

const char* slant_status_name(slant_status status) {
    switch (status) {
        case SLANT_OK: return "ok";
        case SLANT_ERR_USAGE: return "usage error";
        case SLANT_ERR_PARSE: return "parse error";
        case SLANT_ERR_DOMAIN: return "domain error";
        case SLANT_ERR_NUMERIC: return "numeric error";
        case SLANT_ERR_IO: return "i/o error";
        case SLANT_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* slant_last_error(void) { return g_last_error.c_str(); }

void slant_string_free(char* s) { std::free(s); }

slant_options* slant_options_new(void) { return new (std::nothrow) slant_options(); }

void slant_options_free(slant_options* opts) { delete opts; }

slant_status slant_options_set_grid(slant_options* opts, double t_min, double t_max, int n) {
    return guarded([&] {
        require(opts, "options");
        const slant::Grid g{t_min, t_max, n};
        g.validate(slant::kMinAnalysisPoints);
        opts->run.grid = g;
    });
}

slant_status slant_options_set_tolerance(slant_options* opts, const char* name, double value) {
    return guarded([&] {
        require(opts, "options");
        require(name, "tolerance name");
        if (!(value > 0.0)) slant::fail(slant::ErrorKind::Usage, "tolerances must be positive");
        slant::RunOptions& r = opts->run;
        const std::string n = name;
        if (n == "speed") r.tol.speed = value;
        else if (n == "rank") r.tol.rank = value;
        else if (n == "rank_sampled") r.tol.rank_sampled = value;
        else if (n == "slant") r.tol.slant = value;
        else if (n == "class") r.tol.class_residual = value;
        else if (n == "lambda") r.tol.lambda = value;
        else if (n == "constant") r.tol.constant = value;
        else if (n == "span") r.tol.span = value;
        else if (n == "checklist") r.tol.checklist = value;
        else if (n == "quad") r.tol.quad = value;
        else if (n == "tensor") r.tensor_tol = value;
        else if (n == "connection") r.connection_tol = value;
        else slant::fail(slant::ErrorKind::Usage, "unknown tolerance '" + n + "'");
    });
}

slant_status slant_options_set_seed(slant_options* opts, uint64_t seed) {
    return guarded([&] {
        require(opts, "options");
        opts->run.seed = seed;
    });
}

slant_status slant_options_set_axiom_samples(slant_options* opts, int samples) {
    return guarded([&] {
        require(opts, "options");
        if (samples < 1) slant::fail(slant::ErrorKind::Usage, "axiom samples must be >= 1");
        opts->run.axiom_samples = samples;
    });
}

slant_status slant_curve_parse(const char* text, slant_curve** out) {
    return guarded([&] {
        require(text, "text");
        require(out, "out");
        auto c = std::make_unique<slant_curve>();
        c->source.symbolic = slant::parse_curve(text);
        c->source.origin = "text";
        *out = c.release();
    });
}

slant_status slant_curve_load(const char* path, slant_curve** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        auto c = std::make_unique<slant_curve>();
        c->source.symbolic = slant::parse_curve(read_file(path));
        c->source.origin = path;
        *out = c.release();
    });
}

slant_status slant_curve_parse_sampled(const char* csv, int m, int s, slant_curve** out) {
    return guarded([&] {
        require(csv, "csv");
        require(out, "out");
        auto c = std::make_unique<slant_curve>();
        c->source.sampled = slant::parse_sampled_csv(csv, positive(m), positive(s));
        c->source.origin = "csv";
        *out = c.release();
    });
}

slant_status slant_curve_load_sampled(const char* path, int m, int s, slant_curve** out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        auto c = std::make_unique<slant_curve>();
        c->source.sampled = slant::parse_sampled_csv(read_file(path), positive(m), positive(s));
        c->source.sampled->label = path;
        c->source.origin = path;
        *out = c.release();
    });
}

slant_status slant_curve_bundled(const char* name, slant_curve** out) {
    return guarded([&] {
        require(name, "name");
        require(out, "out");
        auto c = std::make_unique<slant_curve>();
        c->source.symbolic = slant::bundled_curve(name);
        c->source.origin = std::string("bundled:") + name;
        *out = c.release();
    });
}

slant_status slant_bundled_names(char** names) {
    return guarded([&] {
        require(names, "names");
        std::string all;
        for (const auto& [k, v] : slant::bundled_curves()) all += k + "\n";
        *names = dup(all);
    });
}

slant_status slant_curve_shape(const slant_curve* curve, int* m, int* s) {
    return guarded([&] {
        require(curve, "curve");
        const slant::Shape& sh = curve->source.shape();
        if (m) *m = sh.m;
        if (s) *s = sh.s;
    });
}

void slant_curve_free(slant_curve* curve) { delete curve; }

slant_status slant_axioms(int m, int s, const slant_options* opts, char** json, slant_verdict* verdict) {
    return guarded([&] { emit(slant::run_axioms(slant::Shape{m, s}, options_or_default(opts)), json, nullptr, verdict); });
}

slant_status slant_analyze(const slant_curve* curve, const slant_options* opts, char** json, char** csv,
                           slant_verdict* verdict) {
    return guarded([&] {
        require(curve, "curve");
        emit(slant::run_analyze(curve->source, options_or_default(opts)), json, csv, verdict);
    });
}

slant_status slant_classify(const slant_curve* curve, const char* which, const slant_options* opts, char** json,
                            slant_verdict* verdict) {
    return guarded([&] {
        require(curve, "curve");
        require(which, "which");
        const slant::ClassTarget target = slant::parse_class_target(which);
        emit(slant::run_classify(curve->source, target, options_or_default(opts)), json, nullptr, verdict);
    });
}

slant_status slant_synth(int theorem, int m, int s, double theta, double kappa1, const slant_options* opts,
                         char** json, char** csv, slant_verdict* verdict) {
    return guarded([&] {
        const slant::RunOptions& run = options_or_default(opts);
        slant::HelixSpec spec;
        spec.shape = slant::Shape{m, s};
        spec.theorem = theorem;
        spec.theta = theta;
        spec.kappa1 = kappa1;
        if (run.grid) {
            spec.t_min = run.grid->t_min;
            spec.t_max = run.grid->t_max;
            spec.samples = run.grid->n;
        }
        spec.validate();
        emit(slant::run_synth(spec, run), json, csv, verdict);
    });
}

slant_status slant_example(int which, const slant_options* opts, char** json, slant_verdict* verdict) {
    return guarded([&] { emit(slant::run_example(which, options_or_default(opts)), json, nullptr, verdict); });
}

}  // extern "C"
