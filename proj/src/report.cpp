#include "slant/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "slant/error.hpp"

namespace slant {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

Json vec_json(const Vec& v) {
    Json a = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

Json shape_json(const Shape& sh) { return Json{{"m", sh.m}, {"s", sh.s}, {"dim", sh.dim()}}; }

std::size_t interior_begin(std::size_t) { return 2; }
std::size_t interior_end(std::size_t n) { return n >= 2 ? n - 2 : 0; }

// Max over interior samples of |f(j)|.
double max_interior(std::size_t n, const std::function<double(std::size_t)>& f) {
    double worst = 0.0;
    for (std::size_t j = interior_begin(n); j < interior_end(n); ++j) {
        const double v = std::abs(f(j));
        if (std::isnan(v)) return std::numeric_limits<double>::quiet_NaN();
        worst = std::max(worst, v);
    }
    return worst;
}

// Max over all samples of |f(j)|.
double max_all(std::size_t n, const std::function<double(std::size_t)>& f) {
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double v = std::abs(f(j));
        if (std::isnan(v)) return std::numeric_limits<double>::quiet_NaN();
        worst = std::max(worst, v);
    }
    return worst;
}

Json summary(const std::vector<double>& v, std::size_t begin, std::size_t end) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
    for (std::size_t j = begin; j < end; ++j) {
        lo = std::min(lo, v[j]);
        hi = std::max(hi, v[j]);
        sum += v[j];
    }
    const double cnt = static_cast<double>(end - begin);
    return Json{{"min", lo}, {"max", hi}, {"mean", cnt > 0 ? sum / cnt : 0.0}};
}

Json speed_json(const SpeedReport& sp, double tol) {
    return Json{{"unit_speed", sp.unit_speed}, {"max_defect", sp.max_defect}, {"tolerance", tol},
                {"min_speed", sp.min_speed},   {"max_speed", sp.max_speed},   {"arc_length", sp.arc_length}};
}

Json contact_json(const ContactReport& c) {
    Json per = Json::array();
    for (const auto& row : c.cos_theta) {
        const auto [lo, hi] = std::minmax_element(row.begin(), row.end());
        per.push_back(Json{{"min", *lo}, {"max", *hi}});
    }
    return Json{{"cos_theta", c.mean},
                {"theta", c.theta()},
                {"max_deviation", c.max_deviation},
                {"max_abs_cos_theta", c.max_abs},
                {"bound", c.bound},
                {"is_slant", c.is_slant},
                {"is_legendre", c.is_legendre},
                {"bound_violation", c.bound_violation},
                {"per_alpha", per}};
}

Json curve_json(const CurveSource& src, const Analysis& a) {
    return Json{{"label", src.label()},
                {"origin", src.origin},
                {"mode", a.sampled ? "sampled" : "symbolic"},
                {"shape", shape_json(src.shape())}};
}

Json grid_json(const CurveSamples& s) {
    return Json{{"t_min", s.t.front()}, {"t_max", s.t.back()}, {"n", s.size()}};
}

Json frenet_json(const Analysis& a) {
    const FrenetApparatus& fa = *a.frenet;
    const std::size_t n = fa.size();
    Json kap = Json::object();
    for (int i = 1; i <= 3; ++i) {
        std::vector<double> v(n);
        for (std::size_t j = 0; j < n; ++j) v[j] = fa.kappa_at(j, i);
        kap["kappa" + std::to_string(i)] = summary(v, 0, n);
    }
    const Shape& sh = fa.shape;
    double eta_e2 = 0.0;
    for (std::size_t j = 0; j < n; ++j)
        for (int al = 0; al < sh.s; ++al) eta_e2 = std::max(eta_e2, std::abs(eta(sh, al, fa.points[j], fa.e(j, 2))));
    const auto [omin, omax] = std::minmax_element(fa.order.begin(), fa.order.end());
    return Json{{"osculating_order", fa.r},
                {"order_min", *omin},
                {"order_max", *omax},
                {"max_frame_defect", fa.max_frame_defect},
                {"max_eta_E2", eta_e2},
                {"kappa", kap}};
}

Json operators_json(const Analysis& a) {
    Json out = Json::object();
    for (int op = 0; op < 4; ++op) {
        const OperatorField& d = a.direct->by_index(op);
        const OperatorField& f = a.formula->by_index(op);
        out[d.name] = Json{{"max_norm", field_norm(a.samples, d)},
                           {"formula_vs_direct", field_difference(a.samples, f, d)}};
    }
    return out;
}

Json analysis_json(const char* command, const CurveSource& src, const Analysis& a, const RunOptions& opts) {
    Json j;
    j["command"] = command;
    j["curve"] = curve_json(src, a);
    j["grid"] = grid_json(a.samples);
    j["speed"] = speed_json(a.speed, opts.tol.speed);
    j["contact"] = contact_json(a.contact);
    if (a.frenet) {
        j["frenet"] = frenet_json(a);
        j["operators"] = operators_json(a);
    }
    j["diagnostics"] = a.diagnostics;
    return j;
}

Json checklist_json(const TheoremChecklist& cl) {
    Json items = Json::object();
    for (const auto& it : cl.items)
        items[it.name] = Json{{"value", it.value},
                              {"threshold", it.threshold},
                              {"relation", it.above ? ">" : "<"},
                              {"passed", it.passed}};
    return Json{{"theorem", cl.theorem},
                {"applicable", cl.applicable},
                {"kappa3_zero", cl.kappa3_zero},
                {"passed", cl.passed()},
                {"items", items}};
}

Json classification_json(const ClassificationReport& cr, const RunOptions& opts, bool with_samples) {
    Json j;
    j["which"] = cr.target.name();
    j["class"] = cr.label;
    j["granted"] = cr.granted;
    j["residual"] = cr.residual;
    j["class_tolerance"] = opts.tol.class_residual;
    j["lambda_nonzero"] = cr.lambda_nonzero;
    j["lambda_summary"] = Json{{"at_start", cr.lambda.front()},
                               {"min", cr.lambda_min},
                               {"max", cr.lambda_max},
                               {"min_abs", cr.min_abs_lambda},
                               {"lambda_tolerance", opts.tol.lambda}};
    if (with_samples) {
        j["t"] = cr.t;
        j["lambda"] = cr.lambda;
    }
    return j;
}

std::string analysis_csv(const Analysis& a) {
    const FrenetApparatus& fa = *a.frenet;
    const int n = fa.shape.dim();
    std::ostringstream os;
    os << "t";
    for (int i = 1; i <= n; ++i) os << ",c" << i;
    os << ",kappa1,kappa2,kappa3";
    for (int e = 1; e <= 4; ++e)
        for (int i = 1; i <= n; ++i) os << ",E" << e << "_" << i;
    os << "\n";
    for (std::size_t j = 0; j < fa.size(); ++j) {
        os << fmt(fa.t[j]);
        for (int i = 0; i < n; ++i) os << "," << fmt(fa.points[j].coords()[i]);
        for (int k = 1; k <= 3; ++k) os << "," << fmt(fa.kappa_at(j, k));
        for (int e = 1; e <= 4; ++e)
            for (int i = 0; i < n; ++i) os << "," << fmt(fa.e(j, e)[i]);
        os << "\n";
    }
    return os.str();
}

// One expected-vs-observed line of an example comparison.
struct Comparison {
    std::string quantity;
    Json expected;
    double observed;  // value, or worst error for functions of t
    double error;
    double tolerance;
    bool passed;
};

Json comparisons_json(const std::vector<Comparison>& cs) {
    Json a = Json::array();
    for (const auto& c : cs)
        a.push_back(Json{{"quantity", c.quantity},
                         {"expected", c.expected},
                         {"observed", c.observed},
                         {"error", c.error},
                         {"tolerance", c.tolerance},
                         {"passed", c.passed}});
    return a;
}

Comparison compare_value(std::string q, double expected, double observed, double tol) {
    const double err = std::abs(observed - expected);
    return {std::move(q), expected, observed, err, tol, err < tol};
}

Comparison compare_bool(std::string q, bool expected, bool observed) {
    return {std::move(q), expected, observed ? 1.0 : 0.0, observed == expected ? 0.0 : 1.0, 0.5,
            observed == expected};
}

// Worst error of a function of t against a description of the expected law.
Comparison compare_law(std::string q, std::string law, double worst, double tol) {
    return {std::move(q), std::move(law), worst, worst, tol, worst < tol};
}

bool all_passed(const std::vector<Comparison>& cs) {
    return std::all_of(cs.begin(), cs.end(), [](const Comparison& c) { return c.passed; });
}

CurveSource bundled_source(const std::string& name) {
    CurveSource src;
    src.symbolic = bundled_curve(name);
    src.origin = "bundled:" + name;
    return src;
}

void dual_route(std::vector<Comparison>& cs, const Analysis& a) {
    for (int op = 0; op < 4; ++op) {
        const OperatorField& d = a.direct->by_index(op);
        cs.push_back(compare_law("dual_route_" + d.name, "formula = direct",
                                 field_difference(a.samples, a.formula->by_index(op), d), 1e-4));
    }
}

CommandResult example1(const RunOptions& opts) {
    CommandResult res;
    Json& j = res.report;
    j["command"] = "example";
    j["example"] = 1;

    // The printed component list, analyzed as is.
    {
        const CurveSource src = bundled_source("example1");
        const Analysis a = analyze_curve(src, opts);
        Json p = analysis_json("analyze", src, a, opts);
        p.erase("command");
        std::vector<std::string> issues;
        if (!a.speed.unit_speed) issues.push_back("not unit speed: max | |gamma'| - 1 | = " + fmt_short(a.speed.max_defect));
        if (!a.contact.is_slant)
            issues.push_back("not slant: eta^a(T) varies by " + fmt_short(a.contact.max_deviation) +
                             " (published: constant -1/2)");
        else if (std::abs(a.contact.theta() - 2.0 * std::numbers::pi / 3.0) > 1e-6)
            issues.push_back("contact angle " + fmt_short(a.contact.theta()) + " differs from 2 pi / 3");
        p["status"] = issues.empty() ? "matches published values" : "discrepancy vs. published values";
        p["issues"] = issues;
        j["printed"] = p;
    }

    // Corrected variant: additive constants moved into the x slots.
    const CurveSource src = bundled_source("example1_corrected");
    const Analysis a = analyze_curve(src, opts);
    Json c = analysis_json("analyze", src, a, opts);
    c.erase("command");
    std::vector<Comparison> cs;
    const double r2 = 1.0 / std::sqrt(2.0);
    cs.push_back(compare_value("theta", 2.0 * std::numbers::pi / 3.0, a.contact.theta(), 1e-6));
    cs.push_back(compare_bool("slant_non_legendre", true, a.contact.is_slant && !a.contact.is_legendre));
    if (a.frenet) {
        const FrenetApparatus& fa = *a.frenet;
        const std::size_t n = fa.size();
        const Shape& sh = fa.shape;
        const Tangent xs = xi_sum(sh);
        cs.push_back(compare_value("osculating_order", 3, fa.r, 0.5));
        cs.push_back(compare_law("kappa1", "1/sqrt(2)", max_all(n, [&](std::size_t k) { return fa.kappa_at(k, 1) - r2; }), 1e-4));
        cs.push_back(compare_law("kappa2", "1/sqrt(2)", max_all(n, [&](std::size_t k) { return fa.kappa_at(k, 2) - r2; }), 1e-4));
        const ClassificationReport cr = classify(a.samples, *a.direct, parse_class_target("parallel-tangent"), opts.tol);
        cs.push_back(compare_bool("C-parallel-tangent", true, cr.granted));
        cs.push_back(compare_law("lambda", "1/2",
                                 max_interior(n, [&](std::size_t k) { return cr.lambda[k] - 0.5; }), 1e-4));
        cs.push_back(compare_law("E1", "T", max_all(n, [&](std::size_t k) {
                                     return norm(sh, fa.points[k], fa.e(k, 1) - a.samples.velocity(k));
                                 }), 1e-4));
        cs.push_back(compare_law("E2", "sqrt(2) phi T", max_all(n, [&](std::size_t k) {
                                     const Point& p = fa.points[k];
                                     return norm(sh, p, fa.e(k, 2) - std::sqrt(2.0) * phi(sh, p, fa.e(k, 1)));
                                 }), 1e-4));
        cs.push_back(compare_law("E3", "T + sum xi", max_all(n, [&](std::size_t k) {
                                     return norm(sh, fa.points[k], fa.e(k, 3) - (fa.e(k, 1) + xs));
                                 }), 1e-4));
        dual_route(cs, a);
        const TheoremChecklist cl = theorem1_checklist(fa, a.contact, cr, opts.tol);
        c["classification"] = classification_json(cr, opts, false);
        c["checklist"] = checklist_json(cl);
    } else {
        cs.push_back(compare_bool("unit_speed", true, false));
    }
    c["comparisons"] = comparisons_json(cs);
    j["corrected"] = c;
    res.verdict = all_passed(cs) ? Verdict::Pass : Verdict::Fail;
    j["verdict"] = verdict_name(res.verdict);
    return res;
}

CommandResult example2(const RunOptions& opts) {
    CommandResult res;
    Json& j = res.report;
    j["command"] = "example";
    j["example"] = 2;
    const CurveSource src = bundled_source("example2");
    const Analysis a = analyze_curve(src, opts);
    Json c = analysis_json("analyze", src, a, opts);
    c.erase("command");
    std::vector<Comparison> cs;
    cs.push_back(compare_bool("legendre", true, a.contact.is_legendre));
    cs.push_back(compare_value("cos_theta", 0.0, a.contact.max_abs, 1e-7));
    if (a.frenet) {
        const FrenetApparatus& fa = *a.frenet;
        const std::size_t n = fa.size();
        const Shape& sh = fa.shape;
        const Tangent xs = xi_sum(sh);
        auto k1_law = [&](std::size_t k) { return 2.0 * std::exp(2.0 * fa.t[k]); };
        cs.push_back(compare_value("osculating_order", 3, fa.r, 0.5));
        cs.push_back(compare_value("kappa1(t_min)", k1_law(0), fa.kappa_at(0, 1), 1e-4));
        cs.push_back(compare_law("kappa1_relative", "2 exp(2t)", max_all(n, [&](std::size_t k) {
                                     return fa.kappa_at(k, 1) / k1_law(k) - 1.0;
                                 }), 1e-4));
        cs.push_back(compare_law("kappa2", "2", max_all(n, [&](std::size_t k) { return fa.kappa_at(k, 2) - 2.0; }), 1e-4));
        const ClassificationReport cr = classify(a.samples, *a.direct, parse_class_target("proper-normal"), opts.tol);
        cs.push_back(compare_bool("C-proper-normal", true, cr.granted));
        cs.push_back(compare_value("lambda(t_min)", -4.0 * k1_law(0), cr.lambda.front(), 1e-3 * 4.0 * k1_law(0)));
        cs.push_back(compare_law("lambda_relative", "-8 exp(2t)", max_all(n, [&](std::size_t k) {
                                     return cr.lambda[k] / (-4.0 * k1_law(k)) - 1.0;
                                 }), 1e-3));
        cs.push_back(compare_law("phi_T_eq_E2", "phi T = E2", max_all(n, [&](std::size_t k) {
                                     const Point& p = fa.points[k];
                                     return norm(sh, p, phi(sh, p, fa.e(k, 1)) - fa.e(k, 2));
                                 }), 1e-4));
        cs.push_back(compare_law("E3", "sum xi / 2", max_all(n, [&](std::size_t k) {
                                     return norm(sh, fa.points[k], fa.e(k, 3) - 0.5 * xs);
                                 }), 1e-4));
        dual_route(cs, a);
        const TheoremChecklist cl = theorem4_checklist(fa, a.contact, cr, opts.tol);
        c["classification"] = classification_json(cr, opts, false);
        c["checklist"] = checklist_json(cl);
    } else {
        cs.push_back(compare_bool("unit_speed", true, false));
    }
    c["comparisons"] = comparisons_json(cs);
    j["curve"] = c;
    res.verdict = all_passed(cs) ? Verdict::Pass : Verdict::Fail;
    j["verdict"] = verdict_name(res.verdict);
    return res;
}

std::vector<std::string> split(std::string_view line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t p = line.find(sep, start);
        std::string f(line.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
        const auto b = f.find_first_not_of(" \t\r");
        const auto e = f.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? std::string() : f.substr(b, e - b + 1));
        if (p == std::string_view::npos) break;
        start = p + 1;
    }
    return out;
}

}  // namespace

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        default: return "inconsistent";
    }
}

const Shape& CurveSource::shape() const {
    if (symbolic) return symbolic->shape;
    if (sampled) return sampled->shape;
    fail(ErrorKind::Usage, "empty curve source");
}

std::string CurveSource::label() const {
    if (symbolic) return symbolic->label;
    if (sampled) return sampled->label;
    return {};
}

Analysis analyze_curve(const CurveSource& src, const RunOptions& opts) {
    const Tolerances& tol = opts.tol;
    Analysis a;
    if (src.symbolic) {
        const CurveDef& c = *src.symbolic;
        const Grid g = opts.grid.value_or(Grid{c.t_min, c.t_max, kDefaultGridPoints});
        g.validate(kMinAnalysisPoints);
        a.samples = sample_curve(c, g, kAnalysisJetOrder, tol.quad);
    } else if (src.sampled) {
        if (opts.grid) fail(ErrorKind::Usage, "a grid override applies to symbolic curves only");
        if (src.sampled->t.size() < static_cast<std::size_t>(kMinAnalysisPoints))
            fail(ErrorKind::Usage, "sampled curve needs at least " + std::to_string(kMinAnalysisPoints) + " samples");
        a.samples = sample_from_tangents(*src.sampled);
        a.sampled = true;
        a.diagnostics.push_back("sampled mode: derivatives beyond the tangent are finite differences");
    } else {
        fail(ErrorKind::Usage, "no curve given");
    }
    a.speed = speed_report(a.samples, tol.speed);
    a.contact = contact_report(a.samples, tol.slant);
    if (!a.speed.unit_speed)
        a.diagnostics.push_back("inconsistent: not unit speed (max | |gamma'| - 1 | = " + fmt_short(a.speed.max_defect) +
                                ", arc length " + fmt_short(a.speed.arc_length) + ")");
    if (a.contact.bound_violation)
        a.diagnostics.push_back("inconsistent: |cos theta| reaches " + fmt_short(a.contact.max_abs) +
                                " above the bound 1/sqrt(s) = " + fmt_short(a.contact.bound));
    if (!a.contact.is_slant)
        a.diagnostics.push_back("not slant: eta^a(T) varies by " + fmt_short(a.contact.max_deviation));
    if (a.speed.unit_speed) {
        const FrenetTolerances ft = tol.frenet(a.sampled);
        a.frenet = frenet_apparatus(a.samples, ft);
        a.formula = mean_curvature_ops_formula(*a.frenet);
        a.direct = mean_curvature_ops_direct(a.samples, ft);
    }
    return a;
}

CommandResult run_axioms(const Shape& shape, const RunOptions& opts) {
    shape.validate();
    const AxiomReport rep = verify_axioms(shape, opts.axiom_samples, opts.tensor_tol, opts.connection_tol, opts.seed);
    CommandResult res;
    Json& j = res.report;
    j["command"] = "axioms";
    j["shape"] = shape_json(shape);
    j["samples"] = rep.samples;
    j["seed"] = rep.seed;
    Json checks = Json::object();
    for (const auto& c : rep.checks)
        checks[c.name] = Json{{"max_residual", c.max_residual}, {"tolerance", c.tolerance}, {"passed", c.passed}};
    j["checks"] = checks;
    res.verdict = rep.passed() ? Verdict::Pass : Verdict::Fail;
    j["verdict"] = verdict_name(res.verdict);
    return res;
}

CommandResult run_analyze(const CurveSource& src, const RunOptions& opts) {
    const Analysis a = analyze_curve(src, opts);
    CommandResult res;
    res.report = analysis_json("analyze", src, a, opts);
    res.verdict = a.consistent() ? Verdict::Pass : Verdict::Inconsistent;
    res.report["verdict"] = verdict_name(res.verdict);
    if (a.frenet) res.csv = analysis_csv(a);
    return res;
}

CommandResult run_classify(const CurveSource& src, ClassTarget target, const RunOptions& opts) {
    const Analysis a = analyze_curve(src, opts);
    CommandResult res;
    Json& j = res.report;
    j = analysis_json("classify", src, a, opts);
    j["which"] = target.name();
    if (!a.consistent()) {
        j["class"] = "none";
        res.verdict = Verdict::Inconsistent;
        j["verdict"] = verdict_name(res.verdict);
        return res;
    }
    const ClassificationReport cr = classify(a.samples, *a.direct, target, opts.tol);
    const TheoremChecklist cl = theorem_checklist(target.theorem(), *a.frenet, a.contact, cr, opts.tol);
    const Json cj = classification_json(cr, opts, true);
    for (auto it = cj.begin(); it != cj.end(); ++it)
        if (it.key() != "which") j[it.key()] = it.value();
    j["checklist"] = checklist_json(cl);
    res.verdict = cr.granted ? Verdict::Pass : Verdict::Fail;
    j["verdict"] = verdict_name(res.verdict);
    return res;
}

CommandResult run_synth(const HelixSpec& spec, const RunOptions& opts) {
    const HelixCurve hc = integrate(spec);
    CommandResult res;
    Json& j = res.report;
    j["command"] = "synth";
    j["spec"] = Json{{"theorem", spec.theorem},
                     {"shape", shape_json(spec.shape)},
                     {"theta", spec.theorem == 2 ? std::numbers::pi / 2.0 : spec.theta},
                     {"cos_theta", spec.cos_theta()},
                     {"kappa1", spec.target_kappa1()},
                     {"kappa2", spec.target_kappa2()},
                     {"lambda", spec.target_lambda()},
                     {"t_min", spec.t_min},
                     {"t_max", spec.t_max},
                     {"samples", spec.samples}};
    const HelixFrame& f = hc.initial;
    double defect = 0.0;
    const std::array<const Tangent*, 3> e{&f.e1, &f.e2, &f.e3};
    for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b)
            defect = std::max(defect, std::abs(metric(spec.shape, f.p, *e[a], *e[b]) - (a == b ? 1.0 : 0.0)));
    j["initial_frame"] = Json{{"point", vec_json(f.p.coords())},
                              {"E1", vec_json(f.e1)},
                              {"E2", vec_json(f.e2)},
                              {"E3", vec_json(f.e3)},
                              {"orthonormality_defect", defect},
                              {"eta_T", eta(spec.shape, 0, f.p, f.e1)}};
    j["integration"] = Json{{"method", "rk4"},
                            {"step", hc.stats.step},
                            {"substeps_per_sample", hc.stats.substeps},
                            {"refinements", hc.stats.refinements},
                            {"max_frame_drift", hc.stats.max_frame_drift},
                            {"max_speed_defect", hc.stats.max_speed_defect},
                            {"max_contact_drift", hc.stats.max_contact_drift}};

    CurveSource src;
    src.sampled = hc.curve;
    src.origin = "synth";
    RunOptions ro = opts;
    ro.grid.reset();
    const Analysis a = analyze_curve(src, ro);
    Json rt = analysis_json("analyze", src, a, ro);
    rt.erase("command");
    rt.erase("curve");
    bool ok = a.consistent() && a.frenet.has_value();
    if (ok) {
        const ClassTarget target = parse_class_target(spec.theorem == 1 ? "parallel-tangent" : "parallel-normal");
        const ClassificationReport cr = classify(a.samples, *a.direct, target, ro.tol);
        const TheoremChecklist cl = theorem_checklist(spec.theorem, *a.frenet, a.contact, cr, ro.tol);
        const std::size_t n = a.samples.size();
        const FrenetApparatus& fa = *a.frenet;
        const double lam_err = max_interior(n, [&](std::size_t k) { return cr.lambda[k] - spec.target_lambda(); });
        const double k1_err = max_interior(n, [&](std::size_t k) { return fa.kappa_at(k, 1) - spec.target_kappa1(); });
        const double k2_err = max_interior(n, [&](std::size_t k) { return fa.kappa_at(k, 2) - spec.target_kappa2(); });
        rt["classification"] = classification_json(cr, ro, false);
        rt["checklist"] = checklist_json(cl);
        rt["errors"] = Json{{"lambda", lam_err}, {"kappa1", k1_err}, {"kappa2", k2_err}, {"tolerance", ro.tol.checklist}};
        ok = cr.granted && cl.passed() && lam_err < ro.tol.checklist && k1_err < ro.tol.checklist &&
             k2_err < ro.tol.checklist;
    }
    j["round_trip"] = rt;
    res.verdict = ok ? Verdict::Pass : Verdict::Fail;
    j["verdict"] = verdict_name(res.verdict);
    res.csv = format_sampled_csv(hc.curve);
    return res;
}

CommandResult run_example(int which, const RunOptions& opts) {
    if (which == 1) return example1(opts);
    if (which == 2) return example2(opts);
    fail(ErrorKind::Usage, "example must be 1 or 2");
}

SampledCurve parse_sampled_csv(std::string_view text, std::optional<int> m, std::optional<int> s) {
    std::vector<std::vector<std::string>> rows;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t p = text.find('\n', start);
        const std::string_view line = text.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start);
        if (line.find_first_not_of(" \t\r") != std::string_view::npos && line.front() != '#')
            rows.push_back(split(line, ','));
        if (p == std::string_view::npos) break;
        start = p + 1;
    }
    if (rows.empty()) fail(ErrorKind::Parse, "sampled curve: empty CSV");
    const auto& header = rows.front();
    if (header.empty() || header[0] != "t") fail(ErrorKind::Parse, "sampled curve: first column must be 't'");
    int dim = 0;
    while (1 + dim < static_cast<int>(header.size()) && header[1 + dim] == "c" + std::to_string(dim + 1)) ++dim;
    if (dim == 0) fail(ErrorKind::Parse, "sampled curve: missing coordinate columns c1..cn");
    std::vector<int> e_col(static_cast<std::size_t>(3 * dim), -1);  // E1..E3 columns
    for (std::size_t c = 0; c < header.size(); ++c) {
        int e = 0, i = 0;
        char tail = 0;
        if (std::sscanf(header[c].c_str(), "E%d_%d%c", &e, &i, &tail) == 2 && e >= 1 && e <= 3 && i >= 1 && i <= dim)
            e_col[(e - 1) * dim + (i - 1)] = static_cast<int>(c);
    }
    for (int i = 0; i < dim; ++i)
        if (e_col[i] < 0) fail(ErrorKind::Parse, "sampled curve: tangent columns E1_1..E1_" + std::to_string(dim) + " required");

    Shape sh;
    if (m && s) sh = Shape{*m, *s};
    else if (m) sh = Shape{*m, dim - 2 * *m};
    else if (s) sh = Shape{(dim - *s) / 2, *s};
    else sh = Shape{1, dim - 2};
    sh.validate();
    if (sh.dim() != dim)
        fail(ErrorKind::Usage, "sampled curve has " + std::to_string(dim) + " coordinates, which does not match m = " +
                                   std::to_string(sh.m) + ", s = " + std::to_string(sh.s));

    bool has_frame = true;
    for (int k = dim; k < 3 * dim; ++k) has_frame = has_frame && e_col[k] >= 0;
    SampledCurve out;
    out.shape = sh;
    out.label = "sampled curve";
    if (has_frame) out.frames.assign(2, {});
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.size() != header.size())
            fail(ErrorKind::Parse, "sampled curve: row " + std::to_string(r + 1) + " has " + std::to_string(row.size()) +
                                       " fields, header has " + std::to_string(header.size()));
        auto num = [&](int c) {
            char* end = nullptr;
            const double v = std::strtod(row[c].c_str(), &end);
            if (row[c].empty() || *end != '\0' || !std::isfinite(v))
                fail(ErrorKind::Parse, "sampled curve: bad number '" + row[c] + "' on row " + std::to_string(r + 1));
            return v;
        };
        out.t.push_back(num(0));
        Vec p(dim), tv(dim);
        for (int i = 0; i < dim; ++i) {
            p[i] = num(1 + i);
            tv[i] = num(e_col[i]);
        }
        out.points.push_back(p);
        out.tangents.push_back(tv);
        if (has_frame)
            for (int e = 0; e < 2; ++e) {
                Vec v(dim);
                for (int i = 0; i < dim; ++i) v[i] = num(e_col[(e + 1) * dim + i]);
                out.frames[e].push_back(v);
            }
    }
    return out;
}

std::string format_sampled_csv(const SampledCurve& curve) {
    const int n = curve.shape.dim();
    const int frames = static_cast<int>(curve.frames.size());
    std::ostringstream os;
    os << "t";
    for (int i = 1; i <= n; ++i) os << ",c" << i;
    for (int e = 1; e <= 1 + frames; ++e)
        for (int i = 1; i <= n; ++i) os << ",E" << e << "_" << i;
    os << "\n";
    for (std::size_t j = 0; j < curve.t.size(); ++j) {
        os << fmt(curve.t[j]);
        for (int i = 0; i < n; ++i) os << "," << fmt(curve.points[j][i]);
        for (int i = 0; i < n; ++i) os << "," << fmt(curve.tangents[j][i]);
        for (int e = 0; e < frames; ++e)
            for (int i = 0; i < n; ++i) os << "," << fmt(curve.frames[e][j][i]);
        os << "\n";
    }
    return os.str();
}

}  // namespace slant
