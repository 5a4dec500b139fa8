#include "slant/classify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "slant/error.hpp"

namespace slant {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double g_inner(const Eigen::MatrixXd& g, const Tangent& a, const Tangent& b) { return a.dot(g * b); }
double g_norm(const Eigen::MatrixXd& g, const Tangent& a) { return std::sqrt(std::max(0.0, g_inner(g, a, a))); }

// |v - proj v| / |v| with the projection onto the g-orthonormal vectors in
// `basis`; zero vectors in the basis stand for absent frame vectors.
double span_residual(const Eigen::MatrixXd& g, const Tangent& v, std::initializer_list<const Tangent*> basis) {
    const double vn = g_norm(g, v);
    if (vn == 0.0) return 0.0;
    Tangent r = v;
    for (const Tangent* e : basis) r -= g_inner(g, v, *e) * (*e);
    return g_norm(g, r) / vn;
}

// Local data at one grid sample.
struct Site {
    std::size_t j;
    const Point& p;
    Eigen::MatrixXd g;
    const Tangent& e1;
    const Tangent& e2;
    const Tangent& e3;
    const Tangent& e4;
    const Tangent& e5;
    double k1, k2, k3;
    double k1p, k1pp, k2p;
    Tangent phi_t;
    Tangent xs;
};

class Checker {
public:
    Checker(const FrenetApparatus& fa, const ContactReport& contact, const ClassificationReport& cls,
            const Tolerances& tol, int theorem)
        : fa_(fa), contact_(contact), cls_(cls), tol_(tol) {
        out_.theorem = theorem;
        const Shape& sh = fa.shape;
        xs_ = xi_sum(sh);
        for (std::size_t j = fa.interior_begin(); j < fa.interior_end(); ++j) {
            const Point& p = fa.points[j];
            sites_.push_back(Site{j, p, metric_matrix(sh, p), fa.e(j, 1), fa.e(j, 2), fa.e(j, 3), fa.e(j, 4),
                                  fa.e(j, 5), fa.kappa_at(j, 1), fa.kappa_at(j, 2), fa.kappa_at(j, 3),
                                  fa.kappa1_d1[j], fa.kappa1_d2[j], fa.kappa2_d1[j], phi(sh, p, fa.e(j, 1)), xs_});
        }
        out_.kappa3_zero = true;
        for (const auto& s : sites_) out_.kappa3_zero = out_.kappa3_zero && fa.order[s.j] <= 3;
    }

    double c() const { return contact_.mean; }
    double s() const { return static_cast<double>(fa_.shape.s); }
    double lambda(const Site& st) const { return st.j < cls_.lambda.size() ? cls_.lambda[st.j] : kNaN; }

    void below(std::string name, double value, double threshold) { add(std::move(name), value, threshold, false); }
    void above(std::string name, double value, double threshold) { add(std::move(name), value, threshold, true); }

    double max_over(const std::function<double(const Site&)>& f) const {
        double worst = 0.0;
        for (const auto& st : sites_) {
            const double v = std::abs(f(st));
            if (std::isnan(v)) return kNaN;
            worst = std::max(worst, v);
        }
        return worst;
    }
    double min_over(const std::function<double(const Site&)>& f) const {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& st : sites_) {
            const double v = f(st);
            if (std::isnan(v)) return kNaN;
            best = std::min(best, v);
        }
        return best;
    }
    double spread(const std::function<double(const Site&)>& f) const {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const auto& st : sites_) {
            const double v = f(st);
            if (std::isnan(v)) return kNaN;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        return sites_.empty() ? kNaN : hi - lo;
    }
    // Max over sites and alpha of |f(site, eta^a(E3), eta^a(E4))|.
    double max_over_alpha(const std::function<double(const Site&, double, double)>& f) const {
        double worst = 0.0;
        for (const auto& st : sites_)
            for (int a = 0; a < fa_.shape.s; ++a) {
                const double v =
                    std::abs(f(st, eta(fa_.shape, a, st.p, st.e3), eta(fa_.shape, a, st.p, st.e4)));
                if (std::isnan(v)) return kNaN;
                worst = std::max(worst, v);
            }
        return worst;
    }

    void slant_precondition(bool legendre) {
        below("slant", contact_.max_deviation, tol_.slant);
        if (legendre)
            below("legendre", std::abs(contact_.mean), tol_.slant);
        else
            above("non_legendre", std::abs(contact_.mean), tol_.slant);
        out_.applicable = contact_.is_slant && (legendre == contact_.is_legendre);
    }

    void order_at_least_3() {
        double r = std::numeric_limits<double>::infinity();
        for (const auto& st : sites_) r = std::min(r, static_cast<double>(fa_.order[st.j]));
        above("order_at_least_3", r, 2.5);
    }
    void kappa_constant(int i) {
        below("kappa" + std::to_string(i) + "_constant", spread([i, this](const Site& st) {
                  return fa_.kappa_at(st.j, i);
              }),
              tol_.constant);
    }
    void kappa1_nonconstant() {
        above("kappa1_nonconstant", spread([](const Site& st) { return st.k1; }), 100.0 * tol_.constant);
    }
    void kappa2_nonzero() { above("kappa2_nonzero", min_over([](const Site& st) { return st.k2; }), tol_.constant); }

    void in_span(std::string name, const std::function<double(const Site&)>& residual) {
        below(std::move(name), max_over(residual), tol_.span);
    }
    void identity(std::string name, const std::function<double(const Site&)>& defect) {
        below(std::move(name), max_over(defect), tol_.checklist);
    }
    void vector_identity(std::string name, const std::function<Tangent(const Site&)>& defect) {
        below(std::move(name), max_over([&](const Site& st) { return g_norm(st.g, defect(st)); }), tol_.checklist);
    }

    TheoremChecklist take() { return std::move(out_); }
    bool kappa3_zero() const { return out_.kappa3_zero; }

private:
    void add(std::string name, double value, double threshold, bool is_above) {
        ChecklistItem item{std::move(name), value, threshold, is_above, false};
        item.passed = is_above ? value > threshold : value < threshold;
        out_.items.push_back(std::move(item));
    }

    const FrenetApparatus& fa_;
    const ContactReport& contact_;
    const ClassificationReport& cls_;
    const Tolerances& tol_;
    Tangent xs_;
    std::vector<Site> sites_;
    TheoremChecklist out_;
};

}  // namespace

double ContactReport::theta() const { return std::acos(std::clamp(mean, -1.0, 1.0)); }

ContactReport contact_report(const CurveSamples& samples, double slant_tol) {
    const Shape& sh = samples.shape;
    ContactReport r;
    r.shape = sh;
    r.t = samples.t;
    r.bound = 1.0 / std::sqrt(static_cast<double>(sh.s));
    r.cos_theta.assign(sh.s, std::vector<double>(samples.size()));
    double sum = 0.0;
    for (std::size_t j = 0; j < samples.size(); ++j) {
        const Point p = samples.point(j);
        Tangent v = samples.velocity(j);
        const double speed = norm(sh, p, v);
        if (speed > 0.0) v /= speed;
        for (int a = 0; a < sh.s; ++a) {
            const double c = eta(sh, a, p, v);
            r.cos_theta[a][j] = c;
            sum += c;
            r.max_abs = std::max(r.max_abs, std::abs(c));
        }
    }
    r.mean = sum / static_cast<double>(sh.s * std::max<std::size_t>(samples.size(), 1));
    for (const auto& row : r.cos_theta)
        for (double c : row) r.max_deviation = std::max(r.max_deviation, std::abs(c - r.mean));
    r.is_slant = r.max_deviation < slant_tol;
    r.is_legendre = r.is_slant && std::abs(r.mean) < slant_tol;
    r.bound_violation = r.max_abs > r.bound + kBoundSlack;
    return r;
}

std::string ClassTarget::name() const {
    return std::string(condition == Condition::Parallel ? "parallel" : "proper") + "-" +
           (bundle == Bundle::Tangent ? "tangent" : "normal");
}

std::string ClassTarget::label() const { return "C-" + name(); }

int ClassTarget::theorem() const {
    return (condition == Condition::Parallel ? 1 : 3) + (bundle == Bundle::Normal ? 1 : 0);
}

int ClassTarget::op_index() const {
    // nabla_H, nabla_perp_H, laplacian_H, laplacian_perp_H
    return (condition == Condition::Parallel ? 0 : 2) + (bundle == Bundle::Normal ? 1 : 0);
}

ClassTarget parse_class_target(std::string_view text) {
    for (const auto& t : all_class_targets())
        if (t.name() == text) return t;
    fail(ErrorKind::Usage, "unknown class '" + std::string(text) +
                               "' (expected parallel-tangent, parallel-normal, proper-tangent or proper-normal)");
}

std::array<ClassTarget, 4> all_class_targets() {
    return {ClassTarget{Condition::Parallel, Bundle::Tangent}, ClassTarget{Condition::Parallel, Bundle::Normal},
            ClassTarget{Condition::Proper, Bundle::Tangent}, ClassTarget{Condition::Proper, Bundle::Normal}};
}

double recover_lambda(const Shape& shape, const Point& p, const Tangent& w) {
    return metric(shape, p, w, xi_sum(shape)) / static_cast<double>(shape.s);
}

ClassificationReport classify(const CurveSamples& samples, const MeanCurvatureOps& ops, ClassTarget target,
                              const Tolerances& tol) {
    const Shape& sh = samples.shape;
    const std::size_t n = samples.size();
    if (n < 5) fail(ErrorKind::Usage, "classification needs at least 5 samples");
    const OperatorField& w = ops.by_index(target.op_index());
    const Tangent xs = xi_sum(sh);

    ClassificationReport r;
    r.target = target;
    r.t = samples.t;
    r.lambda.assign(n, kNaN);
    r.min_abs_lambda = std::numeric_limits<double>::infinity();
    r.lambda_min = std::numeric_limits<double>::infinity();
    r.lambda_max = -r.lambda_min;
    bool any_interior = false;
    for (std::size_t i = 0; i < w.index.size(); ++i) {
        const std::size_t j = w.index[i];
        const Point p = samples.point(j);
        const double lam = recover_lambda(sh, p, w.value[i]);
        r.lambda[j] = lam;
        if (j < 2 || j + 2 >= n) continue;
        any_interior = true;
        r.residual = std::max(r.residual, norm(sh, p, w.value[i] - lam * xs));
        r.min_abs_lambda = std::min(r.min_abs_lambda, std::abs(lam));
        r.lambda_min = std::min(r.lambda_min, lam);
        r.lambda_max = std::max(r.lambda_max, lam);
    }
    if (!any_interior) fail(ErrorKind::Usage, "operator field covers no interior samples");
    r.lambda_nonzero = r.min_abs_lambda > tol.lambda;
    r.granted = r.residual < tol.class_residual && r.lambda_nonzero;
    r.label = r.granted ? target.label() : "none";
    return r;
}

bool TheoremChecklist::passed() const {
    return applicable && std::all_of(items.begin(), items.end(), [](const ChecklistItem& i) { return i.passed; });
}

const ChecklistItem* TheoremChecklist::find(std::string_view name) const {
    for (const auto& i : items)
        if (i.name == name) return &i;
    return nullptr;
}

double helix_kappa1(int s, double c) { return s * std::abs(c) * std::sqrt(1.0 - s * c * c); }
double helix_kappa2(int s, double c) { return std::sqrt(static_cast<double>(s)) * (1.0 - s * c * c); }
double helix_kappa2_from_kappa1(int s, double c, double k1) {
    return k1 * std::sqrt(1.0 - s * c * c) / (std::sqrt(static_cast<double>(s)) * std::abs(c));
}
double helix_lambda(int s, double c, double k1) { return -k1 * k1 / (s * c); }

TheoremChecklist theorem1_checklist(const FrenetApparatus& fa, const ContactReport& contact,
                                    const ClassificationReport& cls, const Tolerances& tol) {
    Checker ck(fa, contact, cls, tol, 1);
    const int s = fa.shape.s;
    const double c = ck.c();
    ck.slant_precondition(false);
    ck.order_at_least_3();
    ck.kappa_constant(1);
    ck.kappa_constant(2);
    ck.kappa_constant(3);
    ck.kappa2_nonzero();
    ck.identity("kappa2_from_kappa1",
                [&](const Site& st) { return st.k2 - helix_kappa2_from_kappa1(s, c, st.k1); });
    ck.identity("lambda_from_kappa1", [&](const Site& st) { return ck.lambda(st) - helix_lambda(s, c, st.k1); });
    ck.below("lambda_constant", ck.spread([&](const Site& st) { return ck.lambda(st); }), tol.constant);
    ck.in_span("xi_sum_in_span_T_E3", [](const Site& st) { return span_residual(st.g, st.xs, {&st.e1, &st.e3}); });
    ck.in_span("phi_T_in_span_E2_E4",
               [](const Site& st) { return span_residual(st.g, st.phi_t, {&st.e2, &st.e4}); });
    if (ck.kappa3_zero()) {
        ck.identity("kappa1_closed_form", [&](const Site& st) { return st.k1 - helix_kappa1(s, c); });
        ck.identity("kappa2_closed_form", [&](const Site& st) { return st.k2 - helix_kappa2(s, c); });
    }
    return ck.take();
}

TheoremChecklist theorem2_checklist(const FrenetApparatus& fa, const ContactReport& contact,
                                    const ClassificationReport& cls, const Tolerances& tol) {
    Checker ck(fa, contact, cls, tol, 2);
    const double rs = std::sqrt(ck.s());
    ck.slant_precondition(true);
    ck.order_at_least_3();
    ck.kappa_constant(1);
    ck.kappa_constant(2);
    ck.kappa_constant(3);
    ck.kappa2_nonzero();
    ck.vector_identity("xi_sum_eq_sqrt_s_E3", [&](const Site& st) -> Tangent { return st.xs - rs * st.e3; });
    ck.vector_identity("phi_T_in_E2_E4", [&](const Site& st) -> Tangent {
        return st.phi_t - (st.k2 / rs) * st.e2 + (st.k3 / rs) * st.e4;
    });
    ck.identity("lambda_from_kappa", [&](const Site& st) { return ck.lambda(st) - st.k1 * st.k2 / rs; });
    if (ck.kappa3_zero()) {
        ck.identity("kappa2_eq_sqrt_s", [&](const Site& st) { return st.k2 - rs; });
        ck.vector_identity("phi_T_eq_E2", [](const Site& st) -> Tangent { return st.phi_t - st.e2; });
    }
    return ck.take();
}

TheoremChecklist theorem3_checklist(const FrenetApparatus& fa, const ContactReport& contact,
                                    const ClassificationReport& cls, const Tolerances& tol) {
    Checker ck(fa, contact, cls, tol, 3);
    const double s = ck.s();
    const double c = ck.c();
    const double w = std::sqrt(std::max(0.0, 1.0 - s * c * c));
    ck.slant_precondition(false);
    ck.kappa1_nonconstant();
    ck.kappa2_nonzero();
    ck.identity("lambda_from_kappa1_derivative",
                [&](const Site& st) { return ck.lambda(st) - 3.0 * st.k1 * st.k1p / (s * c); });
    ck.identity("kappa_sum_of_squares",
                [](const Site& st) { return st.k1 * st.k1 + st.k2 * st.k2 - st.k1pp / st.k1; });
    ck.below("eta_E3_relation", ck.max_over_alpha([&](const Site& st, double e3, double) {
                 return ck.lambda(st) * s * e3 + (2.0 * st.k1p * st.k2 + st.k1 * st.k2p);
             }),
             tol.checklist);
    ck.below("eta_E4_relation", ck.max_over_alpha([&](const Site& st, double, double e4) {
                 return ck.lambda(st) * s * e4 + st.k1 * st.k2 * st.k3;
             }),
             tol.checklist);
    ck.below("eta_E3_E4_norm",
             ck.max_over_alpha([&](const Site&, double e3, double e4) { return e3 * e3 + e4 * e4 - w * w / s; }),
             tol.checklist);
    ck.in_span("xi_sum_in_span_T_E3_E4",
               [](const Site& st) { return span_residual(st.g, st.xs, {&st.e1, &st.e3, &st.e4}); });
    ck.in_span("phi_T_in_span_E2_E5",
               [](const Site& st) { return span_residual(st.g, st.phi_t, {&st.e2, &st.e3, &st.e4, &st.e5}); });
    if (ck.kappa3_zero()) {
        ck.vector_identity("phi_T_along_E2", [&](const Site& st) -> Tangent { return st.phi_t - w * st.e2; });
        ck.vector_identity("E3_from_xi_sum", [&](const Site& st) -> Tangent {
            return st.e3 - (st.xs - s * c * st.e1) / (std::sqrt(s) * w);
        });
        ck.identity("kappa2_from_kappa1",
                    [&](const Site& st) { return st.k2 - std::sqrt(s) * (1.0 + st.k1 * c / w); });
    }
    return ck.take();
}

TheoremChecklist theorem4_checklist(const FrenetApparatus& fa, const ContactReport& contact,
                                    const ClassificationReport& cls, const Tolerances& tol) {
    Checker ck(fa, contact, cls, tol, 4);
    const double s = ck.s();
    const double rs = std::sqrt(s);
    ck.slant_precondition(true);
    ck.kappa1_nonconstant();
    ck.kappa2_nonzero();
    ck.identity("kappa1_kappa2_squared", [](const Site& st) { return st.k1 * st.k2 * st.k2 - st.k1pp; });
    ck.below("eta_E3_relation", ck.max_over_alpha([&](const Site& st, double e3, double) {
                 return ck.lambda(st) * s * e3 + (2.0 * st.k1p * st.k2 + st.k1 * st.k2p);
             }),
             tol.checklist);
    ck.below("eta_E4_relation", ck.max_over_alpha([&](const Site& st, double, double e4) {
                 return ck.lambda(st) * s * e4 + st.k1 * st.k2 * st.k3;
             }),
             tol.checklist);
    ck.below("eta_E3_E4_norm",
             ck.max_over_alpha([&](const Site&, double e3, double e4) { return e3 * e3 + e4 * e4 - 1.0 / s; }),
             tol.checklist);
    ck.in_span("xi_sum_in_span_E3_E4",
               [](const Site& st) { return span_residual(st.g, st.xs, {&st.e3, &st.e4}); });
    ck.in_span("phi_T_in_span_E2_E5",
               [](const Site& st) { return span_residual(st.g, st.phi_t, {&st.e2, &st.e3, &st.e4, &st.e5}); });
    if (ck.kappa3_zero()) {
        ck.vector_identity("xi_sum_eq_sqrt_s_E3", [&](const Site& st) -> Tangent { return st.xs - rs * st.e3; });
        ck.identity("kappa2_eq_sqrt_s", [&](const Site& st) { return st.k2 - rs; });
        ck.vector_identity("phi_T_eq_E2", [](const Site& st) -> Tangent { return st.phi_t - st.e2; });
    }
    return ck.take();
}

TheoremChecklist theorem_checklist(int theorem, const FrenetApparatus& fa, const ContactReport& contact,
                                   const ClassificationReport& cls, const Tolerances& tol) {
    switch (theorem) {
        case 1: return theorem1_checklist(fa, contact, cls, tol);
        case 2: return theorem2_checklist(fa, contact, cls, tol);
        case 3: return theorem3_checklist(fa, contact, cls, tol);
        case 4: return theorem4_checklist(fa, contact, cls, tol);
        default: fail(ErrorKind::Usage, "theorem must be 1, 2, 3 or 4");
    }
}

}  // namespace slant
