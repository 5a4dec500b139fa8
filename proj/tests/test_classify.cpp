#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "slant/classify.hpp"
#include "slant/curve.hpp"

using namespace slant;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

struct Run {
    CurveSamples samples;
    ContactReport contact;
    FrenetApparatus fa;
    MeanCurvatureOps direct;

    explicit Run(const CurveDef& c, int n = 256)
        : samples(sample_curve(c, Grid{c.t_min, c.t_max, n})),
          contact(contact_report(samples)),
          fa(frenet_apparatus(samples)),
          direct(mean_curvature_ops_direct(samples)) {}

    ClassificationReport cls(const char* which) const { return classify(samples, direct, parse_class_target(which)); }
    TheoremChecklist checklist(int theorem) const {
        const ClassTarget target = all_class_targets()[theorem - 1];
        return theorem_checklist(theorem, fa, contact, classify(samples, direct, target));
    }
};

const Run& example1() {
    static const Run r(bundled_curve("example1_corrected"));
    return r;
}
const Run& example2() {
    static const Run r(bundled_curve("example2"));
    return r;
}
const Run& geodesic() {
    static const Run r(bundled_curve("geodesic_s2"), 64);
    return r;
}

}  // namespace

TEST_CASE("class targets", "[classify]") {
    const auto all = all_class_targets();
    const char* names[] = {"parallel-tangent", "parallel-normal", "proper-tangent", "proper-normal"};
    for (int i = 0; i < 4; ++i) {
        const ClassTarget t = parse_class_target(names[i]);
        CHECK(t.name() == names[i]);
        CHECK(t.theorem() == i + 1);
        CHECK(all[i].name() == names[i]);
    }
    CHECK(parse_class_target("proper-normal").label() == "C-proper-normal");
    try {
        parse_class_target("parallel");
        FAIL("no exception");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Usage);
    }
}

TEST_CASE("lambda recovery is exact on multiples of xi_sum", "[classify]") {
    const Shape sh{2, 3};
    Vec c(sh.dim());
    for (int i = 0; i < sh.dim(); ++i) c[i] = 0.3 * i - 0.7;
    const Point p(c);
    for (double lambda : {-8.0, 0.5, 1e-3, 12345.0}) {
        const Tangent w = lambda * xi_sum(sh);
        CHECK(recover_lambda(sh, p, w) == lambda);
        // a horizontal addition is invisible to eta
        Tangent h = Tangent::Zero(sh.dim());
        h[sh.y_index(1)] = 3.0;
        CHECK_THAT(recover_lambda(sh, p, w + h), WithinAbs(lambda, 1e-14 * std::max(1.0, std::abs(lambda))));
    }
}

TEST_CASE("helix closed forms at s = 2, theta = 2pi/3", "[classify]") {
    const double c = std::cos(2 * std::numbers::pi / 3);
    const double k1 = helix_kappa1(2, c);
    CHECK_THAT(k1, WithinAbs(1 / std::sqrt(2.0), 1e-15));
    CHECK_THAT(helix_kappa2(2, c), WithinAbs(1 / std::sqrt(2.0), 1e-15));
    CHECK_THAT(helix_kappa2_from_kappa1(2, c, k1), WithinAbs(1 / std::sqrt(2.0), 1e-15));
    CHECK_THAT(helix_lambda(2, c, k1), WithinAbs(0.5, 1e-15));
}

TEST_CASE("helix closed forms are mutually consistent", "[classify]") {
    for (int s : {1, 2, 3, 5}) {
        for (double c : {-0.4, -0.1, 0.2, 0.35}) {
            if (s * c * c >= 1) continue;
            const double k1 = helix_kappa1(s, c);
            CHECK_THAT(helix_kappa2_from_kappa1(s, c, k1), WithinAbs(helix_kappa2(s, c), 1e-12));
            CHECK_THAT(helix_lambda(s, c, k1), WithinAbs(-k1 * k1 / (s * c), 1e-12));
            CHECK(k1 > 0);
        }
    }
}

TEST_CASE("contact angles", "[classify]") {
    const ContactReport& a = example1().contact;
    CHECK(a.is_slant);
    CHECK(!a.is_legendre);
    CHECK_THAT(a.mean, WithinAbs(-0.5, 1e-12));
    CHECK_THAT(a.theta(), WithinAbs(2 * std::numbers::pi / 3, 1e-9));
    CHECK(!a.bound_violation);

    const ContactReport& b = example2().contact;
    CHECK(b.is_legendre);
    CHECK(b.max_abs < 1e-7);

    const ContactReport& g = geodesic().contact;
    CHECK(g.is_slant);
    CHECK_THAT(g.mean, WithinAbs(1 / std::sqrt(2.0), 1e-9));
    CHECK(!g.bound_violation);
}

TEST_CASE("contact above the bound is flagged", "[classify]") {
    // gamma = (0, 0, 2t, 0) in s = 2: unit speed, eta^1(T) = 1 > 1/sqrt(2).
    const CurveDef c = parse_curve("m = 1\ns = 2\nc1 = 0\nc2 = 0\nc3 = 2*t\nc4 = 0\n");
    const CurveSamples s = sample_curve(c, Grid{0, 1, 32});
    CHECK(speed_report(s, 1e-6).unit_speed);
    const ContactReport r = contact_report(s);
    CHECK(r.bound_violation);
    CHECK_THAT(r.max_abs, WithinAbs(1.0, 1e-12));
    CHECK(!r.is_slant);  // the two angles differ
}

TEST_CASE("corrected slant helix is C-parallel in the tangent bundle", "[classify]") {
    const ClassificationReport r = example1().cls("parallel-tangent");
    CHECK(r.granted);
    CHECK(r.label == "C-parallel-tangent");
    CHECK(r.residual < 1e-9);
    CHECK_THAT(r.lambda_min, WithinAbs(0.5, 1e-9));
    CHECK_THAT(r.lambda_max, WithinAbs(0.5, 1e-9));
    CHECK(r.lambda.size() == example1().samples.size());
}

TEST_CASE("Legendre example is C-proper in the normal bundle", "[classify]") {
    const ClassificationReport r = example2().cls("proper-normal");
    CHECK(r.granted);
    for (std::size_t j = 0; j < r.t.size(); ++j) CHECK_THAT(r.lambda[j], WithinRel(-8 * std::exp(2 * r.t[j]), 1e-7));
    CHECK(!example2().cls("parallel-tangent").granted);
    CHECK(!example2().cls("proper-tangent").granted);
    CHECK(example2().cls("parallel-tangent").label == "none");
}

TEST_CASE("geodesic is in no class", "[classify]") {
    for (const ClassTarget t : all_class_targets()) {
        const ClassificationReport r = classify(geodesic().samples, geodesic().direct, t);
        INFO(t.name());
        CHECK(!r.granted);
        CHECK(!r.lambda_nonzero);
        CHECK(r.residual < 1e-8);
        CHECK(field_norm(geodesic().samples, geodesic().direct.by_index(t.op_index())) < 1e-8);
    }
}

TEST_CASE("theorem checklists on the corrected slant helix", "[classify]") {
    const TheoremChecklist t1 = example1().checklist(1);
    CHECK(t1.applicable);
    CHECK(t1.kappa3_zero);
    for (const auto& item : t1.items) {
        INFO(item.name << " = " << item.value << " vs " << item.threshold);
        CHECK(item.passed);
    }
    CHECK(t1.passed());
    REQUIRE(t1.find("kappa1_closed_form"));
    REQUIRE(t1.find("lambda_from_kappa1"));
    CHECK(t1.find("nonexistent") == nullptr);

    // constant kappa1 rules out the C-proper-tangent characterization
    const TheoremChecklist t3 = example1().checklist(3);
    CHECK(t3.applicable);
    CHECK(!t3.passed());
    REQUIRE(t3.find("kappa1_nonconstant"));
    CHECK(!t3.find("kappa1_nonconstant")->passed);

    // the normal-bundle theorems need a Legendre curve
    CHECK(!example1().checklist(2).applicable);
    CHECK(!example1().checklist(2).passed());
    CHECK(!example1().checklist(4).applicable);
}

TEST_CASE("theorem checklists on the Legendre example", "[classify]") {
    const TheoremChecklist t4 = example2().checklist(4);
    CHECK(t4.applicable);
    CHECK(t4.kappa3_zero);
    for (const auto& item : t4.items) {
        INFO(item.name << " = " << item.value << " vs " << item.threshold);
        CHECK(item.passed);
    }
    CHECK(t4.passed());

    const TheoremChecklist t2 = example2().checklist(2);
    CHECK(t2.applicable);
    CHECK(!t2.passed());  // kappa1 varies

    CHECK(!example2().checklist(1).applicable);
    CHECK(!example2().checklist(3).applicable);
}
