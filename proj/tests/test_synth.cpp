#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "slant/classify.hpp"
#include "slant/report.hpp"
#include "slant/synth.hpp"

using namespace slant;
using Catch::Matchers::WithinAbs;

namespace {

double gram_defect(const Shape& sh, const Point& p, const std::vector<Tangent>& e) {
    double worst = 0.0;
    for (std::size_t a = 0; a < e.size(); ++a)
        for (std::size_t b = 0; b < e.size(); ++b)
            worst = std::max(worst, std::abs(metric(sh, p, e[a], e[b]) - (a == b ? 1.0 : 0.0)));
    return worst;
}

double gnorm(const Shape& sh, const Point& p, const Tangent& v) { return std::sqrt(metric(sh, p, v, v)); }

ErrorKind kind_of(const HelixSpec& spec) {
    try {
        spec.validate();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Internal;
}

struct RoundTrip {
    HelixCurve helix;
    ClassificationReport cls;
    FrenetApparatus fa;
};

RoundTrip round_trip(const HelixSpec& spec) {
    HelixCurve h = integrate(spec);
    const CurveSamples s = sample_from_tangents(h.curve);
    const Tolerances tol;
    const MeanCurvatureOps ops = mean_curvature_ops_direct(s, tol.frenet(true));
    const ClassTarget target = parse_class_target(spec.theorem == 1 ? "parallel-tangent" : "parallel-normal");
    return {std::move(h), classify(s, ops, target, tol), frenet_apparatus(s, tol.frenet(true))};
}

}  // namespace

TEST_CASE("theorem 1 initial frame at s = 2, theta = 2pi/3", "[synth]") {
    HelixSpec spec;
    spec.shape = Shape{1, 2};
    const HelixFrame f = initial_frame(spec);
    const Shape& sh = spec.shape;
    CHECK(gram_defect(sh, f.p, {f.e1, f.e2, f.e3}) < 1e-12);
    for (int a = 0; a < sh.s; ++a) {
        CHECK_THAT(eta(sh, a, f.p, f.e1), WithinAbs(-0.5, 1e-15));
        CHECK_THAT(eta(sh, a, f.p, f.e2), WithinAbs(0.0, 1e-15));
    }
    CHECK(gnorm(sh, f.p, f.e2 - std::sqrt(2.0) * phi(sh, f.p, f.e1)) < 1e-12);
    CHECK(gnorm(sh, f.p, f.e3 - (f.e1 + xi_sum(sh))) < 1e-12);
    CHECK_THAT(f.kappa1, WithinAbs(1 / std::sqrt(2.0), 1e-15));
    CHECK_THAT(f.kappa2, WithinAbs(1 / std::sqrt(2.0), 1e-15));
    CHECK_THAT(spec.target_lambda(), WithinAbs(0.5, 1e-15));
}

TEST_CASE("initial frames are orthonormal across parameters", "[synth]") {
    for (int s : {1, 2, 3}) {
        for (double theta : {0.3, 1.2, 2.0, 2.6}) {
            HelixSpec spec;
            spec.shape = Shape{2, s};
            spec.theta = theta;
            if (s * std::cos(theta) * std::cos(theta) >= 1) continue;
            const HelixFrame f = initial_frame(spec);
            INFO("s=" << s << " theta=" << theta);
            CHECK(gram_defect(spec.shape, f.p, {f.e1, f.e2, f.e3}) < 1e-12);
            CHECK_THAT(eta(spec.shape, 0, f.p, f.e1), WithinAbs(std::cos(theta), 1e-14));
        }
        HelixSpec legendre;
        legendre.shape = Shape{1, s};
        legendre.theorem = 2;
        legendre.kappa1 = 1.5;
        const HelixFrame f = initial_frame(legendre);
        CHECK(gram_defect(legendre.shape, f.p, {f.e1, f.e2, f.e3}) < 1e-12);
        CHECK(gnorm(legendre.shape, f.p, f.e3 - xi_sum(legendre.shape) / std::sqrt(double(s))) < 1e-12);
        CHECK(gnorm(legendre.shape, f.p, f.e2 - phi(legendre.shape, f.p, f.e1)) < 1e-12);
        CHECK_THAT(f.kappa2, WithinAbs(std::sqrt(double(s)), 1e-15));
    }
}

TEST_CASE("invalid helix parameters are usage errors", "[synth]") {
    HelixSpec spec;
    spec.theta = std::numbers::pi / 2;
    CHECK(kind_of(spec) == ErrorKind::Usage);
    spec.theta = 0.1;  // s cos^2 >= 1
    CHECK(kind_of(spec) == ErrorKind::Usage);
    spec.theta = 2.0;
    CHECK(kind_of(spec) == ErrorKind::Internal);  // valid
    spec.samples = 8;
    CHECK(kind_of(spec) == ErrorKind::Usage);

    HelixSpec two;
    two.theorem = 2;
    two.kappa1 = 0.0;
    CHECK(kind_of(two) == ErrorKind::Usage);
    two.kappa1 = 1.0;
    two.theorem = 3;
    CHECK(kind_of(two) == ErrorKind::Usage);
    CHECK_THROWS_AS(integrate(spec), Error);
}

TEST_CASE("integration conserves frame, speed and contact angle", "[synth]") {
    HelixSpec spec;
    spec.samples = 256;
    const HelixCurve h = integrate(spec);
    CHECK(h.curve.t.size() == 256);
    CHECK(h.curve.frames.size() == 2);
    CHECK(h.stats.max_frame_drift < 1e-8 * (spec.t_max - spec.t_min));
    CHECK(h.stats.max_speed_defect < 1e-8);
    CHECK(h.stats.max_contact_drift < 1e-8);
    const Shape& sh = spec.shape;
    const std::size_t last = h.curve.t.size() - 1;
    const Point p(h.curve.points[last]);
    CHECK(gram_defect(sh, p, {h.curve.tangents[last], h.curve.frames[0][last], h.curve.frames[1][last]}) < 1e-8);
    // E3 = T + xi_sum persists along the flow
    CHECK(gnorm(sh, p, h.curve.frames[1][last] - h.curve.tangents[last] - xi_sum(sh)) < 1e-8);
}

TEST_CASE("theorem 1 helix round-trips through classification", "[synth]") {
    HelixSpec spec;
    const RoundTrip r = round_trip(spec);
    CHECK(r.cls.granted);
    CHECK(r.cls.residual < 1e-4);
    CHECK_THAT(r.cls.lambda_min, WithinAbs(0.5, 1e-4));
    CHECK_THAT(r.cls.lambda_max, WithinAbs(0.5, 1e-4));
    CHECK(r.fa.r == 3);
}

TEST_CASE("theorem 1 helix with a positive cosine", "[synth]") {
    HelixSpec spec;
    spec.theta = 1.2;
    const RoundTrip r = round_trip(spec);
    CHECK(r.cls.granted);
    CHECK_THAT(r.cls.lambda_min, WithinAbs(spec.target_lambda(), 1e-4));
    CHECK(spec.target_lambda() < 0);
}

TEST_CASE("theorem 2 helix round-trips through classification", "[synth]") {
    HelixSpec spec;
    spec.theorem = 2;
    spec.shape = Shape{1, 4};
    spec.kappa1 = 2.0;
    const RoundTrip r = round_trip(spec);
    CHECK(r.cls.granted);
    CHECK_THAT(r.cls.lambda_min, WithinAbs(2.0, 1e-4));
    CHECK_THAT(r.cls.lambda_max, WithinAbs(2.0, 1e-4));
    CHECK_THAT(spec.target_kappa2(), WithinAbs(2.0, 1e-15));
}

TEST_CASE("sampled CSV round trip", "[synth]") {
    HelixSpec spec;
    spec.samples = 32;
    const HelixCurve h = integrate(spec);
    const std::string csv = format_sampled_csv(h.curve);
    const SampledCurve back = parse_sampled_csv(csv, 1, std::nullopt);
    CHECK(back.shape == spec.shape);
    REQUIRE(back.t.size() == h.curve.t.size());
    REQUIRE(back.frames.size() == 2);
    for (std::size_t j = 0; j < back.t.size(); ++j) {
        CHECK(back.t[j] == h.curve.t[j]);
        CHECK(back.points[j] == h.curve.points[j]);
        CHECK(back.tangents[j] == h.curve.tangents[j]);
        CHECK(back.frames[1][j] == h.curve.frames[1][j]);
    }
    // dimension 4 is ambiguous only without m or s
    CHECK(parse_sampled_csv(csv, std::nullopt, 2).shape == spec.shape);
    CHECK_THROWS_AS(parse_sampled_csv(csv, 2, std::nullopt), Error);
    CHECK_THROWS_AS(parse_sampled_csv("t,c1\n0,1\n", std::nullopt, std::nullopt), Error);
}
