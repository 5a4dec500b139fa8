#include <catch_amalgamated.hpp>
#include <json.hpp>

#include <cstring>
#include <string>

#include "slant/slant.h"

namespace {

struct Str {
    char* p = nullptr;
    ~Str() { slant_string_free(p); }
    nlohmann::json json() const { return nlohmann::json::parse(p); }
};

struct CurveHandle {
    slant_curve* p = nullptr;
    ~CurveHandle() { slant_curve_free(p); }
};

struct OptionsHandle {
    slant_options* p = slant_options_new();
    ~OptionsHandle() { slant_options_free(p); }
};

}  // namespace

TEST_CASE("version and status names", "[capi]") {
    CHECK(std::strlen(slant_version()) > 0);
    CHECK(std::string(slant_status_name(SLANT_OK)) == "ok");
    CHECK(std::string(slant_status_name(SLANT_ERR_PARSE)) == "parse error");
    CHECK(std::string(slant_status_name(static_cast<slant_status>(42))) == "unknown status");
}

TEST_CASE("null arguments are usage errors", "[capi]") {
    CHECK(slant_curve_parse(nullptr, nullptr) == SLANT_ERR_USAGE);
    CHECK(std::string(slant_last_error()).find("NULL") != std::string::npos);
    CHECK(slant_analyze(nullptr, nullptr, nullptr, nullptr, nullptr) == SLANT_ERR_USAGE);
    CHECK(slant_options_set_seed(nullptr, 1) == SLANT_ERR_USAGE);
    CHECK(slant_curve_shape(nullptr, nullptr, nullptr) == SLANT_ERR_USAGE);
    slant_curve_free(nullptr);
    slant_options_free(nullptr);
    slant_string_free(nullptr);
}

TEST_CASE("errors map to status codes and clear on success", "[capi]") {
    CurveHandle c;
    CHECK(slant_curve_parse("m = 1\ns = 1\nc1 = sin(\nc2 = 0\nc3 = 0\n", &c.p) == SLANT_ERR_PARSE);
    CHECK(c.p == nullptr);
    CHECK(std::string(slant_last_error()).find("position") != std::string::npos);
    CHECK(slant_curve_load("/nonexistent/x.curve", &c.p) == SLANT_ERR_IO);
    CHECK(slant_curve_bundled("example2", &c.p) == SLANT_OK);
    CHECK(std::string(slant_last_error()).empty());

    int m = 0, s = 0;
    CHECK(slant_curve_shape(c.p, &m, &s) == SLANT_OK);
    CHECK(m == 1);
    CHECK(s == 4);

    CHECK(slant_classify(c.p, "sideways", nullptr, nullptr, nullptr) == SLANT_ERR_USAGE);
    CHECK(slant_axioms(0, 1, nullptr, nullptr, nullptr) == SLANT_ERR_USAGE);
    CHECK(slant_example(3, nullptr, nullptr, nullptr) == SLANT_ERR_USAGE);
    CHECK(slant_synth(1, 1, 2, 1.5707963267948966, 1.0, nullptr, nullptr, nullptr, nullptr) == SLANT_ERR_USAGE);
}

TEST_CASE("options validate their input", "[capi]") {
    OptionsHandle o;
    REQUIRE(o.p);
    CHECK(slant_options_set_grid(o.p, 0, 1, 4) == SLANT_ERR_USAGE);
    CHECK(slant_options_set_grid(o.p, 1, 0, 64) == SLANT_ERR_USAGE);
    CHECK(slant_options_set_grid(o.p, 0, 1, 64) == SLANT_OK);
    CHECK(slant_options_set_tolerance(o.p, "class", 1e-6) == SLANT_OK);
    CHECK(slant_options_set_tolerance(o.p, "class", -1) == SLANT_ERR_USAGE);
    CHECK(slant_options_set_tolerance(o.p, "bogus", 1) == SLANT_ERR_USAGE);
    CHECK(slant_options_set_axiom_samples(o.p, 0) == SLANT_ERR_USAGE);
}

TEST_CASE("axioms report", "[capi]") {
    OptionsHandle o;
    slant_options_set_axiom_samples(o.p, 20);
    Str json;
    slant_verdict v = SLANT_VERDICT_FAIL;
    REQUIRE(slant_axioms(2, 2, o.p, &json.p, &v) == SLANT_OK);
    CHECK(v == SLANT_VERDICT_PASS);
    const auto j = json.json();
    CHECK(j["verdict"] == "pass");
    CHECK(j["samples"] == 20);
}

TEST_CASE("classify through the C API", "[capi]") {
    CurveHandle c;
    REQUIRE(slant_curve_bundled("example1_corrected", &c.p) == SLANT_OK);
    OptionsHandle o;
    REQUIRE(slant_options_set_grid(o.p, 0, 6.283185307179586, 128) == SLANT_OK);
    Str json;
    slant_verdict v = SLANT_VERDICT_FAIL;
    REQUIRE(slant_classify(c.p, "parallel-tangent", o.p, &json.p, &v) == SLANT_OK);
    CHECK(v == SLANT_VERDICT_PASS);
    const auto j = json.json();
    CHECK(j["granted"] == true);
    CHECK(std::abs(j["lambda_summary"]["min"].get<double>() - 0.5) < 1e-6);

    Str denied;
    REQUIRE(slant_classify(c.p, "proper-normal", o.p, &denied.p, &v) == SLANT_OK);
    CHECK(v == SLANT_VERDICT_FAIL);
}

TEST_CASE("inconsistent curves get their own verdict", "[capi]") {
    CurveHandle c;
    REQUIRE(slant_curve_bundled("example1", &c.p) == SLANT_OK);
    Str json, csv;
    slant_verdict v = SLANT_VERDICT_PASS;
    REQUIRE(slant_analyze(c.p, nullptr, &json.p, &csv.p, &v) == SLANT_OK);
    CHECK(v == SLANT_VERDICT_INCONSISTENT);
    CHECK(json.json()["verdict"] == "inconsistent");
}

TEST_CASE("synth CSV feeds back into the sampled loader", "[capi]") {
    OptionsHandle o;
    REQUIRE(slant_options_set_grid(o.p, 0, 3, 256) == SLANT_OK);
    Str json, csv;
    slant_verdict v = SLANT_VERDICT_FAIL;
    REQUIRE(slant_synth(2, 1, 2, 0, 1.0, o.p, &json.p, &csv.p, &v) == SLANT_OK);
    CHECK(v == SLANT_VERDICT_PASS);
    REQUIRE(csv.p);

    CurveHandle c;
    REQUIRE(slant_curve_parse_sampled(csv.p, 1, 0, &c.p) == SLANT_OK);
    Str out;
    REQUIRE(slant_classify(c.p, "parallel-normal", nullptr, &out.p, &v) == SLANT_OK);
    CHECK(v == SLANT_VERDICT_PASS);
    CHECK(std::abs(out.json()["lambda_summary"]["min"].get<double>() - 1.0) < 1e-4);

    // sampled curves carry their own grid
    CHECK(slant_classify(c.p, "parallel-normal", o.p, nullptr, nullptr) == SLANT_ERR_USAGE);
}

TEST_CASE("bundled names", "[capi]") {
    Str names;
    REQUIRE(slant_bundled_names(&names.p) == SLANT_OK);
    const std::string all = names.p;
    for (const char* n : {"example1", "example1_corrected", "example2", "geodesic_s2"})
        CHECK(all.find(std::string(n) + "\n") != std::string::npos);
}

TEST_CASE("reports are deterministic", "[capi]") {
    Str a, b;
    REQUIRE(slant_example(2, nullptr, &a.p, nullptr) == SLANT_OK);
    REQUIRE(slant_example(2, nullptr, &b.p, nullptr) == SLANT_OK);
    CHECK(std::string(a.p) == std::string(b.p));
}
