#pragma once

// Command-level drivers shared by the C API and the CLI. Every driver
// returns a JSON report with stable key order and no timestamps, so equal
// inputs give byte-identical output.

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slant/ambient.hpp"
#include "slant/classify.hpp"
#include "slant/curve.hpp"
#include "slant/sampling.hpp"
#include "slant/synth.hpp"

namespace slant {

using Json = nlohmann::ordered_json;

enum class Verdict { Pass, Fail, Inconsistent };
std::string verdict_name(Verdict v);

/// Either a symbolic curve or a sampled one.
struct CurveSource {
    std::optional<CurveDef> symbolic;
    std::optional<SampledCurve> sampled;
    std::string origin;  // file path or bundled name, for the report

    const Shape& shape() const;
    std::string label() const;
};

struct RunOptions {
    Tolerances tol;
    std::optional<Grid> grid;  // symbolic curves only; default is the file range with n = 512
    std::uint64_t seed = kDefaultSeed;
    int axiom_samples = 200;
    double tensor_tol = 1e-9;
    double connection_tol = 1e-7;
};

inline constexpr int kDefaultGridPoints = 512;
inline constexpr int kMinAnalysisPoints = 16;

struct CommandResult {
    Json report;
    Verdict verdict = Verdict::Pass;
    std::string csv;  // empty when the command has no tabular output
};

/// Everything the analysis commands derive from a curve. The Frenet data is
/// absent when the curve is not unit speed.
struct Analysis {
    CurveSamples samples;
    SpeedReport speed;
    ContactReport contact;
    std::optional<FrenetApparatus> frenet;
    std::optional<MeanCurvatureOps> formula;
    std::optional<MeanCurvatureOps> direct;
    std::vector<std::string> diagnostics;
    bool sampled = false;

    bool consistent() const { return speed.unit_speed && !contact.bound_violation; }
};

Analysis analyze_curve(const CurveSource& source, const RunOptions& opts);

CommandResult run_axioms(const Shape& shape, const RunOptions& opts);
CommandResult run_analyze(const CurveSource& source, const RunOptions& opts);
CommandResult run_classify(const CurveSource& source, ClassTarget target, const RunOptions& opts);
CommandResult run_synth(const HelixSpec& spec, const RunOptions& opts);
CommandResult run_example(int which, const RunOptions& opts);

/// CSV with header t,c1..cn,E1_1..E1_n[,E2_..,E3_..]. The shape comes from
/// m and/or s; with neither, m = 1.
SampledCurve parse_sampled_csv(std::string_view text, std::optional<int> m, std::optional<int> s);
std::string format_sampled_csv(const SampledCurve& curve);

}  // namespace slant
