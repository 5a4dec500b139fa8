#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "slant/curve.hpp"
#include "slant/error.hpp"

namespace slant {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void line_error(int line, const std::string& what) {
    fail(ErrorKind::Parse, "curve file line " + std::to_string(line) + ": " + what);
}

int parse_int(std::string_view v, int line, std::string_view key) {
    int out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        line_error(line, "'" + std::string(key) + "' must be an integer");
    return out;
}

}  // namespace

CurveDef parse_curve(std::string_view text) {
    std::optional<int> m, s;
    std::optional<double> t_min, t_max;
    std::string label;
    std::map<int, std::string> comps;
    std::map<int, int> comp_line;

    std::size_t offset = 0;
    int line_no = 0;
    while (offset <= text.size()) {
        const std::size_t nl = text.find('\n', offset);
        const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
        std::string_view line = text.substr(offset, end - offset);
        ++line_no;
        offset = end + 1;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (trim(line).empty()) {
            if (nl == std::string_view::npos) break;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) line_error(line_no, "expected 'key = value'");
        const std::string_view key = trim(line.substr(0, eq));
        std::string_view value = line.substr(eq + 1);
        value = trim(value);
        if (value.empty()) line_error(line_no, "empty value for '" + std::string(key) + "'");

        if (key == "m") {
            m = parse_int(value, line_no, key);
        } else if (key == "s") {
            s = parse_int(value, line_no, key);
        } else if (key == "label") {
            label = std::string(value);
        } else if (key == "t_min" || key == "t_max") {
            const ExprPtr e = parse_expression(value, "t");
            double v = 0.0;
            try {
                v = evaluate(*e, 0.0);
            } catch (const Error&) {
                line_error(line_no, "'" + std::string(key) + "' must be a constant expression");
            }
            if (differentiate(e)->kind != NodeKind::Constant || differentiate(e)->value != 0.0)
                line_error(line_no, "'" + std::string(key) + "' must not depend on t");
            (key == "t_min" ? t_min : t_max) = v;
        } else if (key.size() > 1 && key[0] == 'c') {
            const int idx = parse_int(key.substr(1), line_no, key);
            if (idx < 1) line_error(line_no, "component indices start at c1");
            if (comps.count(idx)) line_error(line_no, "duplicate component '" + std::string(key) + "'");
            comps[idx] = std::string(value);
            comp_line[idx] = line_no;
        } else {
            line_error(line_no, "unknown key '" + std::string(key) + "'");
        }
        if (nl == std::string_view::npos) break;
    }

    if (!m || !s) fail(ErrorKind::Parse, "curve file must declare both m and s");
    CurveDef curve;
    curve.shape = Shape{*m, *s};
    try {
        curve.shape.validate();
    } catch (const Error& e) {
        fail(ErrorKind::Parse, std::string("curve file: ") + e.what());
    }
    const int n = curve.shape.dim();
    if (static_cast<int>(comps.size()) != n || comps.rbegin()->first != n)
        fail(ErrorKind::Parse, "curve file must define exactly c1..c" + std::to_string(n) + " for m = " +
                                   std::to_string(*m) + ", s = " + std::to_string(*s));
    for (const auto& [idx, entry] : comps) {
        try {
            curve.components.push_back(parse_expression(entry, "t"));
        } catch (const ParseError& e) {
            line_error(comp_line[idx], "c" + std::to_string(idx) + ": " + e.what());
        }
    }
    curve.label = label;
    curve.t_min = t_min.value_or(0.0);
    curve.t_max = t_max.value_or(1.0);
    if (!(curve.t_max > curve.t_min)) fail(ErrorKind::Parse, "curve file: t_max must exceed t_min");
    return curve;
}

CurveDef load_curve(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open curve file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_curve(buf.str());
}

std::string format_curve(const CurveDef& curve) {
    std::ostringstream out;
    out.precision(17);
    if (!curve.label.empty()) out << "label = " << curve.label << '\n';
    out << "m = " << curve.shape.m << '\n' << "s = " << curve.shape.s << '\n';
    out << "t_min = " << curve.t_min << '\n' << "t_max = " << curve.t_max << '\n';
    for (std::size_t i = 0; i < curve.components.size(); ++i)
        out << 'c' << (i + 1) << " = " << to_string(*curve.components[i]) << '\n';
    return out.str();
}

CurveDef bundled_curve(const std::string& name) {
    // "example1-corrected.curve" and "example1_corrected" name the same asset.
    std::string key = std::filesystem::path(name).filename().string();
    if (key.size() > 6 && key.ends_with(".curve")) key.resize(key.size() - 6);
    std::replace(key.begin(), key.end(), '-', '_');
    const auto& all = bundled_curves();
    auto it = all.find(key);
    if (it == all.end()) fail(ErrorKind::Usage, "no bundled curve named '" + name + "'");
    return parse_curve(it->second);
}

CurveDerivatives::CurveDerivatives(const CurveDef& curve, int order) : order_(order) {
    if (order < 0 || order > kMaxJetOrder)
        fail(ErrorKind::Usage, "derivative order " + std::to_string(order) + " outside [0, " +
                                   std::to_string(kMaxJetOrder) + "]");
    for (const auto& c : curve.components) {
        std::vector<ExprPtr> row{c};
        for (int k = 1; k <= order; ++k) row.push_back(differentiate(row.back()));
        flat_.insert(flat_.end(), row.begin(), row.end());
        table_.push_back(std::move(row));
    }
}

std::vector<Jet> eval_jet(const CurveDerivatives& derivs, double t, double quad_tol, IntegralCache* cache) {
    std::vector<Jet> out;
    for (std::size_t i = 0; i < derivs.all().size() / (derivs.order() + 1); ++i) {
        Jet j;
        for (int k = 0; k <= derivs.order(); ++k)
            j.values.push_back(evaluate(*derivs.at(static_cast<int>(i), k), t, quad_tol, cache));
        out.push_back(std::move(j));
    }
    return out;
}

std::vector<Jet> eval_jet(const CurveDef& curve, double t, int order, double quad_tol) {
    if (order < 1 || order > kMaxJetOrder)
        fail(ErrorKind::Usage, "jet order " + std::to_string(order) + " outside [1, " +
                                   std::to_string(kMaxJetOrder) + "]");
    return eval_jet(CurveDerivatives(curve, order), t, quad_tol);
}

}  // namespace slant
