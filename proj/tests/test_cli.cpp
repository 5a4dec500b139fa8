#include <catch_amalgamated.hpp>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("slant_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

int run(const std::string& args) {
    const std::string cmd = std::string("\"") + SLANT_CLI + "\" " + args + " > \"" +
                            (workdir() / "stdout.txt").string() + "\" 2> \"" + (workdir() / "stderr.txt").string() +
                            "\"";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string curve(const char* name) { return std::string("\"") + SLANT_CURVES + "/" + name + "\""; }

nlohmann::json last_json() { return nlohmann::json::parse(slurp(workdir() / "stdout.txt")); }

}  // namespace

TEST_CASE("usage errors exit 1", "[cli]") {
    CHECK(run("") == 1);
    CHECK(run("frobnicate") == 1);
    CHECK(run("axioms --m 1") == 1);
    CHECK(run("axioms --m 0 --s 1") == 1);
    CHECK(run("analyze /nonexistent/thing.curve") == 1);
    CHECK(run("classify example2 --which sideways") == 1);
    CHECK(run("analyze example2 --grid 0:1") == 1);
    CHECK(run("synth --theorem 1 --theta 1.5707963") == 1);
    CHECK(slurp(workdir() / "stderr.txt").find("usage error") != std::string::npos);
    CHECK(run("example 3") == 1);
}

TEST_CASE("parse errors exit 1", "[cli]") {
    const fs::path bad = workdir() / "bad.curve";
    std::ofstream(bad) << "m = 1\ns = 1\nc1 = sin(t\nc2 = 0\nc3 = 0\n";
    CHECK(run("analyze \"" + bad.string() + "\"") == 1);
    CHECK(slurp(workdir() / "stderr.txt").find("parse error") != std::string::npos);
}

TEST_CASE("axioms pass", "[cli]") {
    CHECK(run("axioms --m 2 --s 2 --samples 50") == 0);
    CHECK(last_json()["verdict"] == "pass");
}

TEST_CASE("analyze writes JSON and CSV", "[cli]") {
    const fs::path out = workdir() / "a.json";
    const fs::path csv = workdir() / "a.csv";
    CHECK(run("analyze " + curve("example2.curve") + " --grid 0:0.8:64 --out \"" + out.string() + "\" --csv \"" +
              csv.string() + "\"") == 0);
    const auto j = nlohmann::json::parse(slurp(out));
    CHECK(j["verdict"] == "pass");
    const std::string table = slurp(csv);
    CHECK(table.rfind("t,c1,", 0) == 0);
    CHECK(std::count(table.begin(), table.end(), '\n') == 65);
}

TEST_CASE("curves inconsistent with the structure exit 2", "[cli]") {
    CHECK(run("analyze " + curve("example1.curve")) == 2);
    CHECK(last_json()["verdict"] == "inconsistent");
}

TEST_CASE("classify exits 0 whether or not the class is granted", "[cli]") {
    CHECK(run("classify example2 --which proper-normal") == 0);
    CHECK(last_json()["granted"] == true);
    CHECK(run("classify example2 --which parallel-tangent") == 0);
    CHECK(last_json()["granted"] == false);
    CHECK(last_json()["class"] == "none");
}

TEST_CASE("synth output round-trips through the sampled loader", "[cli]") {
    const fs::path csv = workdir() / "helix.csv";
    CHECK(run("synth --theorem 1 --s 2 --grid 0:6.283185307179586:512 --csv \"" + csv.string() + "\"") == 0);
    CHECK(last_json()["verdict"] == "pass");
    CHECK(run("classify \"" + csv.string() + "\" --m 1 --which parallel-tangent") == 0);
    const auto j = last_json();
    CHECK(j["granted"] == true);
    CHECK(std::abs(j["lambda_summary"]["min"].get<double>() - 0.5) < 1e-4);
}

TEST_CASE("examples pass", "[cli]") {
    CHECK(run("example 1") == 0);
    CHECK(last_json()["printed"]["status"] == "discrepancy vs. published values");
    CHECK(run("example 2") == 0);
    CHECK(last_json()["verdict"] == "pass");
}
