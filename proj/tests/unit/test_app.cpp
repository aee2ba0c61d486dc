/*
   Copyright 2026 The fpclab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <unistd.h>

#include "app/config.hpp"
#include "app/csv.hpp"
#include "app/run.hpp"
#include "app/svg.hpp"
#include "common/errors.hpp"

using namespace fpclab;
using namespace fpclab::app;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct TempDir {
    TempDir() : path(fs::temp_directory_path() / ("fpclab_test_" + std::to_string(::getpid()))) {
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
    fs::path path;
};

}  // namespace

TEST_SUITE("app") {

TEST_CASE("defaults") {
    const RunConfig c = parse_config(std::string("{}"));
    CHECK(c.command == Command::Analytic);
    CHECK(c.params.alpha == 3.0);
    CHECK(c.params.snr() == doctest::Approx(100.0));
    CHECK(c.s == 0.5);
    CHECK(c.fading.kind() == fading::FadingKind::Rayleigh);
    CHECK(c.sim.n_trials == 200000);
    CHECK(c.epsilon == 0.05);
    CHECK_FALSE(c.spectral_efficiency.has_value());
    CHECK(c.s_grid.size() == 101);
    CHECK_FALSE(c.sweep_values.empty());
}

TEST_CASE("parsing fields") {
    const RunConfig c = parse_config(std::string(R"({
        "command": "simulate",
        "params": {"alpha": 4, "snr_db": 10, "lambda": 1e-5},
        "policy": {"s": 0.25, "fading": {"clamped_rayleigh": {"h_min": 0.01}}},
        "sim": {"n_trials": 1000, "seed": 42},
        "spectral_efficiency": 2,
        "objective": {"method": "lower_bound", "s_range": [0, 0.9], "grid_step": 0.05},
        "sweep": {"kind": "vs_lambda", "values": [1e-5, 1e-4], "simulate": false},
        "output": {"dir": "out", "svg": true}
    })"));
    CHECK(c.command == Command::Simulate);
    CHECK(c.params.alpha == 4.0);
    CHECK(c.params.snr() == doctest::Approx(10.0));
    CHECK(c.fading.kind() == fading::FadingKind::ClampedRayleigh);
    CHECK(c.fading.h_min() == 0.01);
    CHECK(c.sim.seed == 42);
    CHECK(*c.spectral_efficiency == 2.0);
    CHECK(c.objective.method == optimize::Method::LowerBound);
    CHECK(c.objective_given);
    CHECK(c.objective.s_hi == 0.9);
    CHECK(c.sweep_kind == optimize::SweepKind::VsLambda);
    CHECK(c.sweep_values.size() == 2);
    CHECK_FALSE(c.sweep_simulate);
    CHECK(c.out_dir == "out");
    CHECK(c.svg);
}

TEST_CASE("rejected configs name the field") {
    auto fails_with = [](const std::string& text, const std::string& fragment) {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return std::string(e.what()).find(fragment) != std::string::npos;
        }
        return false;
    };
    CHECK(fails_with(R"({"params": {"alpha": 1.5}})", "alpha must exceed 2"));
    CHECK(fails_with(R"({"params": {"eta": 1e-5, "snr_db": 20}})", "params"));
    CHECK(fails_with(R"({"params": {"alhpa": 3}})", "params.alhpa"));
    CHECK(fails_with(R"({"bogus": 1})", "bogus"));
    CHECK(fails_with(R"({"params": {"beta": "one"}})", "params.beta"));
    CHECK(fails_with(R"({"command": "simulate", "policy": {"s": 1}})", "clamped_rayleigh"));
    CHECK(fails_with(R"({"policy": {"s": 1.5}})", "policy.s"));
    CHECK(fails_with(R"({"policy": {"fading": "nakagami"}})", "fading"));
    CHECK(fails_with(R"({"epsilon": 1.5})", "epsilon"));
    CHECK(fails_with(R"({"command": "reproduce", "reproduce": {"target": "fig11"}})", "reproduce.target"));
    CHECK(fails_with(R"({"objective": {"s_range": [0.5, 0.1]}})", "objective"));
    CHECK(fails_with("{\n  \"params\": {,}\n}", "line 2"));
    CHECK(fails_with(R"({"sim": {"n_trials": -3}})", "sim.n_trials"));
    // s = 1 is allowed with a clamped floor
    CHECK_NOTHROW(parse_config(std::string(R"({"policy": {"s": 1, "fading": "clamped_rayleigh"}})")));
}

TEST_CASE("canonical json round-trips") {
    const RunConfig c = parse_config(std::string(
        R"({"command": "sweep", "params": {"snr_db": 15}, "policy": {"fading": "none"}, "sweep": {"kind": "vs_beta"}})"));
    const std::string once = to_json(c);
    const std::string twice = to_json(parse_config(once));
    CHECK(once == twice);
    CHECK(once.find("\"eta\"") != std::string::npos);
    CHECK(once.find("snr_db") == std::string::npos);
}

TEST_CASE("csv formatting") {
    CHECK(csv_field("plain") == "plain");
    CHECK(csv_field("a,b") == "\"a,b\"");
    CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(csv_field("two\nlines") == "\"two\nlines\"");
    CHECK(csv_number(0.5) == "0.5");
    CHECK(csv_number(1e-5) == "1e-05");
    CHECK(csv_number(1.0 / 3.0) == "0.333333333333");
    CHECK(csv_number(std::numeric_limits<double>::quiet_NaN()).empty());

    CsvTable t({"x", "note"});
    t.add_row({"1", "a,b"});
    CHECK(t.size() == 1);
    const std::string out = t.render("{\"k\":1}");
    CHECK(out == "# fpclab csv schema_version=1\r\n# config: {\"k\":1}\r\nx,note\r\n1,\"a,b\"\r\n");
    t.add_row({"2"});
    CHECK(t.render("{}").ends_with("\r\n2,\r\n"));
}

TEST_CASE("svg output") {
    const std::string svg = render_svg({"q vs s", "s", "q", false, true},
                                       {{"jensen", {0.0, 0.5, 1.0}, {0.08, 0.05, 0.07}}});
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("jensen") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("analytic run writes a reproducible table") {
    TempDir dir;
    RunConfig c = parse_config(std::string("{}"));
    c.out_dir = dir.path.string();
    c.svg = true;
    const auto outcome = run(c);
    REQUIRE_FALSE(outcome.files.empty());
    const std::string first = slurp(outcome.files.front());
    CHECK(first.find("q_lb") != std::string::npos);
    CHECK(first.find("0.0521351210448") != std::string::npos);
    CHECK(outcome.warnings == 0);
    CHECK(run(c).files.front() == outcome.files.front());
    CHECK(slurp(outcome.files.front()) == first);
}

TEST_CASE("loss-curve and reproduce targets") {
    TempDir dir;
    RunConfig c = parse_config(std::string(R"({"command": "loss-curve"})"));
    c.out_dir = dir.path.string();
    const auto lc = run(c);
    CHECK(lc.summary.find("loss") != std::string::npos);
    CHECK(fs::exists(lc.files.front()));

    c = parse_config(std::string(R"({"command": "reproduce", "reproduce": {"target": "fig7"}})"));
    const RunConfig eff = effective_config(c);
    CHECK(eff.objective.method == optimize::Method::Simulated);
    c = parse_config(std::string(
        R"({"command": "reproduce", "reproduce": {"target": "fig7"}, "objective": {"method": "jensen"}})"));
    CHECK(effective_config(c).objective.method == optimize::Method::Jensen);

    c = parse_config(std::string(R"({"command": "reproduce", "reproduce": {"target": "fig1"}})"));
    c.out_dir = dir.path.string();
    const auto fig1 = run(c);
    CHECK(fs::path(fig1.files.front()).filename() == "fig1.csv");
}

}  // TEST_SUITE
