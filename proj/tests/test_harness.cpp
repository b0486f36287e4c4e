#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <vector>

#include "tdflow/error.hpp"
#include "tdflow/harness.hpp"

using namespace tdflow;

namespace {

constexpr double kPi = std::numbers::pi;

std::string emitted(const ErrorTable& t, TableFormat f) {
    std::ostringstream os;
    emit(t, f, os);
    return os.str();
}

ErrorTable sample_table() {
    ErrorTable t;
    t.experiment = "graph-converge";
    t.kernel = "paper";
    t.norm = "L2";
    t.series = "half-sine";
    t.metadata["T"] = "0.025";
    t.add(32, 0.004);
    t.add(64, 0.001);
    return t;
}

}  // namespace

TEST_CASE("discrete L2 norm") {
    const auto s = GraphInterface::sample(1.0, 1024, [](double x) { return std::sin(2 * kPi * x); });
    const auto zero = GraphInterface::sample(1.0, 1024, [](double) { return 0.0; });
    CHECK(l2_error(s, s) == 0.0);
    CHECK(l2_error(s, zero) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-6));
    const auto shifted = GraphInterface::sample(1.0, 64, [](double x) { return std::sin(2 * kPi * x) + 0.3; });
    CHECK(l2_error(shifted, resample(s, 64)) == doctest::Approx(0.3).epsilon(1e-12));
    // mixed node counts compare on the finer grid
    CHECK(l2_error(resample(s, 64), s) < 1e-12);
    CHECK_THROWS_AS((void)l2_error(s, GraphInterface::sample(2.0, 16, [](double) { return 0.0; })), Error);
}

TEST_CASE("observed and fitted orders") {
    ErrorTable t;
    for (double n : {32.0, 64.0, 128.0, 256.0, 512.0}) t.add(n, 3.7 * std::pow(n, -2.25));
    CHECK(!t.rows.front().order);
    for (std::size_t k = 1; k < t.rows.size(); ++k) CHECK(std::abs(*t.rows[k].order - 2.25) < 1e-10);
    CHECK(std::abs(*t.fitted_order() - 2.25) < 1e-10);

    ErrorTable uneven;
    uneven.add(10, 1e-2);
    uneven.add(30, 1e-2 / 27.0);
    CHECK(*uneven.rows[1].order == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(!ErrorTable{}.fitted_order());
}

TEST_CASE("CSV emission") {
    CHECK(emitted(ErrorTable{}, TableFormat::Csv) == "n_steps,error,order\n");
    CHECK(emitted(sample_table(), TableFormat::Csv) == "n_steps,error,order\n32,0.0040000000000000001,\n64,0.001,2\n");

    ErrorTable a = sample_table();
    ErrorTable b = sample_table();
    b.series = "exp-cos";
    const std::vector<ErrorTable> both{a, b};
    std::ostringstream os;
    emit(std::span<const ErrorTable>(both), TableFormat::Csv, os);
    CHECK(os.str() ==
          "series,n_steps,error,order\n"
          "half-sine,32,0.0040000000000000001,\nhalf-sine,64,0.001,2\n"
          "exp-cos,32,0.0040000000000000001,\nexp-cos,64,0.001,2\n");
}

TEST_CASE("JSON emission round trips") {
    const ErrorTable t = sample_table();
    const std::string text = emitted(t, TableFormat::Json);
    CHECK(text.find("\"fitted_order\": 2.0") != std::string::npos);
    CHECK(text.find("\"order\": null") != std::string::npos);
    CHECK(table_from_json(text) == t);
    CHECK(emitted(table_from_json(text), TableFormat::Json) == text);
    CHECK_THROWS_AS((void)table_from_json("{\"rows\": 3}"), Error);
}

TEST_CASE("emission to a file") {
    const auto path = (std::filesystem::temp_directory_path() / "tdflow_table.csv").string();
    const std::vector<ErrorTable> one{sample_table()};
    emit(std::span<const ErrorTable>(one), TableFormat::Csv, path);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == emitted(sample_table(), TableFormat::Csv));
    std::filesystem::remove(path);
    CHECK_THROWS_AS(emit(std::span<const ErrorTable>(one), TableFormat::Csv, "/nonexistent/dir/x.csv"), Error);
    CHECK_THROWS_AS((void)parse_format("xml"), Error);
}

TEST_CASE("config parsing") {
    const ExperimentConfig c = parse_config_string(
        "# graph study\n"
        "schema = 1\n"
        "experiment = graph-converge\n"
        "kernel = gaussian   # baseline\n"
        "initial = exp-cos\n"
        "T = 0.01\n"
        "steps = 8, 16 32\n"
        "effective_time = false\n"
        "seed = 42\n");
    CHECK(c.kind == ExperimentKind::GraphConverge);
    CHECK(c.kernel == "gaussian");
    CHECK(c.initial == "exp-cos");
    CHECK(c.T == 0.01);
    CHECK(c.steps == std::vector<std::size_t>{8, 16, 32});
    CHECK(!c.effective_time);
    CHECK(c.seed == 42);

    auto config_error = [](const std::string& text) {
        try {
            (void)parse_config_string(text);
        } catch (const Error& e) {
            return e.kind() == ErrorKind::Config;
        }
        return false;
    };
    CHECK(config_error("kernel = paper\n"));                      // no schema
    CHECK(config_error("schema = 2\n"));                          // future schema
    CHECK(config_error("schema = 1\nkernal = paper\n"));          // typo
    CHECK(config_error("schema = 1\nsteps = 32 32\n"));           // not increasing
    CHECK(config_error("schema = 1\nsteps = 64 32\n"));
    CHECK(config_error("schema = 1\nT = 0\n"));
    CHECK(config_error("schema = 1\nT = abc\n"));
    CHECK(config_error("schema = 1\nformat = xml\n"));
    CHECK(config_error("schema = 1\nexperiment = everything\n"));
    CHECK(config_error("schema = 1\njust words\n"));
    CHECK(config_error("schema = 1\nbenchmark_safety = 0.6\n"));
    CHECK_THROWS_AS((void)load_config("/nonexistent/config.txt"), Error);
}

TEST_CASE("fingerprints isolate the kernel choice") {
    ExperimentConfig a;
    ExperimentConfig b = a;
    b.kernel = "gaussian";
    CHECK(a.fingerprint(false) == b.fingerprint(false));
    CHECK(a.fingerprint() != b.fingerprint());
    CHECK(a.fingerprint().size() == 16);
    b.steps = {32, 64};
    CHECK(a.fingerprint(false) != b.fingerprint(false));
    CHECK(a.fingerprint() == ExperimentConfig{}.fingerprint());
}

TEST_CASE("named kernels and initial conditions") {
    CHECK(resolve_kernel("gaussian") == KernelSpec::gaussian());
    CHECK(resolve_kernel("paper") == solve_special_kernel());
    CHECK_THROWS_AS((void)resolve_kernel("/nonexistent/kernel.txt"), Error);

    const GraphInterface h = resolve_initial("half-sine", 8);
    CHECK(h.period() == 1.0);
    CHECK(h[2] == doctest::Approx(0.5));
    const GraphInterface e = resolve_initial("exp-cos", 8);
    CHECK(e.period() == 2.0);
    CHECK(e[0] == doctest::Approx(std::exp(1.0)));
}

TEST_CASE("circle LTE experiment") {
    ExperimentConfig c;
    c.kernel = "paper";
    const auto tables = run_circle_lte(c);
    REQUIRE(tables.size() == 3);
    for (const ErrorTable& t : tables) {
        CHECK(t.rows.size() == 8);
        CHECK(t.resolution_label == "inv_t");
        CHECK(*t.fitted_order() >= 2.8);
        CHECK(*t.fitted_order() <= 3.2);
    }
    // halving t at r0 = 2 mid sweep divides the error by about 8
    const auto& rows = tables[1].rows;
    CHECK(rows[3].error / rows[4].error == doctest::Approx(8.0).epsilon(0.05));
}

TEST_CASE("graph convergence experiment, small and deterministic") {
    ExperimentConfig c;
    c.kernel = "paper";
    c.nodes = 64;
    c.benchmark_nodes = 512;
    c.steps = {8, 16, 32};
    const ErrorTable t = run_graph_convergence(c);
    REQUIRE(t.rows.size() == 3);
    CHECK(*t.rows[2].order > 1.7);
    CHECK(t.metadata.at("time_mapping") == "effective");
    CHECK(emitted(run_graph_convergence(c), TableFormat::Json) == emitted(t, TableFormat::Json));

    ExperimentConfig raw = c;
    raw.effective_time = false;
    raw.steps = {16, 32, 64};  // raw steps are step_ratio times longer, so the asymptotics start later
    CHECK(benchmark_horizon(raw) == doctest::Approx(c.T * solve_special_kernel().step_ratio()));
    const ErrorTable r = run_graph_convergence(raw);
    CHECK(r.metadata.at("time_mapping") == "raw");
    CHECK(*r.rows[2].order > 1.8);

    c.kernel = "gaussian";
    const ErrorTable g = run_graph_convergence(c);
    CHECK(*g.rows[2].order == doctest::Approx(1.0).epsilon(0.1));
    CHECK(g.metadata.at("config") == t.metadata.at("config"));
}

TEST_CASE("grid run records the area history") {
    ExperimentConfig c;
    c.kind = ExperimentKind::GridRun;
    c.grid_n = 128;
    c.steps = {5};
    c.T = 0.05;
    const GridRunResult r = run_grid(c, [](const std::string&) {});
    REQUIRE(r.areas.rows.size() == 6);
    CHECK(r.areas.rows[0].error == doctest::Approx(kPi).epsilon(0.01));
    for (std::size_t k = 1; k < r.areas.rows.size(); ++k) CHECK(r.areas.rows[k].error < r.areas.rows[k - 1].error);
    CHECK(r.areas.rows.back().error == doctest::Approx(kPi * (1.0 - 2.0 * c.T)).epsilon(0.03));

    c.grid_shape = "two-disks";
    c.grid_radius = 0.5;
    const GridRunResult two = run_grid(c, [](const std::string&) {});
    CHECK(two.final_field.count() > 0);
    c.grid_shape = "/nonexistent/shape.pgm";
    CHECK_THROWS_AS((void)run_grid(c, [](const std::string&) {}), Error);
}
