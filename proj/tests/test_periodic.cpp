#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <sstream>

#include "tdflow/error.hpp"
#include "tdflow/graph.hpp"
#include "tdflow/grid.hpp"

using namespace tdflow;

namespace {
constexpr double kPi = std::numbers::pi;

double max_dev(const GraphInterface& f, auto&& exact) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i] - exact(f.node(i))));
    return m;
}
}  // namespace

TEST_CASE("graph interface validation") {
    CHECK_THROWS_AS(GraphInterface(1.0, {0.0, 0.0, 0.0}), Error);
    CHECK_THROWS_AS(GraphInterface(0.0, {0.0, 0.0, 0.0, 0.0}), Error);
    CHECK_THROWS_AS(GraphInterface(1.0, {0.0, NAN, 0.0, 0.0}), Error);
    const auto f = GraphInterface::sample(2.0, 8, [](double x) { return x; });
    CHECK(f.node(3) == 0.75);
    CHECK(f[4] == 1.0);
    CHECK(f.spacing() == 0.25);
}

TEST_CASE("trigonometric interpolation is exact on band-limited data") {
    auto fn = [](double x) { return 0.3 + std::sin(2 * kPi * x) - 0.25 * std::cos(6 * kPi * x); };
    const auto f = GraphInterface::sample(1.0, 16, fn);
    const TrigInterpolant p(f);
    for (double x : {0.013, 0.41, 0.777, 1.3}) {
        CHECK(p.eval(x) == doctest::Approx(fn(x)).epsilon(1e-13));
        const double d1 = 2 * kPi * std::cos(2 * kPi * x) + 0.25 * 6 * kPi * std::sin(6 * kPi * x);
        CHECK(p.eval(x, 1) == doctest::Approx(d1).epsilon(1e-12));
    }
    const auto d2 = p.derivative_at_nodes(2);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const double x = f.node(i);
        const double exact = -4 * kPi * kPi * std::sin(2 * kPi * x) + 0.25 * 36 * kPi * kPi * std::cos(6 * kPi * x);
        CHECK(d2[i] == doctest::Approx(exact).epsilon(1e-11).scale(100.0));
    }
}

TEST_CASE("Nyquist mode is split so the interpolant stays real and through the nodes") {
    std::vector<double> alt(8);
    for (std::size_t i = 0; i < 8; ++i) alt[i] = (i % 2 == 0) ? 1.0 : -1.0;
    const GraphInterface f(1.0, alt);
    const TrigInterpolant p(f);
    for (std::size_t i = 0; i < 8; ++i) CHECK(p.eval(f.node(i)) == doctest::Approx(alt[i]).epsilon(1e-14));
    CHECK(std::abs(p.eval(1.0 / 16.0)) < 1e-14);  // cos(8 pi x) vanishes half way
}

TEST_CASE("resample") {
    auto s = [](double x) { return std::sin(2 * kPi * x); };
    const auto f64 = GraphInterface::sample(1.0, 64, s);

    CHECK(resample(f64, 64) == f64);

    const auto up = resample(f64, 128);
    CHECK(up.size() == 128);
    CHECK(max_dev(up, s) < 1e-12);

    const auto down = resample(f64, 16);
    CHECK(max_dev(down, s) == 0.0);  // decimation keeps the shared nodes bit for bit

    const auto odd = resample(f64, 100);
    CHECK(max_dev(odd, s) < 1e-12);

    const auto c = resample(GraphInterface::sample(3.0, 10, [](double) { return 2.5; }), 37);
    CHECK(max_dev(c, [](double) { return 2.5; }) < 1e-14);
    CHECK(c.period() == 3.0);
}

TEST_CASE("graph text format round trip") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd;
    std::vector<double> v(32);
    for (double& x : v) x = nd(rng);
    const GraphInterface f(2.0, v);

    std::ostringstream os;
    write_graph(os, f);
    const std::string text = os.str();
    CHECK(text.rfind("# period 2\n", 0) == 0);
    std::istringstream is(text);
    CHECK(read_graph(is) == f);

    // headerless files infer the period from the node spacing
    std::istringstream bare("0 1\n0.25 2\n0.5 3\n0.75 4\n");
    const GraphInterface g = read_graph(bare);
    CHECK(g.period() == 1.0);
    CHECK(g[3] == 4.0);

    std::istringstream uneven("0 1\n0.25 2\n0.6 3\n0.75 4\n");
    CHECK_THROWS_AS((void)read_graph(uneven), Error);
    std::istringstream junk("# period 1\n0 1\n0.25 x\n");
    CHECK_THROWS_AS((void)read_graph(junk), Error);

    const auto path = std::filesystem::temp_directory_path() / "tdflow_graph_roundtrip.txt";
    save_graph(path.string(), f);
    CHECK(load_graph(path.string()) == f);
    std::filesystem::remove(path);
    CHECK_THROWS_AS((void)load_graph("/nonexistent/graph.txt"), Error);
}

TEST_CASE("grid field basics") {
    GridField g(8, 4, 2.0, 1.0);
    CHECK(g.count() == 0);
    g.set(7, 3, true);
    CHECK(g.at(7, 3));
    CHECK(g.cells()[3 * 8 + 7] == 1);
    CHECK(g.area() == doctest::Approx(0.0625));
    const GridField s = g.shifted(1, 1);
    CHECK(s.at(0, 0));
    CHECK(s.count() == 1);
    CHECK(s.shifted(-1, -1) == g);
    CHECK(g.subset_of(g.united(s)));
    CHECK(!g.subset_of(s));
    CHECK_THROWS_AS((void)g.subset_of(GridField(4, 4, 1.0, 1.0)), Error);
    CHECK_THROWS_AS(GridField(4, 4, 1.0, 1.0, std::vector<std::uint8_t>(3)), Error);

    // a disk straddling the corner wraps to all four corners
    GridField w(16, 16, 1.0, 1.0);
    w.add_disk(0.0, 0.0, 0.1);
    CHECK(w.at(0, 0));
    CHECK(w.at(15, 15));
    CHECK(w.at(0, 15));
    CHECK(w.at(15, 0));
    CHECK(!w.at(8, 8));

    GridField disk(512, 512, 4.0, 4.0);
    disk.add_disk(2.0, 2.0, 1.0);
    CHECK(area_radius(disk) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("grid raster round trip") {
    std::mt19937_64 rng(9);
    std::bernoulli_distribution coin(0.4);
    GridField g(13, 7, 1.3, 0.7);
    for (std::size_t j = 0; j < 7; ++j)
        for (std::size_t i = 0; i < 13; ++i) g.set(i, j, coin(rng));

    const std::string pgm = grid_to_pgm(g);
    CHECK(pgm.rfind("P5\n13 7\n255\n", 0) == 0);
    CHECK(pgm.size() == std::string("P5\n13 7\n255\n").size() + 13 * 7);
    // first raster byte is the top-left cell: i = 0, j = ny - 1
    CHECK(static_cast<unsigned char>(pgm[12]) == (g.at(0, 6) ? 255 : 0));
    CHECK(grid_from_pgm(pgm, grid_header(g)) == g);

    const auto path = (std::filesystem::temp_directory_path() / "tdflow_grid_roundtrip.pgm").string();
    save_grid(path, g);
    CHECK(std::filesystem::exists(path + ".hdr"));
    CHECK(load_grid(path) == g);
    std::filesystem::remove(path);
    std::filesystem::remove(path + ".hdr");

    CHECK_THROWS_AS((void)grid_from_pgm("P2\n1 1\n255\n0", grid_header(g)), Error);
    CHECK_THROWS_AS((void)grid_from_pgm(pgm, "# tdflow grid v1\nnx 12\nny 7\nLx 1\nLy 1\n"), Error);
}
