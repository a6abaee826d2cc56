#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "support/dense.hpp"
#include "zlab/green.hpp"

using namespace zlab;

TEST_CASE("1D Green's function with V = 0 is the triangle") {
  Grid g = build_grid(DomainSpec::interval(-1.0, 1.0, 65));
  GreenFunction G = green_function(g, Potential::zero(), {0.0, 0.0});
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(G.field[i] == doctest::Approx(0.5 * (1.0 - std::abs(g.node[i].x))).epsilon(1e-7));
  // 1D: nonnegative and maximal at the source
  double mx = norm_linf(G.field);
  CHECK(G.field[static_cast<std::size_t>(G.source_node)] == doctest::Approx(mx));
}

TEST_CASE("source on the singular hyperplane: the Green mass vanishes under refinement") {
  // The k -> infinity limit precedes h -> 0: the truncation schedule must
  // outpace the 1/h^2 stencil stiffness, so the rung count grows with n.
  Potential V = Potential::hyperplane(0, 0.0, 1.5);
  std::vector<double> masses;
  int extra = 0;
  for (int n : {17, 33, 65}) {
    TruncationLadder lad;
    lad.stop_tol = 1e-14;
    lad.max_rungs = 24 + extra;
    extra += 2;
    Grid g = build_grid(DomainSpec::disk(0.0, 0.0, 1.0, n));
    GreenFunction G = green_function(g, V, {0.0, 0.0}, lad);
    masses.push_back(norm_l1(G.field));
    // off-S sources carry O(1) mass; on S the mass is already negligible
    GreenFunction H = green_function(g, V, {-0.5, 0.0}, lad);
    CHECK(norm_l1(G.field) <= 1e-3 * norm_l1(H.field));
  }
  CHECK(masses[1] < masses[0]);
  CHECK(masses[2] < masses[1]);
}

TEST_CASE("2D Green's function obeys the fundamental-solution bound off the source") {
  Grid g = build_grid(DomainSpec::disk(0.0, 0.0, 1.0, 33));
  GreenFunction G = green_function(g, Potential::zero(), {0.2, -0.1});
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (static_cast<int>(i) == G.source_node) continue;
    CHECK(G.field[i] >= -1e-9);
    CHECK(G.field[i] <= fundamental_bound(g, G.source, g.node[i]) + 1e-8);
  }
}

TEST_CASE("symmetry defect vanishes for V = 0 in 1D") {
  Grid g = build_grid(DomainSpec::interval(-1.0, 1.0, 65));
  SolveOptions tight;
  tight.rel_tol = 1e-12;
  GreenFunction gx = green_function(g, Potential::zero(), {-0.25, 0.0}, {}, tight);
  GreenFunction gy = green_function(g, Potential::zero(), {0.25, 0.0}, {}, tight);
  CHECK(symmetry_defect(gx, gy) <= 1e-9);
}

TEST_CASE("symmetry holds for random bounded potentials against the dense oracle") {
  Grid g = build_grid(DomainSpec::interval(-1.0, 1.0, 9));
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> dist(0.0, 10.0);
  Field Wf(g);
  for (std::size_t i = 0; i < g.size(); ++i) Wf[i] = dist(rng);
  Potential V = Potential::tabulated(Wf);
  SolveOptions tight;
  tight.rel_tol = 1e-13;
  Point x{-0.4, 0.0}, y{0.55, 0.0};
  GreenFunction gx = green_function(g, V, x, {}, tight);
  GreenFunction gy = green_function(g, V, y, {}, tight);
  CHECK(symmetry_defect(gx, gy) <= 1e-8);

  // oracle route: dense inverse of the assembled matrix is symmetric
  Field bx(g), by(g);
  bx[static_cast<std::size_t>(g.nearest(x))] = 1.0 / g.cell();
  by[static_cast<std::size_t>(g.nearest(y))] = 1.0 / g.cell();
  Field W = truncate_to_field(V, g, 1e9);
  Field ux = testing::dense_solve(g, W, bx);
  Field uy = testing::dense_solve(g, W, by);
  double oracle_defect = std::abs(ux[static_cast<std::size_t>(g.nearest(y))] -
                                  uy[static_cast<std::size_t>(g.nearest(x))]);
  CHECK(oracle_defect <= 1e-10);
  CHECK(std::abs(gx.field[static_cast<std::size_t>(g.nearest(y))] -
                 ux[static_cast<std::size_t>(g.nearest(y))]) <= 1e-8);
}

TEST_CASE("sources closer than 2h are rejected") {
  Grid g = build_grid(DomainSpec::interval(-1.0, 1.0, 17));
  GreenFunction gx = green_function(g, Potential::zero(), {0.0, 0.0});
  GreenFunction gy = green_function(g, Potential::zero(), {0.05, 0.0});
  CHECK_THROWS_AS(symmetry_defect(gx, gy), Error);
}

TEST_CASE("symmetry for the singular point example within 2 percent") {
  Grid g = build_grid(DomainSpec::disk(0.0, 0.0, 1.0, 65));
  Potential V = Potential::point_singularity({0.0, 0.0}, 3.0);
  TruncationLadder lad;
  lad.stop_tol = 1e-12;
  GreenFunction gx = green_function(g, V, {-0.4, 0.1}, lad);
  GreenFunction gy = green_function(g, V, {0.45, -0.2}, lad);
  double scale = std::max(norm_linf(gx.field), norm_linf(gy.field));
  CHECK(symmetry_defect(gx, gy) <= 0.02 * scale);
}

TEST_CASE("representation identity: trivial and analytic cases") {
  Grid g = build_grid(DomainSpec::interval(-1.0, 1.0, 33));
  Field zero(g);
  CHECK(representation_check(g, Potential::zero(), zero, {{0.0, 0.0}}) == 0.0);

  Field one(g, 1.0);
  double err = representation_check(g, Potential::zero(), one, {{0.0, 0.0}});
  CHECK(err <= 1e-7);  // both sides equal theta(0) = 0.5
}

TEST_CASE("representation within 2 percent for the singular point example") {
  Grid g = build_grid(DomainSpec::disk(0.0, 0.0, 1.0, 65));
  Potential V = Potential::point_singularity({0.0, 0.0}, 3.0);
  Field one(g, 1.0);
  TruncationLadder lad;
  lad.stop_tol = 1e-12;
  std::vector<Point> samples{{-0.5, 0.1}, {0.4, 0.3}, {-0.2, -0.55}, {0.6, -0.1}, {0.1, 0.62}};
  CHECK(representation_check(g, V, one, samples, lad) <= 0.02);
}

TEST_CASE("reproduction defect is linear in the data") {
  Grid g = build_grid(DomainSpec::disk(0.0, 0.0, 1.0, 33));
  Potential V = Potential::point_singularity({0.0, 0.0}, 2.5);
  TruncationLadder lad;
  lad.stop_tol = 1e-12;
  std::mt19937 rng(47);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Field f1(g), f2(g), combo(g);
  const double a = 2.0, b = 0.5;
  for (std::size_t i = 0; i < g.size(); ++i) {
    f1[i] = unit(rng);
    f2[i] = unit(rng);
    combo[i] = a * f1[i] + b * f2[i];
  }
  Point x0{0.45, -0.25};
  GreenFunction G = green_function(g, V, x0, lad);
  auto defect = [&](const Field& f) {
    auto [u, rep] = solve_ladder(g, V, f, lad);
    double rhs = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) rhs += G.field[i] * f[i];
    rhs *= g.cell();
    return std::abs(u[static_cast<std::size_t>(g.nearest(x0))] - rhs);
  };
  double d1 = defect(f1), d2 = defect(f2), dc = defect(combo);
  CHECK(dc <= a * d1 + b * d2 + 1e-8);
}

TEST_CASE("batch is returned in source order and dumps one csv per source") {
  Grid g = build_grid(DomainSpec::interval(-1.0, 1.0, 33));
  std::vector<Point> sources{{-0.5, 0.0}, {0.0, 0.0}, {0.5, 0.0}};
  auto batch = green_batch(g, Potential::zero(), sources);
  REQUIRE(batch.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(batch[i].source.x == sources[i].x);
    CHECK(batch[i].field[static_cast<std::size_t>(batch[i].source_node)] > 0.0);
  }
  auto dir = std::filesystem::temp_directory_path() / "zlab-test-greens";
  std::filesystem::remove_all(dir);
  dump_green_batch_csv(dir.string(), batch);
  CHECK(std::filesystem::exists(dir / "green_000.csv"));
  CHECK(std::filesystem::exists(dir / "green_002.csv"));
  std::filesystem::remove_all(dir);
}
