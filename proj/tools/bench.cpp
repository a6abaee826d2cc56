// Compares the OpenMP kernels against the serial reference implementations
// and times a full solve both ways.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "zlab/kernels.hpp"
#include "zlab/linsolve.hpp"

using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

template <typename F>
double time_loop(int reps, F&& body) {
  auto t0 = clock_type::now();
  for (int r = 0; r < reps; ++r) body();
  return seconds_since(t0) / reps;
}

}  // namespace

int main(int argc, char** argv) {
  int n = argc > 1 ? std::atoi(argv[1]) : 257;
  int reps = argc > 2 ? std::atoi(argv[2]) : 50;
  zlab::Grid g = zlab::build_grid(zlab::DomainSpec::disk(0.0, 0.0, 1.0, n));
  const std::size_t m = g.size();
  std::printf("grid: disk n=%d, %zu interior nodes\n", n, m);

  std::vector<double> u(m), w(m), out_p(m), out_s(m);
  for (std::size_t i = 0; i < m; ++i) {
    u[i] = std::sin(0.31 * static_cast<double>(i));
    w[i] = 1.0 + 0.5 * std::cos(0.17 * static_cast<double>(i));
  }

  double t_apply_p = time_loop(reps, [&] { zlab::kern::neg_laplacian_shifted(g, w.data(), u.data(), out_p.data()); });
  double t_apply_s = time_loop(reps, [&] { zlab::kern::serial::neg_laplacian_shifted(g, w.data(), u.data(), out_s.data()); });
  double max_diff = 0.0;
  for (std::size_t i = 0; i < m; ++i) max_diff = std::max(max_diff, std::abs(out_p[i] - out_s[i]));

  double dot_p = 0.0, dot_s = 0.0;
  double t_dot_p = time_loop(reps, [&] { dot_p = zlab::kern::dot(u.data(), w.data(), m); });
  double t_dot_s = time_loop(reps, [&] { dot_s = zlab::kern::serial::dot(u.data(), w.data(), m); });

  std::printf("stencil apply: parallel %.3e s, serial %.3e s, speedup %.2fx, max diff %.3e\n",
              t_apply_p, t_apply_s, t_apply_s / t_apply_p, max_diff);
  std::printf("dot product:   parallel %.3e s, serial %.3e s, speedup %.2fx, rel diff %.3e\n",
              t_dot_p, t_dot_s, t_dot_s / t_dot_p,
              std::abs(dot_p - dot_s) / std::max(1.0, std::abs(dot_s)));

  zlab::Field W(g, 1.0), b(g, 1.0);
  auto t0 = clock_type::now();
  auto [x, stats] = zlab::cg_solve(g, W, b);
  double t_solve = seconds_since(t0);
  std::printf("cg solve: %d iterations, rel residual %.2e, %.3f s\n", stats.iterations,
              stats.rel_residual, t_solve);
  return 0;
}
