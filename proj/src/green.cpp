#include "zlab/green.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>

namespace zlab {

GreenFunction green_function(const Grid& g, const Potential& V, Point x,
                             const TruncationLadder& ladder, const SolveOptions& opts) {
  GreenFunction G;
  G.source = x;
  auto [u, rep] = solve_measure(g, V, MeasureData::from_atom(x, 1.0), ladder, opts);
  G.source_node = g.nearest(x);
  G.field = std::move(u);
  G.report = std::move(rep);
  return G;
}

std::vector<GreenFunction> green_batch(const Grid& g, const Potential& V,
                                       const std::vector<Point>& sources,
                                       const TruncationLadder& ladder, const SolveOptions& opts) {
  std::vector<GreenFunction> out(sources.size());
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(sources.size()); ++i) {
    try {
      out[i] = green_function(g, V, sources[i], ladder, opts);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

void dump_green_batch_csv(const std::string& dir, const std::vector<GreenFunction>& batch) {
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < batch.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "green_%03zu.csv", i);
    std::ofstream os(std::filesystem::path(dir) / name, std::ios::binary | std::ios::trunc);
    dump_field_csv(os, batch[i].field);
  }
}

double symmetry_defect(const GreenFunction& gx, const GreenFunction& gy) {
  const Grid& g = *gx.field.g;
  double sep = dist(gx.source, gy.source);
  if (sep < 2.0 * g.h()) fail(Errc::sources_too_close, "sources-too-close for symmetry check");
  double a = gx.field[static_cast<std::size_t>(g.nearest(gy.source))];
  double b = gy.field[static_cast<std::size_t>(g.nearest(gx.source))];
  return std::abs(a - b);
}

double fundamental_bound(const Grid& g, Point x, Point y) {
  double d = 1.25 * g.spec.diameter();
  double r = dist(x, y);
  return std::log(d / r) / (2.0 * M_PI);
}

double representation_check(const Grid& g, const Potential& V, const Field& f,
                            const std::vector<Point>& samples, const TruncationLadder& ladder,
                            const SolveOptions& opts) {
  require_same_grid(g, f, "representation_check");
  // Split the data by sign; each part feeds a nonnegative ladder.
  Field fp(g), fm(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    fp[i] = std::max(f[i], 0.0);
    fm[i] = std::max(-f[i], 0.0);
  }
  auto [up, rp] = solve_ladder(g, V, fp, ladder, opts);
  Field u = up;
  if (norm_linf(fm) > 0.0) {
    auto [um, rm] = solve_ladder(g, V, fm, ladder, opts);
    for (std::size_t i = 0; i < g.size(); ++i) u[i] -= um[i];
  }
  double scale = norm_linf(u);
  double worst = 0.0;
  for (Point p : samples) {
    GreenFunction G = green_function(g, V, p, ladder, opts);
    double lhs = u[static_cast<std::size_t>(g.nearest(p))];
    double rhs = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) rhs += G.field[i] * f[i];
    rhs *= g.cell();
    double denom = std::max({std::abs(lhs), std::abs(rhs), 1e-12 * scale});
    if (denom == 0.0) continue;
    worst = std::max(worst, std::abs(lhs - rhs) / denom);
  }
  return worst;
}

}  // namespace zlab
