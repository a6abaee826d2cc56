#pragma once

#include <vector>

#include "zlab/schrodinger.hpp"

namespace zlab {

/// Green's function of -Lap + V with a unit atom at the source, computed as
/// a truncation-ladder solve. The value at the source node itself scales
/// like a discrete fundamental solution and is excluded from pointwise
/// comparisons.
struct GreenFunction {
  Point source;
  int source_node = -1;
  Field field;
  LadderReport report;
};

GreenFunction green_function(const Grid& g, const Potential& V, Point x,
                             const TruncationLadder& ladder = {}, const SolveOptions& opts = {});

/// Batch of Green's functions, computed concurrently, returned in source
/// order.
std::vector<GreenFunction> green_batch(const Grid& g, const Potential& V,
                                       const std::vector<Point>& sources,
                                       const TruncationLadder& ladder = {},
                                       const SolveOptions& opts = {});

/// One field CSV per source under dir, named green_<index>.csv in source
/// order.
void dump_green_batch_csv(const std::string& dir, const std::vector<GreenFunction>& batch);

/// |G_x at the node nearest y  -  G_y at the node nearest x|.
double symmetry_defect(const GreenFunction& gx, const GreenFunction& gy);

/// Fundamental-solution majorant in 2D: F(x-y) = log(d/|x-y|)/(2 pi) with
/// d = 1.25 diam(Omega).
double fundamental_bound(const Grid& g, Point x, Point y);

/// Worst relative error of the reproduction identity u_f(x) = integral of
/// G_x f over the sample points (node-nearest evaluation).
double representation_check(const Grid& g, const Potential& V, const Field& f,
                            const std::vector<Point>& samples,
                            const TruncationLadder& ladder = {}, const SolveOptions& opts = {});

}  // namespace zlab
