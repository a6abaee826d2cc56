#pragma once

#include <utility>

#include "zlab/grid.hpp"

namespace zlab {

enum class Preconditioner { none, diagonal };

struct SolveOptions {
  double rel_tol = 1e-10;
  int max_iter = -1;  // < 0 selects 20 * node count
  Preconditioner precond = Preconditioner::diagonal;
};

struct SolveStats {
  int iterations = 0;
  double rel_residual = 0.0;
  bool converged = false;
};

/// Preconditioned conjugate gradients for (-Lap_h + diag(W)) u = b with
/// W >= 0. Matrix-free stencil application; all reductions use a fixed
/// summation order, so repeated solves are bit-identical. Non-convergence is
/// reported through the stats, never silently.
std::pair<Field, SolveStats> cg_solve(const Grid& g, const Field& W, const Field& b,
                                      const SolveOptions& opts = {}, const Field* x0 = nullptr);

}  // namespace zlab
