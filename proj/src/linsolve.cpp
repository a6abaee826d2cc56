#include "zlab/linsolve.hpp"

#include <cmath>

#include "zlab/kernels.hpp"

namespace zlab {

std::pair<Field, SolveStats> cg_solve(const Grid& g, const Field& W, const Field& b,
                                      const SolveOptions& opts, const Field* x0) {
  require_same_grid(g, W, "cg_solve weight");
  require_same_grid(g, b, "cg_solve rhs");
  if (x0) require_same_grid(g, *x0, "cg_solve initial guess");
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i)
    if (!(W[i] >= 0.0)) fail(Errc::invalid_weight, "invalid-weight: W must be nonnegative");

  SolveStats stats;
  Field x = x0 ? *x0 : Field(g);
  const double bnorm2 = kern::dot(b.data(), b.data(), n);
  if (bnorm2 == 0.0) {
    stats.converged = true;
    return {Field(g), stats};
  }

  const double diag0 = 2.0 / (g.hx * g.hx) + (g.dim() == 2 ? 2.0 / (g.hy * g.hy) : 0.0);
  const bool jacobi = opts.precond == Preconditioner::diagonal;
  Field inv_diag(g);
  if (jacobi)
    for (std::size_t i = 0; i < n; ++i) inv_diag[i] = 1.0 / (diag0 + W[i]);

  Field r(g), z(g), p(g), q(g);
  kern::neg_laplacian_shifted(g, W.data(), x.data(), r.data());
  for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];

  auto apply_precond = [&](const Field& in, Field& out) {
    if (jacobi)
      for (std::size_t i = 0; i < n; ++i) out[i] = in[i] * inv_diag[i];
    else
      out.v = in.v;
  };

  apply_precond(r, z);
  p.v = z.v;
  double rz = kern::dot(r.data(), z.data(), n);
  double rn2 = kern::dot(r.data(), r.data(), n);
  const double stop2 = opts.rel_tol * opts.rel_tol * bnorm2;
  const int max_iter = opts.max_iter >= 0 ? opts.max_iter : 20 * static_cast<int>(n);

  int it = 0;
  while (rn2 > stop2 && it < max_iter) {
    ++it;
    kern::neg_laplacian_shifted(g, W.data(), p.data(), q.data());
    double pq = kern::dot(p.data(), q.data(), n);
    if (!(pq > 0.0)) break;  // loss of positive definiteness in finite precision
    double alpha = rz / pq;
    kern::axpy(alpha, p.data(), x.data(), n);
    kern::axpy(-alpha, q.data(), r.data(), n);
    rn2 = kern::dot(r.data(), r.data(), n);
    if (rn2 <= stop2) break;
    apply_precond(r, z);
    double rz_new = kern::dot(r.data(), z.data(), n);
    kern::xpay(z.data(), rz_new / rz, p.data(), n);
    rz = rz_new;
  }

  stats.iterations = it;
  stats.rel_residual = std::sqrt(rn2 / bnorm2);
  stats.converged = rn2 <= stop2;
  return {std::move(x), stats};
}

}  // namespace zlab
