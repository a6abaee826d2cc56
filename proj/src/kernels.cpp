#include "zlab/kernels.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

#include "zlab/grid.hpp"

namespace zlab::kern {

namespace {
constexpr std::size_t kChunk = 2048;

inline double stencil_at(const Grid& g, const double* u, std::size_t r, double cx2, double cy2) {
  const auto& nb = g.nbr[r];
  double ux = 2.0 * u[r] - (nb[0] >= 0 ? u[nb[0]] : 0.0) - (nb[1] >= 0 ? u[nb[1]] : 0.0);
  double s = cx2 * ux;
  if (g.dim() == 2) {
    double uy = 2.0 * u[r] - (nb[2] >= 0 ? u[nb[2]] : 0.0) - (nb[3] >= 0 ? u[nb[3]] : 0.0);
    s += cy2 * uy;
  }
  return s;
}
}  // namespace

void neg_laplacian(const Grid& g, const double* u, double* out) {
  const double cx2 = 1.0 / (g.hx * g.hx);
  const double cy2 = g.dim() == 2 ? 1.0 / (g.hy * g.hy) : 0.0;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(g.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < n; ++r) out[r] = stencil_at(g, u, r, cx2, cy2);
}

void neg_laplacian_shifted(const Grid& g, const double* w, const double* u, double* out) {
  const double cx2 = 1.0 / (g.hx * g.hx);
  const double cy2 = g.dim() == 2 ? 1.0 / (g.hy * g.hy) : 0.0;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(g.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < n; ++r) out[r] = stencil_at(g, u, r, cx2, cy2) + w[r] * u[r];
}

// Chunked reductions: partial sums over fixed index ranges, combined in fixed
// order, so the result does not depend on the thread count.
double dot(const double* a, const double* b, std::size_t n) {
  const std::size_t nchunks = (n + kChunk - 1) / kChunk;
  if (nchunks <= 1) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  }
  std::vector<double> part(nchunks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(nchunks); ++c) {
    std::size_t lo = c * kChunk, hi = std::min(n, lo + kChunk);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += a[i] * b[i];
    part[c] = s;
  }
  double s = 0.0;
  for (double p : part) s += p;
  return s;
}

double sum(const double* a, std::size_t n) {
  const std::size_t nchunks = (n + kChunk - 1) / kChunk;
  if (nchunks <= 1) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i];
    return s;
  }
  std::vector<double> part(nchunks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(nchunks); ++c) {
    std::size_t lo = c * kChunk, hi = std::min(n, lo + kChunk);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += a[i];
    part[c] = s;
  }
  double s = 0.0;
  for (double p : part) s += p;
  return s;
}

double sum_abs(const double* a, std::size_t n) {
  const std::size_t nchunks = (n + kChunk - 1) / kChunk;
  if (nchunks <= 1) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(a[i]);
    return s;
  }
  std::vector<double> part(nchunks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(nchunks); ++c) {
    std::size_t lo = c * kChunk, hi = std::min(n, lo + kChunk);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += std::abs(a[i]);
    part[c] = s;
  }
  double s = 0.0;
  for (double p : part) s += p;
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) y[i] += alpha * x[i];
}

void xpay(const double* x, double alpha, double* y, std::size_t n) {
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) y[i] = x[i] + alpha * y[i];
}

namespace serial {

void neg_laplacian(const Grid& g, const double* u, double* out) {
  const double cx2 = 1.0 / (g.hx * g.hx);
  const double cy2 = g.dim() == 2 ? 1.0 / (g.hy * g.hy) : 0.0;
  for (std::size_t r = 0; r < g.size(); ++r) out[r] = stencil_at(g, u, r, cx2, cy2);
}

void neg_laplacian_shifted(const Grid& g, const double* w, const double* u, double* out) {
  const double cx2 = 1.0 / (g.hx * g.hx);
  const double cy2 = g.dim() == 2 ? 1.0 / (g.hy * g.hy) : 0.0;
  for (std::size_t r = 0; r < g.size(); ++r)
    out[r] = stencil_at(g, u, r, cx2, cy2) + w[r] * u[r];
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

}  // namespace serial

}  // namespace zlab::kern
