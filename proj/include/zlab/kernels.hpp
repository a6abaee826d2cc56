#pragma once

#include <cstddef>

namespace zlab {
struct Grid;
}

// Data-parallel inner loops. The parallel versions are deterministic for any
// thread count: elementwise kernels carry no reductions, and reductions sum
// fixed-size chunks in fixed order. zlab::kern::serial holds the plain-loop
// reference implementations used by the tests and the benchmark.
namespace zlab::kern {

void neg_laplacian(const Grid& g, const double* u, double* out);
void neg_laplacian_shifted(const Grid& g, const double* w, const double* u, double* out);

double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
double sum_abs(const double* a, std::size_t n);

void axpy(double alpha, const double* x, double* y, std::size_t n);   // y += alpha x
void xpay(const double* x, double alpha, double* y, std::size_t n);   // y = x + alpha y

namespace serial {
void neg_laplacian(const Grid& g, const double* u, double* out);
void neg_laplacian_shifted(const Grid& g, const double* w, const double* u, double* out);
double dot(const double* a, const double* b, std::size_t n);
}  // namespace serial

}  // namespace zlab::kern
