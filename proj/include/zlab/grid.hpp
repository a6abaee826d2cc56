#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "zlab/core.hpp"

namespace zlab {

enum class DomainKind { interval, rectangle, disk };

/// Description of the computational domain: an interval, an axis-aligned
/// rectangle, or a disk, discretized with n lattice nodes per axis
/// (boundary included).
struct DomainSpec {
  DomainKind kind = DomainKind::interval;
  double ax = -1.0, bx = 1.0;              // x-extent (interval, rectangle)
  double ay = -1.0, by = 1.0;              // y-extent (rectangle)
  double cx = 0.0, cy = 0.0, radius = 1.0; // disk
  int n = 65;

  static DomainSpec interval(double a, double b, int n);
  static DomainSpec rectangle(double ax, double bx, double ay, double by, int n);
  static DomainSpec disk(double cx, double cy, double radius, int n);

  int dim() const { return kind == DomainKind::interval ? 1 : 2; }
  double diameter() const;
  double measure() const;  // |Omega| of the continuum domain
  bool contains(Point p) const;          // strict interior
  bool contains_closed(Point p) const;   // closure
  double distance_to_closure(Point p) const;
  void validate() const;
  std::string describe() const;
};

/// Uniform grid of interior nodes with homogeneous Dirichlet data implied
/// outside: a missing neighbor reads as zero.
struct Grid {
  DomainSpec spec;
  double hx = 0.0, hy = 0.0;
  std::vector<Point> node;             // interior nodes, lattice row-major order
  std::vector<std::array<int, 2>> ij;  // lattice indices per node
  std::vector<std::array<int, 4>> nbr; // -x,+x,-y,+y neighbor rows; -1 = boundary

  int dim() const { return spec.dim(); }
  std::size_t size() const { return node.size(); }
  double h() const { return hx; }
  double cell() const { return dim() == 1 ? hx : hx * hy; }  // h^N
  double surf() const;                                       // h^(N-1)
  int nearest(Point p) const;
  /// Grid-steps to the boundary: 1 for nodes with a missing neighbor.
  std::vector<int> boundary_steps() const;
};

Grid build_grid(const DomainSpec& spec);

/// Real values on the interior nodes of a grid. The grid must outlive the
/// field.
struct Field {
  const Grid* g = nullptr;
  std::vector<double> v;

  Field() = default;
  explicit Field(const Grid& grid, double fill = 0.0) : g(&grid), v(grid.size(), fill) {}

  std::size_t size() const { return v.size(); }
  double& operator[](std::size_t i) { return v[i]; }
  double operator[](std::size_t i) const { return v[i]; }
  const double* data() const { return v.data(); }
  double* data() { return v.data(); }
};

void require_same_grid(const Grid& g, const Field& u, const char* where);

Field apply_neg_laplacian(const Grid& g, const Field& u);
double integrate(const Grid& g, const Field& u);

double norm_l1(const Field& u);   // integrate |u|
double norm_linf(const Field& u);
double l1_weighted(const Field& u, const Field& w);  // h^N sum |u w|
double grad_l1(const Grid& g, const Field& u);       // forward differences

/// CSV dump, header "i,x,value" (1D) or "i,j,x,y,value" (2D), row order =
/// interior index order.
void dump_field_csv(std::ostream& os, const Field& u);

}  // namespace zlab
