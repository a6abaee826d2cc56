#include "zlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <queue>

#include "zlab/kernels.hpp"

namespace zlab {

DomainSpec DomainSpec::interval(double a, double b, int n) {
  DomainSpec s;
  s.kind = DomainKind::interval;
  s.ax = a;
  s.bx = b;
  s.n = n;
  s.validate();
  return s;
}

DomainSpec DomainSpec::rectangle(double ax, double bx, double ay, double by, int n) {
  DomainSpec s;
  s.kind = DomainKind::rectangle;
  s.ax = ax;
  s.bx = bx;
  s.ay = ay;
  s.by = by;
  s.n = n;
  s.validate();
  return s;
}

DomainSpec DomainSpec::disk(double cx, double cy, double radius, int n) {
  DomainSpec s;
  s.kind = DomainKind::disk;
  s.cx = cx;
  s.cy = cy;
  s.radius = radius;
  s.n = n;
  s.validate();
  return s;
}

void DomainSpec::validate() const {
  if (n < 3) fail(Errc::resolution_too_coarse, "resolution-too-coarse: n must be >= 3");
  switch (kind) {
    case DomainKind::interval:
      if (!(ax < bx)) fail(Errc::invalid_argument, "interval requires a < b");
      break;
    case DomainKind::rectangle:
      if (!(ax < bx) || !(ay < by)) fail(Errc::invalid_argument, "rectangle requires a < b on both axes");
      break;
    case DomainKind::disk:
      if (!(radius > 0.0)) fail(Errc::invalid_argument, "disk requires radius > 0");
      break;
  }
}

double DomainSpec::diameter() const {
  switch (kind) {
    case DomainKind::interval: return bx - ax;
    case DomainKind::rectangle: return std::hypot(bx - ax, by - ay);
    case DomainKind::disk: return 2.0 * radius;
  }
  return 0.0;
}

double DomainSpec::measure() const {
  switch (kind) {
    case DomainKind::interval: return bx - ax;
    case DomainKind::rectangle: return (bx - ax) * (by - ay);
    case DomainKind::disk: return M_PI * radius * radius;
  }
  return 0.0;
}

bool DomainSpec::contains(Point p) const {
  switch (kind) {
    case DomainKind::interval: return p.x > ax && p.x < bx;
    case DomainKind::rectangle: return p.x > ax && p.x < bx && p.y > ay && p.y < by;
    case DomainKind::disk: return dist(p, {cx, cy}) < radius;
  }
  return false;
}

bool DomainSpec::contains_closed(Point p) const {
  switch (kind) {
    case DomainKind::interval: return p.x >= ax && p.x <= bx;
    case DomainKind::rectangle: return p.x >= ax && p.x <= bx && p.y >= ay && p.y <= by;
    case DomainKind::disk: return dist(p, {cx, cy}) <= radius;
  }
  return false;
}

double DomainSpec::distance_to_closure(Point p) const {
  switch (kind) {
    case DomainKind::interval: {
      double d = std::max({ax - p.x, p.x - bx, 0.0});
      return d;
    }
    case DomainKind::rectangle: {
      double dx = std::max({ax - p.x, p.x - bx, 0.0});
      double dy = std::max({ay - p.y, p.y - by, 0.0});
      return std::hypot(dx, dy);
    }
    case DomainKind::disk:
      return std::max(0.0, dist(p, {cx, cy}) - radius);
  }
  return 0.0;
}

std::string DomainSpec::describe() const {
  char buf[160];
  switch (kind) {
    case DomainKind::interval:
      std::snprintf(buf, sizeof buf, "interval %g %g n=%d", ax, bx, n);
      break;
    case DomainKind::rectangle:
      std::snprintf(buf, sizeof buf, "rect %g %g %g %g n=%d", ax, bx, ay, by, n);
      break;
    case DomainKind::disk:
      std::snprintf(buf, sizeof buf, "disk %g %g r=%g n=%d", cx, cy, radius, n);
      break;
  }
  return buf;
}

double Grid::surf() const { return dim() == 1 ? 1.0 : std::sqrt(hx * hy); }

Grid build_grid(const DomainSpec& spec) {
  spec.validate();
  Grid g;
  g.spec = spec;
  const int n = spec.n;

  if (spec.dim() == 1) {
    g.hx = (spec.bx - spec.ax) / (n - 1);
    g.hy = 0.0;
    for (int i = 1; i < n - 1; ++i) {
      g.node.push_back({spec.ax + i * g.hx, 0.0});
      g.ij.push_back({i, 0});
    }
    const int m = static_cast<int>(g.node.size());
    for (int r = 0; r < m; ++r)
      g.nbr.push_back({r > 0 ? r - 1 : -1, r < m - 1 ? r + 1 : -1, -1, -1});
    return g;
  }

  double x0, y0;
  if (spec.kind == DomainKind::rectangle) {
    g.hx = (spec.bx - spec.ax) / (n - 1);
    g.hy = (spec.by - spec.ay) / (n - 1);
    x0 = spec.ax;
    y0 = spec.ay;
  } else {
    g.hx = g.hy = 2.0 * spec.radius / (n - 1);
    x0 = spec.cx - spec.radius;
    y0 = spec.cy - spec.radius;
  }

  std::vector<int> row(static_cast<std::size_t>(n) * n, -1);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      Point p{x0 + i * g.hx, y0 + j * g.hy};
      bool inside = spec.kind == DomainKind::rectangle
                        ? (i > 0 && i < n - 1 && j > 0 && j < n - 1)
                        : spec.contains(p);  // disk membership exact at node coordinates
      if (!inside) continue;
      row[static_cast<std::size_t>(j) * n + i] = static_cast<int>(g.node.size());
      g.node.push_back(p);
      g.ij.push_back({i, j});
    }
  }
  if (g.node.empty()) fail(Errc::empty_domain, "empty-domain: no interior node");

  auto at = [&](int i, int j) -> int {
    if (i < 0 || i >= n || j < 0 || j >= n) return -1;
    return row[static_cast<std::size_t>(j) * n + i];
  };
  for (std::size_t r = 0; r < g.node.size(); ++r) {
    int i = g.ij[r][0], j = g.ij[r][1];
    g.nbr.push_back({at(i - 1, j), at(i + 1, j), at(i, j - 1), at(i, j + 1)});
  }
  return g;
}

int Grid::nearest(Point p) const {
  int best = 0;
  double bd = std::numeric_limits<double>::max();
  for (std::size_t r = 0; r < node.size(); ++r) {
    double d = dist(node[r], p);
    if (d < bd) {
      bd = d;
      best = static_cast<int>(r);
    }
  }
  return best;
}

std::vector<int> Grid::boundary_steps() const {
  std::vector<int> steps(size(), 0);
  std::queue<int> q;
  const int ndir = 2 * dim();
  for (std::size_t r = 0; r < size(); ++r) {
    for (int d = 0; d < ndir; ++d)
      if (nbr[r][d] < 0) {
        steps[r] = 1;
        q.push(static_cast<int>(r));
        break;
      }
  }
  while (!q.empty()) {
    int r = q.front();
    q.pop();
    for (int d = 0; d < ndir; ++d) {
      int s = nbr[r][d];
      if (s >= 0 && steps[s] == 0) {
        steps[s] = steps[r] + 1;
        q.push(s);
      }
    }
  }
  return steps;
}

void require_same_grid(const Grid& g, const Field& u, const char* where) {
  if (u.g != &g || u.size() != g.size())
    fail(Errc::incompatible_field, std::string("incompatible-field in ") + where);
}

Field apply_neg_laplacian(const Grid& g, const Field& u) {
  require_same_grid(g, u, "apply_neg_laplacian");
  Field out(g);
  kern::neg_laplacian(g, u.data(), out.data());
  return out;
}

double integrate(const Grid& g, const Field& u) {
  require_same_grid(g, u, "integrate");
  return g.cell() * kern::sum(u.data(), u.size());
}

double norm_l1(const Field& u) {
  if (!u.g) return 0.0;
  return u.g->cell() * kern::sum_abs(u.data(), u.size());
}

double norm_linf(const Field& u) {
  double m = 0.0;
  for (double x : u.v) m = std::max(m, std::abs(x));
  return m;
}

double l1_weighted(const Field& u, const Field& w) {
  if (u.g != w.g || u.size() != w.size())
    fail(Errc::incompatible_field, "incompatible-field in l1_weighted");
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::abs(u[i] * w[i]);
  return u.g->cell() * s;
}

double grad_l1(const Grid& g, const Field& u) {
  require_same_grid(g, u, "grad_l1");
  // Forward differences; the Dirichlet exterior contributes the jump to zero.
  double s = 0.0;
  const int ndir = 2 * g.dim();
  for (std::size_t r = 0; r < g.size(); ++r) {
    for (int d = 1; d < ndir; d += 2) {  // +x and +y directions
      int nb = g.nbr[r][d];
      double diff = (nb >= 0 ? u[nb] : 0.0) - u[r];
      s += std::abs(diff) / (d < 2 ? g.hx : g.hy);
    }
    for (int d = 0; d < ndir; d += 2) {  // boundary jump on the -x/-y side
      if (g.nbr[r][d] < 0) s += std::abs(u[r]) / (d < 2 ? g.hx : g.hy);
    }
  }
  return g.cell() * s;
}

void dump_field_csv(std::ostream& os, const Field& u) {
  const Grid& g = *u.g;
  char buf[160];
  if (g.dim() == 1) {
    os << "i,x,value\n";
    for (std::size_t r = 0; r < g.size(); ++r) {
      std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g\n", g.ij[r][0], g.node[r].x, u[r]);
      os << buf;
    }
  } else {
    os << "i,j,x,y,value\n";
    for (std::size_t r = 0; r < g.size(); ++r) {
      std::snprintf(buf, sizeof buf, "%d,%d,%.12g,%.12g,%.12g\n", g.ij[r][0], g.ij[r][1],
                    g.node[r].x, g.node[r].y, u[r]);
      os << buf;
    }
  }
}

}  // namespace zlab
