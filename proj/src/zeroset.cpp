#include "zlab/zeroset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <ostream>
#include <queue>

namespace zlab {

std::size_t NodeMask::count() const {
  std::size_t c = 0;
  for (auto b : m) c += b != 0;
  return c;
}

Field mask_to_field(const NodeMask& mask) {
  Field f(*mask.g);
  for (std::size_t i = 0; i < mask.m.size(); ++i) f[i] = mask[i] ? 1.0 : 0.0;
  return f;
}

NodeMask detect_S(const Field& zeta1, double tau_rel) {
  const Grid& g = *zeta1.g;
  double mx = -std::numeric_limits<double>::max();
  for (double v : zeta1.v) mx = std::max(mx, v);
  if (!(mx > 0.0)) fail(Errc::degenerate_torsion, "degenerate-torsion: zeta_1 is nonpositive");
  NodeMask mask(g);
  double cut = tau_rel * mx;
  for (std::size_t i = 0; i < g.size(); ++i) mask.m[i] = zeta1[i] <= cut ? 1 : 0;
  return mask;
}

ComponentLabels components(const Grid& g, const NodeMask& S) {
  ComponentLabels out;
  out.label.assign(g.size(), -1);
  const int ndir = 2 * g.dim();
  for (std::size_t seed = 0; seed < g.size(); ++seed) {
    if (S[seed] || out.label[seed] >= 0) continue;
    int id = out.count++;
    int sz = 0;
    std::queue<int> q;
    q.push(static_cast<int>(seed));
    out.label[seed] = id;
    while (!q.empty()) {
      int r = q.front();
      q.pop();
      ++sz;
      for (int d = 0; d < ndir; ++d) {
        int s = g.nbr[r][d];
        if (s >= 0 && !S[s] && out.label[s] < 0) {
          out.label[s] = id;
          q.push(s);
        }
      }
    }
    out.sizes.push_back(sz);
  }
  return out;
}

namespace {

Field bump_at(const Grid& g, Point c) {
  Field psi(g);
  double rad = 4.0 * g.h();
  for (std::size_t i = 0; i < g.size(); ++i) {
    double t = dist(g.node[i], c) / rad;
    if (t < 1.0) {
      double s = 1.0 - t;
      psi[i] = s * s;
    }
  }
  return psi;
}

bool bump_clears_boundary(const Grid& g, const Field& psi, const std::vector<int>& bsteps) {
  for (std::size_t i = 0; i < g.size(); ++i)
    if (psi[i] > 0.0 && bsteps[i] <= 2) return false;
  return true;
}

}  // namespace

std::vector<Field> default_bumps(const Grid& g, const NodeMask& S) {
  auto bsteps = g.boundary_steps();
  std::vector<std::uint8_t> center(g.size(), 0);
  const int ndir = 2 * g.dim();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (S[i]) {
      center[i] = 1;
      for (int d = 0; d < ndir; ++d)
        if (g.nbr[i][d] >= 0) center[static_cast<std::size_t>(g.nbr[i][d])] = 1;
    }
  }
  std::vector<Field> bumps;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!center[i]) continue;
    Field psi = bump_at(g, g.node[i]);
    if (bump_clears_boundary(g, psi, bsteps)) bumps.push_back(std::move(psi));
  }
  return bumps;
}

DefectEstimate defect_mass(const Grid& g, const Potential& V, const Field& u,
                           const MeasureData& mu, const std::vector<Field>& bumps,
                           const NodeMask& S) {
  require_same_grid(g, u, "defect_mass");
  DefectEstimate out;
  if (bumps.empty()) return out;

  Field b = assemble_rhs(g, mu);
  std::vector<double> Vnode(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) Vnode[i] = V(g.node[i]);
  auto bsteps = g.boundary_steps();
  const double cell = g.cell();
  const double surf = g.surf();

  for (const auto& psi : bumps) {
    require_same_grid(g, psi, "defect bump");
    double psimax = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (psi[i] < 0.0) fail(Errc::invalid_bump, "invalid-bump: bump must be nonnegative");
      if (psi[i] > 0.0 && bsteps[i] <= 2)
        fail(Errc::invalid_bump, "invalid-bump: bump must vanish within 2 nodes of the boundary");
      psimax = std::max(psimax, psi[i]);
    }
    Field lap_psi = apply_neg_laplacian(g, psi);
    double lam = 0.0, s_weight = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      lam += psi[i] * b[i] - u[i] * lap_psi[i];
      if (std::isfinite(Vnode[i])) lam -= Vnode[i] * u[i] * psi[i];
      if (S[i]) s_weight += psi[i];
    }
    lam *= cell;
    double denom = surf * std::max(s_weight, psimax);
    out.per_bump_raw.push_back(lam);
    out.per_bump.push_back(denom > 0.0 ? lam / denom : 0.0);
  }
  out.total_defect = 0.0;
  for (double d : out.per_bump) out.total_defect = std::max(out.total_defect, d);
  return out;
}

ZeroSetReport classify_and_build_Z(const Grid& g, const Potential& V, const NodeMask& S,
                                   const ComponentLabels& labels, const TruncationLadder& ladder,
                                   const SolveOptions& opts, double tau_Z) {
  ZeroSetReport rep;
  rep.S = S;
  rep.labels = labels;
  rep.tau_Z = tau_Z;
  rep.comps.resize(labels.count);

  auto bsteps = g.boundary_steps();
  const int ndir = 2 * g.dim();
  std::exception_ptr err;

#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t c = 0; c < labels.count; ++c) {
    try {
      Field chi(g);
      for (std::size_t i = 0; i < g.size(); ++i) chi[i] = labels.label[i] == c ? 1.0 : 0.0;
      auto [u, lrep] = solve_ladder(g, V, chi, ladder, opts);
      (void)lrep;

      // Bumps along the component's S-boundary: S nodes adjacent to the
      // component and component nodes adjacent to S.
      std::vector<std::uint8_t> center(g.size(), 0);
      for (std::size_t i = 0; i < g.size(); ++i) {
        bool mine = labels.label[i] == c;
        for (int d = 0; d < ndir; ++d) {
          int s = g.nbr[i][d];
          if (s < 0) continue;
          if (S[i] && labels.label[s] == c) center[i] = 1;
          if (mine && S[static_cast<std::size_t>(s)]) center[i] = 1;
        }
      }
      std::vector<Field> bumps;
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (!center[i]) continue;
        Field psi = bump_at(g, g.node[i]);
        if (bump_clears_boundary(g, psi, bsteps)) bumps.push_back(std::move(psi));
      }
      DefectEstimate de = defect_mass(g, V, u, MeasureData::from_density(chi), bumps, S);

      ComponentReport& cr = rep.comps[c];
      cr.id = static_cast<int>(c);
      cr.node_count = labels.sizes[c];
      cr.defect = de.total_defect;
      cr.in_Z = de.total_defect > tau_Z;
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);

  rep.Z = NodeMask(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (S[i])
      rep.Z.m[i] = 1;
    else if (labels.label[i] >= 0 && rep.comps[static_cast<std::size_t>(labels.label[i])].in_Z)
      rep.Z.m[i] = 1;
  }
  return rep;
}

SuperlevelReport superlevel_partition(const Grid& g, const Potential& V,
                                      const std::vector<Point>& sources,
                                      const TruncationLadder& ladder, double tau_rel,
                                      const NodeMask& S, const ComponentLabels& labels,
                                      const SolveOptions& opts) {
  for (Point p : sources) {
    int r = g.nearest(p);
    if (S[static_cast<std::size_t>(r)])
      fail(Errc::invalid_source, "invalid-source: source lies in the detected zero set");
  }
  auto greens = green_batch(g, V, sources, ladder, opts);
  SuperlevelReport rep;
  rep.sets.reserve(sources.size());
  for (const auto& G : greens) {
    double mx = norm_linf(G.field);
    NodeMask u(g);
    double cut = tau_rel * mx;
    for (std::size_t i = 0; i < g.size(); ++i) u.m[i] = G.field[i] > cut ? 1 : 0;
    u.m[static_cast<std::size_t>(G.source_node)] = 1;
    rep.sets.push_back(std::move(u));
  }

  const std::size_t m = rep.sets.size();
  rep.relation.assign(m, std::vector<SetRelation>(m, SetRelation::equal));
  rep.overlap.assign(m, std::vector<double>(m, 0.0));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      std::size_t inter = 0, uni = 0, na = 0, nb = 0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        bool xa = rep.sets[a][i], xb = rep.sets[b][i];
        inter += xa && xb;
        uni += xa || xb;
        na += xa;
        nb += xb;
      }
      double small = static_cast<double>(std::max<std::size_t>(1, std::min(na, nb)));
      double ov = static_cast<double>(inter) / small;
      double sym = uni > 0 ? static_cast<double>(uni - inter) / static_cast<double>(uni) : 0.0;
      SetRelation rel;
      if (ov <= 0.02)
        rel = SetRelation::disjoint;
      else if (sym <= 0.02)
        rel = SetRelation::equal;
      else
        rel = SetRelation::violation;
      rep.relation[a][b] = rep.relation[b][a] = rel;
      rep.overlap[a][b] = rep.overlap[b][a] = ov;
    }
  }

  for (const auto& u : rep.sets) {
    std::vector<std::size_t> in_comp(static_cast<std::size_t>(labels.count), 0);
    std::size_t total = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (!u[i]) continue;
      ++total;
      if (labels.label[i] >= 0) ++in_comp[static_cast<std::size_t>(labels.label[i])];
    }
    std::size_t best = 0;
    for (auto c : in_comp) best = std::max(best, c);
    if (total > 0)
      rep.worst_containment =
          std::min(rep.worst_containment, static_cast<double>(best) / static_cast<double>(total));
  }
  return rep;
}

void dump_zeroset_csv(std::ostream& os, const ZeroSetReport& rep) {
  os << "component,node_count,defect,verdict\n";
  char buf[120];
  for (const auto& c : rep.comps) {
    std::snprintf(buf, sizeof buf, "%d,%d,%.12g,%s\n", c.id, c.node_count, c.defect,
                  c.in_Z ? "in_Z" : "not_in_Z");
    os << buf;
  }
}

}  // namespace zlab
