#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "zlab/green.hpp"
#include "zlab/schrodinger.hpp"

namespace zlab {

struct NodeMask {
  const Grid* g = nullptr;
  std::vector<std::uint8_t> m;

  NodeMask() = default;
  explicit NodeMask(const Grid& grid) : g(&grid), m(grid.size(), 0) {}
  std::size_t count() const;
  bool operator[](std::size_t i) const { return m[i] != 0; }
};

Field mask_to_field(const NodeMask& mask);

/// Nodes where the torsion solution is at most tau_rel times its maximum.
NodeMask detect_S(const Field& zeta1, double tau_rel);

/// Connected components of the unmasked nodes under 2N-neighbor adjacency.
/// label[i] = -1 on masked nodes, otherwise the component id.
struct ComponentLabels {
  std::vector<int> label;
  int count = 0;
  std::vector<int> sizes;
};

ComponentLabels components(const Grid& g, const NodeMask& S);

/// Pairing of the residual measure against nonnegative bump test fields that
/// vanish near the boundary: lambda[psi] = <psi, mu> - <u, -Lap psi> -
/// sum over nodes with finite V of V u psi. For the exact discrete solution
/// at the final truncation level this collapses to the flux absorbed at the
/// nodes where V is infinite minus the not-yet-truncated absorption tail, so
/// a positive value flags a genuine defect carried by the detected zero set.
/// Each pairing is normalized by the discrete (N-1)-measure of S inside the
/// bump support, which keeps the estimate stable under grid refinement.
struct DefectEstimate {
  std::vector<double> per_bump_raw;
  std::vector<double> per_bump;  // normalized
  double total_defect = 0.0;     // max of the normalized pairings, 0 if no bumps
};

DefectEstimate defect_mass(const Grid& g, const Potential& V, const Field& u,
                           const MeasureData& mu, const std::vector<Field>& bumps,
                           const NodeMask& S);

/// Default bump dictionary: psi_c(y) = max(0, 1 - |y-c|/(4h))^2 for centers c
/// in the one-node neighborhood of S, skipping centers whose support comes
/// within two nodes of the boundary.
std::vector<Field> default_bumps(const Grid& g, const NodeMask& S);

struct ComponentReport {
  int id = 0;
  int node_count = 0;
  double defect = 0.0;
  bool in_Z = false;
};

struct ZeroSetReport {
  NodeMask S;
  NodeMask Z;  // S plus the components classified as carrying a defect
  ComponentLabels labels;
  std::vector<ComponentReport> comps;
  double tau_S = 0.0;
  double tau_Z = 0.0;
};

/// Per-component solvability classification: solve with the component
/// indicator as data, estimate the defect along the component's S-boundary,
/// and flag the component when the defect exceeds tau_Z.
ZeroSetReport classify_and_build_Z(const Grid& g, const Potential& V, const NodeMask& S,
                                   const ComponentLabels& labels,
                                   const TruncationLadder& ladder = {},
                                   const SolveOptions& opts = {}, double tau_Z = 0.02);

enum class SetRelation { equal, disjoint, violation };

struct SuperlevelReport {
  std::vector<NodeMask> sets;                     // one superlevel set per source
  std::vector<std::vector<SetRelation>> relation; // pairwise, diagonal = equal
  std::vector<std::vector<double>> overlap;       // overlap fraction for violations
  /// Smallest fraction of a superlevel set contained in a single graph
  /// component of the complement of S.
  double worst_containment = 1.0;
};

SuperlevelReport superlevel_partition(const Grid& g, const Potential& V,
                                      const std::vector<Point>& sources,
                                      const TruncationLadder& ladder, double tau_rel,
                                      const NodeMask& S, const ComponentLabels& labels,
                                      const SolveOptions& opts = {});

/// CSV: "component,node_count,defect,verdict".
void dump_zeroset_csv(std::ostream& os, const ZeroSetReport& rep);

}  // namespace zlab
