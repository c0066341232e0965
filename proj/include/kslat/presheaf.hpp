#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "kslat/algebra.hpp"
#include "kslat/rays.hpp"

namespace kslat {

// The bundle of context spectra over the inclusion poset. A point of the
// fiber at a context is one of its atoms; restriction to a smaller context
// sends a ray atom to itself when the ray survives and into the remainder
// otherwise, and remainder to remainder.
struct PresheafBundle {
  const RayConfiguration* cfg = nullptr;
  const ContextSet* ctxs = nullptr;  // closure enumeration

  struct Edge {
    int sub = -1, super = -1;   // rays(sub) strictly contained in rays(super)
    std::vector<int> atom_map;  // atom of super -> atom of sub
  };
  std::vector<Edge> edges;
  std::vector<int> singleton_of_ray;  // ray id -> its one-ray context

  int num_contexts() const { return int(ctxs->contexts.size()); }
};

PresheafBundle build_presheaf(const RayConfiguration& cfg,
                              const ContextSet& ctxs);

// Identity and composition laws of the restriction maps, checked over every
// composable pair of poset edges.
bool verify_functoriality(const PresheafBundle& bundle,
                          std::string* why = nullptr);

// Backtracking search for a choice of one atom per context commuting with
// every restriction map. Independent of the coloring solver.
struct GlobalSectionResult {
  bool exists = false;
  std::vector<int> section;            // atom index per context, when found
  std::vector<std::vector<int>> all;   // every section, when enumerating
  long long nodes = 0;
  Json certificate;                    // exhaustion certificate when none
};

GlobalSectionResult global_section_search(const PresheafBundle& bundle,
                                          bool enumerate_all = false,
                                          long long node_budget = 100000000);

// The bijection with ray assignments: a section reads off 0/1 per ray from
// the one-ray contexts, and conversely an admissible assignment determines
// the atom of every context.
std::vector<int> section_to_assignment(const PresheafBundle& bundle,
                                       const std::vector<int>& section);
std::vector<int> assignment_to_section(const PresheafBundle& bundle,
                                       const std::vector<int>& assignment);

// The family of probability weights a density operator induces on every
// fiber, with the worst mismatch of image measures along the poset edges.
struct StateSection {
  std::vector<std::vector<double>> weights;  // per context, per atom
  double max_edge_residual = 0.0;
};

StateSection state_presheaf_section(const PresheafBundle& bundle,
                                    const DensityOperator& rho);

bool is_point_measure(const std::vector<double>& weights, double tol = 1e-10);

// "ALL-POINT" when the weight family is a point measure at every complete
// context, else "MIXED".
std::string classify_state_section(const PresheafBundle& bundle,
                                   const StateSection& section,
                                   double tol = 1e-10);

}  // namespace kslat
