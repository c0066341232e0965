#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "kslat/rays.hpp"

namespace kslat {

using Json = nlohmann::json;

// Boolean model of the coloring problem on a ray configuration: one 0/1
// variable per ray, exactly one 1 in every complete maximal context, at most
// one 1 among any orthogonal rays.
struct ConstraintModel {
  const RayConfiguration* cfg = nullptr;
  std::vector<std::vector<int>> complete_contexts;  // rays, resolve identity
  std::vector<std::vector<int>> neighbors;          // orthogonality adjacency
  std::vector<std::vector<int>> contexts_of_ray;    // complete contexts by ray

  int num_rays() const { return int(neighbors.size()); }
};

ConstraintModel build_constraint_model(const RayConfiguration& cfg,
                                       const ContextSet& ctxs);

enum class Verdict { SAT, UNSAT, INDETERMINATE };

const char* verdict_name(Verdict v);

struct SearchStats {
  long long nodes = 0;
  long long propagations = 0;
  int max_depth = 0;
};

struct SearchOptions {
  long long node_budget = 100000000;  // exceeded -> INDETERMINATE
};

// Outcome with a self-contained JSON certificate: a witness assignment for
// SAT, a refutation decision tree for UNSAT (replayable by an independent
// propagator), nothing conclusive for INDETERMINATE.
struct SearchOutcome {
  Verdict verdict = Verdict::INDETERMINATE;
  std::vector<int> witness;  // per-ray 0/1 when SAT
  SearchStats stats;
  Json certificate;
};

SearchOutcome ks_search(const ConstraintModel& model,
                        const SearchOptions& opts = {});

// Every two-valued assignment (deterministic order). Throws when the node
// budget is exhausted before the enumeration completes.
std::vector<std::vector<int>> enumerate_two_valued_measures(
    const ConstraintModel& model, const SearchOptions& opts = {});

// Checks one ray assignment against the model directly.
bool check_assignment(const ConstraintModel& model,
                      const std::vector<int>& assignment,
                      std::string* why = nullptr);

// Independent certificate verification: hash binding, direct witness check
// for SAT, full replay of the refutation tree for UNSAT.
bool verify_certificate(const ConstraintModel& model, const Json& cert,
                        std::string* why = nullptr);

// DIMACS CNF of the model plus a JSON sidecar mapping DIMACS variables to
// ray indices and labels.
std::string export_cnf(const ConstraintModel& model, Json* varmap);

}  // namespace kslat
