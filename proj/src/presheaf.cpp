#include "kslat/presheaf.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

namespace kslat {

namespace {

std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

bool strict_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return a.size() < b.size() &&
         std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

PresheafBundle build_presheaf(const RayConfiguration& cfg,
                              const ContextSet& ctxs) {
  PresheafBundle bundle;
  bundle.cfg = &cfg;
  bundle.ctxs = &ctxs;
  const int k = int(ctxs.contexts.size());
  for (int a = 0; a < k; ++a) {
    const ContextInfo& sub = ctxs.contexts[a];
    for (int b = 0; b < k; ++b) {
      const ContextInfo& super = ctxs.contexts[b];
      if (!strict_subset(sub.rays, super.rays)) continue;
      if (!sub.has_remainder())
        throw ClosureFailure("proper subcontext lacks a remainder atom");
      PresheafBundle::Edge e;
      e.sub = a;
      e.super = b;
      e.atom_map.resize(super.atom_count());
      for (size_t i = 0; i < super.rays.size(); ++i) {
        auto it = std::lower_bound(sub.rays.begin(), sub.rays.end(),
                                   super.rays[i]);
        if (it != sub.rays.end() && *it == super.rays[i]) {
          e.atom_map[i] = int(it - sub.rays.begin());
        } else {
          e.atom_map[i] = sub.remainder_atom();
        }
      }
      if (super.has_remainder())
        e.atom_map[super.remainder_atom()] = sub.remainder_atom();
      bundle.edges.push_back(std::move(e));
    }
  }
  // The canonical one-ray context: the smallest context containing the ray.
  bundle.singleton_of_ray.assign(cfg.size(), -1);
  for (int r = 0; r < cfg.size(); ++r) {
    int best = -1;
    for (int c = 0; c < k; ++c) {
      const auto& rays = ctxs.contexts[c].rays;
      if (!std::binary_search(rays.begin(), rays.end(), r)) continue;
      if (best < 0 || rays.size() < ctxs.contexts[best].rays.size()) best = c;
    }
    bundle.singleton_of_ray[r] = best;
  }
  return bundle;
}

bool verify_functoriality(const PresheafBundle& bundle, std::string* why) {
  std::map<std::pair<int, int>, const std::vector<int>*> maps;
  for (const auto& e : bundle.edges) maps[{e.sub, e.super}] = &e.atom_map;
  for (const auto& ab : bundle.edges) {      // A strictly inside B
    for (const auto& bc : bundle.edges) {    // B strictly inside C
      if (bc.sub != ab.super) continue;
      auto it = maps.find({ab.sub, bc.super});
      if (it == maps.end())
        throw ClosureFailure("composable inclusions without a composite edge");
      const std::vector<int>& direct = *it->second;
      for (size_t t = 0; t < direct.size(); ++t) {
        if (direct[t] != ab.atom_map[bc.atom_map[t]]) {
          if (why)
            *why = "restriction maps fail to compose between contexts " +
                   std::to_string(ab.sub) + " < " + std::to_string(bc.sub) +
                   " < " + std::to_string(bc.super);
          return false;
        }
      }
    }
  }
  return true;
}

namespace {

// Arc-consistent backtracking over atom domains, one domain per context.
class SectionSolver {
 public:
  SectionSolver(const PresheafBundle& b, bool enumerate, long long budget)
      : b_(b), enumerate_(enumerate), budget_(budget) {
    for (const auto& c : b.ctxs->contexts)
      domains_.push_back(std::vector<char>(c.atom_count(), 1));
    edges_of_.resize(b.ctxs->contexts.size());
    for (size_t e = 0; e < b.edges.size(); ++e) {
      edges_of_[b.edges[e].sub].push_back(int(e));
      edges_of_[b.edges[e].super].push_back(int(e));
    }
  }

  void run(GlobalSectionResult* out) {
    if (propagate_all()) dive(out);
    out->nodes = nodes_;
  }

 private:
  static int domain_size(const std::vector<char>& d) {
    int n = 0;
    for (char x : d) n += x;
    return n;
  }

  // Enforce gamma(sub) = map(gamma(super)) on one edge; true while feasible.
  bool revise(int ei, std::vector<int>* dirty) {
    const auto& e = b_.edges[ei];
    auto& dsub = domains_[e.sub];
    auto& dsup = domains_[e.super];
    bool sub_changed = false, sup_changed = false;
    std::vector<char> image(dsub.size(), 0);
    for (size_t t = 0; t < dsup.size(); ++t) {
      if (!dsup[t]) continue;
      if (!dsub[e.atom_map[t]]) {
        dsup[t] = 0;
        sup_changed = true;
      } else {
        image[e.atom_map[t]] = 1;
      }
    }
    for (size_t s = 0; s < dsub.size(); ++s)
      if (dsub[s] && !image[s]) {
        dsub[s] = 0;
        sub_changed = true;
      }
    if (sub_changed) dirty->push_back(e.sub);
    if (sup_changed) dirty->push_back(e.super);
    return domain_size(dsub) > 0 && domain_size(dsup) > 0;
  }

  bool propagate_from(const std::vector<int>& seeds) {
    std::vector<int> queue;
    for (int c : seeds)
      for (int ei : edges_of_[c]) queue.push_back(ei);
    while (!queue.empty()) {
      int ei = queue.back();
      queue.pop_back();
      std::vector<int> dirty;
      if (!revise(ei, &dirty)) return false;
      for (int c : dirty)
        for (int e2 : edges_of_[c])
          if (e2 != ei) queue.push_back(e2);
    }
    return true;
  }

  bool propagate_all() {
    std::vector<int> all(domains_.size());
    for (size_t i = 0; i < all.size(); ++i) all[i] = int(i);
    return propagate_from(all);
  }

  // Returns true to stop the search (found and not enumerating, or budget).
  bool dive(GlobalSectionResult* out) {
    if (++nodes_ > budget_)
      throw Error("node budget exhausted during section search");
    int pick = -1;
    for (size_t c = 0; c < domains_.size(); ++c) {
      int sz = domain_size(domains_[c]);
      if (sz < 2) continue;
      if (pick < 0 || sz < domain_size(domains_[pick])) pick = int(c);
    }
    if (pick < 0) {
      std::vector<int> section;
      for (const auto& d : domains_)
        section.push_back(
            int(std::find(d.begin(), d.end(), 1) - d.begin()));
      out->exists = true;
      if (enumerate_) {
        out->all.push_back(std::move(section));
        return false;
      }
      out->section = std::move(section);
      return true;
    }
    auto saved = domains_;
    for (size_t atom = 0; atom < domains_[pick].size(); ++atom) {
      if (!saved[pick][atom]) continue;
      domains_ = saved;
      std::fill(domains_[pick].begin(), domains_[pick].end(), 0);
      domains_[pick][atom] = 1;
      if (propagate_from({pick}) && dive(out)) return true;
    }
    domains_ = std::move(saved);
    return false;
  }

  const PresheafBundle& b_;
  bool enumerate_;
  long long budget_;
  long long nodes_ = 0;
  std::vector<std::vector<char>> domains_;
  std::vector<std::vector<int>> edges_of_;
};

}  // namespace

GlobalSectionResult global_section_search(const PresheafBundle& bundle,
                                          bool enumerate_all,
                                          long long node_budget) {
  GlobalSectionResult out;
  SectionSolver solver(bundle, enumerate_all, node_budget);
  solver.run(&out);
  if (enumerate_all) {
    std::sort(out.all.begin(), out.all.end());
    if (out.exists) out.section = out.all.front();
  }
  if (!out.exists) {
    out.certificate = Json{{"format", "global-section-exhaustion"},
                           {"version", 1},
                           {"config_hash", hash_hex(bundle.cfg->hash)},
                           {"num_contexts", bundle.num_contexts()},
                           {"nodes", out.nodes},
                           {"verdict", "NONE"}};
  }
  return out;
}

std::vector<int> section_to_assignment(const PresheafBundle& bundle,
                                       const std::vector<int>& section) {
  std::vector<int> assignment(bundle.cfg->size(), 0);
  for (int r = 0; r < bundle.cfg->size(); ++r) {
    int c = bundle.singleton_of_ray[r];
    if (c < 0) throw ClosureFailure("ray without a containing context");
    const auto& rays = bundle.ctxs->contexts[c].rays;
    int idx = int(std::lower_bound(rays.begin(), rays.end(), r) - rays.begin());
    assignment[r] = (section.at(c) == idx) ? 1 : 0;
  }
  return assignment;
}

std::vector<int> assignment_to_section(const PresheafBundle& bundle,
                                       const std::vector<int>& assignment) {
  std::vector<int> section;
  for (const auto& ctx : bundle.ctxs->contexts) {
    int chosen = -1;
    for (size_t i = 0; i < ctx.rays.size(); ++i)
      if (assignment.at(ctx.rays[i]) == 1) {
        if (chosen >= 0)
          throw IncompleteAssignment("two rays of one context carry 1");
        chosen = int(i);
      }
    if (chosen < 0) {
      if (!ctx.has_remainder())
        throw IncompleteAssignment("complete context with no ray at 1");
      chosen = ctx.remainder_atom();
    }
    section.push_back(chosen);
  }
  return section;
}

StateSection state_presheaf_section(const PresheafBundle& bundle,
                                    const DensityOperator& rho) {
  StateSection out;
  for (const auto& ctx : bundle.ctxs->contexts) {
    std::vector<double> w;
    for (const auto& atom : context_atoms_f(*bundle.cfg, ctx))
      w.push_back(rho.value(atom.op));
    out.weights.push_back(std::move(w));
  }
  for (const auto& e : bundle.edges) {
    const auto& wsub = out.weights[e.sub];
    const auto& wsup = out.weights[e.super];
    std::vector<double> pushed(wsub.size(), 0.0);
    for (size_t t = 0; t < wsup.size(); ++t) pushed[e.atom_map[t]] += wsup[t];
    for (size_t s = 0; s < wsub.size(); ++s)
      out.max_edge_residual =
          std::max(out.max_edge_residual, std::abs(pushed[s] - wsub[s]));
  }
  return out;
}

bool is_point_measure(const std::vector<double>& weights, double tol) {
  for (double w : weights)
    if (w >= 1.0 - tol) return true;
  return false;
}

std::string classify_state_section(const PresheafBundle& bundle,
                                   const StateSection& section, double tol) {
  for (int c = 0; c < bundle.num_contexts(); ++c) {
    if (!bundle.ctxs->contexts[c].complete) continue;
    if (!is_point_measure(section.weights[c], tol)) return "MIXED";
  }
  return "ALL-POINT";
}

}  // namespace kslat
