#include "kslat/search.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>

namespace kslat {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::SAT:
      return "SAT";
    case Verdict::UNSAT:
      return "UNSAT";
    case Verdict::INDETERMINATE:
      return "INDETERMINATE";
  }
  return "?";
}

namespace {

std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

}  // namespace

ConstraintModel build_constraint_model(const RayConfiguration& cfg,
                                       const ContextSet& ctxs) {
  ConstraintModel m;
  m.cfg = &cfg;
  const int n = cfg.size();
  m.neighbors.resize(n);
  m.contexts_of_ray.resize(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && cfg.orthogonal(i, j)) m.neighbors[i].push_back(j);
  for (const auto& c : ctxs.contexts) {
    if (!c.maximal || !c.complete) continue;
    int id = int(m.complete_contexts.size());
    m.complete_contexts.push_back(c.rays);
    for (int r : c.rays) m.contexts_of_ray[r].push_back(id);
  }
  return m;
}

namespace {

struct Conflict {
  std::string kind;       // "orthogonal-pair" | "all-zero-context"
  std::vector<int> rays;  // the pair, or the context rays
};

class Solver {
 public:
  Solver(const ConstraintModel& m, const SearchOptions& opts, bool enumerate,
         std::vector<std::vector<int>>* sink)
      : m_(m),
        budget_(opts.node_budget),
        enumerate_(enumerate),
        sink_(sink),
        val_(m.num_rays(), -1) {}

  enum class Status { Sat, Unsat, Indet };

  Status run(Json* tree) { return dive(0, tree); }

  const SearchStats& stats() const { return stats_; }
  const std::vector<int>& witness() const { return witness_; }

 private:
  // Fixpoint propagation over the whole (small) state: a 1 zeroes its
  // orthogonal neighbors; a complete context with no 1 and a single unknown
  // forces that unknown to 1; an all-zero complete context is a conflict.
  bool propagate(Conflict* c) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int r = 0; r < m_.num_rays(); ++r) {
        if (val_[r] != 1) continue;
        for (int nb : m_.neighbors[r]) {
          if (val_[nb] == 1) {
            *c = {"orthogonal-pair", {std::min(r, nb), std::max(r, nb)}};
            return false;
          }
          if (val_[nb] == -1) {
            set(nb, 0);
            changed = true;
          }
        }
      }
      for (const auto& ctx : m_.complete_contexts) {
        int unknown = -1, unknowns = 0;
        bool has_one = false;
        for (int r : ctx) {
          if (val_[r] == 1) has_one = true;
          if (val_[r] == -1) {
            ++unknowns;
            unknown = r;
          }
        }
        if (has_one) continue;
        if (unknowns == 0) {
          *c = {"all-zero-context", ctx};
          return false;
        }
        if (unknowns == 1) {
          set(unknown, 1);
          ++stats_.propagations;
          changed = true;
        }
      }
    }
    return true;
  }

  // The most constrained complete context still lacking a 1; branch on its
  // lowest unassigned ray. -1 when every complete context is satisfied.
  int pick_branch() const {
    int best_ctx = -1, best_unknowns = 0;
    for (size_t c = 0; c < m_.complete_contexts.size(); ++c) {
      int unknowns = 0;
      bool has_one = false;
      for (int r : m_.complete_contexts[c]) {
        if (val_[r] == 1) has_one = true;
        if (val_[r] == -1) ++unknowns;
      }
      if (has_one || unknowns == 0) continue;
      if (best_ctx < 0 || unknowns < best_unknowns) {
        best_ctx = int(c);
        best_unknowns = unknowns;
      }
    }
    if (best_ctx < 0) return -1;
    int ray = -1;
    for (int r : m_.complete_contexts[best_ctx])
      if (val_[r] == -1 && (ray < 0 || r < ray)) ray = r;
    return ray;
  }

  Status dive(int depth, Json* tree) {
    size_t mark = trail_.size();
    Conflict c;
    if (!propagate(&c)) {
      *tree = Json{{"leaf", Json{{"kind", c.kind}, {"rays", c.rays}}}};
      undo(mark);
      return Status::Unsat;
    }
    stats_.max_depth = std::max(stats_.max_depth, depth);
    if (++stats_.nodes > budget_) {
      undo(mark);
      return Status::Indet;
    }
    int ray = pick_branch();
    if (ray < 0) {
      if (!enumerate_) {
        witness_.assign(m_.num_rays(), 0);
        for (int r = 0; r < m_.num_rays(); ++r)
          if (val_[r] == 1) witness_[r] = 1;
        undo(mark);
        return Status::Sat;
      }
      for (int r = 0; r < m_.num_rays(); ++r)
        if (val_[r] == -1) {
          ray = r;
          break;
        }
      if (ray < 0) {
        std::vector<int> full(m_.num_rays());
        for (int r = 0; r < m_.num_rays(); ++r) full[r] = val_[r];
        sink_->push_back(std::move(full));
        undo(mark);
        return Status::Unsat;  // keep exploring
      }
    }
    Json sub[2];
    Status st[2];
    for (int v = 0; v < 2; ++v) {
      set(ray, int8_t(v));
      st[v] = dive(depth + 1, &sub[v]);
      undo(trail_.size() - 1);
      if (st[v] == Status::Indet) {
        undo(mark);
        return Status::Indet;
      }
      if (st[v] == Status::Sat) {
        undo(mark);
        return Status::Sat;
      }
    }
    *tree = Json{{"branch", ray}, {"zero", sub[0]}, {"one", sub[1]}};
    undo(mark);
    return Status::Unsat;
  }

  void set(int r, int8_t v) {
    val_[r] = v;
    trail_.push_back(r);
  }
  void undo(size_t mark) {
    while (trail_.size() > mark) {
      val_[trail_.back()] = -1;
      trail_.pop_back();
    }
  }

  const ConstraintModel& m_;
  long long budget_;
  bool enumerate_;
  std::vector<std::vector<int>>* sink_;
  std::vector<int8_t> val_;
  std::vector<int> trail_;
  SearchStats stats_;
  std::vector<int> witness_;
};

Json base_certificate(const ConstraintModel& m) {
  return Json{{"format", "ks-certificate"},
              {"version", 1},
              {"config_hash", hash_hex(m.cfg->hash)},
              {"num_rays", m.num_rays()}};
}

}  // namespace

SearchOutcome ks_search(const ConstraintModel& model,
                        const SearchOptions& opts) {
  Solver solver(model, opts, /*enumerate=*/false, nullptr);
  Json tree;
  Solver::Status st = solver.run(&tree);
  SearchOutcome out;
  out.stats = solver.stats();
  out.certificate = base_certificate(model);
  out.certificate["stats"] = Json{{"nodes", out.stats.nodes},
                                  {"propagations", out.stats.propagations},
                                  {"max_depth", out.stats.max_depth}};
  switch (st) {
    case Solver::Status::Sat:
      out.verdict = Verdict::SAT;
      out.witness = solver.witness();
      out.certificate["witness"] = out.witness;
      break;
    case Solver::Status::Unsat:
      out.verdict = Verdict::UNSAT;
      out.certificate["tree"] = tree;
      break;
    case Solver::Status::Indet:
      out.verdict = Verdict::INDETERMINATE;
      break;
  }
  out.certificate["verdict"] = verdict_name(out.verdict);
  return out;
}

std::vector<std::vector<int>> enumerate_two_valued_measures(
    const ConstraintModel& model, const SearchOptions& opts) {
  std::vector<std::vector<int>> all;
  Solver solver(model, opts, /*enumerate=*/true, &all);
  Json tree;
  if (solver.run(&tree) == Solver::Status::Indet)
    throw Error("node budget exhausted during enumeration");
  std::sort(all.begin(), all.end());
  return all;
}

bool check_assignment(const ConstraintModel& model,
                      const std::vector<int>& assignment, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (int(assignment.size()) != model.num_rays())
    return fail("assignment length mismatch");
  for (int v : assignment)
    if (v != 0 && v != 1) return fail("assignment value outside {0,1}");
  for (int r = 0; r < model.num_rays(); ++r)
    if (assignment[r] == 1)
      for (int nb : model.neighbors[r])
        if (assignment[nb] == 1)
          return fail("orthogonal rays " + std::to_string(r) + "," +
                      std::to_string(nb) + " both carry 1");
  for (const auto& ctx : model.complete_contexts) {
    int ones = 0;
    for (int r : ctx) ones += assignment[r];
    if (ones != 1) return fail("complete context does not carry exactly one 1");
  }
  return true;
}

namespace {

// Independent propagation used only by the verifier.
bool replay_propagate(const ConstraintModel& m, std::vector<int>& val) {
  for (;;) {
    bool changed = false;
    for (int r = 0; r < m.num_rays(); ++r) {
      if (val[r] != 1) continue;
      for (int nb : m.neighbors[r]) {
        if (val[nb] == 1) return false;  // contradiction reached
        if (val[nb] == -1) {
          val[nb] = 0;
          changed = true;
        }
      }
    }
    for (const auto& ctx : m.complete_contexts) {
      int unknowns = 0, unknown = -1, ones = 0;
      for (int r : ctx) {
        if (val[r] == 1) ++ones;
        if (val[r] == -1) {
          ++unknowns;
          unknown = r;
        }
      }
      if (ones > 0) continue;
      if (unknowns == 0) return false;
      if (unknowns == 1) {
        val[unknown] = 1;
        changed = true;
      }
    }
    if (!changed) return true;
  }
}

bool leaf_reason_well_formed(const ConstraintModel& m, const Json& leaf,
                             std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (!leaf.contains("kind") || !leaf.contains("rays"))
    return fail("malformed leaf");
  std::string kind = leaf["kind"];
  std::vector<int> rays = leaf["rays"].get<std::vector<int>>();
  for (int r : rays)
    if (r < 0 || r >= m.num_rays()) return fail("leaf names an unknown ray");
  if (kind == "orthogonal-pair") {
    if (rays.size() != 2 || !m.cfg->orthogonal(rays[0], rays[1]))
      return fail("leaf pair is not an orthogonal pair");
    return true;
  }
  if (kind == "all-zero-context") {
    std::vector<int> sorted = rays;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& ctx : m.complete_contexts)
      if (ctx == sorted) return true;
    return fail("leaf context is not a complete maximal context");
  }
  return fail("unknown leaf kind: " + kind);
}

bool replay_tree(const ConstraintModel& m, const Json& node,
                 std::vector<int> val, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  bool consistent = replay_propagate(m, val);
  if (!consistent) {
    if (!node.contains("leaf")) return fail("refuted state is not a leaf");
    return leaf_reason_well_formed(m, node["leaf"], why);
  }
  if (node.contains("leaf")) return fail("leaf claims a conflict that replay does not reach");
  if (!node.contains("branch") || !node.contains("zero") ||
      !node.contains("one"))
    return fail("malformed branch node");
  int ray = node["branch"];
  if (ray < 0 || ray >= m.num_rays()) return fail("branch on unknown ray");
  if (val[ray] != -1) return fail("branch on an already forced ray");
  std::vector<int> v0 = val, v1 = std::move(val);
  v0[ray] = 0;
  v1[ray] = 1;
  return replay_tree(m, node["zero"], std::move(v0), why) &&
         replay_tree(m, node["one"], std::move(v1), why);
}

}  // namespace

bool verify_certificate(const ConstraintModel& model, const Json& cert,
                        std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (!cert.is_object() || cert.value("format", "") != "ks-certificate" ||
      cert.value("version", 0) != 1)
    return fail("unrecognized certificate format");
  if (cert.value("config_hash", "") != hash_hex(model.cfg->hash))
    return fail("certificate hash does not match the configuration");
  if (cert.value("num_rays", -1) != model.num_rays())
    return fail("certificate ray count mismatch");
  std::string verdict = cert.value("verdict", "");
  if (verdict == "SAT") {
    if (!cert.contains("witness")) return fail("SAT certificate lacks witness");
    return check_assignment(model, cert["witness"].get<std::vector<int>>(),
                            why);
  }
  if (verdict == "UNSAT") {
    if (!cert.contains("tree")) return fail("UNSAT certificate lacks tree");
    return replay_tree(model, cert["tree"],
                       std::vector<int>(model.num_rays(), -1), why);
  }
  return fail("certificate verdict is not conclusive");
}

std::string export_cnf(const ConstraintModel& model, Json* varmap) {
  const int n = model.num_rays();
  std::vector<std::string> clauses;
  for (const auto& ctx : model.complete_contexts) {
    std::string cl;
    for (int r : ctx) cl += std::to_string(r + 1) + " ";
    clauses.push_back(cl + "0");
  }
  for (int i = 0; i < n; ++i)
    for (int j : model.neighbors[i])
      if (j > i)
        clauses.push_back("-" + std::to_string(i + 1) + " -" +
                          std::to_string(j + 1) + " 0");
  std::string out = "c coloring constraints, one variable per ray\n";
  out += "p cnf " + std::to_string(n) + " " + std::to_string(clauses.size()) +
         "\n";
  for (const auto& cl : clauses) out += cl + "\n";
  if (varmap) {
    Json vars = Json::object();
    for (int r = 0; r < n; ++r) {
      Json v{{"ray", r}};
      if (r < int(model.cfg->labels.size())) v["label"] = model.cfg->labels[r];
      vars[std::to_string(r + 1)] = v;
    }
    *varmap = Json{{"config_hash", hash_hex(model.cfg->hash)},
                   {"num_vars", n},
                   {"num_clauses", int(clauses.size())},
                   {"variables", vars}};
  }
  return out;
}

}  // namespace kslat
