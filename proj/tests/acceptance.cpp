// Acceptance runner: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kslat/algebra.hpp"
#include "kslat/measures.hpp"
#include "kslat/presheaf.hpp"
#include "kslat/raydoc.hpp"
#include "kslat/search.hpp"

using namespace kslat;

namespace {

int g_failures = 0;

void report(int id, const std::string& desc, bool ok,
            const std::string& note = "") {
  std::printf("%s  criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", id,
              desc.c_str(), note.empty() ? "" : " -- ", note.c_str());
  if (!ok) ++g_failures;
}

template <class Fn>
void run(int id, const std::string& desc, Fn fn) {
  try {
    std::string note;
    bool ok = fn(&note);
    report(id, desc, ok, note);
  } catch (const std::exception& ex) {
    report(id, desc, false, std::string("exception: ") + ex.what());
  }
}

std::string data_path(const std::string& name) {
  return std::string(KSLAT_DATA_DIR) + "/" + name;
}

struct Built {
  RayConfiguration cfg;
  ContextSet ctxs;
  ConstraintModel model;
};

Built build(const std::string& name) {
  Built b;
  b.cfg = load_ray_file(data_path(name));
  b.ctxs = enumerate_contexts(b.cfg);
  b.model = build_constraint_model(b.cfg, b.ctxs);
  return b;
}

// ---------------------------------------------------------------------------
// A deliberately simple clause-level solver, used only to cross-validate the
// exported CNF without reference to the ray structures.

struct Cnf {
  int vars = 0;
  std::vector<std::vector<int>> clauses;
};

Cnf parse_dimacs(const std::string& text) {
  Cnf cnf;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    if (line[0] == 'p') {
      std::istringstream ls(line);
      std::string p, fmt;
      int m;
      ls >> p >> fmt >> cnf.vars >> m;
      continue;
    }
    std::istringstream ls(line);
    std::vector<int> clause;
    int lit;
    while (ls >> lit && lit != 0) clause.push_back(lit);
    if (!clause.empty()) cnf.clauses.push_back(std::move(clause));
  }
  return cnf;
}

bool dpll(const Cnf& cnf, std::vector<int>& val) {
  for (;;) {  // unit propagation
    bool changed = false;
    for (const auto& clause : cnf.clauses) {
      int unassigned = 0, last = 0;
      bool sat = false;
      for (int lit : clause) {
        int v = val[std::abs(lit)];
        if (v == 0) {
          ++unassigned;
          last = lit;
        } else if ((v > 0) == (lit > 0)) {
          sat = true;
        }
      }
      if (sat) continue;
      if (unassigned == 0) return false;
      if (unassigned == 1) {
        val[std::abs(last)] = last > 0 ? 1 : -1;
        changed = true;
      }
    }
    if (!changed) break;
  }
  int pick = 0;
  for (int v = 1; v <= cnf.vars && pick == 0; ++v)
    if (val[v] == 0) pick = v;
  if (pick == 0) return true;
  for (int choice : {1, -1}) {
    std::vector<int> saved = val;
    val[pick] = choice;
    if (dpll(cnf, val)) return true;
    val = saved;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Seeded float constructions used by the statistical criteria.

std::vector<CMat> haar_basis(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<CMat> cols;
  for (int j = 0; j < n; ++j) {
    CMat v(n, 1);
    for (int i = 0; i < n; ++i) v(i, 0) = Complex(gauss(rng), gauss(rng));
    for (const CMat& u : cols) {
      Complex c = inner(u, v);
      v -= u * c;
    }
    double norm = std::sqrt(std::abs(inner(v, v)));
    v *= Complex(1.0 / norm, 0.0);
    cols.push_back(std::move(v));
  }
  return cols;
}

RayConfiguration two_basis_config(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CMat> rays = haar_basis(n, rng);
  for (CMat& v : haar_basis(n, rng)) rays.push_back(std::move(v));
  return make_ray_configuration_float(n, std::move(rays));
}

// ---------------------------------------------------------------------------

bool criterion_peres(std::string* note) {
  auto t0 = std::chrono::steady_clock::now();
  Built b = build("peres33.rays");
  SearchOutcome out = ks_search(b.model);
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::string why;
  bool verified = verify_certificate(b.model, out.certificate, &why);
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s in %.3fs, replay %s",
                verdict_name(out.verdict), secs,
                verified ? "verified" : why.c_str());
  *note = buf;
  return out.verdict == Verdict::UNSAT && secs < 10.0 && verified;
}

bool criterion_ceg(std::string* note) {
  Built b = build("ceg18.rays");
  SearchOutcome out = ks_search(b.model);
  std::string why;
  bool verified = verify_certificate(b.model, out.certificate, &why);
  Json varmap;
  Cnf cnf = parse_dimacs(export_cnf(b.model, &varmap));
  std::vector<int> val(cnf.vars + 1, 0);
  bool cnf_sat = dpll(cnf, val);
  *note = std::string(verdict_name(out.verdict)) + ", independent CNF solve " +
          (cnf_sat ? "SAT" : "UNSAT") + " (" +
          std::to_string(cnf.clauses.size()) + " clauses)";
  return out.verdict == Verdict::UNSAT && verified && !cnf_sat &&
         varmap["num_vars"] == 18;
}

bool criterion_dim2(std::string* note) {
  int sat = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 3.14159265358979);
    std::vector<CMat> rays;
    for (int pair = 0; pair < 4; ++pair) {
      double t = angle(rng);
      CMat u(2, 1), w(2, 1);
      u(0, 0) = std::cos(t);
      u(1, 0) = std::sin(t);
      w(0, 0) = -std::sin(t);
      w(1, 0) = std::cos(t);
      rays.push_back(std::move(u));
      rays.push_back(std::move(w));
    }
    RayConfiguration cfg =
        make_ray_configuration_float(2, std::move(rays), {}, /*dedupe=*/true);
    ContextSet ctxs = enumerate_contexts(cfg);
    ConstraintModel model = build_constraint_model(cfg, ctxs);
    SearchOutcome out = ks_search(model);
    if (out.verdict == Verdict::SAT && check_assignment(model, out.witness) &&
        verify_certificate(model, out.certificate))
      ++sat;
  }
  *note = std::to_string(sat) + "/100 seeds SAT with verified witnesses";
  return sat == 100;
}

bool criterion_random_states(std::string* note) {
  double worst = 0.0;
  for (int n = 2; n <= 8; ++n) {
    RayConfiguration cfg = two_basis_config(n, 1000 + n);
    ContextSet ctxs = enumerate_contexts(cfg);
    ProjectionFamily fam = build_projection_family(cfg, ctxs);
    std::vector<CMat> projections;
    for (int e = 0; e < fam.size(); ++e)
      projections.push_back(family_projection_f(fam, e).op);
    for (int trial = 0; trial < 1000; ++trial) {
      DensityOperator rho =
          DensityOperator::random(n, std::uint64_t(n) * 100000 + trial);
      std::vector<double> values;
      values.reserve(projections.size());
      for (const CMat& p : projections) values.push_back(rho.value(p));
      auto rep = check_probability_measure<double>(fam, values, 1e-10);
      if (!rep.pass()) {
        *note = "axiom violation at dim " + std::to_string(n) + " trial " +
                std::to_string(trial);
        return false;
      }
      worst = std::max(worst, rep.max_residual);
    }
  }

  // |mu(E) - mu(F)| <= ||E - F|| over sampled projection pairs
  std::mt19937_64 rng(77);
  int pairs_checked = 0;
  for (int n = 2; n <= 8; ++n) {
    RayConfiguration cfg = two_basis_config(n, 1000 + n);
    ContextSet ctxs = enumerate_contexts(cfg);
    ProjectionFamily fam = build_projection_family(cfg, ctxs);
    std::vector<CMat> projections;
    for (int e = 0; e < fam.size(); ++e)
      projections.push_back(family_projection_f(fam, e).op);
    DensityOperator rho = DensityOperator::random(n, 31 + n);
    std::uniform_int_distribution<int> pick(0, int(projections.size()) - 1);
    int pairs = 10000 / 7 + 1;
    for (int t = 0; t < pairs; ++t) {
      const CMat& e = projections[pick(rng)];
      const CMat& f = projections[pick(rng)];
      double lhs = std::abs(rho.value(e) - rho.value(f));
      double rhs = operator_norm(e - f);
      if (lhs > rhs + 1e-10) {
        *note = "norm bound violated at dim " + std::to_string(n);
        return false;
      }
      ++pairs_checked;
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "7000 states pass at 1e-10 (worst %.2e); %d norm pairs",
                worst, pairs_checked);
  *note = buf;
  return pairs_checked >= 10000;
}

bool criterion_fractional(std::string* note) {
  for (int n = 2; n <= 8; ++n) {
    FractionalWitness w =
        fractional_witness(DensityOperator::maximally_mixed(n));
    if (!w.found || std::abs(w.value - 1.0 / n) > 1e-12) {
      *note = "maximally mixed witness failed at dim " + std::to_string(n);
      return false;
    }
    for (int trial = 0; trial < 20; ++trial) {
      DensityOperator rho =
          DensityOperator::random(n, std::uint64_t(n) * 977 + trial);
      FractionalWitness wr = fractional_witness(rho);
      if (!wr.found || wr.value <= 1e-6 || wr.value >= 1.0 - 1e-6) {
        *note = "no strictly fractional value at dim " + std::to_string(n);
        return false;
      }
    }
  }
  // the one-dimensional (abelian) case genuinely has none
  FractionalWitness none = fractional_witness(DensityOperator::diagonal({1.0}));
  *note = "witness exactly 1/n for the tracial states; none in dim 1";
  return !none.found;
}

bool criterion_gns(std::string* note) {
  FiniteAlgebra alg13({1, 3});
  State chi = [](const CMat& a) { return a(0, 0); };
  GnsResult g1 = gns_construct(alg13, chi);
  double mult = multiplicativity_residual(alg13, chi);

  FiniteAlgebra alg2({2});
  State tr = [](const CMat& a) { return a.trace() * Complex(0.5, 0.0); };
  GnsResult g2 = gns_construct(alg2, tr);

  char buf[128];
  std::snprintf(buf, sizeof buf,
                "character: dim %d, mult residual %.1e; trace on 2x2: dim %d",
                g1.dim, mult, g2.dim);
  *note = buf;
  return g1.dim == 1 && mult <= 1e-10 && g1.rep_residual <= 1e-10 &&
         g2.dim == 4 && g2.rep_residual <= 1e-10;
}

bool criterion_center(std::string* note) {
  CenterDecomposition d13 = decompose_center(FiniteAlgebra({1, 3}));
  FiniteAlgebra alg13({1, 3});
  bool abelian_ok =
      d13.verdict == ValuationVerdict::ExistsAbelian && d13.valuation &&
      d13.valuation(CMat::identity(4)) == Complex(1.0, 0.0) &&
      d13.valuation(alg13.central_projection(1)) == Complex(0.0, 0.0) &&
      d13.valuation(alg13.matrix_unit(1, 2, 2)) == Complex(0.0, 0.0);

  bool none_ok =
      decompose_center(FiniteAlgebra({3, 4})).verdict == ValuationVerdict::None;
  bool i2_ok = decompose_center(FiniteAlgebra({2})).verdict ==
               ValuationVerdict::ExistsI2Finite;

  bool certs_ok = true;
  for (int n = 2; n <= 6; ++n) {
    std::string why;
    if (!verify_no_go_witness(multiplicative_no_go_witness(n), &why))
      certs_ok = false;
  }
  *note = std::string("[1,3] ") + valuation_verdict_name(d13.verdict) +
          ", [3,4] NONE, [2] EXISTS-I2-FINITE, no-go n=2..6 " +
          (certs_ok ? "verified" : "rejected");
  return abelian_ok && none_ok && i2_ok && certs_ok;
}

bool criterion_sections(std::string* note) {
  for (const std::string name :
       {"basis3.rays", "dim2_pairs.rays", "peres33.rays", "ceg18.rays"}) {
    Built b = build(name);
    PresheafBundle bundle = build_presheaf(b.cfg, b.ctxs);
    if (!verify_functoriality(bundle)) {
      *note = "restriction maps not functorial for " + name;
      return false;
    }
    bool sat = ks_search(b.model).verdict == Verdict::SAT;
    GlobalSectionResult sec = global_section_search(bundle);
    if (sat != sec.exists) {
      *note = "search and section existence disagree for " + name;
      return false;
    }
  }
  // bijection on the configuration with many solutions
  Built b = build("dim2_pairs.rays");
  PresheafBundle bundle = build_presheaf(b.cfg, b.ctxs);
  auto assignments = enumerate_two_valued_measures(b.model);
  GlobalSectionResult sections = global_section_search(bundle, true);
  std::set<std::vector<int>> image;
  for (const auto& s : sections.all) {
    auto a = section_to_assignment(bundle, s);
    if (!check_assignment(b.model, a) || assignment_to_section(bundle, a) != s)
      return false;
    image.insert(a);
  }
  *note = "verdicts agree on 4 configurations; " +
          std::to_string(sections.all.size()) + " sections <-> " +
          std::to_string(assignments.size()) + " assignments";
  return sections.all.size() == assignments.size() &&
         image.size() == assignments.size();
}

bool criterion_state_sections(std::string* note) {
  double worst = 0.0;
  Built peres = build("peres33.rays");
  PresheafBundle pb = build_presheaf(peres.cfg, peres.ctxs);
  for (int trial = 0; trial < 10; ++trial) {
    StateSection s =
        state_presheaf_section(pb, DensityOperator::random(3, 500 + trial));
    worst = std::max(worst, s.max_edge_residual);
    if (classify_state_section(pb, s) != "MIXED") {
      *note = "a generic state classified as a point section";
      return false;
    }
  }

  Built b3 = build("basis3.rays");
  PresheafBundle bb = build_presheaf(b3.cfg, b3.ctxs);
  CMat v(3, 1);
  v(2, 0) = 1.0;
  StateSection pure = state_presheaf_section(bb, DensityOperator::pure(v));
  worst = std::max(worst, pure.max_edge_residual);
  bool all_point = classify_state_section(bb, pure) == "ALL-POINT";
  // the all-point section must reproduce an admissible coloring
  std::vector<int> section;
  for (const auto& w : pure.weights)
    section.push_back(
        int(std::max_element(w.begin(), w.end()) - w.begin()));
  bool witness_ok = check_assignment(
      b3.model, section_to_assignment(bb, section));
  StateSection mixed =
      state_presheaf_section(bb, DensityOperator::maximally_mixed(3));
  char buf[96];
  std::snprintf(buf, sizeof buf, "worst edge residual %.2e", worst);
  *note = buf;
  return worst <= 1e-12 && all_point && witness_ok &&
         classify_state_section(bb, mixed) == "MIXED";
}

bool criterion_exact_lift(std::string* note) {
  for (const std::string name : {"basis3.rays", "dim2_pairs.rays"}) {
    Built b = build(name);
    SearchOutcome out = ks_search(b.model);
    if (out.verdict != Verdict::SAT) return false;

    ProjectionFamily fam = build_projection_family(b.cfg, b.ctxs);
    auto values = lift_two_valued<Surd>(fam, out.witness);
    auto measure = check_probability_measure<Surd>(fam, values, Surd(0));
    if (!measure.pass() || measure.max_residual != Surd(0)) {
      *note = "lifted measure has nonzero residual for " + name;
      return false;
    }

    WitnessValuation<XComplex> val{&b.cfg, &b.ctxs, out.witness};
    for (size_t c = 0; c < b.ctxs.contexts.size(); ++c) {
      auto rep = check_func_on_context(val, int(c));
      if (!rep.pass(0.0)) {
        *note = "context character law fails exactly for " + name;
        return false;
      }
    }

    std::vector<XMat> generators;
    for (const auto& ctx : b.ctxs.contexts) {
      auto atoms = context_atoms_x(b.cfg, ctx);
      XMat a = XMat::zero(b.cfg.dim, b.cfg.dim);
      for (size_t i = 0; i < atoms.size(); ++i)
        a += atoms[i].op * XComplex(Surd(long(i) + 1));
      generators.push_back(std::move(a));
    }
    auto quasi = quasi_state_check<XComplex>(val.as_functional(), generators);
    if (!quasi.pass(0.0)) {
      *note = "quasi-state law fails exactly for " + name;
      return false;
    }
  }
  *note = "witness lifts satisfy measure, character, and quasi-state laws "
          "with residual exactly 0";
  return true;
}

}  // namespace

int main() {
  run(1, "33-ray set uncolorable under 10s with replay-verified refutation",
      criterion_peres);
  run(2, "18-ray set uncolorable, cross-validated at the CNF level",
      criterion_ceg);
  run(3, "random antipodal dim-2 configurations colorable (100 seeds)",
      criterion_dim2);
  run(4, "1000 random states per dim 2..8 satisfy the measure axioms",
      criterion_random_states);
  run(5, "strictly fractional projection values for non-character states",
      criterion_fractional);
  run(6, "GNS: characters act on dimension 1, the 2x2 trace on dimension 4",
      criterion_gns);
  run(7, "central decomposition verdicts and no-go certificates",
      criterion_center);
  run(8, "global sections match the coloring search, with a bijection",
      criterion_sections);
  run(9, "state sections push forward exactly; point sections classified",
      criterion_state_sections);
  run(10, "exact lifts of witnesses obey every law with zero residual",
      criterion_exact_lift);

  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", g_failures);
  return 1;
}
