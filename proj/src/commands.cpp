#include "shedkit/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "shedkit/errors.hpp"

namespace shedkit::commands {

namespace dr = shedkit::drinfeld;
using shedkit::to_string;

std::string to_string(Theorem t) {
  switch (t) {
    case Theorem::terminal: return "terminal";
    case Theorem::essential: return "essential";
    case Theorem::compact_terminal: return "compact-terminal";
    case Theorem::compact_essential: return "compact-essential";
  }
  return "?";
}

const std::vector<Theorem>& all_theorems() {
  static const std::vector<Theorem> all{Theorem::terminal, Theorem::essential,
                                        Theorem::compact_terminal,
                                        Theorem::compact_essential};
  return all;
}

Theorem parse_theorem(const std::string& s) {
  for (Theorem t : all_theorems()) {
    if (to_string(t) == s) return t;
  }
  throw UsageError("unknown theorem '" + s +
                   "' (terminal, essential, compact-terminal, compact-essential)");
}

namespace {

std::string cone_str(const std::vector<LatticeVector>& rays) {
  std::string s = "<";
  for (std::size_t i = 0; i < rays.size(); ++i) s += (i ? "," : "") + rays[i].str();
  return s + ">";
}

io::Check check_regular(const Fan& f) {
  for (std::size_t i = 0; i < f.cones().size(); ++i) {
    Integer mu = multiplicity(f.cone(i));
    if (mu != 1) {
      return {"regular", false,
              "cone " + cone_str(f.cone_rays(i)) + " has multiplicity " + mu.get_str()};
    }
  }
  return {"regular", true, ""};
}

io::Check check_terminal(const Fan& f) {
  if (auto w = terminal_witness(f)) {
    return {"terminal", false,
            "point " + w->point.str() + " with l = " + to_string(w->level) +
                " in the shed of " + cone_str(w->cone)};
  }
  return {"terminal", true, ""};
}

io::Check check_roof(const Fan& f, bool strict) {
  RoofReport r = roof_concavity(f);
  const Concavity needed = strict ? Concavity::strictly_concave : Concavity::concave;
  for (const auto& w : r.walls) {
    if (w.verdict < needed) {
      return {strict ? "strictly-concave-roof" : "concave-roof", false,
              "wall " + cone_str(w.wall) + ": l_" + cone_str(w.cone) + "(" +
                  w.opposite.str() + ") = " + to_string(w.level)};
    }
  }
  return {strict ? "strictly-concave-roof" : "concave-roof", true,
          std::to_string(r.walls.size()) + " internal walls, " + to_string(r.verdict)};
}

io::Check check_complete(const Fan& f) {
  bool ok = is_complete(f);
  std::string witness;
  if (!ok) {
    for (const auto& w : walls(f)) {
      if (!w.internal()) {
        std::vector<LatticeVector> rays;
        for (std::size_t r : w.rays) rays.push_back(f.rays()[r]);
        witness = "wall " + cone_str(rays) + " lies on a single cone";
        break;
      }
    }
    if (witness.empty()) witness = "a sampled direction is not covered exactly once";
  }
  return {"complete", ok, witness};
}

Fan base_fan(Theorem t, const dr::ModuliParams& p) {
  if (t == Theorem::terminal || t == Theorem::essential) {
    return dr::build_construction("sigma_M", p).fan;
  }
  return dr::bar_sigma_M(p);
}

SubdivisionSchedule schedule_for(Theorem t, const dr::ModuliParams& p) {
  switch (t) {
    case Theorem::terminal: return dr::terminal_schedule(p);
    case Theorem::essential: {
      SubdivisionSchedule s = dr::terminal_schedule(p);
      const SubdivisionSchedule ess = dr::essential_schedule(p);
      for (const auto& e : ess.entries()) s.add(e.ray, e.label);
      return s;
    }
    case Theorem::compact_terminal: return dr::compactified_terminal_schedule(p);
    case Theorem::compact_essential: return dr::compactified_essential_schedule(p);
  }
  throw UsageError("unknown theorem");
}

// Rays (k q² + l q + 1, −k, −k q − l) of the essential schedule, checked
// against what the replay actually added.
io::Check check_essential_rays(const Fan& f, const dr::ModuliParams& p) {
  std::set<LatticeVector> added(f.rays().begin(), f.rays().end());
  for (const auto& r : {dr::e1(p), dr::e2(), dr::e3(), dr::terminal_ray(p),
                        LatticeVector{1, 0, 0}}) {
    added.erase(r);
  }
  std::set<LatticeVector> pattern;
  const long q = p.q.get_si();
  for (long k = 0; k <= q; ++k) {
    for (long l = 1; l <= q; ++l) {
      if (k == 0 && l == q) continue;
      pattern.insert(dr::essential_point(p, k, l));
    }
  }
  if (added == pattern) {
    return {"essential-rays", true, std::to_string(added.size()) + " rays"};
  }
  std::string diff;
  for (const auto& r : added)
    if (!pattern.count(r)) diff += " unexpected " + r.str();
  for (const auto& r : pattern)
    if (!added.count(r)) diff += " missing " + r.str();
  return {"essential-rays", false, diff.substr(1)};
}

// The G-desingularization of σ̃_0 should walk Q_1, ..., Q_q with
// μ(σ̃_k) = q + 1 − k and l(Q_{k+1}) = 1 + 1/(q + 1 − k).
io::Check check_boundary_chain(const dr::ModuliParams& p) {
  GResult g = g_desingularize(Fan::from_cone(dr::sigma_tilde(p, 0)));
  const long q = p.q.get_si();
  std::string problem;
  if (g.status != GStatus::regular) problem = g.diagnostic;
  if (problem.empty() && g.steps.size() != static_cast<std::size_t>(q)) {
    problem = std::to_string(g.steps.size()) + " steps, expected " + std::to_string(q);
  }
  for (long k = 0; problem.empty() && k < q; ++k) {
    const GStep& s = g.steps[k];
    Integer mu = p.q + 1 - k;
    if (s.point != dr::boundary_point(p, k + 1) || s.mu != mu ||
        s.level != 1 + make_rational(1, mu)) {
      problem = "step " + std::to_string(k + 1) + " gave " + s.point.str() +
                " mu " + s.mu.get_str() + " l " + to_string(s.level);
    }
  }
  return {"sigma-tilde-chain", problem.empty(),
          problem.empty() ? std::to_string(q) + " steps Q_1..Q_q" : problem};
}

io::Check check_sigma_tilde0_form(const dr::ModuliParams& p, io::RunReport& report) {
  const auto cone = dr::sigma_tilde(p, 0);
  SupportForm computed = support_form(cone);
  SupportForm reference = dr::reference_sigma_tilde0_form(p);
  const Integer& q = p.q;
  Rational expected_y = make_rational(q * q + q - 1, q + 1);
  bool ok = computed.coefficients[1] == expected_y;
  for (const auto& r : cone.rays()) ok = ok && computed(r) == 1;
  if (computed.coefficients != reference.coefficients) {
    report.notes.push_back(
        "support form of sigma_tilde_0: computed y-coefficient " +
        to_string(computed.coefficients[1]) + ", reference form " +
        to_string(reference.coefficients[1]) + "; the reference form gives l(e1) = " +
        to_string(reference(dr::e1(p))));
  }
  std::string w = "(";
  for (std::size_t i = 0; i < 3; ++i) w += (i ? "," : "") + to_string(computed.coefficients[i]);
  return {"sigma-tilde0-form", ok, w + ")"};
}

}  // namespace

ReplayResult replay(Theorem t, const dr::ModuliParams& p) {
  ReplayResult out;
  out.report.construction = to_string(t);
  out.report.q = p.q;
  SubdivisionSchedule s = schedule_for(t, p);
  for (const auto& w : s.warnings()) out.report.notes.push_back(w);
  ScheduleResult r = apply_schedule(base_fan(t, p), s);
  out.fan = r.fan;
  out.log = std::move(r.log);
  const Fan& f = out.fan;
  switch (t) {
    case Theorem::terminal:
      out.report.checks.push_back(check_terminal(f));
      out.report.checks.push_back(check_roof(f, true));
      break;
    case Theorem::essential:
      out.report.checks.push_back(check_regular(f));
      out.report.checks.push_back(check_essential_rays(f, p));
      break;
    case Theorem::compact_terminal:
      out.report.checks.push_back(check_terminal(f));
      out.report.checks.push_back(check_complete(f));
      break;
    case Theorem::compact_essential:
      out.report.checks.push_back(check_regular(f));
      out.report.checks.push_back(check_complete(f));
      out.report.checks.push_back(check_boundary_chain(p));
      out.report.checks.push_back(check_sigma_tilde0_form(p, out.report));
      break;
  }
  out.report.notes.push_back(std::to_string(f.rays().size()) + " rays, " +
                             std::to_string(f.cones().size()) + " maximal cones");
  return out;
}

const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names{"regular", "terminal", "concave-roof",
                                              "complete", "shed-volume"};
  return names;
}

io::RunReport check_props(const Fan& f, const std::vector<std::string>& props,
                          const std::string& name) {
  io::RunReport r;
  r.construction = name;
  for (const auto& prop : props) {
    if (prop == "regular") {
      r.checks.push_back(check_regular(f));
    } else if (prop == "terminal") {
      r.checks.push_back(check_terminal(f));
    } else if (prop == "concave-roof") {
      r.checks.push_back(check_roof(f, false));
    } else if (prop == "complete") {
      r.checks.push_back(check_complete(f));
    } else if (prop == "shed-volume") {
      r.add("shed-volume", true, to_string(shed_volume(f)));
    } else {
      throw UsageError("unknown property '" + prop +
                       "' (regular, terminal, concave-roof, complete, shed-volume)");
    }
  }
  return r;
}

std::vector<SweepEntry> sweep(long q_lo, long q_hi,
                              const std::vector<Theorem>& theorems, unsigned jobs) {
  if (q_lo < 2) throw PreconditionError("q must be at least 2, got " + std::to_string(q_lo));
  if (q_lo > q_hi) throw PreconditionError("empty q range");
  if (q_hi > kMaxSweepQ) {
    throw ResourceError("q range exceeds the sweep bound " + std::to_string(kMaxSweepQ));
  }
  std::vector<SweepEntry> entries;
  for (long q = q_lo; q <= q_hi; ++q) {
    for (Theorem t : all_theorems()) {
      if (std::find(theorems.begin(), theorems.end(), t) != theorems.end()) {
        entries.push_back({t, Integer(q), false, {}, std::nullopt});
      }
    }
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) {
      SweepEntry& e = entries[i];
      try {
        ReplayResult r = replay(e.theorem, dr::ModuliParams(e.q));
        e.pass = r.report.pass();
        for (const auto& c : r.report.checks)
          if (!c.pass) e.failed.push_back(c.name);
        e.fan = std::move(r.fan);
      } catch (const std::exception& ex) {
        e.pass = false;
        e.failed.push_back(std::string("error: ") + ex.what());
      }
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, entries.size()));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return entries;
}

std::string sweep_report_json(long q_lo, long q_hi, const std::vector<Theorem>& theorems,
                              const std::vector<SweepEntry>& entries) {
  nlohmann::ordered_json j;
  j["q_range"] = std::to_string(q_lo) + ".." + std::to_string(q_hi);
  nlohmann::ordered_json ts = nlohmann::ordered_json::array();
  for (Theorem t : all_theorems())
    if (std::find(theorems.begin(), theorems.end(), t) != theorems.end())
      ts.push_back(to_string(t));
  j["theorems"] = ts;
  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  std::size_t passed = 0;
  for (const auto& e : entries) {
    nlohmann::ordered_json row;
    row["theorem"] = to_string(e.theorem);
    row["q"] = e.q.get_si();
    row["pass"] = e.pass;
    row["failed"] = e.failed;
    results.push_back(row);
    passed += e.pass ? 1 : 0;
  }
  j["results"] = results;
  j["passed"] = passed;
  j["total"] = entries.size();
  j["pass"] = passed == entries.size();
  return j.dump(2) + "\n";
}

std::string basic_invariants_csv(const dr::ModuliParams& p,
                                 std::optional<dr::InvariantKind> kind,
                                 std::optional<Integer> delta4) {
  std::ostringstream os;
  os << "kind,delta1,delta2,delta3,delta4,lattice\n";
  for (const auto& e : dr::enumerate_basic_invariants(p)) {
    if (kind && e.kind != *kind) continue;
    if (delta4 && e.delta[3] != *delta4) continue;
    os << dr::to_string(e.kind);
    for (const auto& d : e.delta) os << ',' << d.get_str();
    os << ",\"" << dr::exponent_to_lattice(p, e).str() << "\"\n";
  }
  return os.str();
}

std::string shed_points_csv(const Fan& f) {
  std::ostringstream os;
  os << "cone,point,level,kind\n";
  for (std::size_t i = 0; i < f.cones().size(); ++i) {
    SimplicialCone c = f.cone(i);
    SupportForm l = support_form(c);
    for (const auto& x : shed_lattice_points(c)) {
      Rational level = l(x);
      const char* kind = c.has_ray(x) ? "generator" : (level < 1 ? "interior" : "roof");
      os << i << ",\"" << x.str() << "\"," << to_string(level) << ',' << kind << '\n';
    }
  }
  return os.str();
}

std::string hilbert_basis_csv(const Fan& f, const Integer& max_multiplicity) {
  std::ostringstream os;
  os << "cone,element\n";
  for (std::size_t i = 0; i < f.cones().size(); ++i) {
    for (const auto& x : hilbert_basis(f.cone(i), max_multiplicity)) {
      os << i << ",\"" << x.str() << "\"\n";
    }
  }
  return os.str();
}

std::string resolution_2d_csv(const Fan& f) {
  if (f.dim() != 2) throw DimensionError("2d-resolution needs a 2-dimensional fan");
  std::ostringstream os;
  os << "cone,point\n";
  for (std::size_t i = 0; i < f.cones().size(); ++i) {
    for (const auto& x : minimal_resolution_2d(f.cone(i))) {
      os << i << ",\"" << x.str() << "\"\n";
    }
  }
  return os.str();
}

Integer max_multiplicity_from_env() {
  const char* v = std::getenv("SHEDKIT_MAX_MULT");
  if (v == nullptr || *v == '\0') return kDefaultMaxHilbertMultiplicity;
  Integer z;
  if (z.set_str(v, 10) != 0 || z <= 0) {
    throw UsageError(std::string("SHEDKIT_MAX_MULT must be a positive integer, got '") +
                     v + "'");
  }
  return z;
}

}  // namespace shedkit::commands
