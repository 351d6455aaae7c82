#include "shedkit/drinfeld.hpp"

#include <algorithm>

#include "shedkit/errors.hpp"

namespace shedkit::drinfeld {

namespace {

LatticeVector vec(Integer a, Integer b, Integer c) {
  return LatticeVector(std::vector<Integer>{std::move(a), std::move(b),
                                            std::move(c)});
}

LatticeVector vec(Integer a, Integer b) {
  return LatticeVector(std::vector<Integer>{std::move(a), std::move(b)});
}

// Loop bound for ranges indexed by q. Anything this large would not finish
// anyway.
long small(const Integer& z) {
  if (!z.fits_slong_p()) throw ResourceError("q is too large to iterate over");
  return z.get_si();
}

std::string label_of(const char* prefix, const Integer& k) {
  return std::string(prefix) + k.get_str();
}

}  // namespace

ModuliParams::ModuliParams(Integer value) : q(std::move(value)) {
  if (q < 2) throw PreconditionError("q must be at least 2, got " + q.get_str());
}

Integer weight_sum(const ModuliParams& p) {
  const Integer& q = p.q;
  return q * q * q + q * q + q + 1;
}

LatticeVector e1(const ModuliParams& p) {
  const Integer& q = p.q;
  return vec(weight_sum(p), -q - 1, -q * q - q - 1);
}
LatticeVector e2() { return LatticeVector{0, 1, 0}; }
LatticeVector e3() { return LatticeVector{0, 0, 1}; }
LatticeVector e4() { return LatticeVector{-1, 0, 0}; }

LatticeVector terminal_ray(const ModuliParams& p) {
  return vec(p.q * p.q + 1, -1, -p.q);
}

LatticeVector essential_point(const ModuliParams& p, const Integer& k,
                              const Integer& l) {
  const Integer& q = p.q;
  return vec(k * q * q + l * q + 1, -k, -k * q - l);
}

LatticeVector boundary_point(const ModuliParams& p, const Integer& k) {
  const Integer& q = p.q;
  return vec(k * q * q + q, -k, -k * q - 1);
}

SimplicialCone sigma_M(const ModuliParams& p) {
  return SimplicialCone({e1(p), e2(), e3()});
}

SimplicialCone sigma_M_dual_expected(const ModuliParams& p) {
  const Integer& q = p.q;
  return SimplicialCone({LatticeVector{1, 0, 0}, vec(1, q * q + 1, 0),
                         vec(q * q + q + 1, 0, weight_sum(p))});
}

Integer covering_degree(const ModuliParams& p) {
  return weight_sum(p) * (p.q * p.q + 1);
}

namespace {

std::map<LatticeVector, std::string> base_labels(const ModuliParams& p,
                                                 bool with_e4) {
  std::map<LatticeVector, std::string> labels{
      {e1(p), "e1"}, {e2(), "e2"}, {e3(), "e3"}};
  if (with_e4) labels[e4()] = "e4";
  return labels;
}

}  // namespace

Fan bar_sigma_M(const ModuliParams& p) {
  // Rays e1..e4; each maximal cone omits one of them.
  std::vector<LatticeVector> rays{e1(p), e2(), e3(), e4()};
  std::vector<ConeIndices> cones{{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
  return Fan(3, rays, cones, base_labels(p, true));
}

WpsWeights wps_weights(const ModuliParams& p) {
  WpsWeights w;
  Integer power = 1;
  for (int k = 0; k < 4; ++k) {
    power *= p.q;
    w.raw[k] = power - 1;
  }
  w.gcd = 0;
  for (const auto& r : w.raw) mpz_gcd(w.gcd.get_mpz_t(), w.gcd.get_mpz_t(), r.get_mpz_t());
  if (w.gcd != p.q - 1) {
    throw ContradictionError("gcd of weights is " + w.gcd.get_str() +
                             ", expected q-1");
  }
  for (int k = 0; k < 4; ++k) w.normalized[k] = w.raw[k] / w.gcd;
  return w;
}

Integer weight_of_coefficient(int k, const ModuliParams& p) {
  if (k < 1 || k > 4) {
    throw PreconditionError("coefficient index must be in 1..4, got " +
                            std::to_string(k));
  }
  Integer power = 1;
  for (int i = 0; i < k; ++i) power *= p.q;
  return power - 1;
}

SimplicialCone sigma_k(const ModuliParams& p, const Integer& k) {
  if (k < 2 || k > p.q + 1) throw PreconditionError("sigma_k needs 2 <= k <= q+1");
  return SimplicialCone({e2(), terminal_ray(p), essential_point(p, k, 1)});
}

SimplicialCone sigma_q_plus_1(const ModuliParams& p) {
  return sigma_k(p, p.q + 1);
}

SimplicialCone sigma_prime_0(const ModuliParams& p) {
  return SimplicialCone({LatticeVector{1, 0, 0}, e2(), terminal_ray(p)});
}

SimplicialCone sigma_tilde(const ModuliParams& p, const Integer& k) {
  if (k < 0 || k > p.q) throw PreconditionError("sigma_tilde needs 0 <= k <= q");
  return SimplicialCone({e4(), boundary_point(p, k), e1(p)});
}

SupportForm reference_sigma_tilde0_form(const ModuliParams& p) {
  const Integer& q = p.q;
  return SupportForm{{Rational(-1), make_rational(q * q + q + 1, q + 1),
                      Rational(-(q + 1))}};
}

SubdivisionSchedule terminal_schedule(const ModuliParams& p) {
  SubdivisionSchedule s;
  s.add(terminal_ray(p), "terminal (q^2+1,-1,-q)");
  s.add(LatticeVector{1, 0, 0}, "terminal (1,0,0)");
  return s;
}

SubdivisionSchedule essential_schedule(const ModuliParams& p) {
  SubdivisionSchedule s;
  const long q = small(p.q);
  for (long k = q; k >= 1; --k) {
    s.add(essential_point(p, k, 1), label_of("essential G-step P_", k));
  }
  for (long k = 0; k <= q; ++k) {
    long lo = k == 0 ? 1 : 2;
    long hi = k == 0 ? q - 1 : q;
    for (long l = lo; l <= hi; ++l) {
      s.add(essential_point(p, k, l),
            "essential P_" + std::to_string(k) + "," + std::to_string(l));
    }
  }
  return s;
}

SubdivisionSchedule compactified_terminal_schedule(const ModuliParams& p) {
  SubdivisionSchedule s = terminal_schedule(p);
  s.add(boundary_point(p, 0), "compact terminal (q,0,-1)");
  return s;
}

SubdivisionSchedule compactified_essential_schedule(const ModuliParams& p) {
  SubdivisionSchedule s;
  const SubdivisionSchedule terminal = terminal_schedule(p);
  const SubdivisionSchedule essential = essential_schedule(p);
  for (const auto& e : terminal.entries()) s.add_unique(e.ray, e.label);
  for (const auto& e : essential.entries()) s.add_unique(e.ray, e.label);
  const long q = small(p.q);
  for (long k = 0; k <= q; ++k) {
    s.add_unique(boundary_point(p, k), label_of("compact essential Q_", k));
  }
  return s;
}

Fan sigma_min(const ModuliParams& p) {
  return apply_schedule(Fan::from_cone(sigma_M(p), base_labels(p, false)),
                        terminal_schedule(p))
      .fan;
}

Fan sigma_ess(const ModuliParams& p) {
  return apply_schedule(sigma_min(p), essential_schedule(p)).fan;
}

Fan bar_sigma_min(const ModuliParams& p) {
  return apply_schedule(bar_sigma_M(p), compactified_terminal_schedule(p)).fan;
}

Fan bar_sigma_ess(const ModuliParams& p) {
  return apply_schedule(bar_sigma_M(p), compactified_essential_schedule(p)).fan;
}

Surface surface13_cone(const ModuliParams& p) {
  const Integer& q = p.q;
  Surface s{SimplicialCone({vec(weight_sum(p), -q * q - q - 1), vec(0, 1)}), {}};
  const long count = small(q * q + q + 1);
  for (long l = 0; l < count; ++l) s.expected.push_back(vec(l * q + 1, -l));
  return s;
}

SurfaceFan m3_fan(const ModuliParams& p) {
  const Integer& q = p.q;
  std::vector<LatticeVector> rays{vec(q * q + q + 1, -q - 1), vec(0, 1),
                                  vec(-1, 0)};
  SurfaceFan out{Fan(2, rays, {{0, 1}, {1, 2}, {2, 0}}), {}};
  const long top = small(q);
  for (long l = 0; l <= top; ++l) out.expected.push_back(vec(l * q + 1, -l));
  out.expected.push_back(vec(q, -1));
  std::sort(out.expected.begin(), out.expected.end());
  return out;
}

std::vector<CandidatePoint> terminal_candidate_exclusion(const ModuliParams& p) {
  SupportForm l = support_form(sigma_M(p));
  std::vector<CandidatePoint> out;
  const long q = small(p.q);
  for (long x2 = 0; x2 >= -q; --x2) {
    Integer x3 = p.q * x2 - 1;
    Integer x1 = 1 - p.q * x3;
    LatticeVector x = vec(x1, x2, x3);
    Rational level = l(x);
    if (level <= 1) {
      throw ContradictionError("candidate " + x.str() + " has level " +
                               shedkit::to_string(level) + " <= 1");
    }
    out.push_back({x, level});
  }
  return out;
}

std::string to_string(InvariantKind k) {
  switch (k) {
    case InvariantKind::j1: return "j1";
    case InvariantKind::j2: return "j2";
    case InvariantKind::j3: return "j3";
    case InvariantKind::j12: return "j12";
    case InvariantKind::j13: return "j13";
    case InvariantKind::j23: return "j23";
    case InvariantKind::j123: return "j123";
  }
  return "?";
}

InvariantKind parse_invariant_kind(const std::string& s) {
  for (auto k : {InvariantKind::j1, InvariantKind::j2, InvariantKind::j3,
                 InvariantKind::j12, InvariantKind::j13, InvariantKind::j23,
                 InvariantKind::j123}) {
    if (to_string(k) == s) return k;
  }
  throw UsageError("unknown invariant kind '" + s + "'");
}

namespace {

InvariantKind kind_of(const Integer& d1, const Integer& d2, const Integer& d3) {
  int mask = (d1 > 0 ? 1 : 0) | (d2 > 0 ? 2 : 0) | (d3 > 0 ? 4 : 0);
  switch (mask) {
    case 1: return InvariantKind::j1;
    case 2: return InvariantKind::j2;
    case 4: return InvariantKind::j3;
    case 3: return InvariantKind::j12;
    case 5: return InvariantKind::j13;
    case 6: return InvariantKind::j23;
    default: return InvariantKind::j123;
  }
}

}  // namespace

Integer basic_delta4_bound(const ModuliParams& p) {
  // Largest left-hand side of the weight equation over the basic box,
  // divided by the weight of Δ.
  const Integer& q = p.q;
  Integer d = weight_sum(p);
  Integer lhs_max = d + (q + 1) * (q * q + 1) + (q * q + q + 1) * d;
  return lhs_max / d;
}

std::vector<InvariantExponent> enumerate_basic_invariants(const ModuliParams& p) {
  const Integer& q = p.q;
  const Integer d = weight_sum(p);
  const Integer d2_max = q * q + 1;
  const Integer w2 = q + 1, w3 = q * q + q + 1;
  std::vector<InvariantExponent> out;
  const long d4_max = small(basic_delta4_bound(p));
  for (long d4 = 1; d4 <= d4_max; ++d4) {
    for (Integer d2 = 0; d2 <= d2_max; ++d2) {
      for (Integer d3 = 0; d3 <= d; ++d3) {
        Integer d1 = d * d4 - w2 * d2 - w3 * d3;
        if (d1 < 0) break;  // grows more negative with d3
        if (d1 > d) continue;
        out.push_back({{d1, d2, d3, Integer(d4)}, kind_of(d1, d2, d3)});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.delta[3] != b.delta[3]) return a.delta[3] < b.delta[3];
    return std::lexicographical_compare(a.delta.begin(), a.delta.begin() + 3,
                                        b.delta.begin(), b.delta.begin() + 3);
  });
  return out;
}

LatticeVector exponent_to_lattice(const ModuliParams& p,
                                  const InvariantExponent& e) {
  const Integer& q = p.q;
  const Integer d = weight_sum(p);
  // Exponents (δ1, δ2, δ3; δ4) of j1, j2, j3.
  const std::array<std::array<Integer, 4>, 3> basis{{
      {d, 0, 0, 1},
      {0, q * q + 1, 0, 1},
      {0, 0, d, q * q + q + 1},
  }};
  std::vector<LatticeVector> rows;
  for (int r = 0; r < 3; ++r) {
    rows.push_back(vec(basis[0][r], basis[1][r], basis[2][r]));
  }
  std::vector<Rational> rhs{Rational(e.delta[0]), Rational(e.delta[1]),
                            Rational(e.delta[2])};
  auto coeff = solve_rational(IntMatrix(rows), rhs);
  Rational d4 = coeff[0] * basis[0][3] + coeff[1] * basis[1][3] +
                coeff[2] * basis[2][3];
  if (d4 != e.delta[3]) {
    throw ContradictionError("exponent does not have weight zero");
  }
  const auto dual = sigma_M_dual_expected(p);
  // sigma_M_dual_expected sorts its rays, so look them up by value.
  const std::array<LatticeVector, 3> estar{
      LatticeVector{1, 0, 0}, vec(1, q * q + 1, 0),
      vec(q * q + q + 1, 0, weight_sum(p))};
  std::vector<Integer> image(3);
  for (std::size_t j = 0; j < 3; ++j) {
    Rational v = coeff[0] * estar[0][j] + coeff[1] * estar[1][j] +
                 coeff[2] * estar[2][j];
    v.canonicalize();
    if (v.get_den() != 1) {
      throw CorrespondenceFailure("exponent maps to the non-integral point with "
                                  "coordinate " + shedkit::to_string(v));
    }
    image[j] = v.get_num();
  }
  LatticeVector x(std::move(image));
  if (!contains(dual, x).inside) {
    throw ContradictionError("image " + x.str() + " lies outside the dual cone");
  }
  return x;
}

SingularFaceReport singular_face_report(const ModuliParams& p) {
  SingularFaceReport r;
  r.faces = face_multiplicities(sigma_M(p));
  std::vector<Face> singular;
  for (const auto& f : r.faces) {
    if (f.multiplicity > 1) singular.push_back(f);
  }
  if (singular.size() != 1) {
    throw ContradictionError(std::to_string(singular.size()) +
                             " singular 2-faces, expected exactly one");
  }
  r.singular = singular.front();
  std::vector<LatticeVector> expect{e1(p), e3()};
  std::sort(expect.begin(), expect.end());
  if (r.singular.rays != expect || r.singular.multiplicity != p.q + 1) {
    throw ContradictionError("singular face is not <e1,e3> with multiplicity q+1");
  }
  return r;
}

const std::vector<std::string>& construction_names() {
  static const std::vector<std::string> names{
      "sigma_M",       "sigma_M_dual",   "bar_sigma_M",   "Sigma_min",
      "Sigma_ess",     "bar_Sigma_min",  "bar_Sigma_ess", "surface13",
      "surface13_min", "m3fan",          "m3fan_min",     "sigma_q_plus_1",
      "sigma_prime_0", "sigma_tilde_0",  "essential_core"};
  return names;
}

NamedConstruction build_construction(const std::string& name,
                                     const ModuliParams& p) {
  NamedConstruction nc{name, p.q, {}, {}};
  auto with_schedule = [&](const Fan& base, SubdivisionSchedule s) {
    nc.fan = apply_schedule(base, s).fan;
    nc.schedule = std::move(s);
  };
  const Fan sigma_m = Fan::from_cone(sigma_M(p), base_labels(p, false));
  if (name == "sigma_M") {
    nc.fan = sigma_m;
  } else if (name == "sigma_M_dual") {
    nc.fan = Fan::from_cone(sigma_M_dual_expected(p));
  } else if (name == "bar_sigma_M") {
    nc.fan = bar_sigma_M(p);
  } else if (name == "Sigma_min") {
    with_schedule(sigma_m, terminal_schedule(p));
  } else if (name == "Sigma_ess") {
    SubdivisionSchedule s = terminal_schedule(p);
    const SubdivisionSchedule essential = essential_schedule(p);
    for (const auto& e : essential.entries()) s.add(e.ray, e.label);
    with_schedule(sigma_m, std::move(s));
  } else if (name == "bar_Sigma_min") {
    with_schedule(bar_sigma_M(p), compactified_terminal_schedule(p));
  } else if (name == "bar_Sigma_ess") {
    with_schedule(bar_sigma_M(p), compactified_essential_schedule(p));
  } else if (name == "surface13" || name == "surface13_min") {
    Surface s = surface13_cone(p);
    nc.fan = Fan::from_cone(s.cone);
    if (name == "surface13_min") {
      SubdivisionSchedule sched;
      for (const auto& x : minimal_resolution_2d(s.cone)) {
        sched.add(x, "minimal resolution");
      }
      with_schedule(nc.fan, std::move(sched));
    }
  } else if (name == "m3fan" || name == "m3fan_min") {
    SurfaceFan m = m3_fan(p);
    nc.fan = m.fan;
    if (name == "m3fan_min") {
      SubdivisionSchedule sched;
      for (std::size_t i = 0; i < m.fan.cones().size(); ++i) {
        for (const auto& x : minimal_resolution_2d(m.fan.cone(i))) {
          sched.add(x, "minimal resolution");
        }
      }
      with_schedule(nc.fan, std::move(sched));
    }
  } else if (name == "sigma_q_plus_1") {
    nc.fan = Fan::from_cone(sigma_q_plus_1(p));
  } else if (name == "sigma_prime_0") {
    nc.fan = Fan::from_cone(sigma_prime_0(p));
  } else if (name == "sigma_tilde_0") {
    nc.fan = Fan::from_cone(sigma_tilde(p, 0));
  } else if (name == "essential_core") {
    // The two singular cones of Σ_min: σ_{q+1} and σ'_0.
    Fan s = sigma_min(p);
    std::vector<ConeIndices> keep;
    for (std::size_t i = 0; i < s.cones().size(); ++i) {
      if (multiplicity(s.cone(i)) > 1) keep.push_back(s.cones()[i]);
    }
    std::vector<LatticeVector> rays = s.rays();
    // Drop rays no longer used by a kept cone.
    std::vector<bool> used(rays.size(), false);
    for (const auto& c : keep)
      for (std::size_t r : c) used[r] = true;
    std::vector<LatticeVector> kept_rays;
    std::vector<std::size_t> remap(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (used[i]) {
        remap[i] = kept_rays.size();
        kept_rays.push_back(rays[i]);
      }
    }
    for (auto& c : keep)
      for (auto& r : c) r = remap[r];
    nc.fan = Fan(3, kept_rays, keep, s.labels());
  } else {
    throw UsageError("unknown construction '" + name + "'");
  }
  return nc;
}

}  // namespace shedkit::drinfeld
