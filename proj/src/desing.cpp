#include "shedkit/desing.hpp"

#include <algorithm>

namespace shedkit {

std::vector<LatticeVector> g_candidates(const SimplicialCone& c) {
  BarycentricFrame frame(c);
  const Integer target = frame.mu + 1;  // mu·(1 + 1/mu)
  std::vector<LatticeVector> out;
  for (auto& x : simplex_lattice_points(c, make_rational(target, frame.mu))) {
    if (frame.scaled_level(x) == target && x.is_primitive()) {
      out.push_back(std::move(x));
    }
  }
  return out;
}

namespace {

std::string join_points(const std::vector<LatticeVector>& pts) {
  std::string s;
  for (const auto& p : pts) s += (s.empty() ? "" : " ") + p.str();
  return s.empty() ? "none" : s;
}

std::string cone_str(const std::vector<LatticeVector>& rays) {
  std::string s = "<";
  for (std::size_t i = 0; i < rays.size(); ++i) {
    s += (i ? "," : "") + rays[i].str();
  }
  return s + ">";
}

}  // namespace

LatticeVector g_subdivision_point(const SimplicialCone& c) {
  if (multiplicity(c) == 1) {
    throw PreconditionError("cone " + cone_str(c.rays()) + " is regular");
  }
  auto cands = g_candidates(c);
  if (cands.size() != 1) {
    throw HypothesisViolation("cone " + cone_str(c.rays()) + " has " +
                              std::to_string(cands.size()) +
                              " candidate G-points: " + join_points(cands));
  }
  return cands.front();
}

GResult g_desingularize(const Fan& f, std::size_t max_steps) {
  GResult out{f, {}, GStatus::regular, {}};
  while (true) {
    std::optional<std::size_t> pick;
    Integer best_mu = 1;
    for (std::size_t i = 0; i < out.fan.cones().size(); ++i) {
      Integer mu = multiplicity(out.fan.cone(i));
      // Cones are sorted, so the first one of maximal mu has the smallest
      // ray tuple.
      if (mu > best_mu) {
        best_mu = mu;
        pick = i;
      }
    }
    if (!pick) return out;
    if (out.steps.size() >= max_steps) {
      throw NonTerminationError(
          "G-desingularization did not finish within " +
              std::to_string(max_steps) + " steps",
          out.fan, out.steps);
    }
    SimplicialCone c = out.fan.cone(*pick);
    auto cands = g_candidates(c);
    if (cands.size() != 1) {
      out.status = GStatus::stuck;
      out.diagnostic = "cone " + cone_str(c.rays()) + " of multiplicity " +
                       best_mu.get_str() + " has " +
                       std::to_string(cands.size()) +
                       " candidate G-points: " + join_points(cands);
      return out;
    }
    const LatticeVector& x = cands.front();
    out.steps.push_back(GStep{c.rays(), best_mu, x, support_form(c)(x)});
    out.fan = star_subdivide(out.fan, x,
                             "G" + std::to_string(out.steps.size()));
  }
}

namespace {

Integer det2(const LatticeVector& a, const LatticeVector& b) {
  return a[0] * b[1] - a[1] * b[0];
}

// Hirzebruch–Jung walk from u to v, with det(u, v) > 0.
std::vector<LatticeVector> hj_walk(LatticeVector u, const LatticeVector& v) {
  std::vector<LatticeVector> out;
  Integer m = det2(u, v);
  while (m > 1) {
    // w0 with det(u, w0) = 1, from the extended gcd of (u0, -u1).
    Integer g, s, t, neg_u1 = -u[1];
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), u[0].get_mpz_t(),
               neg_u1.get_mpz_t());
    // s·u0 + t·(−u1) = 1  ⇒  det(u, (t, s)) = u0·s − u1·t = 1
    LatticeVector w0(std::vector<Integer>{t, s});
    // v − m·w0 is parallel to u: v = m·w0 + shift·u.
    LatticeVector rest = v - m * w0;
    Integer shift = (u[0] != 0) ? Integer(rest[0] / u[0]) : Integer(rest[1] / u[1]);
    // Next boundary point (v + k·u)/m with the least k ≥ 1.
    Integer k;
    Integer neg_shift = -shift;
    mpz_fdiv_r(k.get_mpz_t(), neg_shift.get_mpz_t(), m.get_mpz_t());
    Integer step = (shift + k) / m;
    LatticeVector w = w0 + step * u;
    out.push_back(w);
    u = w;
    m = k;
  }
  return out;
}

}  // namespace

std::vector<LatticeVector> minimal_resolution_2d(const SimplicialCone& c) {
  if (c.dim() != 2) {
    throw DimensionError("minimal_resolution_2d needs a rank-2 cone");
  }
  const auto& a = c.ray(0);
  const auto& b = c.ray(1);
  if (det2(a, b) > 0) return hj_walk(a, b);
  auto pts = hj_walk(b, a);
  std::reverse(pts.begin(), pts.end());
  return pts;
}

std::vector<LatticeVector> hilbert_basis(const SimplicialCone& c,
                                         const Integer& max_multiplicity) {
  Integer mu = multiplicity(c);
  if (mu > max_multiplicity) {
    throw ResourceError("multiplicity " + mu.get_str() +
                        " exceeds the Hilbert basis bound " +
                        max_multiplicity.get_str());
  }
  std::vector<LatticeVector> gens = c.rays();
  for (auto& x : parallelepiped_points(c)) {
    if (!x.is_zero()) gens.push_back(std::move(x));
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  // x is reducible iff x − y lies in the cone for another candidate y: every
  // semigroup element dominates some irreducible, and irreducibles are
  // candidates.
  BarycentricFrame frame(c);
  auto in_cone = [&](const LatticeVector& x) {
    return std::all_of(frame.weights.begin(), frame.weights.end(),
                       [&](const LatticeVector& w) { return dot(w, x) >= 0; });
  };
  std::vector<LatticeVector> basis;
  for (const auto& x : gens) {
    bool reducible = false;
    for (const auto& y : gens) {
      if (y != x && in_cone(x - y)) {
        reducible = true;
        break;
      }
    }
    if (!reducible) basis.push_back(x);
  }
  return basis;
}

}  // namespace shedkit
