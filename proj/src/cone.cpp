#include "shedkit/cone.hpp"

#include <algorithm>

#include "shedkit/errors.hpp"

namespace shedkit {

SimplicialCone::SimplicialCone(std::vector<LatticeVector> rays)
    : rays_(std::move(rays)) {
  const std::size_t n = rays_.size();
  if (n != 2 && n != 3) {
    throw InvalidFanError("simplicial cone needs 2 or 3 rays, got " +
                          std::to_string(n));
  }
  for (const auto& r : rays_) {
    if (r.dim() != n) {
      throw InvalidFanError("ray " + r.str() + " has the wrong dimension");
    }
    if (!r.is_primitive()) {
      throw InvalidFanError("ray " + r.str() + " is not primitive");
    }
  }
  std::sort(rays_.begin(), rays_.end());
  if (determinant(IntMatrix(rays_)) == 0) {
    throw InvalidFanError("rays are linearly dependent");
  }
}

bool SimplicialCone::has_ray(const LatticeVector& v) const {
  return std::binary_search(rays_.begin(), rays_.end(), v);
}

BarycentricFrame::BarycentricFrame(const SimplicialCone& c) {
  // x = Rᵀλ with R the ray matrix, so λ = adj(Rᵀ)·x / det(R).
  IntMatrix rt = c.matrix().transposed();
  Integer d = determinant(rt);
  IntMatrix adj = adjugate(rt);
  mu = abs(d);
  Integer sign = d > 0 ? 1 : -1;
  for (std::size_t i = 0; i < c.dim(); ++i) {
    weights.push_back(sign * adj.row(i));
  }
}

Rational BarycentricFrame::coordinate(std::size_t i,
                                      const LatticeVector& x) const {
  return make_rational(dot(weights[i], x), mu);
}

Integer BarycentricFrame::scaled_level(const LatticeVector& x) const {
  return dot(level_normal(), x);
}

LatticeVector BarycentricFrame::level_normal() const {
  LatticeVector s = weights.front();
  for (std::size_t i = 1; i < weights.size(); ++i) s = s + weights[i];
  return s;
}

Integer multiplicity(const SimplicialCone& c) {
  return abs(determinant(c.matrix()));
}

SupportForm support_form(const SimplicialCone& c) {
  std::vector<Rational> ones(c.dim(), Rational(1));
  return SupportForm{solve_rational(c.matrix(), ones)};
}

SimplicialCone dual_cone(const SimplicialCone& c) {
  std::vector<LatticeVector> dual;
  const std::size_t n = c.dim();
  for (std::size_t k = 0; k < n; ++k) {
    // Normal to the facet spanned by the other rays.
    LatticeVector normal;
    if (n == 3) {
      normal = cross(c.ray((k + 1) % 3), c.ray((k + 2) % 3));
    } else {
      const auto& other = c.ray(1 - k);
      normal = LatticeVector(std::vector<Integer>{-other[1], other[0]});
    }
    if (dot(normal, c.ray(k)) < 0) normal = Integer(-1) * normal;
    dual.push_back(primitivize(normal));
  }
  return SimplicialCone(std::move(dual));
}

Containment contains(const SimplicialCone& c, const LatticeVector& x) {
  if (x.dim() != c.dim()) {
    throw DimensionError("point " + x.str() + " has the wrong dimension");
  }
  BarycentricFrame frame(c);
  Containment out;
  out.inside = true;
  for (std::size_t i = 0; i < c.dim(); ++i) {
    out.barycentric.push_back(frame.coordinate(i, x));
    if (out.barycentric.back() < 0) out.inside = false;
  }
  return out;
}

namespace {

// Constraints λ_i >= 0 and l_c <= scale, in integer form.
std::vector<HalfSpace> simplex_constraints(const BarycentricFrame& frame,
                                           const Rational& scale) {
  std::vector<HalfSpace> hs;
  for (const auto& w : frame.weights) hs.push_back({w, 0});
  // level·x <= mu·scale  <=>  (-level)·x >= -floor(mu·scale)
  Rational bound = frame.mu * scale;
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
  hs.push_back({Integer(-1) * frame.level_normal(), -fl});
  return hs;
}

}  // namespace

std::vector<LatticeVector> simplex_lattice_points(const SimplicialCone& c,
                                                  const Rational& scale) {
  BarycentricFrame frame(c);
  std::vector<LatticeVector> out;
  enumerate_lattice_points(simplex_box(c.rays(), scale),
                           simplex_constraints(frame, scale),
                           [&](const LatticeVector& x) {
                             if (!x.is_zero()) out.push_back(x);
                           });
  return out;
}

std::vector<LatticeVector> shed_lattice_points(const SimplicialCone& c) {
  return simplex_lattice_points(c, 1);
}

std::vector<LatticeVector> strict_shed_interior(const SimplicialCone& c) {
  BarycentricFrame frame(c);
  std::vector<LatticeVector> out;
  for (auto& x : shed_lattice_points(c)) {
    if (frame.scaled_level(x) < frame.mu) out.push_back(std::move(x));
  }
  return out;
}

std::vector<LatticeVector> parallelepiped_points(const SimplicialCone& c) {
  BarycentricFrame frame(c);
  std::vector<HalfSpace> hs;
  for (const auto& w : frame.weights) {
    hs.push_back({w, 0});                                  // λ_i >= 0
    hs.push_back({Integer(-1) * w, Integer(1) - frame.mu});  // λ_i < 1
  }
  std::vector<LatticeVector> out;
  enumerate_lattice_points(parallelepiped_box(c.rays()), hs,
                           [&](const LatticeVector& x) { out.push_back(x); });
  return out;
}

std::vector<Face> face_multiplicities(const SimplicialCone& c) {
  if (c.dim() != 3) {
    throw DimensionError("face multiplicities are defined for rank-3 cones");
  }
  std::vector<Face> faces;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      Face f;
      f.ray_indices = {i, j};
      f.rays = {c.ray(i), c.ray(j)};
      f.multiplicity = maximal_minor_gcd(IntMatrix(f.rays));
      faces.push_back(std::move(f));
    }
  }
  return faces;
}

}  // namespace shedkit
