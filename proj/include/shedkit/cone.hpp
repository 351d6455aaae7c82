#pragma once

// Simplicial lattice cones in rank 2 and 3.
//
// A cone is stored by its primitive ray generators in lexicographic order, so
// two cones compare equal exactly when they have the same rays. The support
// form l_c is the linear form taking the value 1 on every ray generator; the
// shed of c is c ∩ {l_c <= 1}.

#include <vector>

#include "shedkit/exact.hpp"
#include "shedkit/lattice_points.hpp"

namespace shedkit {

class SimplicialCone {
 public:
  /// Primitivity, count == dim ∈ {2,3} and linear independence are checked;
  /// rays are re-sorted lexicographically.
  explicit SimplicialCone(std::vector<LatticeVector> rays);

  [[nodiscard]] std::size_t dim() const { return rays_.size(); }
  [[nodiscard]] const std::vector<LatticeVector>& rays() const { return rays_; }
  [[nodiscard]] const LatticeVector& ray(std::size_t i) const {
    return rays_[i];
  }
  [[nodiscard]] IntMatrix matrix() const { return IntMatrix(rays_); }
  [[nodiscard]] bool has_ray(const LatticeVector& v) const;

  friend bool operator==(const SimplicialCone&, const SimplicialCone&) = default;

 private:
  std::vector<LatticeVector> rays_;
};

struct SupportForm {
  std::vector<Rational> coefficients;

  [[nodiscard]] Rational operator()(const LatticeVector& x) const {
    return dot(coefficients, x);
  }
};

struct Face {
  std::vector<std::size_t> ray_indices;  // into the parent's ray list
  std::vector<LatticeVector> rays;
  Integer multiplicity;
};

struct Containment {
  bool inside = false;
  /// x = Σ barycentric[i]·ray(i); always filled in.
  std::vector<Rational> barycentric;
};

/// Integer description of barycentric coordinates:
/// λ_i(x) = weights[i]·x / mu with mu = multiplicity > 0.
struct BarycentricFrame {
  std::vector<LatticeVector> weights;
  Integer mu;

  explicit BarycentricFrame(const SimplicialCone& c);
  [[nodiscard]] Rational coordinate(std::size_t i, const LatticeVector& x) const;
  /// mu·l_c(x), an integer.
  [[nodiscard]] Integer scaled_level(const LatticeVector& x) const;
  /// Σ weights[i]; l_c(x) = level_normal·x / mu.
  [[nodiscard]] LatticeVector level_normal() const;
};

/// |det(rays)|; 1 exactly for regular (smooth) cones.
Integer multiplicity(const SimplicialCone& c);

SupportForm support_form(const SimplicialCone& c);

/// Cone of covectors that are nonnegative on c.
SimplicialCone dual_cone(const SimplicialCone& c);

Containment contains(const SimplicialCone& c, const LatticeVector& x);

/// Nonzero lattice points with l_c <= scale, sorted. scale = 1 is the shed.
std::vector<LatticeVector> simplex_lattice_points(const SimplicialCone& c,
                                                  const Rational& scale);

/// All nonzero lattice points of the shed (l_c <= 1), ray generators
/// included, sorted.
std::vector<LatticeVector> shed_lattice_points(const SimplicialCone& c);

/// Shed points with l_c < 1; these are never ray generators.
std::vector<LatticeVector> strict_shed_interior(const SimplicialCone& c);

/// Lattice points of the half-open parallelepiped {Σ λ_i r_i : 0 <= λ_i < 1},
/// origin included. Its size equals the multiplicity.
std::vector<LatticeVector> parallelepiped_points(const SimplicialCone& c);

/// The 2-faces of a rank-3 cone with their lattice multiplicities.
std::vector<Face> face_multiplicities(const SimplicialCone& c);

}  // namespace shedkit
