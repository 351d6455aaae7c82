#pragma once

// Lattice points of a polytope {x : a_i·x >= b_i} inside an integer box.
//
// The outer coordinates are scanned over the box; the last coordinate is
// solved exactly as an interval from the constraints, so the cost is the
// box volume divided by its last extent.

#include <functional>
#include <vector>

#include "shedkit/exact.hpp"

namespace shedkit {

/// normal·x >= offset
struct HalfSpace {
  LatticeVector normal;
  Integer offset;
};

struct IntegerBox {
  std::vector<Integer> lo;
  std::vector<Integer> hi;  // inclusive
};

/// Calls visit(x) for every lattice point of the box satisfying all
/// constraints, in lexicographic order.
void enumerate_lattice_points(const IntegerBox& box,
                              const std::vector<HalfSpace>& constraints,
                              const std::function<void(const LatticeVector&)>& visit);

/// Smallest box containing conv(0, scale·v for v in generators).
IntegerBox simplex_box(const std::vector<LatticeVector>& generators,
                       const Rational& scale = 1);

/// Smallest box containing {Σ λ_i v_i : 0 <= λ_i <= 1}.
IntegerBox parallelepiped_box(const std::vector<LatticeVector>& generators);

}  // namespace shedkit
