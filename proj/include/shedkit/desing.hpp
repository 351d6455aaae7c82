#pragma once

// Desingularization procedures: G-desingularization of 3-dimensional fans,
// the minimal resolution of a 2-dimensional cone, and Hilbert bases.

#include <string>
#include <vector>

#include "shedkit/errors.hpp"
#include "shedkit/fan.hpp"

namespace shedkit {

/// One subdivision step of G-desingularization: the cone acted on, its
/// multiplicity and the chosen point x with l_cone(x) = 1 + 1/mu.
struct GStep {
  std::vector<LatticeVector> cone;
  Integer mu;
  LatticeVector point;
  Rational level;
};

/// All lattice points x of c with l_c(x) = 1 + 1/mu, sorted.
std::vector<LatticeVector> g_candidates(const SimplicialCone& c);

/// The unique G-point of a singular cone. Throws HypothesisViolation, with
/// every candidate in the message, unless exactly one exists, and
/// PreconditionError for regular cones.
LatticeVector g_subdivision_point(const SimplicialCone& c);

enum class GStatus { regular, stuck };

struct GResult {
  Fan fan;
  std::vector<GStep> steps;
  GStatus status = GStatus::regular;
  /// Set when status == stuck: the cone without a unique G-point.
  std::string diagnostic;
};

class NonTerminationError : public ResourceError {
 public:
  NonTerminationError(const std::string& what, Fan residual,
                      std::vector<GStep> steps)
      : ResourceError(what),
        residual_(std::move(residual)),
        steps_(std::move(steps)) {}
  [[nodiscard]] const Fan& residual() const { return residual_; }
  [[nodiscard]] const std::vector<GStep>& steps() const { return steps_; }

 private:
  Fan residual_;
  std::vector<GStep> steps_;
};

/// Repeatedly star-subdivides the singular cone of largest multiplicity
/// (ties: lexicographically smallest ray tuple) at its G-point.
GResult g_desingularize(const Fan& f, std::size_t max_steps = 1000);

/// Rays strictly between rays[0] and rays[1] on the compact boundary of
/// conv(c ∩ Z² \ {0}), ordered from rays[0] towards rays[1]. Inserting them
/// gives the minimal regular subdivision of c. Empty for a regular cone.
std::vector<LatticeVector> minimal_resolution_2d(const SimplicialCone& c);

constexpr long kDefaultMaxHilbertMultiplicity = 10000;

/// Minimal generating set of the semigroup c ∩ Zⁿ, sorted. Throws
/// ResourceError when multiplicity(c) > max_multiplicity.
std::vector<LatticeVector> hilbert_basis(
    const SimplicialCone& c,
    const Integer& max_multiplicity = kDefaultMaxHilbertMultiplicity);

}  // namespace shedkit
