#pragma once

// Cones, fans and subdivision schedules of the rank-4 Drinfeld moduli
// threefold M⁴(1) and its compactification, as exact functions of q.
//
// Lattice N = Z³ with
//   e1 = ((q⁴−1)/(q−1), −q−1, −q²−q−1),  e2 = (0,1,0),  e3 = (0,0,1),
//   e4 = (−1,0,0)  (compactification only).
// q is not checked for being a prime power: every construction here is
// polynomial in q.

#include <array>
#include <string>
#include <vector>

#include "shedkit/desing.hpp"
#include "shedkit/fan.hpp"

namespace shedkit::drinfeld {

struct ModuliParams {
  Integer q;
  /// Throws PreconditionError for q < 2.
  explicit ModuliParams(Integer q);
  ModuliParams(long q) : ModuliParams(Integer(q)) {}  // NOLINT
};

/// q³ + q² + q + 1 = (q⁴ − 1)/(q − 1)
Integer weight_sum(const ModuliParams& p);

LatticeVector e1(const ModuliParams& p);
LatticeVector e2();
LatticeVector e3();
LatticeVector e4();

/// The terminal ray (q²+1, −1, −q) = (e1 + e3)/(q + 1).
LatticeVector terminal_ray(const ModuliParams& p);
/// P_kl = (kq² + lq + 1, −k, −kq − l); P_k = P_k1.
LatticeVector essential_point(const ModuliParams& p, const Integer& k,
                              const Integer& l);
/// Q_k = (kq² + q, −k, −kq − 1); Q_0 = (q, 0, −1).
LatticeVector boundary_point(const ModuliParams& p, const Integer& k);

SimplicialCone sigma_M(const ModuliParams& p);
SimplicialCone sigma_M_dual_expected(const ModuliParams& p);
/// (q³+q²+q+1)(q²+1)
Integer covering_degree(const ModuliParams& p);
Fan bar_sigma_M(const ModuliParams& p);

struct WpsWeights {
  std::array<Integer, 4> raw;         // q^k − 1
  std::array<Integer, 4> normalized;  // raw / gcd
  Integer gcd;
};
/// Throws ContradictionError if gcd(raw) != q − 1.
WpsWeights wps_weights(const ModuliParams& p);

/// qᵏ − 1 for 1 <= k <= 4.
Integer weight_of_coefficient(int k, const ModuliParams& p);

// Intermediate cones of the subdivisions.
/// σ_k = <e2, terminal ray, P_k'> with P_k' = (kq²+q+1, −k, −kq−1), 2 <= k <= q+1.
SimplicialCone sigma_k(const ModuliParams& p, const Integer& k);
SimplicialCone sigma_q_plus_1(const ModuliParams& p);
/// σ'_0 = <(1,0,0), e2, terminal ray>
SimplicialCone sigma_prime_0(const ModuliParams& p);
/// σ̃_k = <e4, Q_k, e1>, 0 <= k <= q − 1.
SimplicialCone sigma_tilde(const ModuliParams& p, const Integer& k);

/// The quoted form (−1, (q²+q+1)/(q+1), −(q+1)) for σ̃_0. It is not the
/// support form of σ̃_0 (it sends e1 to −1); kept only so reports can show
/// the difference from the computed one.
SupportForm reference_sigma_tilde0_form(const ModuliParams& p);

SubdivisionSchedule terminal_schedule(const ModuliParams& p);
/// First batch P_k for k = q..1, then P_kl with 2 <= l <= q (1 <= k <= q)
/// and 1 <= l <= q−1 (k = 0) in (k, l) order. q² + q − 1 rays.
SubdivisionSchedule essential_schedule(const ModuliParams& p);
SubdivisionSchedule compactified_terminal_schedule(const ModuliParams& p);
/// Terminal rays, essential rays, then Q_0 .. Q_q.
SubdivisionSchedule compactified_essential_schedule(const ModuliParams& p);

Fan sigma_min(const ModuliParams& p);
Fan sigma_ess(const ModuliParams& p);
Fan bar_sigma_min(const ModuliParams& p);
Fan bar_sigma_ess(const ModuliParams& p);

struct Surface {
  SimplicialCone cone;
  std::vector<LatticeVector> expected;  // (lq+1, −l), 0 <= l < q²+q+1
};
/// Cone of the surface a2 = 0: <((q⁴−1)/(q−1), −q²−q−1), (0,1)>.
Surface surface13_cone(const ModuliParams& p);

struct SurfaceFan {
  Fan fan;
  std::vector<LatticeVector> expected;  // (lq+1, −l), 0 <= l <= q, and (q, −1)
};
/// Complete fan <(q²+q+1, −q−1), (0,1), (−1,0)> of P(1, q+1, q²+q+1).
SurfaceFan m3_fan(const ModuliParams& p);

struct CandidatePoint {
  LatticeVector point;
  Rational level;  // l_{σ_M}
};
/// Points 0 <= −x2 <= q, x3 = q·x2 − 1, x1 = 1 − q·x3 with their level.
/// Throws ContradictionError if one of them has level <= 1.
std::vector<CandidatePoint> terminal_candidate_exclusion(const ModuliParams& p);

enum class InvariantKind { j1, j2, j3, j12, j13, j23, j123 };
std::string to_string(InvariantKind k);
InvariantKind parse_invariant_kind(const std::string& s);

struct InvariantExponent {
  std::array<Integer, 4> delta;  // δ1..δ4
  InvariantKind kind;
};

/// Largest δ4 compatible with the basic box bounds.
Integer basic_delta4_bound(const ModuliParams& p);

/// Every nonzero weight-zero exponent inside the basic box, ordered by
/// (kind, δ4, δ1, δ2, δ3).
std::vector<InvariantExponent> enumerate_basic_invariants(const ModuliParams& p);

/// Image under the linear map sending the exponents of j1, j2, j3 to e1*,
/// e2*, e3*. Throws CorrespondenceFailure if not integral, ContradictionError
/// if outside σ̌_M or if the exponent has nonzero weight.
LatticeVector exponent_to_lattice(const ModuliParams& p,
                                  const InvariantExponent& e);

struct SingularFaceReport {
  std::vector<Face> faces;
  Face singular;
};
/// Throws ContradictionError unless exactly <e1,e3> is singular, with
/// multiplicity q+1.
SingularFaceReport singular_face_report(const ModuliParams& p);

/// Named constructions reproducible from (name, q).
struct NamedConstruction {
  std::string name;
  Integer q;
  Fan fan;
  SubdivisionSchedule schedule;
};

const std::vector<std::string>& construction_names();
/// Throws UsageError for an unknown name.
NamedConstruction build_construction(const std::string& name,
                                     const ModuliParams& p);

}  // namespace shedkit::drinfeld
