#pragma once

// Fans of simplicial cones and the global checks run on them.
//
// A Fan is a value: rays are kept primitive and lexicographically sorted,
// each maximal cone is a sorted tuple of ray indices, and the cone list is
// sorted. Every operation that changes a fan returns a new one.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shedkit/cone.hpp"

namespace shedkit {

using ConeIndices = std::vector<std::size_t>;

class Fan {
 public:
  Fan() = default;
  /// Canonicalizes the input and checks the per-cone invariants (primitive
  /// distinct rays, simplicial cones, no duplicate cones). Overlap between
  /// cones is checked by validate().
  Fan(std::size_t dim, std::vector<LatticeVector> rays,
      std::vector<ConeIndices> cones,
      std::map<LatticeVector, std::string> labels = {});

  static Fan from_cone(const SimplicialCone& c,
                       std::map<LatticeVector, std::string> labels = {});

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] const std::vector<LatticeVector>& rays() const { return rays_; }
  [[nodiscard]] const std::vector<ConeIndices>& cones() const { return cones_; }
  [[nodiscard]] SimplicialCone cone(std::size_t i) const;
  [[nodiscard]] std::vector<LatticeVector> cone_rays(std::size_t i) const;
  [[nodiscard]] std::optional<std::size_t> ray_index(const LatticeVector& v) const;
  [[nodiscard]] const std::map<LatticeVector, std::string>& labels() const {
    return labels_;
  }
  [[nodiscard]] std::string label(const LatticeVector& v) const;

  /// Throws InvalidFanError if two cones overlap improperly.
  void validate() const;

  /// Rays and cones only; labels are annotation.
  friend bool operator==(const Fan& a, const Fan& b) {
    return a.dim_ == b.dim_ && a.rays_ == b.rays_ && a.cones_ == b.cones_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<LatticeVector> rays_;
  std::vector<ConeIndices> cones_;
  std::map<LatticeVector, std::string> labels_;
};

/// A (dim−1)-face of some maximal cone with all its incident cones.
struct Wall {
  ConeIndices rays;
  std::vector<std::size_t> cones;
  [[nodiscard]] bool internal() const { return cones.size() == 2; }
};

std::vector<Wall> walls(const Fan& f);

struct ScheduleEntry {
  LatticeVector ray;
  std::string label;
};

/// Rays to star-subdivide at, in order, with provenance labels.
class SubdivisionSchedule {
 public:
  SubdivisionSchedule() = default;
  /// Throws DegenerateInputError unless ray is primitive.
  void add(LatticeVector ray, std::string label);
  /// Appends unless the ray is already scheduled; returns false (and records
  /// a warning) for a duplicate.
  bool add_unique(LatticeVector ray, std::string label);

  [[nodiscard]] const std::vector<ScheduleEntry>& entries() const {
    return entries_;
  }
  [[nodiscard]] const std::vector<std::string>& warnings() const {
    return warnings_;
  }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] std::vector<LatticeVector> rays() const;

 private:
  std::vector<ScheduleEntry> entries_;
  std::vector<std::string> warnings_;
};

struct SubdivisionRecord {
  Fan fan;
  std::vector<std::vector<LatticeVector>> removed;
  std::vector<std::vector<LatticeVector>> added;
};

/// Star subdivision at ray, recording the cones that were split.
SubdivisionRecord subdivide(const Fan& f, const LatticeVector& ray,
                            const std::string& label = {});

Fan star_subdivide(const Fan& f, const LatticeVector& ray,
                   const std::string& label = {});

bool is_regular(const Fan& f);

/// A cone with a non-generator lattice point in its shed.
struct TerminalWitness {
  std::vector<LatticeVector> cone;
  LatticeVector point;
  Rational level;
};

/// First witness against terminality in cone order, if any.
std::optional<TerminalWitness> terminal_witness(const Fan& f);

bool is_terminal(const Fan& f);

enum class Concavity { not_concave = 0, concave = 1, strictly_concave = 2 };

std::string to_string(Concavity c);

struct WallConcavity {
  std::vector<LatticeVector> wall;
  std::vector<LatticeVector> cone;     // σ
  LatticeVector opposite;              // ray of σ′ off the wall
  Rational level;                      // l_σ(opposite)
  Concavity verdict;
};

struct RoofReport {
  std::vector<WallConcavity> walls;
  Concavity verdict = Concavity::strictly_concave;
};

RoofReport roof_concavity(const Fan& f);

/// Σ multiplicity / dim!, the normalized lattice volume of the union shed.
Rational shed_volume(const Fan& f);

bool is_complete(const Fan& f);

enum class KernelRays { reject, drop };

/// Image of f under a rank-2 integer map N → Z². Image rays are primitivized,
/// merged and ordered by angle; consecutive rays bound the image cones.
/// Rays sent to 0 raise DegenerateInputError under KernelRays::reject and
/// are skipped under KernelRays::drop.
Fan project(const Fan& f, const IntMatrix& map,
            KernelRays policy = KernelRays::drop);

struct ScheduleStep {
  std::size_t index;
  ScheduleEntry entry;
  std::vector<std::vector<LatticeVector>> removed;
  std::vector<std::vector<LatticeVector>> added;
};

struct ScheduleResult {
  Fan fan;
  std::vector<ScheduleStep> log;
};

/// Left fold of star subdivisions. Errors carry the failing step index.
ScheduleResult apply_schedule(const Fan& f, const SubdivisionSchedule& s);

}  // namespace shedkit
