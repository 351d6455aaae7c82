#pragma once

// Interchange formats for fans and run reports.
//
// Fan JSON:
//   {"cones": [[i,j,k], ...], "dim": 3, "labels": {"<ray index>": "..."},
//    "rays": [[x1,x2,x3], ...]}
// Keys are sorted. Coordinates that fit in int64 are JSON numbers, larger
// ones are decimal strings; both forms are accepted on input.
//
// Step log: one JSON object per line with keys in the order
//   step, cone, mu, point, l_value
// where l_value is an exact "p/q" string.
//
// Fan CSV: header "cone,ray_a,ray_b,ray_c,multiplicity"; rays are written
// as quoted "(x1,x2,x3)" fields and ray_c is empty for 2D fans.

#include <optional>
#include <string>
#include <vector>

#include "shedkit/desing.hpp"
#include "shedkit/fan.hpp"

namespace shedkit::io {

std::string fan_to_json(const Fan& f);

/// Throws ParseError (with byte offset) for malformed JSON, and
/// ParseError / InvalidFanError for well-formed JSON that is not a fan.
Fan fan_from_json(const std::string& text);

std::string step_to_json(std::size_t index, const GStep& s);
std::string step_log_jsonl(const std::vector<GStep>& steps);

std::string fan_to_dot(const Fan& f);
std::string fan_to_csv(const Fan& f);

/// x1x3 -> rows (1,0,0),(0,0,1); -x3x2 -> rows (0,0,-1),(0,1,0);
/// "a,b,c;d,e,f" -> those two rows. Throws UsageError otherwise.
IntMatrix parse_projection(const std::string& spec);

/// Exact decimal rendering of r rounded half away from zero.
std::string fixed_decimal(const Rational& r, int digits);

/// 2D fans are drawn directly; 3D fans need a projection (UsageError
/// otherwise). The drawing fits the ray generators and the origin into a
/// fixed 400×400 viewport. Rays on the boundary of the support get class
/// "boundary", the others "interior"; each cone's roof is a "roof" segment.
std::string fan_to_svg(const Fan& f, const std::optional<IntMatrix>& projection,
                       const std::string& title);

struct Check {
  std::string name;
  bool pass = false;
  std::string witness;
};

struct RunReport {
  std::string construction;
  std::optional<Integer> q;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  std::optional<double> elapsed_ms;  // only serialized when set

  [[nodiscard]] bool pass() const;
  void add(std::string name, bool pass, std::string witness = {});
};

/// Keys in the order construction, q, checks, notes, pass[, elapsed_ms].
std::string report_to_json(const RunReport& r);

}  // namespace shedkit::io
