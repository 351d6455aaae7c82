#include "shedkit/io.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

#include "shedkit/errors.hpp"

namespace shedkit::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

template <class J>
J integer_to_json(const Integer& z) {
  if (z.fits_slong_p()) return J(static_cast<std::int64_t>(z.get_si()));
  return J(z.get_str());
}

template <class J>
J vector_to_json(const LatticeVector& v) {
  J arr = J::array();
  for (std::size_t i = 0; i < v.dim(); ++i) arr.push_back(integer_to_json<J>(v[i]));
  return arr;
}

Integer integer_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(static_cast<long>(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start ||
        !std::all_of(s.begin() + start, s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw ParseError(where + ": '" + s + "' is not an integer");
    }
    return Integer(s);
  }
  throw ParseError(where + ": expected an integer");
}

std::size_t index_from_json(const json& j, const std::string& where) {
  if (!j.is_number_unsigned()) {
    throw ParseError(where + ": expected a nonnegative integer index");
  }
  return j.get<std::size_t>();
}

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing key \"") + key + "\"");
  return *it;
}

}  // namespace

std::string fan_to_json(const Fan& f) {
  json j;
  j["dim"] = f.dim();
  json rays = json::array();
  for (const auto& r : f.rays()) rays.push_back(vector_to_json<json>(r));
  j["rays"] = rays;
  json cones = json::array();
  for (const auto& c : f.cones()) cones.push_back(c);
  j["cones"] = cones;
  json labels = json::object();
  for (std::size_t i = 0; i < f.rays().size(); ++i) {
    auto it = f.labels().find(f.rays()[i]);
    if (it != f.labels().end()) labels[std::to_string(i)] = it->second;
  }
  j["labels"] = labels;
  return j.dump(2) + "\n";
}

Fan fan_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at byte " + std::to_string(e.byte) + ": " +
                     e.what());
  }
  if (!j.is_object()) throw ParseError("fan JSON must be an object");
  const json& dim_j = require(j, "dim");
  if (!dim_j.is_number_unsigned()) throw ParseError("\"dim\" must be 2 or 3");
  auto dim = dim_j.get<std::size_t>();

  const json& rays_j = require(j, "rays");
  if (!rays_j.is_array()) throw ParseError("\"rays\" must be an array");
  std::vector<LatticeVector> rays;
  for (std::size_t i = 0; i < rays_j.size(); ++i) {
    const std::string where = "rays[" + std::to_string(i) + "]";
    if (!rays_j[i].is_array()) throw ParseError(where + ": expected an array");
    std::vector<Integer> coords;
    for (std::size_t k = 0; k < rays_j[i].size(); ++k) {
      coords.push_back(integer_from_json(rays_j[i][k],
                                         where + "[" + std::to_string(k) + "]"));
    }
    rays.emplace_back(std::move(coords));
  }

  const json& cones_j = require(j, "cones");
  if (!cones_j.is_array()) throw ParseError("\"cones\" must be an array");
  std::vector<ConeIndices> cones;
  for (std::size_t i = 0; i < cones_j.size(); ++i) {
    const std::string where = "cones[" + std::to_string(i) + "]";
    if (!cones_j[i].is_array()) throw ParseError(where + ": expected an array");
    ConeIndices c;
    for (std::size_t k = 0; k < cones_j[i].size(); ++k) {
      std::size_t idx =
          index_from_json(cones_j[i][k], where + "[" + std::to_string(k) + "]");
      if (idx >= rays.size()) {
        throw ParseError(where + ": ray index " + std::to_string(idx) +
                         " out of range");
      }
      c.push_back(idx);
    }
    cones.push_back(std::move(c));
  }

  std::map<LatticeVector, std::string> labels;
  if (auto it = j.find("labels"); it != j.end()) {
    if (!it->is_object()) throw ParseError("\"labels\" must be an object");
    for (const auto& [key, value] : it->items()) {
      std::size_t idx = 0;
      try {
        std::size_t used = 0;
        idx = std::stoul(key, &used);
        if (used != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw ParseError("labels: key '" + key + "' is not a ray index");
      }
      if (idx >= rays.size()) throw ParseError("labels: ray index out of range");
      if (!value.is_string()) throw ParseError("labels: values must be strings");
      labels[rays[idx]] = value.get<std::string>();
    }
  }
  return Fan(dim, std::move(rays), std::move(cones), std::move(labels));
}

std::string step_to_json(std::size_t index, const GStep& s) {
  ordered_json j;
  j["step"] = index;
  ordered_json cone = ordered_json::array();
  for (const auto& r : s.cone) cone.push_back(vector_to_json<ordered_json>(r));
  j["cone"] = cone;
  j["mu"] = integer_to_json<ordered_json>(s.mu);
  j["point"] = vector_to_json<ordered_json>(s.point);
  Rational level = s.level;
  level.canonicalize();
  j["l_value"] = level.get_num().get_str() + "/" + level.get_den().get_str();
  return j.dump();
}

std::string step_log_jsonl(const std::vector<GStep>& steps) {
  std::string out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    out += step_to_json(i + 1, steps[i]) + "\n";
  }
  return out;
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string fan_to_dot(const Fan& f) {
  std::ostringstream os;
  os << "graph fan {\n";
  for (std::size_t i = 0; i < f.rays().size(); ++i) {
    std::string label = f.rays()[i].str();
    std::string extra = f.label(f.rays()[i]);
    if (!extra.empty()) label += "\\n" + dot_escape(extra);
    os << "  r" << i << " [label=\"" << label << "\"];\n";
  }
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& c : f.cones()) {
    for (std::size_t a = 0; a < c.size(); ++a) {
      for (std::size_t b = a + 1; b < c.size(); ++b) edges.emplace(c[a], c[b]);
    }
  }
  for (const auto& [a, b] : edges) os << "  r" << a << " -- r" << b << ";\n";
  os << "}\n";
  return os.str();
}

std::string fan_to_csv(const Fan& f) {
  std::ostringstream os;
  os << "cone,ray_a,ray_b,ray_c,multiplicity\n";
  for (std::size_t i = 0; i < f.cones().size(); ++i) {
    os << i;
    auto rays = f.cone_rays(i);
    for (std::size_t k = 0; k < 3; ++k) {
      os << ',';
      if (k < rays.size()) os << '"' << rays[k].str() << '"';
    }
    os << ',' << multiplicity(f.cone(i)).get_str() << '\n';
  }
  return os.str();
}

IntMatrix parse_projection(const std::string& spec) {
  if (spec == "x1x3") return IntMatrix({LatticeVector{1, 0, 0}, LatticeVector{0, 0, 1}});
  if (spec == "-x3x2") return IntMatrix({LatticeVector{0, 0, -1}, LatticeVector{0, 1, 0}});
  auto semi = spec.find(';');
  if (semi == std::string::npos) {
    throw UsageError("projection must be x1x3, -x3x2 or \"a,b,c;d,e,f\"");
  }
  auto parse_row = [&](const std::string& text) {
    std::vector<Integer> coords;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        long v = std::stol(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        coords.emplace_back(v);
      } catch (const std::exception&) {
        throw UsageError("projection entry '" + item + "' is not an integer");
      }
    }
    if (coords.size() != 3) throw UsageError("projection rows need 3 entries");
    return LatticeVector(std::move(coords));
  };
  return IntMatrix({parse_row(spec.substr(0, semi)), parse_row(spec.substr(semi + 1))});
}

std::string fixed_decimal(const Rational& r, int digits) {
  Integer scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  // round(|r|·scale) half away from zero
  Integer num = abs(r.get_num()) * scale * 2 + r.get_den();
  Integer den = r.get_den() * 2;
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  std::string s = q.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) {
      s.insert(0, digits + 1 - s.size(), '0');
    }
    s.insert(s.size() - digits, ".");
  }
  if (r < 0 && q != 0) s.insert(0, "-");
  return s;
}

std::string fan_to_svg(const Fan& f, const std::optional<IntMatrix>& projection,
                       const std::string& title) {
  Fan plane;
  if (f.dim() == 2) {
    plane = f;
  } else if (projection) {
    plane = project(f, *projection);
  } else {
    throw UsageError("drawing a 3D fan needs a projection");
  }

  // Affine map from lattice coordinates into the 400×400 viewport with a
  // 20-pixel margin; y grows upwards in the lattice.
  Integer minx = 0, maxx = 0, miny = 0, maxy = 0;
  for (const auto& r : plane.rays()) {
    minx = std::min(minx, r[0]);
    maxx = std::max(maxx, r[0]);
    miny = std::min(miny, r[1]);
    maxy = std::max(maxy, r[1]);
  }
  Integer span = std::max(Integer(maxx - minx), Integer(maxy - miny));
  if (span == 0) span = 1;
  const Rational scale = make_rational(360, span);
  auto px = [&](const Integer& x) { return fixed_decimal(20 + (x - minx) * scale, 2); };
  auto py = [&](const Integer& y) { return fixed_decimal(380 - (y - miny) * scale, 2); };

  std::vector<int> incidence(plane.rays().size(), 0);
  for (const auto& c : plane.cones())
    for (std::size_t r : c) ++incidence[r];

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" "
        "viewBox=\"0 0 400 400\">\n";
  os << "<title>" << xml_escape(title) << "</title>\n";
  os << "<style>.boundary{stroke:#000;stroke-width:2}"
        ".interior{stroke:#666;stroke-width:1}"
        ".roof{stroke:#b00;stroke-width:1;fill:none}"
        "text{font:10px sans-serif}</style>\n";
  const std::string ox = px(0), oy = py(0);
  for (const auto& c : plane.cones()) {
    const auto& a = plane.rays()[c[0]];
    const auto& b = plane.rays()[c[1]];
    os << "<line class=\"roof\" x1=\"" << px(a[0]) << "\" y1=\"" << py(a[1])
       << "\" x2=\"" << px(b[0]) << "\" y2=\"" << py(b[1]) << "\"/>\n";
  }
  for (std::size_t i = 0; i < plane.rays().size(); ++i) {
    const auto& r = plane.rays()[i];
    const char* cls = incidence[i] >= 2 ? "interior" : "boundary";
    os << "<line class=\"" << cls << "\" x1=\"" << ox << "\" y1=\"" << oy
       << "\" x2=\"" << px(r[0]) << "\" y2=\"" << py(r[1]) << "\"/>\n";
    os << "<text x=\"" << px(r[0]) << "\" y=\"" << py(r[1]) << "\">"
       << xml_escape(r.str()) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

bool RunReport::pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.pass; });
}

void RunReport::add(std::string name, bool ok, std::string witness) {
  checks.push_back({std::move(name), ok, std::move(witness)});
}

std::string report_to_json(const RunReport& r) {
  ordered_json j;
  j["construction"] = r.construction;
  j["q"] = r.q ? integer_to_json<ordered_json>(*r.q) : ordered_json(nullptr);
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["pass"] = c.pass;
    cj["witness"] = c.witness;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  j["notes"] = r.notes;
  j["pass"] = r.pass();
  if (r.elapsed_ms) j["elapsed_ms"] = *r.elapsed_ms;
  return j.dump(2) + "\n";
}

}  // namespace shedkit::io
