#include "shedkit/fan.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>

#include "shedkit/errors.hpp"

namespace shedkit {

Fan::Fan(std::size_t dim, std::vector<LatticeVector> rays,
         std::vector<ConeIndices> cones,
         std::map<LatticeVector, std::string> labels)
    : dim_(dim) {
  if (dim != 2 && dim != 3) {
    throw InvalidFanError("fan dimension must be 2 or 3");
  }
  for (const auto& r : rays) {
    if (r.dim() != dim) {
      throw InvalidFanError("ray " + r.str() + " does not have dimension " +
                            std::to_string(dim));
    }
    if (!r.is_primitive()) {
      throw InvalidFanError("ray " + r.str() + " is not primitive");
    }
  }
  // Canonical ray order, remembering where each input ray went.
  std::vector<std::size_t> order(rays.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return rays[a] < rays[b]; });
  std::vector<std::size_t> new_index(rays.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    new_index[order[k]] = k;
    rays_.push_back(rays[order[k]]);
    if (k > 0 && rays_[k] == rays_[k - 1]) {
      throw InvalidFanError("duplicate ray " + rays_[k].str());
    }
  }
  for (auto& c : cones) {
    if (c.size() != dim) {
      throw InvalidFanError("maximal cone with " + std::to_string(c.size()) +
                            " rays in a fan of dimension " +
                            std::to_string(dim));
    }
    ConeIndices mapped;
    for (std::size_t i : c) {
      if (i >= rays.size()) throw InvalidFanError("ray index out of range");
      mapped.push_back(new_index[i]);
    }
    std::sort(mapped.begin(), mapped.end());
    if (std::adjacent_find(mapped.begin(), mapped.end()) != mapped.end()) {
      throw InvalidFanError("cone repeats a ray");
    }
    cones_.push_back(std::move(mapped));
  }
  std::sort(cones_.begin(), cones_.end());
  if (std::adjacent_find(cones_.begin(), cones_.end()) != cones_.end()) {
    throw InvalidFanError("duplicate maximal cone");
  }
  for (std::size_t i = 0; i < cones_.size(); ++i) (void)cone(i);
  for (auto& [ray, text] : labels) {
    if (std::binary_search(rays_.begin(), rays_.end(), ray)) {
      labels_.emplace(ray, std::move(text));
    }
  }
}

Fan Fan::from_cone(const SimplicialCone& c,
                   std::map<LatticeVector, std::string> labels) {
  ConeIndices all(c.dim());
  for (std::size_t i = 0; i < c.dim(); ++i) all[i] = i;
  return Fan(c.dim(), c.rays(), {all}, std::move(labels));
}

std::vector<LatticeVector> Fan::cone_rays(std::size_t i) const {
  std::vector<LatticeVector> out;
  for (std::size_t r : cones_.at(i)) out.push_back(rays_[r]);
  return out;
}

SimplicialCone Fan::cone(std::size_t i) const {
  return SimplicialCone(cone_rays(i));
}

std::optional<std::size_t> Fan::ray_index(const LatticeVector& v) const {
  auto it = std::lower_bound(rays_.begin(), rays_.end(), v);
  if (it == rays_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - rays_.begin());
}

std::string Fan::label(const LatticeVector& v) const {
  auto it = labels_.find(v);
  return it == labels_.end() ? std::string() : it->second;
}

namespace {

// Normal of the hyperplane spanned by a wall (dim − 1 rays).
LatticeVector wall_normal(const std::vector<LatticeVector>& wall) {
  if (wall.size() == 2) return cross(wall[0], wall[1]);
  return LatticeVector(std::vector<Integer>{-wall[0][1], wall[0][0]});
}

int sign(const Integer& z) { return sgn(z); }

LatticeVector sum_of(const std::vector<LatticeVector>& vs) {
  LatticeVector s = vs.front();
  for (std::size_t i = 1; i < vs.size(); ++i) s = s + vs[i];
  return s;
}

}  // namespace

std::vector<Wall> walls(const Fan& f) {
  std::map<ConeIndices, std::vector<std::size_t>> incidence;
  for (std::size_t ci = 0; ci < f.cones().size(); ++ci) {
    const auto& c = f.cones()[ci];
    for (std::size_t skip = 0; skip < c.size(); ++skip) {
      ConeIndices w;
      for (std::size_t k = 0; k < c.size(); ++k)
        if (k != skip) w.push_back(c[k]);
      incidence[w].push_back(ci);
    }
  }
  std::vector<Wall> out;
  for (auto& [w, cs] : incidence) out.push_back(Wall{w, cs});
  return out;
}

void Fan::validate() const {
  for (std::size_t ci = 0; ci < cones_.size(); ++ci) {
    SimplicialCone c = cone(ci);
    for (const auto& r : rays_) {
      if (!c.has_ray(r) && contains(c, r).inside) {
        throw InvalidFanError("ray " + r.str() + " lies in cone " +
                              std::to_string(ci) + " without generating it");
      }
    }
    LatticeVector centre = sum_of(c.rays());
    for (std::size_t cj = 0; cj < cones_.size(); ++cj) {
      if (cj != ci && contains(cone(cj), centre).inside) {
        throw InvalidFanError("cones " + std::to_string(ci) + " and " +
                              std::to_string(cj) + " overlap");
      }
    }
  }
  for (const auto& w : walls(*this)) {
    if (w.cones.size() > 2) {
      throw InvalidFanError("wall shared by more than two cones");
    }
    if (!w.internal()) continue;
    std::vector<LatticeVector> wr;
    for (std::size_t r : w.rays) wr.push_back(rays_[r]);
    LatticeVector n = wall_normal(wr);
    int sides = 1;
    for (std::size_t ci : w.cones) {
      for (std::size_t r : cones_[ci]) {
        if (!std::binary_search(w.rays.begin(), w.rays.end(), r)) {
          sides *= sign(dot(n, rays_[r]));
        }
      }
    }
    if (sides >= 0) {
      throw InvalidFanError("cones on both sides of an internal wall fold over");
    }
  }
}

void SubdivisionSchedule::add(LatticeVector ray, std::string label) {
  if (!ray.is_primitive()) {
    throw DegenerateInputError("schedule ray " + ray.str() +
                               " is not primitive");
  }
  entries_.push_back({std::move(ray), std::move(label)});
}

bool SubdivisionSchedule::add_unique(LatticeVector ray, std::string label) {
  for (const auto& e : entries_) {
    if (e.ray == ray) {
      warnings_.push_back("duplicate ray " + ray.str() + " (" + label +
                          ") collapsed into " + e.label);
      return false;
    }
  }
  add(std::move(ray), std::move(label));
  return true;
}

std::vector<LatticeVector> SubdivisionSchedule::rays() const {
  std::vector<LatticeVector> out;
  for (const auto& e : entries_) out.push_back(e.ray);
  return out;
}

SubdivisionRecord subdivide(const Fan& f, const LatticeVector& ray,
                            const std::string& label) {
  if (ray.dim() != f.dim()) {
    throw DimensionError("ray " + ray.str() + " has the wrong dimension");
  }
  if (!ray.is_primitive()) {
    throw DegenerateInputError("subdivision ray " + ray.str() +
                               " is not primitive");
  }
  if (f.ray_index(ray)) {
    throw IdempotenceError("ray " + ray.str() + " is already a ray of the fan");
  }
  std::vector<LatticeVector> rays = f.rays();
  rays.push_back(ray);
  const std::size_t fresh = rays.size() - 1;

  SubdivisionRecord rec;
  std::vector<ConeIndices> cones;
  for (std::size_t ci = 0; ci < f.cones().size(); ++ci) {
    const auto& idx = f.cones()[ci];
    Containment where = contains(f.cone(ci), ray);
    if (!where.inside) {
      cones.push_back(idx);
      continue;
    }
    rec.removed.push_back(f.cone_rays(ci));
    // Join the new ray with every facet that does not contain it.
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (where.barycentric[i] > 0) {
        ConeIndices c = idx;
        c[i] = fresh;
        std::vector<LatticeVector> cr;
        for (std::size_t r : c) cr.push_back(rays[r]);
        std::sort(cr.begin(), cr.end());
        rec.added.push_back(std::move(cr));
        cones.push_back(std::move(c));
      }
    }
  }
  if (rec.removed.empty()) {
    throw DomainError("ray " + ray.str() + " is outside the support of the fan");
  }
  auto labels = f.labels();
  if (!label.empty()) labels[ray] = label;
  rec.fan = Fan(f.dim(), std::move(rays), std::move(cones), std::move(labels));
  return rec;
}

Fan star_subdivide(const Fan& f, const LatticeVector& ray,
                   const std::string& label) {
  return subdivide(f, ray, label).fan;
}

bool is_regular(const Fan& f) {
  for (std::size_t i = 0; i < f.cones().size(); ++i) {
    if (multiplicity(f.cone(i)) != 1) return false;
  }
  return true;
}

std::optional<TerminalWitness> terminal_witness(const Fan& f) {
  for (std::size_t i = 0; i < f.cones().size(); ++i) {
    SimplicialCone c = f.cone(i);
    if (multiplicity(c) == 1) continue;  // regular cones are terminal
    SupportForm l = support_form(c);
    for (auto& x : shed_lattice_points(c)) {
      if (!c.has_ray(x)) return TerminalWitness{c.rays(), x, l(x)};
    }
  }
  return std::nullopt;
}

bool is_terminal(const Fan& f) { return !terminal_witness(f).has_value(); }

std::string to_string(Concavity c) {
  switch (c) {
    case Concavity::strictly_concave:
      return "strictly_concave";
    case Concavity::concave:
      return "concave";
    case Concavity::not_concave:
      return "not_concave";
  }
  return "unknown";
}

RoofReport roof_concavity(const Fan& f) {
  RoofReport report;
  for (const auto& w : walls(f)) {
    if (!w.internal()) continue;
    const auto& inner = f.cones()[w.cones[0]];
    const auto& outer = f.cones()[w.cones[1]];
    WallConcavity wc;
    for (std::size_t r : w.rays) wc.wall.push_back(f.rays()[r]);
    wc.cone = f.cone_rays(w.cones[0]);
    for (std::size_t r : outer) {
      if (std::find(inner.begin(), inner.end(), r) == inner.end()) {
        wc.opposite = f.rays()[r];
      }
    }
    wc.level = support_form(f.cone(w.cones[0]))(wc.opposite);
    if (wc.level > 1) wc.verdict = Concavity::strictly_concave;
    else if (wc.level == 1) wc.verdict = Concavity::concave;
    else wc.verdict = Concavity::not_concave;
    report.verdict = std::min(report.verdict, wc.verdict);
    report.walls.push_back(std::move(wc));
  }
  return report;
}

Rational shed_volume(const Fan& f) {
  Integer total = 0;
  for (std::size_t i = 0; i < f.cones().size(); ++i) {
    total += multiplicity(f.cone(i));
  }
  Integer factorial = f.dim() == 3 ? 6 : 2;
  return make_rational(total, factorial);
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string canonical_text(const Fan& f) {
  std::string s = std::to_string(f.dim()) + "|";
  for (const auto& r : f.rays()) s += r.str();
  s += "|";
  for (const auto& c : f.cones()) {
    for (std::size_t i : c) s += std::to_string(i) + ",";
    s += ";";
  }
  return s;
}

}  // namespace

bool is_complete(const Fan& f) {
  if (f.cones().empty()) return false;
  for (const auto& w : walls(f)) {
    if (!w.internal()) return false;
  }
  std::vector<SimplicialCone> cones;
  for (std::size_t i = 0; i < f.cones().size(); ++i) cones.push_back(f.cone(i));

  // Directions in general position must each land in exactly one cone.
  constexpr int kDirections = 24;
  constexpr int kMaxDraws = 2000;
  constexpr std::uint64_t kRange = 1ULL << 20;
  std::mt19937_64 rng(fnv1a(canonical_text(f)));
  int accepted = 0;
  for (int draw = 0; draw < kMaxDraws && accepted < kDirections; ++draw) {
    std::vector<Integer> coords;
    for (std::size_t j = 0; j < f.dim(); ++j) {
      auto r = static_cast<long>(rng() % (2 * kRange + 1));
      coords.emplace_back(r - static_cast<long>(kRange));
    }
    LatticeVector d(std::move(coords));
    if (d.is_zero()) continue;
    int hits = 0;
    bool on_boundary = false;
    for (const auto& c : cones) {
      Containment where = contains(c, d);
      if (!where.inside) continue;
      ++hits;
      for (const auto& lam : where.barycentric) {
        if (lam == 0) on_boundary = true;
      }
    }
    if (on_boundary) continue;
    if (hits != 1) return false;
    ++accepted;
  }
  return accepted == kDirections;
}

namespace {

// Angular order starting at the positive x-axis, counterclockwise.
bool upper_half(const LatticeVector& v) {
  return v[1] > 0 || (v[1] == 0 && v[0] > 0);
}

Integer cross2(const LatticeVector& a, const LatticeVector& b) {
  return a[0] * b[1] - a[1] * b[0];
}

bool angle_less(const LatticeVector& a, const LatticeVector& b) {
  bool ua = upper_half(a), ub = upper_half(b);
  if (ua != ub) return ua;
  return cross2(a, b) > 0;
}

bool in_positive_hull(const std::vector<LatticeVector>& gens,
                      const LatticeVector& t) {
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (cross2(gens[i], t) == 0 && dot(gens[i], t) > 0) return true;
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Integer d = cross2(gens[i], gens[j]);
      if (d == 0) continue;
      // t = α·g_i + β·g_j
      Integer a = cross2(t, gens[j]);
      Integer b = cross2(gens[i], t);
      if (sgn(a) * sgn(d) >= 0 && sgn(b) * sgn(d) >= 0) return true;
    }
  }
  return false;
}

}  // namespace

Fan project(const Fan& f, const IntMatrix& map, KernelRays policy) {
  if (map.rows() != 2 || map.cols() != f.dim()) {
    throw DimensionError("projection must be a 2x" + std::to_string(f.dim()) +
                         " matrix");
  }
  try {
    (void)maximal_minor_gcd(map);
  } catch (const DegenerateInputError&) {
    throw DegenerateInputError("projection map has rank < 2");
  }
  std::map<LatticeVector, std::string> labels;
  std::vector<LatticeVector> images;
  std::vector<std::vector<LatticeVector>> cone_images;
  for (const auto& r : f.rays()) {
    LatticeVector img = map.apply(r);
    if (img.is_zero()) {
      if (policy == KernelRays::reject) {
        throw DegenerateInputError("ray " + r.str() + " projects to 0");
      }
      continue;
    }
    img = primitivize(img);
    if (std::find(images.begin(), images.end(), img) == images.end()) {
      images.push_back(img);
    }
    if (!f.label(r).empty() && !labels.count(img)) labels[img] = f.label(r);
  }
  for (std::size_t i = 0; i < f.cones().size(); ++i) {
    std::vector<LatticeVector> gens;
    for (const auto& r : f.cone_rays(i)) {
      LatticeVector img = map.apply(r);
      if (!img.is_zero()) gens.push_back(img);
    }
    cone_images.push_back(std::move(gens));
  }
  if (images.size() < 2) {
    throw DegenerateInputError("projection collapses the fan to a ray");
  }
  std::sort(images.begin(), images.end(), angle_less);

  std::vector<ConeIndices> cones;
  const std::size_t n = images.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = images[i];
    const auto& b = images[(i + 1) % n];
    bool convex_gap = cross2(a, b) > 0;
    LatticeVector probe =
        convex_gap ? a + b : LatticeVector(std::vector<Integer>{-a[1], a[0]});
    bool covered = std::any_of(
        cone_images.begin(), cone_images.end(),
        [&](const auto& gens) { return in_positive_hull(gens, probe); });
    if (!covered) continue;
    if (!convex_gap) {
      throw DegenerateInputError("projected support between " + a.str() +
                                 " and " + b.str() +
                                 " is not strictly convex");
    }
    cones.push_back({i, (i + 1) % n});
  }
  return Fan(2, images, cones, labels);
}

namespace {

template <class E>
[[noreturn]] void rethrow_at(std::size_t step, const E& e) {
  throw E("schedule step " + std::to_string(step) + ": " + e.what());
}

}  // namespace

ScheduleResult apply_schedule(const Fan& f, const SubdivisionSchedule& s) {
  ScheduleResult out{f, {}};
  for (std::size_t i = 0; i < s.entries().size(); ++i) {
    const auto& e = s.entries()[i];
    try {
      SubdivisionRecord rec = subdivide(out.fan, e.ray, e.label);
      out.log.push_back(ScheduleStep{i, e, std::move(rec.removed),
                                     std::move(rec.added)});
      out.fan = std::move(rec.fan);
    } catch (const IdempotenceError& err) {
      rethrow_at(i, err);
    } catch (const DomainError& err) {
      rethrow_at(i, err);
    } catch (const DegenerateInputError& err) {
      rethrow_at(i, err);
    } catch (const DimensionError& err) {
      rethrow_at(i, err);
    }
  }
  return out;
}

}  // namespace shedkit
