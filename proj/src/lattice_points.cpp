#include "shedkit/lattice_points.hpp"

#include "shedkit/errors.hpp"

namespace shedkit {

namespace {

Integer floor_of(const Rational& r) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

Integer ceil_of(const Rational& r) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

struct Scanner {
  const IntegerBox& box;
  const std::vector<HalfSpace>& constraints;
  const std::function<void(const LatticeVector&)>& visit;
  std::vector<Integer> x;

  void scan(std::size_t level) {
    const std::size_t n = x.size();
    if (level + 1 < n) {
      for (x[level] = box.lo[level]; x[level] <= box.hi[level]; ++x[level]) {
        scan(level + 1);
      }
      return;
    }
    // Innermost coordinate: intersect the box with each constraint.
    Integer lo = box.lo[level];
    Integer hi = box.hi[level];
    Integer rest, t;
    for (const auto& h : constraints) {
      rest = 0;
      for (std::size_t j = 0; j < level; ++j) rest += h.normal[j] * x[j];
      t = h.offset - rest;
      const Integer& c = h.normal[level];
      if (c > 0) {
        Integer b;
        mpz_cdiv_q(b.get_mpz_t(), t.get_mpz_t(), c.get_mpz_t());
        if (b > lo) lo = b;
      } else if (c < 0) {
        Integer b;
        mpz_fdiv_q(b.get_mpz_t(), t.get_mpz_t(), c.get_mpz_t());
        if (b < hi) hi = b;
      } else if (t > 0) {
        return;
      }
      if (lo > hi) return;
    }
    for (x[level] = lo; x[level] <= hi; ++x[level]) visit(LatticeVector(x));
  }
};

}  // namespace

void enumerate_lattice_points(
    const IntegerBox& box, const std::vector<HalfSpace>& constraints,
    const std::function<void(const LatticeVector&)>& visit) {
  const std::size_t n = box.lo.size();
  if (n == 0 || box.hi.size() != n) {
    throw DimensionError("malformed enumeration box");
  }
  for (const auto& h : constraints) {
    if (h.normal.dim() != n) {
      throw DimensionError("constraint dimension does not match box");
    }
  }
  Scanner s{box, constraints, visit, std::vector<Integer>(n)};
  s.scan(0);
}

IntegerBox simplex_box(const std::vector<LatticeVector>& generators,
                       const Rational& scale) {
  if (generators.empty()) throw DimensionError("no generators");
  const std::size_t n = generators.front().dim();
  IntegerBox box{std::vector<Integer>(n, 0), std::vector<Integer>(n, 0)};
  for (const auto& g : generators) {
    for (std::size_t j = 0; j < n; ++j) {
      Rational v = scale * g[j];
      Integer f = floor_of(v), c = ceil_of(v);
      if (f < box.lo[j]) box.lo[j] = f;
      if (c > box.hi[j]) box.hi[j] = c;
    }
  }
  return box;
}

IntegerBox parallelepiped_box(const std::vector<LatticeVector>& generators) {
  if (generators.empty()) throw DimensionError("no generators");
  const std::size_t n = generators.front().dim();
  IntegerBox box{std::vector<Integer>(n, 0), std::vector<Integer>(n, 0)};
  for (const auto& g : generators) {
    for (std::size_t j = 0; j < n; ++j) {
      if (g[j] < 0) box.lo[j] += g[j];
      else box.hi[j] += g[j];
    }
  }
  return box;
}

}  // namespace shedkit
