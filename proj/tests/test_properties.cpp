#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "shedkit/cone.hpp"
#include "shedkit/desing.hpp"
#include "shedkit/errors.hpp"
#include "shedkit/fan.hpp"

using namespace shedkit;

namespace {

constexpr int kTrials = 60;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long coord(long r) { return std::uniform_int_distribution<long>(-r, r)(rng_); }

  LatticeVector vec(std::size_t n, long r) {
    while (true) {
      std::vector<Integer> c;
      for (std::size_t i = 0; i < n; ++i) c.emplace_back(coord(r));
      LatticeVector v(std::move(c));
      if (!v.is_zero()) return primitivize(v);
    }
  }

  SimplicialCone cone(std::size_t n, long r) {
    while (true) {
      std::vector<LatticeVector> rays;
      for (std::size_t i = 0; i < n; ++i) rays.push_back(vec(n, r));
      try {
        return SimplicialCone(rays);
      } catch (const InvalidFanError&) {
      }
    }
  }

  /// A lattice point strictly inside c: a positive combination of its rays.
  LatticeVector interior_point(const SimplicialCone& c) {
    LatticeVector x = c.ray(0);
    for (std::size_t i = 1; i < c.dim(); ++i) x = x + c.ray(i);
    for (std::size_t i = 0; i < c.dim(); ++i)
      x = x + Integer(std::uniform_int_distribution<long>(0, 2)(rng_)) * c.ray(i);
    return primitivize(x);
  }

 private:
  std::mt19937_64 rng_;
};

Integer total_multiplicity(const Fan& f) {
  Integer t = 0;
  for (std::size_t i = 0; i < f.cones().size(); ++i) t += multiplicity(f.cone(i));
  return t;
}

int sign_vs_one(const Rational& r) { return r < 1 ? -1 : (r > 1 ? 1 : 0); }

}  // namespace

TEST(Property, Biduality) {
  Gen g(0x5eed0001);
  for (int t = 0; t < kTrials; ++t) {
    auto c = g.cone(t % 2 ? 3 : 2, 6);
    EXPECT_EQ(dual_cone(dual_cone(c)), c) << c.ray(0);
  }
}

TEST(Property, PrimitivizeIdempotent) {
  Gen g(0x5eed0002);
  for (int t = 0; t < 200; ++t) {
    std::vector<Integer> c;
    for (int i = 0; i < 3; ++i) c.emplace_back(g.coord(40));
    LatticeVector v(std::move(c));
    if (v.is_zero()) continue;
    LatticeVector p = primitivize(v);
    EXPECT_TRUE(p.is_primitive());
    EXPECT_EQ(primitivize(p), p);
    // v is a positive multiple of p.
    Integer k = 0;
    for (std::size_t i = 0; i < 3; ++i)
      if (p[i] != 0) k = v[i] / p[i];
    EXPECT_GT(k, 0);
    EXPECT_EQ(k * p, v);
  }
}

TEST(Property, SolveSubstitution) {
  Gen g(0x5eed0003);
  for (int t = 0; t < kTrials; ++t) {
    std::vector<LatticeVector> rows;
    for (int i = 0; i < 3; ++i) {
      std::vector<Integer> c;
      for (int j = 0; j < 3; ++j) c.emplace_back(g.coord(9));
      rows.emplace_back(std::move(c));
    }
    IntMatrix m(rows);
    std::vector<Rational> b{Rational(g.coord(5)), Rational(g.coord(5)), Rational(g.coord(5))};
    if (determinant(m) == 0) {
      EXPECT_THROW(solve_rational(m, b), SingularMatrixError);
      continue;
    }
    auto x = solve_rational(m, b);
    for (std::size_t i = 0; i < 3; ++i) {
      Rational s = 0;
      for (std::size_t j = 0; j < 3; ++j) s += Rational(m.at(i, j)) * x[j];
      EXPECT_EQ(s, b[i]);
    }
  }
}

TEST(Property, RegularImpliesTerminal) {
  Gen g(0x5eed0004);
  int regular = 0;
  for (int t = 0; t < 400 && regular < 25; ++t) {
    auto c = g.cone(3, 3);
    Fan f = Fan::from_cone(c);
    if (!is_regular(f)) {
      // Terminal cones are exactly those with nothing but generators in the
      // shed; the box oracle says the same.
      std::vector<oracle::Vec> rays;
      for (const auto& r : c.rays()) rays.push_back(oracle::to_vec(r));
      EXPECT_EQ(is_terminal(f), oracle::shed(rays, false).size() == 3) << c.ray(0);
      continue;
    }
    ++regular;
    EXPECT_TRUE(is_terminal(f));
    EXPECT_EQ(multiplicity(c), 1);
  }
  EXPECT_GT(regular, 0);
}

TEST(Property, StarSubdivisionPreservesSupport) {
  Gen g(0x5eed0005);
  for (int t = 0; t < kTrials; ++t) {
    std::size_t n = t % 2 ? 3 : 2;
    auto c = g.cone(n, 5);
    auto x = g.interior_point(c);
    Fan before = Fan::from_cone(c);
    Fan after = star_subdivide(before, x);
    EXPECT_EQ(after.cones().size(), n);
    // Volumes add up.
    EXPECT_EQ(total_multiplicity(after), multiplicity(c) * support_form(c)(x))
        << c.ray(0) << " " << x;
    // Random lattice points land in the subdivision exactly when in c.
    for (int k = 0; k < 20; ++k) {
      auto y = g.vec(n, 12);
      bool in_c = contains(c, y).inside;
      bool in_after = false;
      for (std::size_t i = 0; i < after.cones().size(); ++i)
        in_after |= contains(after.cone(i), y).inside;
      EXPECT_EQ(in_c, in_after) << y;
    }
  }
}

TEST(Property, RoofSignSymmetric) {
  Gen g(0x5eed0006);
  for (int t = 0; t < kTrials; ++t) {
    auto c = g.cone(3, 4);
    Fan f = star_subdivide(Fan::from_cone(c), g.interior_point(c));
    for (const auto& w : roof_concavity(f).walls) {
      // Swap roles: measure σ's own off-wall ray from the neighbour.
      std::size_t si = 0, ti = 0;
      for (std::size_t i = 0; i < f.cones().size(); ++i) {
        auto rays = f.cone(i).rays();
        if (rays == SimplicialCone(w.cone).rays()) si = i;
      }
      auto sigma = f.cone(si);
      LatticeVector own;
      for (const auto& r : sigma.rays())
        if (std::find(w.wall.begin(), w.wall.end(), r) == w.wall.end()) own = r;
      for (std::size_t i = 0; i < f.cones().size(); ++i) {
        auto rays = f.cone(i).rays();
        if (std::find(rays.begin(), rays.end(), w.opposite) != rays.end() &&
            std::all_of(w.wall.begin(), w.wall.end(), [&](const LatticeVector& r) {
              return std::find(rays.begin(), rays.end(), r) != rays.end();
            }))
          ti = i;
      }
      Rational back = support_form(f.cone(ti))(own);
      EXPECT_EQ(sign_vs_one(w.level), sign_vs_one(back));
    }
  }
}

TEST(Property, GDesingularizeSteps) {
  Gen g(0x5eed0007);
  int resolved = 0;
  for (int t = 0; t < 80; ++t) {
    auto c = g.cone(3, 4);
    Fan f = Fan::from_cone(c);
    GResult r;
    try {
      r = g_desingularize(f, 200);
    } catch (const NonTerminationError&) {
      continue;
    }
    for (const auto& s : r.steps) EXPECT_EQ(s.level, 1 + make_rational(1, s.mu));
    if (r.status == GStatus::regular) {
      ++resolved;
      EXPECT_TRUE(is_regular(r.fan));
    }
  }
  EXPECT_GT(resolved, 0);
}

TEST(Property, MinimalResolution2dAgreesWithSail) {
  Gen g(0x5eed0008);
  for (int t = 0; t < kTrials; ++t) {
    auto c = g.cone(2, 15);
    auto got = minimal_resolution_2d(c);
    std::vector<LatticeVector> want;
    for (const auto& v : oracle::sail_2d(oracle::to_vec(c.ray(0)), oracle::to_vec(c.ray(1))))
      want.push_back(oracle::to_lattice(v));
    EXPECT_EQ(got, want) << c.ray(0) << " " << c.ray(1);
    Fan f = Fan::from_cone(c);
    for (const auto& x : got) f = star_subdivide(f, x);
    EXPECT_TRUE(is_regular(f));
  }
}
