#include <gtest/gtest.h>

#include "oracles.hpp"
#include "shedkit/cone.hpp"
#include "shedkit/errors.hpp"
#include "shedkit/lattice_points.hpp"

using namespace shedkit;

namespace {

const SimplicialCone kUnit({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
const SimplicialCone kSigmaM2({{15, -3, -7}, {0, 1, 0}, {0, 0, 1}});
const SimplicialCone kSigmaTop2({{0, 1, 0}, {5, -1, -2}, {15, -3, -7}});
const SimplicialCone kSigmaTilde0({{-1, 0, 0}, {2, 0, -1}, {15, -3, -7}});

std::vector<Rational> rats(std::initializer_list<Rational> r) { return r; }

std::vector<oracle::Vec> rays_of(const SimplicialCone& c) {
  std::vector<oracle::Vec> out;
  for (const auto& r : c.rays()) out.push_back(oracle::to_vec(r));
  return out;
}

}  // namespace

TEST(LatticePoints, BoxWithHalfSpaces) {
  // 0 <= x, 0 <= y, x + y <= 2
  std::vector<HalfSpace> hs{{{1, 0}, 0}, {{0, 1}, 0}, {{-1, -1}, -2}};
  std::vector<LatticeVector> pts;
  enumerate_lattice_points({{-5, -5}, {5, 5}}, hs,
                           [&](const LatticeVector& x) { pts.push_back(x); });
  EXPECT_EQ(pts.size(), 6u);
  EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end()));
}

TEST(LatticePoints, EmptyAndMalformed) {
  std::size_t n = 0;
  enumerate_lattice_points({{0, 0}, {3, 3}}, {{{1, 1}, 10}},
                           [&](const LatticeVector&) { ++n; });
  EXPECT_EQ(n, 0u);
  EXPECT_THROW(enumerate_lattice_points({{0}, {1, 1}}, {}, [](const LatticeVector&) {}),
               DimensionError);
  EXPECT_THROW(enumerate_lattice_points({{0, 0}, {1, 1}}, {{{1, 0, 0}, 0}},
                                        [](const LatticeVector&) {}),
               DimensionError);
}

TEST(LatticePoints, Boxes) {
  auto b = simplex_box({{15, -7}, {0, 1}}, make_rational(4, 3));
  EXPECT_EQ(b.lo, (std::vector<Integer>{0, -10}));
  EXPECT_EQ(b.hi, (std::vector<Integer>{20, 2}));
  auto p = parallelepiped_box({{15, -7}, {0, 1}});
  EXPECT_EQ(p.lo, (std::vector<Integer>{0, -7}));
  EXPECT_EQ(p.hi, (std::vector<Integer>{15, 1}));
}

TEST(SimplicialCone, ValidationAndCanonicalOrder) {
  EXPECT_EQ(kSigmaM2.ray(0), (LatticeVector{0, 0, 1}));
  EXPECT_EQ(kSigmaM2.ray(2), (LatticeVector{15, -3, -7}));
  EXPECT_THROW(SimplicialCone({{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}), InvalidFanError);
  EXPECT_THROW(SimplicialCone({{1, 0, 0}, {0, 1, 0}, {1, 1, 0}}), InvalidFanError);
  EXPECT_THROW(SimplicialCone({{1, 0, 0}, {0, 1, 0}}), InvalidFanError);
  EXPECT_THROW(SimplicialCone({{1, 0}, {0, 1, 0}}), InvalidFanError);
  EXPECT_THROW(SimplicialCone(std::vector<LatticeVector>{LatticeVector{1}}), InvalidFanError);
}

TEST(Multiplicity, Examples) {
  EXPECT_EQ(multiplicity(kUnit), 1);
  EXPECT_EQ(multiplicity(kSigmaM2), 15);
  EXPECT_EQ(multiplicity(kSigmaTop2), 5);
  EXPECT_EQ(multiplicity(kSigmaTilde0), 3);
}

TEST(SupportForm, Examples) {
  EXPECT_EQ(support_form(kUnit).coefficients, rats({1, 1, 1}));
  EXPECT_EQ(support_form(kSigmaTop2).coefficients, rats({make_rational(6, 5), 1, 2}));
  EXPECT_EQ(support_form(kSigmaTilde0).coefficients,
            rats({-1, make_rational(5, 3), -3}));
  for (const auto& c : {kUnit, kSigmaM2, kSigmaTop2, kSigmaTilde0}) {
    auto l = support_form(c);
    for (const auto& r : c.rays()) EXPECT_EQ(l(r), 1);
  }
}

TEST(DualCone, Examples) {
  EXPECT_EQ(dual_cone(kUnit), kUnit);
  EXPECT_EQ(dual_cone(kSigmaM2), SimplicialCone({{1, 0, 0}, {1, 5, 0}, {7, 0, 15}}));
  SimplicialCone quad({{1, 0}, {0, 1}});
  EXPECT_EQ(dual_cone(quad), quad);
  EXPECT_EQ(dual_cone(SimplicialCone({{1, 0}, {1, 2}})),
            SimplicialCone({{0, 1}, {2, -1}}));
}

TEST(DualCone, PairsNonnegativelyAndTightly) {
  for (const auto& c : {kSigmaM2, kSigmaTop2, kSigmaTilde0}) {
    auto d = dual_cone(c);
    for (const auto& u : d.rays()) {
      int zeros = 0;
      for (const auto& r : c.rays()) {
        EXPECT_GE(dot(u, r), 0);
        zeros += dot(u, r) == 0;
      }
      EXPECT_EQ(zeros, 2);
    }
  }
}

TEST(Contains, Examples) {
  // Canonical order of σ_M(2) rays: e3, e2, e1.
  auto c = contains(kSigmaM2, {1, 0, 0});
  EXPECT_TRUE(c.inside);
  EXPECT_EQ(c.barycentric,
            rats({make_rational(7, 15), make_rational(3, 15), make_rational(1, 15)}));
  c = contains(kSigmaM2, {5, -1, -2});
  EXPECT_TRUE(c.inside);
  EXPECT_EQ(c.barycentric, rats({make_rational(1, 3), 0, make_rational(1, 3)}));
  c = contains(kSigmaM2, {-1, 0, 0});
  EXPECT_FALSE(c.inside);
  EXPECT_EQ(c.barycentric.size(), 3u);
  EXPECT_THROW(contains(kSigmaM2, {1, 0}), DimensionError);
}

TEST(Shed, Examples) {
  EXPECT_EQ(shed_lattice_points(kUnit), kUnit.rays());
  std::vector<LatticeVector> expect{{0, 1}, {15, -7}};
  for (long l = 0; l <= 6; ++l) expect.push_back({2 * l + 1, -l});
  std::sort(expect.begin(), expect.end());
  EXPECT_EQ(shed_lattice_points(SimplicialCone({{15, -7}, {0, 1}})), expect);
  EXPECT_EQ(shed_lattice_points(kSigmaTop2), kSigmaTop2.rays());
  EXPECT_TRUE(strict_shed_interior(kSigmaTop2).empty());
}

TEST(Shed, AgreesWithBoxOracle) {
  const std::vector<SimplicialCone> cones{
      kSigmaM2,
      kSigmaTop2,
      kSigmaTilde0,
      SimplicialCone({{40, -4, -13}, {0, 1, 0}, {0, 0, 1}}),
      SimplicialCone({{15, -7}, {0, 1}}),
      SimplicialCone({{40, -13}, {0, 1}}),
      SimplicialCone({{7, -3}, {-1, 0}}),
      SimplicialCone({{3, 5, 7}, {-2, 1, 4}, {1, -3, 2}}),
  };
  for (const auto& c : cones) {
    auto rays = rays_of(c);
    EXPECT_EQ(shed_lattice_points(c), oracle::to_lattice(oracle::shed(rays, false)));
    EXPECT_EQ(strict_shed_interior(c), oracle::to_lattice(oracle::shed(rays, true)));
  }
}

TEST(Shed, DilatedSimplex) {
  // 4/3 · conv(0, rays of σ̃_0(2)) contains the point (6,−1,−3) at level 4/3.
  auto pts = simplex_lattice_points(kSigmaTilde0, make_rational(4, 3));
  EXPECT_NE(std::find(pts.begin(), pts.end(), LatticeVector{6, -1, -3}), pts.end());
  EXPECT_EQ(support_form(kSigmaTilde0)({6, -1, -3}), make_rational(4, 3));
}

TEST(Parallelepiped, CountEqualsMultiplicity) {
  for (const auto& c : {kUnit, kSigmaM2, kSigmaTop2, kSigmaTilde0,
                        SimplicialCone({{15, -7}, {0, 1}}),
                        SimplicialCone({{1, 0, 0}, {1, 5, 0}, {7, 0, 15}})}) {
    auto pts = parallelepiped_points(c);
    EXPECT_EQ(Integer(pts.size()), multiplicity(c));
    EXPECT_EQ(pts.size(), oracle::half_open_parallelepiped_count(rays_of(c)));
    EXPECT_NE(std::find(pts.begin(), pts.end(), LatticeVector(std::vector<Integer>(c.dim(), 0))),
              pts.end());
  }
}

TEST(BarycentricFrame, ScaledLevel) {
  BarycentricFrame f(kSigmaTop2);
  EXPECT_EQ(f.mu, 5);
  EXPECT_EQ(f.scaled_level({11, -2, -5}), 6);
  EXPECT_EQ(make_rational(dot(f.level_normal(), LatticeVector{11, -2, -5}), f.mu),
            make_rational(6, 5));
}

TEST(FaceMultiplicities, Examples) {
  for (const auto& f : face_multiplicities(kUnit)) EXPECT_EQ(f.multiplicity, 1);
  auto faces = face_multiplicities(kSigmaM2);
  ASSERT_EQ(faces.size(), 3u);
  int singular = 0;
  for (const auto& f : faces) {
    std::vector<LatticeVector> r = f.rays;
    IntMatrix m(r);
    EXPECT_EQ(f.multiplicity, maximal_minor_gcd(m));
    if (f.multiplicity > 1) {
      ++singular;
      EXPECT_EQ(f.multiplicity, 3);
      EXPECT_EQ(f.rays, (std::vector<LatticeVector>{{0, 0, 1}, {15, -3, -7}}));
    }
  }
  EXPECT_EQ(singular, 1);
  SimplicialCone m3({{40, -4, -13}, {0, 1, 0}, {0, 0, 1}});
  for (const auto& f : face_multiplicities(m3)) {
    bool e1e3 = f.rays == std::vector<LatticeVector>{{0, 0, 1}, {40, -4, -13}};
    EXPECT_EQ(f.multiplicity, e1e3 ? 4 : 1);
  }
  EXPECT_THROW(face_multiplicities(SimplicialCone({{1, 0}, {0, 1}})), DimensionError);
}
