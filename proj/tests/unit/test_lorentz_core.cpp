#include <doctest.h>

#include <random>

#include "minkhelix/lorentz.hpp"

using namespace minkhelix;

namespace {

Vec3M random_vec(std::mt19937_64& rng, double r) {
  std::uniform_real_distribution<double> d(-r, r);
  return {d(rng), d(rng), d(rng)};
}

// Cofactor expansion in extended precision, independent of lorentz_cross.
double det3(const Vec3M& u, const Vec3M& v, const Vec3M& w) {
  using L = long double;
  const L a = L(v(1)) * w(2) - L(v(2)) * w(1);
  const L b = L(v(0)) * w(2) - L(v(2)) * w(0);
  const L c = L(v(0)) * w(1) - L(v(1)) * w(0);
  return static_cast<double>(u(0) * a - u(1) * b + u(2) * c);
}

}  // namespace

TEST_CASE("minkowski_inner examples") {
  CHECK(minkowski_inner(Vec3M(1, 0, 0), Vec3M(1, 0, 0)) == -1.0);
  CHECK(minkowski_inner(Vec3M(1, 0, 1), Vec3M(1, 0, 1)) == 0.0);
  CHECK(minkowski_inner(Vec3M(2, 3, 4), Vec3M(1, 1, 1)) == 5.0);
}

TEST_CASE("minkowski_inner is symmetric and bilinear") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const Vec3M u = random_vec(rng, 10), v = random_vec(rng, 10), w = random_vec(rng, 10);
    CHECK(minkowski_inner(u, v) == minkowski_inner(v, u));
    CHECK(minkowski_inner(u + 2.0 * w, v) == doctest::Approx(minkowski_inner(u, v) + 2.0 * minkowski_inner(w, v)).epsilon(1e-12));
  }
}

TEST_CASE("lorentz_cross examples") {
  const Vec3M e1(1, 0, 0), e2(0, 1, 0), e3(0, 0, 1);
  CHECK(lorentz_cross(e2, e3) == e1);
  CHECK(lorentz_cross(e1, e2) == -e3);
  CHECK(lorentz_cross(Vec3M(1, 0, 1), Vec3M(-0.5, 0, 0.5)) == Vec3M(0, 1, 0));
}

TEST_CASE("lorentz_cross properties on random triples") {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 1000; ++k) {
    const Vec3M u = random_vec(rng, 10), v = random_vec(rng, 10), w = random_vec(rng, 10);
    CHECK(std::abs(minkowski_inner(lorentz_cross(u, v), w) + det3(u, v, w)) < 1e-12);
    CHECK((lorentz_cross(u, v) + lorentz_cross(v, u)).isZero(0.0));
    CHECK(std::abs(minkowski_inner(lorentz_cross(u, v), u)) < 1e-12);
    CHECK(lorentz_triple(u, v, w) == minkowski_inner(lorentz_cross(u, v), w));
  }
}

TEST_CASE("coordinate frame satisfies V_i x V_j = eps_i eps_j V_k exactly") {
  const std::array<Vec3M, 3> e{Vec3M(1, 0, 0), Vec3M(0, 1, 0), Vec3M(0, 0, 1)};
  const std::array<int, 3> eps{-1, 1, 1};
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3, k = (i + 2) % 3;
    CHECK(lorentz_cross(e[i], e[j]) == double(eps[i] * eps[j]) * e[k]);
  }
}

TEST_CASE("causal_character") {
  CHECK(causal_character(Vec3M(1, 0, 1), 1e-12) == CausalCharacter{Causality::Null, 0});
  CHECK(causal_character(Vec3M(0, 1, 0), 1e-12) == CausalCharacter{Causality::Spacelike, 1});
  CHECK(causal_character(Vec3M(1, 1e-9, 0), 1e-12) == CausalCharacter{Causality::Timelike, -1});
  CHECK(to_string(Causality::Timelike) == "timelike");
}

TEST_CASE("pseudo_norm") {
  CHECK(pseudo_norm(Vec3M(1, 0, 0)) == 1.0);
  CHECK(pseudo_norm(Vec3M(1, 0, 1)) == 0.0);
  for (double u : {-2.0, -0.3, 0.0, 1.1, 2.0}) {
    CHECK(pseudo_norm(Vec3M(2 * std::cosh(u), 2 * std::sinh(u), 1)) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
  }
}
