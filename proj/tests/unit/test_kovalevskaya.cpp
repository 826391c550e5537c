#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "avint/core/errors.hpp"
#include "avint/forms/alternating.hpp"
#include "avint/problems/kovalevskaya.hpp"
#include "support.hpp"

using namespace avint;
using avint::testing::fd_gradient;
using avint::testing::random_vector;

namespace {

Eigen::Vector3d head(const Vector& v) { return v.head<3>(); }
Eigen::Vector3d tail(const Vector& v) { return v.tail<3>(); }

Vector stack(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  Vector v(6);
  v << a, b;
  return v;
}

Eigen::Vector3d j_times(const Eigen::Vector3d& l) { return {l[0], l[1], 2.0 * l[2]}; }

// Euler–Poisson equations written out directly: ṅ = n × Jl, l̇ = n × e₁ + l × Jl.
Vector euler_poisson(const Vector& x) {
  const Eigen::Vector3d n = head(x);
  const Eigen::Vector3d l = tail(x);
  return stack(n.cross(j_times(l)), n.cross(Eigen::Vector3d::UnitX()) + l.cross(j_times(l)));
}

double k_direct(const Vector& x) {
  const double xr = x[3] * x[3] - x[4] * x[4] - 2.0 * x[0];
  const double xi = 2.0 * x[3] * x[4] - 2.0 * x[1];
  return xr * xr + xi * xi;
}

std::array<Vector, 4> gradient_tuple(const Vector& x) {
  return {kovalevskaya::energy_gradient(x), kovalevskaya::kovalevskaya_gradient(x),
          kovalevskaya::momentum_gradient(x), kovalevskaya::half_norm_gradient(x)};
}

Vector perturbed_initial(std::mt19937_64& rng) {
  return kovalevskaya::standard_initial_state() + random_vector(rng, 6, 0.1);
}

}  // namespace

TEST_CASE("invariants at the standard state") {
  const kovalevskaya::Invariants inv = kovalevskaya::invariants(kovalevskaya::standard_initial_state());
  CHECK(inv.norm_squared == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(inv.momentum == doctest::Approx(1.6).epsilon(1e-15));
  CHECK(inv.kovalevskaya == doctest::Approx(7.2).epsilon(1e-14));
  CHECK(inv.energy == doctest::Approx(0.8 + 0.5 * (4.0 + 2.0 * 0.04)).epsilon(1e-15));
}

TEST_CASE("upright state with no spin") {
  const kovalevskaya::Invariants inv = kovalevskaya::invariants(stack(Eigen::Vector3d::UnitZ(), {0, 0, 0}));
  CHECK(inv.energy == 0.0);
  CHECK(inv.norm_squared == 1.0);
  CHECK(inv.momentum == 0.0);
  CHECK(inv.kovalevskaya == 0.0);

  // ξ = 0: l₁² − l₂² = 2n₁ and l₁l₂ = n₂.
  CHECK(kovalevskaya::invariants(stack({0.375, 0.5, 0.3}, {1.0, 0.5, -2.0})).kovalevskaya ==
        doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("field, invariants and gradients") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 20; ++k) {
    const Vector x = random_vector(rng, 6);
    CHECK((kovalevskaya::field(x) - euler_poisson(x)).norm() <= 1e-14 * (1.0 + x.squaredNorm()));
    CHECK(kovalevskaya::invariants(x).kovalevskaya == doctest::Approx(k_direct(x)).epsilon(1e-13));

    const auto inv = [](const Vector& y) { return kovalevskaya::invariants(y); };
    CHECK(testing::rel_error(kovalevskaya::energy_gradient(x),
 fd_gradient([&](const Vector& y) { return inv(y).energy; }, x)) < 1e-8);
    CHECK(testing::rel_error(kovalevskaya::kovalevskaya_gradient(x),
 fd_gradient([&](const Vector& y) { return inv(y).kovalevskaya; }, x)) < 1e-8);
    CHECK(testing::rel_error(kovalevskaya::momentum_gradient(x),
 fd_gradient([&](const Vector& y) { return inv(y).momentum; }, x)) < 1e-8);
    CHECK(testing::rel_error(kovalevskaya::half_norm_gradient(x),
 fd_gradient([&](const Vector& y) { return 0.5 * inv(y).norm_squared; }, x)) <
          1e-8);

    const Vector f = kovalevskaya::field(x);
    for (const Vector& g : gradient_tuple(x)) {
      CHECK(std::abs(g.dot(f)) <= 1e-12 * (1.0 + g.norm() * f.norm()));
    }
  }
}

TEST_CASE("form coincides with the field on the gradient tuple") {
  const Vector x = kovalevskaya::standard_initial_state();
  const AlternatingForm form = kovalevskaya::form(x);
  const std::array<Vector, 4> g = gradient_tuple(x);
  const Vector f = euler_poisson(x);
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    const Vector y = random_vector(rng, 6);
    const std::array<Vector, 5> args{g[0], g[1], g[2], g[3], y};
    const double expected = y.dot(f);
    CHECK(std::abs(form(args) - expected) <= 1e-8 * std::max(1.0, std::abs(expected)));
  }
}

TEST_CASE("factorised form equals the brute-force alternatisation") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 10; ++k) {
    const Vector x = perturbed_initial(rng);
    const Eigen::Vector3d n = head(x);
    const Eigen::Vector3d jl = j_times(tail(x));
    const Eigen::Vector3d dlk = tail(kovalevskaya::kovalevskaya_gradient(x));
    Eigen::Matrix3d cols;
    cols << jl, dlk, n;
    const double prefactor = 6.0 * cols.determinant() * n.squaredNorm();

    const AlternatingForm fast = kovalevskaya::form(x);
    const AlternatingForm slow = alternatise(kovalevskaya::seed_form(x));
    std::array<Vector, 5> args;
    for (Vector& a : args) {
      a = random_vector(rng, 6);
    }
    const double reference = slow(args) / prefactor;
    CHECK(std::abs(fast(args) - reference) <= 1e-12 * std::max(1.0, std::abs(reference)));
  }
}

TEST_CASE("form vanishes on equal arguments, flips sign and stays linear") {
  std::mt19937_64 rng(23);
  const AlternatingForm form = kovalevskaya::form(kovalevskaya::standard_initial_state());
  std::array<Vector, 5> args;
  for (Vector& a : args) {
    a = random_vector(rng, 6);
  }
  const double base = form(args);

  std::array<Vector, 5> equal = args;
  equal[3] = equal[1];
  CHECK(std::abs(form(equal)) <= 1e-12 * std::max(1.0, std::abs(base)));

  std::array<Vector, 5> swapped = args;
  std::swap(swapped[0], swapped[4]);
  CHECK(form(swapped) == doctest::Approx(-base).epsilon(1e-12));

  std::array<Vector, 5> scaled = args;
  scaled[2] *= -2.5;
  CHECK(form(scaled) == doctest::Approx(-2.5 * base).epsilon(1e-12));
}

TEST_CASE("degenerate prefactor is refused") {
  // l = 0 makes Jl vanish, so det[Jl, ∇_lK, n] = 0.
  CHECK_THROWS_AS((void)kovalevskaya::form(stack({0.8, 0.6, 0.0}, {0.0, 0.0, 0.0})), DegeneracyError);
}
