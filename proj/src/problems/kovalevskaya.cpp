#include "avint/problems/kovalevskaya.hpp"

#include <array>
#include <cmath>

#include "avint/core/errors.hpp"

namespace avint::kovalevskaya {

namespace {

using Vec3 = Eigen::Vector3d;

const Vec3 kJ(1.0, 1.0, 2.0);
const Vec3 kE1(1.0, 0.0, 0.0);

struct Parts {
  Vec3 n;
  Vec3 l;
};

Parts split(const Vector& state) {
  if (state.size() != 6) {
    throw ParameterError("Kovalevskaya state must have 6 components");
  }
  return {state.head<3>(), state.tail<3>()};
}

Vector join(const Vec3& a, const Vec3& b) {
  Vector out(6);
  out << a, b;
  return out;
}

// Sign of the permutation (r₁ r₂ r₃ i j) of (0 … 4), with r ascending.
int permutation_sign(const std::array<int, 5>& p) {
  int inversions = 0;
  for (int a = 0; a < 5; ++a) {
    for (int b = a + 1; b < 5; ++b) {
      inversions += p[a] > p[b] ? 1 : 0;
    }
  }
  return inversions % 2 == 0 ? 1 : -1;
}

struct Term {
  std::array<int, 3> rest;
  int i;
  int j;
  int sign;
};

const std::array<Term, 20>& terms() {
  static const std::array<Term, 20> table = [] {
    std::array<Term, 20> t{};
    int k = 0;
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        if (i == j) {
          continue;
        }
        std::array<int, 3> rest{};
        int r = 0;
        for (int q = 0; q < 5; ++q) {
          if (q != i && q != j) {
            rest[r++] = q;
          }
        }
        t[k++] = {rest, i, j, permutation_sign({rest[0], rest[1], rest[2], i, j})};
      }
    }
    return t;
  }();
  return table;
}

}  // namespace

Invariants invariants(const Vector& state) {
  const auto [n, l] = split(state);
  const double xr = l[0] * l[0] - l[1] * l[1] - 2.0 * n[0];
  const double xi = 2.0 * l[0] * l[1] - 2.0 * n[1];
  return {n[0] + 0.5 * l.dot(kJ.cwiseProduct(l)), n.squaredNorm(), l.dot(n), xr * xr + xi * xi};
}

Vector field(const Vector& state) {
  const auto [n, l] = split(state);
  const Vec3 jl = kJ.cwiseProduct(l);
  return join(n.cross(jl), n.cross(kE1) + l.cross(jl));
}

Vector energy_gradient(const Vector& state) {
  const auto [n, l] = split(state);
  return join(kE1, kJ.cwiseProduct(l));
}

Vector kovalevskaya_gradient(const Vector& state) {
  const auto [n, l] = split(state);
  const double xr = l[0] * l[0] - l[1] * l[1] - 2.0 * n[0];
  const double xi = 2.0 * l[0] * l[1] - 2.0 * n[1];
  return join(Vec3(-4.0 * xr, -4.0 * xi, 0.0),
              4.0 * Vec3(xr * l[0] + xi * l[1], -xr * l[1] + xi * l[0], 0.0));
}

Vector momentum_gradient(const Vector& state) {
  const auto [n, l] = split(state);
  return join(l, n);
}

Vector half_norm_gradient(const Vector& state) {
  const auto [n, l] = split(state);
  return join(n, Vec3::Zero());
}

MultilinearForm seed_form(const Vector& state) {
  const Vec3 n = split(state).n;
  const Vector f = field(state);
  return MultilinearForm(5, 6, [n, f](FormArgs v) {
    Eigen::Matrix3d b;
    b << v[0].tail<3>(), v[1].tail<3>(), v[2].tail<3>();
    return b.determinant() * n.dot(v[3].head<3>()) * f.dot(v[4]);
  });
}

AlternatingForm form(const Vector& state) {
  const auto [n, l] = split(state);
  const Vec3 jl = kJ.cwiseProduct(l);
  const Vec3 grad_l_k = kovalevskaya_gradient(state).tail<3>();
  Eigen::Matrix3d m;
  m << jl, grad_l_k, n;
  const double prefactor = 6.0 * m.determinant() * n.squaredNorm();
  const double scale = 6.0 * jl.norm() * grad_l_k.norm() * n.norm() * n.squaredNorm();
  if (!(std::abs(prefactor) >= 1e-12 * std::max(1.0, scale))) {
    throw DegeneracyError("Kovalevskaya form: det[Jl, ∇_lK, n]·‖n‖² vanishes");
  }
  const Vector f = field(state);

  // For G̃ = α(v_r₁, v_r₂, v_r₃)·β(v_i)·γ(v_j) with α alternating, each of the 3! orderings of
  // the remaining indices contributes identically, so Alt G̃ = 6 Σ_{i≠j} sgn·α(R)β(v_i)γ(v_j).
  const auto evaluate = [n, f, prefactor](FormArgs v) {
    std::array<Vec3, 5> b;
    std::array<double, 5> beta{};
    std::array<double, 5> gamma{};
    for (int k = 0; k < 5; ++k) {
      b[k] = v[k].tail<3>();
      beta[k] = n.dot(v[k].head<3>());
      gamma[k] = f.dot(v[k]);
    }
    double total = 0.0;
    for (const Term& t : terms()) {
      const double alpha = b[t.rest[0]].dot(b[t.rest[1]].cross(b[t.rest[2]]));
      total += t.sign * alpha * beta[t.i] * gamma[t.j];
    }
    return 6.0 * total / prefactor;
  };
  return AlternatingForm(5, 6, evaluate);
}

ConservativeSystem conservative_system() {
  std::vector<Invariant> invs{
      {"H", [](const Vector& x) { return invariants(x).energy; }, energy_gradient},
      {"K", [](const Vector& x) { return invariants(x).kovalevskaya; }, kovalevskaya_gradient},
      {"L", [](const Vector& x) { return invariants(x).momentum; }, momentum_gradient},
      {"halfNsq", [](const Vector& x) { return 0.5 * invariants(x).norm_squared; },
       half_norm_gradient},
  };
  return ConservativeSystem(6, field, std::move(invs), form);
}

Vector standard_initial_state() {
  Vector x(6);
  x << 0.8, 0.6, 0.0, 2.0, 0.0, 0.2;
  return x;
}

}  // namespace avint::kovalevskaya
