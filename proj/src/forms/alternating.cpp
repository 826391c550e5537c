#include "avint/forms/alternating.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "avint/core/errors.hpp"

namespace avint {

namespace {

struct SignedPermutation {
  std::array<int, kMaxAlternatisationArity> order{};
  int sign = 1;
};

std::vector<SignedPermutation> build_permutations(int arity) {
  std::vector<SignedPermutation> out;
  std::array<int, kMaxAlternatisationArity> order{};
  std::iota(order.begin(), order.begin() + arity, 0);
  do {
    int inversions = 0;
    for (int i = 0; i < arity; ++i) {
      for (int j = i + 1; j < arity; ++j) {
        inversions += order[i] > order[j] ? 1 : 0;
      }
    }
    out.push_back({order, inversions % 2 == 0 ? 1 : -1});
  } while (std::next_permutation(order.begin(), order.begin() + arity));
  return out;
}

const std::vector<SignedPermutation>& permutations(int arity) {
  static const std::array<std::vector<SignedPermutation>, kMaxAlternatisationArity + 1> table = [] {
    std::array<std::vector<SignedPermutation>, kMaxAlternatisationArity + 1> t;
    for (int k = 0; k <= kMaxAlternatisationArity; ++k) {
      t[k] = build_permutations(k);
    }
    return t;
  }();
  return table[arity];
}

void check_args(FormArgs args, int arity, int dim) {
  if (static_cast<int>(args.size()) != arity) {
    throw ParameterError("form expects " + std::to_string(arity) + " arguments, got " +
                         std::to_string(args.size()));
  }
  for (const auto& v : args) {
    if (v.size() != dim) {
      throw ParameterError("form argument has dimension " + std::to_string(v.size()) +
                           ", expected " + std::to_string(dim));
    }
  }
}

}  // namespace

MultilinearForm::MultilinearForm(int arity, int dim, Evaluator eval)
    : arity_(arity), dim_(dim), eval_(std::move(eval)) {
  if (arity < 0 || dim < 1 || !eval_) {
    throw ParameterError("multilinear form needs arity ≥ 0, dim ≥ 1 and an evaluator");
  }
}

double MultilinearForm::operator()(FormArgs args) const {
  check_args(args, arity_, dim_);
  return eval_(args);
}

AlternatingForm::AlternatingForm(int arity, int dim, Evaluator eval, Contraction contraction)
    : arity_(arity), dim_(dim), eval_(std::move(eval)), contraction_(std::move(contraction)) {
  if (arity < 1 || dim < 1 || !eval_) {
    throw ParameterError("alternating form needs arity ≥ 1, dim ≥ 1 and an evaluator");
  }
}

double AlternatingForm::operator()(FormArgs args) const {
  check_args(args, arity_, dim_);
  return eval_(args);
}

Vector AlternatingForm::contract(FormArgs leading) const {
  if (static_cast<int>(leading.size()) != arity_ - 1) {
    throw ParameterError("contraction expects " + std::to_string(arity_ - 1) + " leading arguments");
  }
  if (contraction_) {
    return contraction_(leading);
  }
  std::vector<Vector> args(leading.begin(), leading.end());
  args.push_back(Vector::Zero(dim_));
  Vector out(dim_);
  for (int k = 0; k < dim_; ++k) {
    args.back().setZero();
    args.back()[k] = 1.0;
    out[k] = eval_(args);
  }
  return out;
}

AlternatingForm alternatise(const MultilinearForm& form) {
  const int k = form.arity();
  if (k > kMaxAlternatisationArity) {
    throw ParameterError("alternatisation limited to arity " +
                         std::to_string(kMaxAlternatisationArity) + " (cost k!), got " +
                         std::to_string(k));
  }
  if (k < 1) {
    throw ParameterError("alternatisation needs arity ≥ 1");
  }
  return AlternatingForm(k, form.dim(), [form, k](FormArgs args) {
    std::vector<Vector> permuted(args.begin(), args.end());
    double total = 0.0;
    for (const auto& perm : permutations(k)) {
      for (int i = 0; i < k; ++i) {
        permuted[i] = args[perm.order[i]];
      }
      total += perm.sign * form(permuted);
    }
    return total;
  });
}

std::vector<Vector> dual_basis(std::span<const Vector> gradients) {
  const int p = static_cast<int>(gradients.size());
  if (p == 0) {
    return {};
  }
  const Eigen::Index d = gradients.front().size();
  if (p > d) {
    throw DegeneracyError("dual basis: more gradients than dimensions");
  }
  Matrix n(d, p);
  for (int i = 0; i < p; ++i) {
    if (gradients[i].size() != d) {
      throw ParameterError("dual basis: gradients of mixed dimension");
    }
    n.col(i) = gradients[i];
  }
  const Matrix gram = n.transpose() * n;
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > 1e12) {
    throw DegeneracyError("dual basis: gradients are (nearly) linearly dependent");
  }
  const Matrix m = n * gram.ldlt().solve(Matrix::Identity(p, p));
  std::vector<Vector> out;
  out.reserve(p);
  for (int i = 0; i < p; ++i) {
    out.emplace_back(m.col(i));
  }
  return out;
}

AlternatingForm constructive_form(const Vector& field, std::span<const Vector> gradients) {
  const int p = static_cast<int>(gradients.size());
  const int d = static_cast<int>(field.size());
  for (int i = 0; i < p; ++i) {
    const double scale = std::max(1.0, gradients[i].norm() * field.norm());
    if (std::abs(gradients[i].dot(field)) > 1e-10 * scale) {
      throw ConsistencyError("constructive form: invariant gradient " + std::to_string(i) +
                             " is not orthogonal to the vector field");
    }
  }
  if (p == 0) {
    return AlternatingForm(
        1, d, [field](FormArgs args) { return args[0].dot(field); },
        [field](FormArgs) { return field; });
  }
  std::vector<Vector> duals = dual_basis(gradients);
  MultilinearForm product(p + 1, d, [duals = std::move(duals), field, p](FormArgs args) {
    double value = args[p].dot(field);
    for (int i = 0; i < p; ++i) {
      value *= args[i].dot(duals[i]);
    }
    return value;
  });
  return alternatise(product);
}

}  // namespace avint
