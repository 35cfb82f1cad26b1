#include "ima/compose.hpp"

#include <cmath>

#include "ima/errors.hpp"

namespace ima {

ComposedMap::ComposedMap(std::vector<MapPtr> stages) : stages_(std::move(stages)) {
  if (stages_.empty()) throw Error(ErrorKind::kDimensionMismatch, "composition needs a stage");
  for (std::size_t i = 0; i < stages_.size(); ++i) {
    if (!stages_[i]) throw Error(ErrorKind::kDimensionMismatch, "null stage");
    if (i > 0 && stages_[i - 1]->observed_dim() != stages_[i]->latent_dim()) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "stage " + std::to_string(i) + " expects " +
                      std::to_string(stages_[i]->latent_dim()) + " inputs, previous emits " +
                      std::to_string(stages_[i - 1]->observed_dim()));
    }
  }
}

Vector ComposedMap::eval(const Vector& s, EvalStats* stats) const {
  Vector y = s;
  for (const auto& stage : stages_) y = stage->eval(y, stats);
  return y;
}

Matrix ComposedMap::jacobian(const Vector& s, EvalStats* stats) const {
  Vector y = s;
  Matrix j = Matrix::Identity(s.size(), s.size());
  for (std::size_t i = 0; i < stages_.size(); ++i) {
    j = stages_[i]->jacobian(y, stats) * j;
    if (i + 1 < stages_.size()) y = stages_[i]->eval(y, stats);
  }
  return j;
}

std::shared_ptr<const ComposedMap> compose_spurious(std::vector<MapPtr> stages) {
  return std::make_shared<const ComposedMap>(std::move(stages));
}

std::shared_ptr<const ComposedMap> spurious_mpa(MapPtr f, std::shared_ptr<const RotatedGaussianMPA> a) {
  return compose_spurious({std::move(a), std::move(f)});
}

std::shared_ptr<const ComposedMap> spurious_darmois(MapPtr f, const Matrix& rotation,
                                                    std::shared_ptr<const DarmoisMap> dm) {
  auto inverse = std::make_shared<const DarmoisInverseMap>(std::move(dm));
  auto unrotate = std::make_shared<const LinearMap>(rotation.transpose());
  return compose_spurious({std::move(inverse), std::move(unrotate), std::move(f)});
}

double ElementTransform::apply(double x) const {
  switch (kind) {
    case TransformKind::kAffine: return a * x + b;
    case TransformKind::kCube: return x * x * x;
    case TransformKind::kTanh: return std::tanh(x);
  }
  return x;
}

double ElementTransform::inverse(double y) const {
  switch (kind) {
    case TransformKind::kAffine: return (y - b) / a;
    case TransformKind::kCube: return std::cbrt(y);
    case TransformKind::kTanh:
      if (!(std::abs(y) < 1.0)) throw Error(ErrorKind::kOutOfDomain, "atanh needs |y| < 1");
      return std::atanh(y);
  }
  return y;
}

double ElementTransform::inverse_derivative(double y) const {
  switch (kind) {
    case TransformKind::kAffine: return 1.0 / a;
    case TransformKind::kCube: {
      const double r = std::cbrt(y);
      return 1.0 / (3.0 * r * r);
    }
    case TransformKind::kTanh:
      if (!(std::abs(y) < 1.0)) throw Error(ErrorKind::kOutOfDomain, "atanh needs |y| < 1");
      return 1.0 / (1.0 - y * y);
  }
  return 1.0;
}

void validate_transform(const ElementTransform& t) {
  if (t.kind == TransformKind::kAffine && (!(std::abs(t.a) > 0.0) || !std::isfinite(t.a) || !std::isfinite(t.b))) {
    throw Error(ErrorKind::kNonMonotone, "affine transform needs finite a != 0");
  }
}

ElementwiseInverseMap::ElementwiseInverseMap(std::vector<ElementTransform> transforms)
    : transforms_(std::move(transforms)) {
  if (transforms_.empty()) throw Error(ErrorKind::kDimensionMismatch, "need at least one transform");
  for (const auto& t : transforms_) validate_transform(t);
}

Vector ElementwiseInverseMap::eval(const Vector& y, EvalStats*) const {
  check_in_domain(*this, y);
  Vector out(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) out(i) = transforms_[static_cast<std::size_t>(i)].inverse(y(i));
  return out;
}

Matrix ElementwiseInverseMap::jacobian(const Vector& y, EvalStats*) const {
  check_in_domain(*this, y);
  Vector diag(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    diag(i) = transforms_[static_cast<std::size_t>(i)].inverse_derivative(y(i));
  }
  if (!diag.allFinite()) throw Error(ErrorKind::kNonFinite, "element-wise inverse derivative is not finite");
  return diag.asDiagonal();
}

Matrix permutation_matrix(const std::vector<int>& perm) {
  const auto d = static_cast<Eigen::Index>(perm.size());
  Matrix p = Matrix::Zero(d, d);
  std::vector<bool> seen(perm.size(), false);
  for (Eigen::Index j = 0; j < d; ++j) {
    const int target = perm[static_cast<std::size_t>(j)];
    if (target < 0 || target >= d || seen[static_cast<std::size_t>(target)]) {
      throw Error(ErrorKind::kDomainError, "not a permutation");
    }
    seen[static_cast<std::size_t>(target)] = true;
    p(target, j) = 1.0;
  }
  return p;
}

}  // namespace ima
