#pragma once

#include <memory>
#include <vector>

#include "ima/darmois.hpp"
#include "ima/mixing.hpp"
#include "ima/mpa.hpp"

namespace ima {

/// stages.back() o ... o stages.front(); Jacobian is the ordered chain-rule
/// product of the stage Jacobians.
class ComposedMap final : public MixingMap {
 public:
  /// Throws DimensionMismatch when consecutive stages do not chain.
  explicit ComposedMap(std::vector<MapPtr> stages);

  int latent_dim() const override { return stages_.front()->latent_dim(); }
  int observed_dim() const override { return stages_.back()->observed_dim(); }
  Domain domain() const override { return stages_.front()->domain(); }
  std::string family() const override { return "composed"; }

  Vector eval(const Vector& s, EvalStats* stats = nullptr) const override;
  Matrix jacobian(const Vector& s, EvalStats* stats = nullptr) const override;

  const std::vector<MapPtr>& stages() const { return stages_; }

 private:
  std::vector<MapPtr> stages_;
};

std::shared_ptr<const ComposedMap> compose_spurious(std::vector<MapPtr> stages);

/// f o a.
std::shared_ptr<const ComposedMap> spurious_mpa(MapPtr f, std::shared_ptr<const RotatedGaussianMPA> a);

/// f o O^T o (g^D)^{-1}; latent variables are uniform on (0,1)^2.
std::shared_ptr<const ComposedMap> spurious_darmois(MapPtr f, const Matrix& rotation,
                                                    std::shared_ptr<const DarmoisMap> dm);

/// Strictly monotone scalar transform with closed-form inverse.
enum class TransformKind {
  kAffine,  // a x + b, a != 0
  kCube,    // x^3
  kTanh,    // tanh(x), inverse on (-1, 1)
};

struct ElementTransform {
  TransformKind kind = TransformKind::kAffine;
  double a = 1.0;
  double b = 0.0;

  double apply(double x) const;
  double inverse(double y) const;
  /// d inverse / dy at y.
  double inverse_derivative(double y) const;
};

/// Throws NonMonotone for transforms that are not strictly monotone.
void validate_transform(const ElementTransform& t);

/// y -> (h_1^{-1}(y_1), ..., h_d^{-1}(y_d)).
class ElementwiseInverseMap final : public MixingMap {
 public:
  explicit ElementwiseInverseMap(std::vector<ElementTransform> transforms);

  int latent_dim() const override { return static_cast<int>(transforms_.size()); }
  int observed_dim() const override { return static_cast<int>(transforms_.size()); }
  std::string family() const override { return "elementwise_inverse"; }

  Vector eval(const Vector& y, EvalStats* stats = nullptr) const override;
  Matrix jacobian(const Vector& y, EvalStats* stats = nullptr) const override;

 private:
  std::vector<ElementTransform> transforms_;
};

/// Permutation matrix P with P e_j = e_{perm[j]}.
Matrix permutation_matrix(const std::vector<int>& perm);

}  // namespace ima
