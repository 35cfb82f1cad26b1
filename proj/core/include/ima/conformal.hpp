#pragma once

#include <variant>
#include <vector>

#include "ima/mixing.hpp"

namespace ima {

/// y = scale * rotation * s + shift, rotation orthogonal.
struct Similarity {
  double scale = 1.0;
  Matrix rotation;
  Vector shift;
};

/// y = (s - center) / ||s - center||^2.
struct Inversion {
  Vector center;
};

using ConformalPrimitive = std::variant<Similarity, Inversion>;

/// Orthonormal embedding of a composition of d-dimensional conformal
/// primitives: f(s) = E (g_n o ... o g_1)(s), E^T E = I. The Jacobian satisfies
/// J^T J = lambda(s)^2 I away from inversion poles.
class ConformalMap final : public MixingMap {
 public:
  ConformalMap(Matrix embed, std::vector<ConformalPrimitive> inner, double exclusion_radius = 1e-3);

  int latent_dim() const override { return static_cast<int>(embed_.cols()); }
  int observed_dim() const override { return static_cast<int>(embed_.rows()); }
  std::string family() const override { return "conformal"; }

  /// Throws NearPole within exclusion_radius of an inversion center.
  Vector eval(const Vector& s, EvalStats* stats = nullptr) const override;
  Matrix jacobian(const Vector& s, EvalStats* stats = nullptr) const override;

  /// Product of the primitives' conformal factors at s.
  double conformal_factor(const Vector& s) const;

  const Matrix& embed() const { return embed_; }
  const std::vector<ConformalPrimitive>& inner() const { return inner_; }
  double exclusion_radius() const { return exclusion_radius_; }

 private:
  Matrix embed_;
  std::vector<ConformalPrimitive> inner_;
  double exclusion_radius_;
};

/// max |J^T J / lambda_bar^2 - I| with lambda_bar^2 = trace(J^T J) / d.
double conformality_defect(const ConformalMap& map, const Vector& s);

}  // namespace ima
