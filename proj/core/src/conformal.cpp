#include "ima/conformal.hpp"

#include <cmath>

#include "ima/errors.hpp"

namespace ima {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

ConformalMap::ConformalMap(Matrix embed, std::vector<ConformalPrimitive> inner,
                           double exclusion_radius)
    : embed_(std::move(embed)), inner_(std::move(inner)), exclusion_radius_(exclusion_radius) {
  const Eigen::Index d = embed_.cols();
  if (d < 1 || embed_.rows() < d) throw Error(ErrorKind::kDimensionMismatch, "embed needs m >= d >= 1");
  if (!(exclusion_radius_ > 0.0)) throw Error(ErrorKind::kDomainError, "exclusion radius must be > 0");
  const Matrix gram = embed_.transpose() * embed_;
  if ((gram - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10) {
    throw Error(ErrorKind::kDomainError, "embedding columns must be orthonormal");
  }
  for (auto& prim : inner_) {
    std::visit(Overloaded{
                   [&](Similarity& sim) {
                     if (!(sim.scale > 0.0)) throw Error(ErrorKind::kDomainError, "similarity scale must be > 0");
                     if (sim.rotation.size() == 0) sim.rotation = Matrix::Identity(d, d);
                     if (sim.shift.size() == 0) sim.shift = Vector::Zero(d);
                     if (sim.rotation.rows() != d || sim.rotation.cols() != d || sim.shift.size() != d) {
                       throw Error(ErrorKind::kDimensionMismatch, "similarity has wrong dimensions");
                     }
                     const Matrix rtr = sim.rotation.transpose() * sim.rotation;
                     if ((rtr - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10) {
                       throw Error(ErrorKind::kDomainError, "similarity rotation is not orthogonal");
                     }
                   },
                   [&](Inversion& inv) {
                     if (inv.center.size() == 0) inv.center = Vector::Zero(d);
                     if (inv.center.size() != d) {
                       throw Error(ErrorKind::kDimensionMismatch, "inversion center has wrong size");
                     }
                   },
               },
               prim);
  }
}

Vector ConformalMap::eval(const Vector& s, EvalStats*) const {
  check_in_domain(*this, s);
  Vector y = s;
  for (const auto& prim : inner_) {
    std::visit(Overloaded{
                   [&](const Similarity& sim) { y = sim.scale * (sim.rotation * y) + sim.shift; },
                   [&](const Inversion& inv) {
                     const Vector v = y - inv.center;
                     const double r2 = v.squaredNorm();
                     if (std::sqrt(r2) < exclusion_radius_) {
                       throw Error(ErrorKind::kNearPole, "point inside inversion exclusion radius");
                     }
                     y = v / r2;
                   },
               },
               prim);
  }
  return embed_ * y;
}

Matrix ConformalMap::jacobian(const Vector& s, EvalStats*) const {
  check_in_domain(*this, s);
  const Eigen::Index d = latent_dim();
  Vector y = s;
  Matrix inner_jac = Matrix::Identity(d, d);
  for (const auto& prim : inner_) {
    std::visit(Overloaded{
                   [&](const Similarity& sim) {
                     inner_jac = sim.scale * sim.rotation * inner_jac;
                     y = sim.scale * (sim.rotation * y) + sim.shift;
                   },
                   [&](const Inversion& inv) {
                     const Vector v = y - inv.center;
                     const double r2 = v.squaredNorm();
                     if (std::sqrt(r2) < exclusion_radius_) {
                       throw Error(ErrorKind::kNearPole, "point inside inversion exclusion radius");
                     }
                     const Matrix reflect = Matrix::Identity(d, d) - 2.0 * v * v.transpose() / r2;
                     inner_jac = (reflect / r2) * inner_jac;
                     y = v / r2;
                   },
               },
               prim);
  }
  return embed_ * inner_jac;
}

double ConformalMap::conformal_factor(const Vector& s) const {
  check_in_domain(*this, s);
  Vector y = s;
  double lambda = 1.0;
  for (const auto& prim : inner_) {
    std::visit(Overloaded{
                   [&](const Similarity& sim) {
                     lambda *= sim.scale;
                     y = sim.scale * (sim.rotation * y) + sim.shift;
                   },
                   [&](const Inversion& inv) {
                     const Vector v = y - inv.center;
                     const double r2 = v.squaredNorm();
                     if (std::sqrt(r2) < exclusion_radius_) {
                       throw Error(ErrorKind::kNearPole, "point inside inversion exclusion radius");
                     }
                     lambda /= r2;
                     y = v / r2;
                   },
               },
               prim);
  }
  return lambda;
}

double conformality_defect(const ConformalMap& map, const Vector& s) {
  const Matrix j = map.jacobian(s);
  const Matrix gram = j.transpose() * j;
  const double lambda2 = gram.trace() / static_cast<double>(gram.rows());
  return (gram / lambda2 - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

}  // namespace ima
