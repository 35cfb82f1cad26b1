#include <cmath>
#include <numbers>

#include "ima/compose.hpp"
#include "ima/conformal.hpp"
#include "ima/darmois.hpp"
#include "ima/errors.hpp"
#include "ima/experiments.hpp"
#include "ima/mpa.hpp"

namespace ima {

namespace {

Matrix spurious_rotation(const SpuriousConfig& config) {
  if (config.rotation) return *config.rotation;
  return rotation_2d(config.rotation_degrees * std::numbers::pi / 180.0);
}

bool separated(const ContrastEstimate& e, const SpuriousConfig& config) {
  return e.mean > std::max(config.floor, config.sigma_factor * e.std_error);
}

}  // namespace

std::shared_ptr<const MixingMap> make_spurious_ground_truth(const SpuriousConfig& config) {
  if (config.m < 2) throw Error(ErrorKind::kDomainError, "spurious experiment needs m >= 2");
  if (!(config.similarity_scale > 0.0)) throw Error(ErrorKind::kDomainError, "similarity scale must be positive");
  Rng rng(derive_seed(config.seed, 0));
  const Matrix embed = random_orthonormal_columns(config.m, 2, rng);
  std::vector<ConformalPrimitive> inner;
  inner.push_back(Similarity{config.similarity_scale, random_orthogonal(2, rng), Vector::Zero(2)});
  if (config.inversion_center) inner.push_back(Inversion{*config.inversion_center});
  return std::make_shared<const ConformalMap>(embed, std::move(inner));
}

GapReport spurious_gap_experiment(const SpuriousConfig& config) {
  if (config.sources.dim() != 2) throw Error(ErrorKind::kDimensionMismatch, "spurious experiment is two-dimensional");
  if (config.n_samples < 100) throw Error(ErrorKind::kDomainError, "n_samples must be >= 100");
  if (config.darmois_resolution < 128) throw Error(ErrorKind::kDomainError, "darmois_resolution must be >= 128");
  const Matrix r = spurious_rotation(config);
  if (r.rows() != 2 || r.cols() != 2) throw Error(ErrorKind::kDimensionMismatch, "rotation must be 2x2");
  if (!(r.transpose() * r - Matrix::Identity(2, 2)).isZero(1e-12)) {
    throw Error(ErrorKind::kDomainError, "rotation is not orthogonal");
  }
  if (is_signed_permutation(r)) {
    throw Error(ErrorKind::kTrivialRotation, "rotation is a signed permutation; no spurious solution");
  }

  const MapPtr f = make_spurious_ground_truth(config);
  const int n = config.n_samples;
  GapReport report;

  report.truth_mpa = estimate_global_contrast(*f, config.sources, n, derive_seed(config.seed, 1), config.threads);
  const auto a = std::make_shared<const RotatedGaussianMPA>(config.sources, r);
  report.spurious_mpa =
      estimate_global_contrast(*spurious_mpa(f, a), config.sources, n, derive_seed(config.seed, 2), config.threads);

  report.truth_darmois =
      estimate_global_contrast(*f, config.sources, n, derive_seed(config.seed, 3), config.threads);
  const auto dm = std::make_shared<const DarmoisMap>(DarmoisMap::build(
      rotated_factorial_density(r, config.sources, config.darmois_half_width), config.darmois_resolution));
  report.darmois_mass = dm->quadrature_mass();
  const auto uniform = FactorialDistribution::iid(UnivariateLaw::uniform(0.0, 1.0), 2);
  report.spurious_darmois = estimate_global_contrast(*spurious_darmois(f, r, dm), uniform, n,
                                                     derive_seed(config.seed, 4), config.threads);

  report.truth_ok = report.truth_mpa.mean <= config.ground_truth_tol &&
                    report.truth_darmois.mean <= config.ground_truth_tol;
  report.mpa_gap = separated(report.spurious_mpa, config);
  report.darmois_gap = separated(report.spurious_darmois, config);
  report.pass = report.truth_ok && report.mpa_gap && report.darmois_gap;
  return report;
}

}  // namespace ima
