#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ima/compose.hpp"
#include "ima/distributions.hpp"
#include "ima/mixing.hpp"

namespace ima {

/// Monte Carlo estimate of the global contrast E_s[c(f, s)].
struct ContrastEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;   // accepted draws
  std::size_t rejected = 0;    // draws whose Jacobian failed the rank check
  std::size_t clamp_count = 0; // local contrasts clamped from tiny negatives
  std::size_t cdf_clamps = 0;  // CDF levels clamped inside the map
  std::size_t region_draws = 0;
  double region_contribution = 0.0;  // sum of contrasts over region draws / n
};

inline constexpr double kMaxRejectionFraction = 1e-3;
inline constexpr std::size_t kEstimateBlock = 1024;

using LatentDraw = std::function<Vector(Rng&)>;
using RegionPredicate = std::function<bool(const Vector&)>;

/// Mean of the local contrast over n latent draws. Draws are generated in
/// fixed blocks of kEstimateBlock, each with its own sub-seed, and reduced in
/// block order, so the result is bit-identical for any thread count.
/// Throws DegenerateMap when more than 0.1% of draws are rejected.
ContrastEstimate estimate_contrast_over(const MixingMap& map, const LatentDraw& draw, int n,
                                        std::uint64_t seed, int threads = 1,
                                        const RegionPredicate& region = {});

/// Global contrast under a factorial source law whose support must lie in the
/// map's domain. Requires n >= 100.
ContrastEstimate estimate_global_contrast(const MixingMap& map, const FactorialDistribution& p_s,
                                          int n, std::uint64_t seed, int threads = 1);

enum class RadialFamily {
  kGaussian,  // chi(m) radius: standard Gaussian columns
  kUnit,      // unit-norm columns
};

SphericalSampler make_sampler(RadialFamily family, int m);

struct SweepConfig {
  int d = 3;
  double delta = 0.1;
  std::vector<int> m_list{8, 32, 128, 512, 2048};
  int trials = 2000;
  RadialFamily radial = RadialFamily::kGaussian;
  double kappa = 1.0;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct SweepRow {
  int m = 0;
  int d = 0;
  double delta = 0.0;
  int trials = 0;
  int successes = 0;
  double empirical_success = 0.0;
  double success_stderr = 0.0;
  double theoretical_bound_at_kappa = 0.0;
  double kappa_used = 1.0;
  double mean_contrast = 0.0;
};

/// Success fraction of random linear maps whose (constant) contrast is at most
/// delta, per observation dimension; rows sorted by m.
std::vector<SweepRow> concentration_sweep(const SweepConfig& config);

struct GenericityConfig {
  int d = 2;
  std::vector<int> m_list{16, 64, 256, 1024};
  double grid_delta = 0.5;
  double eps = 0.01;
  double delta_contrast = 0.1;
  int trials = 200;
  int n_mc = 2000;
  RadialFamily radial = RadialFamily::kGaussian;
  double kappa = 1.0;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct GenericityRow {
  SweepRow sweep;
  double grid_delta = 0.0;
  double eps = 0.0;
  int n_mc = 0;
  std::size_t boundary_draws = 0;
  std::size_t total_draws = 0;
  double boundary_fraction = 0.0;
  double expected_boundary_fraction = 0.0;
  double boundary_fraction_stderr = 0.0;
  double mean_boundary_contribution = 0.0;
  std::string warning;
};

/// Samples smoothed grid maps, estimates each global contrast under the
/// uniform law on [0,1]^d, and records the fraction of maps with estimate at
/// most delta_contrast. Boundary-region draws stay in the estimate and are
/// tallied separately.
std::vector<GenericityRow> genericity_experiment(const GenericityConfig& config);

struct SpuriousConfig {
  int m = 5;
  FactorialDistribution sources =
      FactorialDistribution::iid(UnivariateLaw::laplace(0.0, 1.0), 2);
  double rotation_degrees = 30.0;
  std::optional<Matrix> rotation;  // overrides rotation_degrees when set
  double similarity_scale = 1.5;
  std::optional<Vector> inversion_center;  // adds an inversion to the conformal map
  int n_samples = 20000;
  int darmois_resolution = 1024;
  double darmois_half_width = 20.0;
  double floor = 1e-3;
  double sigma_factor = 10.0;
  double ground_truth_tol = 1e-6;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct GapReport {
  ContrastEstimate truth_mpa;         // C(f, p_s)
  ContrastEstimate spurious_mpa;      // C(f o a^R, p_s)
  ContrastEstimate truth_darmois;     // C(f, p_s), Darmois branch draws
  ContrastEstimate spurious_darmois;  // C(f o O^T o (g^D)^{-1}, uniform)
  bool truth_ok = false;
  bool mpa_gap = false;
  bool darmois_gap = false;
  bool pass = false;
  double darmois_mass = 0.0;
};

/// Builds the conformal ground truth and both spurious solutions and compares
/// their global contrasts. Throws TrivialRotation for signed permutations.
GapReport spurious_gap_experiment(const SpuriousConfig& config);

/// Conformal map used by the spurious-gap experiment.
std::shared_ptr<const MixingMap> make_spurious_ground_truth(const SpuriousConfig& config);

struct ReparamConfig {
  MapPtr map;
  FactorialDistribution sources;
  std::vector<int> permutation;          // empty = identity
  std::vector<ElementTransform> transforms;  // empty = identity
  int n = 20000;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct ReparamReport {
  ContrastEstimate original;
  ContrastEstimate transformed;
  double difference = 0.0;
  double combined_stderr = 0.0;
  bool pass = false;
};

/// Compares C(f, p_s) with C(f o h^{-1} o P^{-1}, law of P h(s)) on common
/// random numbers.
ReparamReport reparam_invariance_check(const ReparamConfig& config);

}  // namespace ima
