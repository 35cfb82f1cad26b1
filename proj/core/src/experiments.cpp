#include "ima/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ima/contrast.hpp"
#include "ima/errors.hpp"
#include "ima/grid_map.hpp"
#include "ima/parallel.hpp"
#include "ima/stats.hpp"

namespace ima {

namespace {

struct BlockResult {
  RunningMoments moments;
  std::size_t rejected = 0;
  std::size_t clamps = 0;
  std::size_t cdf_clamps = 0;
  std::size_t region_draws = 0;
  double region_sum = 0.0;
};

bool is_rejectable(ErrorKind kind) {
  return kind == ErrorKind::kRankDeficient || kind == ErrorKind::kNonFinite ||
         kind == ErrorKind::kOnKnot || kind == ErrorKind::kNearPole;
}

void check_support_in_domain(const MixingMap& map, const FactorialDistribution& p_s) {
  if (p_s.dim() != map.latent_dim()) {
    throw Error(ErrorKind::kDimensionMismatch, "source dimension differs from latent dimension");
  }
  if (map.domain() == Domain::kWhole) return;
  for (const auto& law : p_s.components()) {
    const auto [lo, hi] = law.support();
    if (lo < 0.0 || hi > 1.0) {
      throw Error(ErrorKind::kDomainError, "source support leaves the unit cube domain");
    }
  }
}

}  // namespace

ContrastEstimate estimate_contrast_over(const MixingMap& map, const LatentDraw& draw, int n,
                                        std::uint64_t seed, int threads,
                                        const RegionPredicate& region) {
  if (n < 1) throw Error(ErrorKind::kDomainError, "sample count must be positive");
  const auto total = static_cast<std::size_t>(n);
  const std::size_t blocks = (total + kEstimateBlock - 1) / kEstimateBlock;
  std::vector<BlockResult> results(blocks);

  parallel_for(blocks, threads, [&](std::size_t b) {
    Rng rng(derive_seed(seed, b));
    const std::size_t begin = b * kEstimateBlock;
    const std::size_t end = std::min(total, begin + kEstimateBlock);
    BlockResult& out = results[b];
    for (std::size_t i = begin; i < end; ++i) {
      const Vector s = draw(rng);
      EvalStats stats;
      try {
        const LocalContrast c = local_ima_contrast_detail(map.jacobian(s, &stats));
        out.moments.add(c.value);
        if (c.clamped) ++out.clamps;
        if (region && region(s)) {
          ++out.region_draws;
          out.region_sum += c.value;
        }
      } catch (const Error& e) {
        if (!is_rejectable(e.kind())) throw;
        ++out.rejected;
      }
      out.cdf_clamps += stats.cdf_clamps;
    }
  });

  BlockResult merged;
  for (const auto& r : results) {
    merged.moments.merge(r.moments);
    merged.rejected += r.rejected;
    merged.clamps += r.clamps;
    merged.cdf_clamps += r.cdf_clamps;
    merged.region_draws += r.region_draws;
    merged.region_sum += r.region_sum;
  }
  if (static_cast<double>(merged.rejected) > kMaxRejectionFraction * static_cast<double>(total)) {
    throw Error(ErrorKind::kDegenerateMap, std::to_string(merged.rejected) + " of " +
                                               std::to_string(total) + " draws rejected");
  }

  ContrastEstimate est;
  est.mean = merged.moments.mean;
  est.std_error = merged.moments.stderr_of_mean();
  est.n_samples = merged.moments.n;
  est.rejected = merged.rejected;
  est.clamp_count = merged.clamps;
  est.cdf_clamps = merged.cdf_clamps;
  est.region_draws = merged.region_draws;
  est.region_contribution = merged.region_sum / static_cast<double>(total);
  return est;
}

ContrastEstimate estimate_global_contrast(const MixingMap& map, const FactorialDistribution& p_s,
                                          int n, std::uint64_t seed, int threads) {
  if (n < 100) throw Error(ErrorKind::kDomainError, "global contrast needs n >= 100");
  check_support_in_domain(map, p_s);
  return estimate_contrast_over(map, [&p_s](Rng& rng) { return p_s.sample(rng); }, n, seed, threads);
}

SphericalSampler make_sampler(RadialFamily family, int m) {
  return family == RadialFamily::kUnit ? SphericalSampler::unit(m)
                                       : SphericalSampler::standard_gaussian(m);
}

std::vector<SweepRow> concentration_sweep(const SweepConfig& config) {
  if (config.trials < 100) throw Error(ErrorKind::kDomainError, "sweep needs trials >= 100");
  if (config.d < 1 || !(config.delta > 0.0) || !(config.kappa > 0.0)) {
    throw Error(ErrorKind::kDomainError, "sweep needs d >= 1, delta > 0, kappa > 0");
  }
  std::vector<int> ms = config.m_list;
  std::sort(ms.begin(), ms.end());
  for (int m : ms) {
    if (m < std::max(2, config.d)) throw Error(ErrorKind::kDomainError, "every m must be >= max(2, d)");
  }

  std::vector<SweepRow> rows;
  for (std::size_t a = 0; a < ms.size(); ++a) {
    const int m = ms[a];
    const SphericalSampler sampler = make_sampler(config.radial, m);
    const std::uint64_t row_seed = derive_seed(config.seed, static_cast<std::uint64_t>(m));
    std::vector<double> contrasts(static_cast<std::size_t>(config.trials));
    parallel_for(contrasts.size(), config.threads, [&](std::size_t t) {
      const Matrix j = sample_isotropic_matrix(m, config.d, sampler, derive_seed(row_seed, t));
      // linear maps have a constant Jacobian: one evaluation is the global contrast
      contrasts[t] = local_ima_contrast(j);
    });

    SweepRow row;
    row.m = m;
    row.d = config.d;
    row.delta = config.delta;
    row.trials = config.trials;
    RunningMoments moments;
    for (double c : contrasts) {
      moments.add(c);
      if (c <= config.delta) ++row.successes;
    }
    row.empirical_success = static_cast<double>(row.successes) / static_cast<double>(config.trials);
    row.success_stderr = binomial_stderr(row.empirical_success, static_cast<std::size_t>(config.trials));
    row.theoretical_bound_at_kappa = theoretical_success_bound(m, config.d, config.delta, config.kappa);
    row.kappa_used = config.kappa;
    row.mean_contrast = moments.mean;
    rows.push_back(row);
  }
  return rows;
}

std::vector<GenericityRow> genericity_experiment(const GenericityConfig& config) {
  if (config.trials < 1 || config.n_mc < 100) {
    throw Error(ErrorKind::kDomainError, "genericity needs trials >= 1 and n_mc >= 100");
  }
  if (!(config.eps > 0.0 && config.eps < config.grid_delta / 4.0)) {
    throw Error(ErrorKind::kDomainError, "genericity needs 0 < eps < grid_delta/4");
  }
  if (!(config.delta_contrast > 0.0) || !(config.kappa > 0.0)) {
    throw Error(ErrorKind::kDomainError, "delta_contrast and kappa must be positive");
  }
  std::vector<int> ms = config.m_list;
  std::sort(ms.begin(), ms.end());
  const FactorialDistribution uniform_cube =
      FactorialDistribution::iid(UnivariateLaw::uniform(0.0, 1.0), config.d);

  std::vector<GenericityRow> rows;
  for (int m : ms) {
    if (m < std::max(2, config.d)) throw Error(ErrorKind::kDomainError, "every m must be >= max(2, d)");
    const SphericalSampler sampler = make_sampler(config.radial, m);
    const std::uint64_t row_seed = derive_seed(config.seed, static_cast<std::uint64_t>(m));

    struct Trial {
      double contrast = 0.0;
      std::size_t boundary = 0;
      double boundary_contribution = 0.0;
      std::string warning;
    };
    std::vector<Trial> trials(static_cast<std::size_t>(config.trials));
    double expected_boundary = 0.0;
    parallel_for(trials.size(), config.threads, [&](std::size_t t) {
      const std::uint64_t trial_seed = derive_seed(row_seed, t);
      const SmoothGridMap map =
          sample_grid_map(config.d, m, config.grid_delta, sampler, config.eps, derive_seed(trial_seed, 0));
      const ContrastEstimate est = estimate_contrast_over(
          map, [&uniform_cube](Rng& rng) { return uniform_cube.sample(rng); }, config.n_mc,
          derive_seed(trial_seed, 1), 1, [&map](const Vector& s) { return map.in_boundary_region(s); });
      trials[t].contrast = est.mean;
      trials[t].boundary = est.region_draws;
      trials[t].boundary_contribution = est.region_contribution;
      if (!map.warnings().empty()) trials[t].warning = map.warnings().front();
      if (t == 0) expected_boundary = map.boundary_probability_uniform();
    });
    GenericityRow row;
    row.sweep.m = m;
    row.sweep.d = config.d;
    row.sweep.delta = config.delta_contrast;
    row.sweep.trials = config.trials;
    row.grid_delta = config.grid_delta;
    row.eps = config.eps;
    row.n_mc = config.n_mc;
    RunningMoments contrast_moments;
    double boundary_contribution = 0.0;
    for (const auto& t : trials) {
      contrast_moments.add(t.contrast);
      if (t.contrast <= config.delta_contrast) ++row.sweep.successes;
      row.boundary_draws += t.boundary;
      boundary_contribution += t.boundary_contribution;
      if (row.warning.empty()) row.warning = t.warning;
    }
    row.total_draws = static_cast<std::size_t>(config.trials) * static_cast<std::size_t>(config.n_mc);
    row.sweep.empirical_success =
        static_cast<double>(row.sweep.successes) / static_cast<double>(config.trials);
    row.sweep.success_stderr =
        binomial_stderr(row.sweep.empirical_success, static_cast<std::size_t>(config.trials));
    row.sweep.theoretical_bound_at_kappa =
        theoretical_success_bound(m, config.d, config.delta_contrast, config.kappa);
    row.sweep.kappa_used = config.kappa;
    row.sweep.mean_contrast = contrast_moments.mean;
    row.boundary_fraction = static_cast<double>(row.boundary_draws) / static_cast<double>(row.total_draws);
    row.expected_boundary_fraction = expected_boundary;
    row.boundary_fraction_stderr = binomial_stderr(expected_boundary, row.total_draws);
    row.mean_boundary_contribution = boundary_contribution / static_cast<double>(config.trials);
    rows.push_back(std::move(row));
  }
  return rows;
}

ReparamReport reparam_invariance_check(const ReparamConfig& config) {
  if (!config.map) throw Error(ErrorKind::kDomainError, "reparam check needs a map");
  const int d = config.map->latent_dim();
  if (config.sources.dim() != d) {
    throw Error(ErrorKind::kDimensionMismatch, "source dimension differs from latent dimension");
  }
  std::vector<int> perm = config.permutation;
  if (perm.empty()) {
    for (int i = 0; i < d; ++i) perm.push_back(i);
  }
  if (static_cast<int>(perm.size()) != d) throw Error(ErrorKind::kDimensionMismatch, "permutation size");
  std::vector<ElementTransform> transforms = config.transforms;
  if (transforms.empty()) transforms.assign(static_cast<std::size_t>(d), ElementTransform{});
  if (static_cast<int>(transforms.size()) != d) {
    throw Error(ErrorKind::kDimensionMismatch, "one transform per latent coordinate");
  }
  for (const auto& t : transforms) validate_transform(t);

  const Matrix p = permutation_matrix(perm);
  auto transformed_map = std::make_shared<const ComposedMap>(std::vector<MapPtr>{
      std::make_shared<const LinearMap>(p.transpose()),
      std::make_shared<const ElementwiseInverseMap>(transforms), config.map});

  const FactorialDistribution& p_s = config.sources;
  const auto forward = [&](Rng& rng) {
    Vector s = p_s.sample(rng);
    for (int i = 0; i < d; ++i) s(i) = transforms[static_cast<std::size_t>(i)].apply(s(i));
    return Vector(p * s);
  };

  ReparamReport report;
  report.original = estimate_global_contrast(*config.map, p_s, config.n, config.seed, config.threads);
  report.transformed = estimate_contrast_over(*transformed_map, forward, config.n, config.seed, config.threads);
  report.difference = std::abs(report.original.mean - report.transformed.mean);
  report.combined_stderr = std::hypot(report.original.std_error, report.transformed.std_error);
  report.pass = report.difference <= 3.0 * report.combined_stderr || report.difference <= 1e-12;
  return report;
}

}  // namespace ima
