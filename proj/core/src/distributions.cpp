#include "ima/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "ima/contrast.hpp"
#include "ima/errors.hpp"

namespace ima {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_unit_open(double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw Error(ErrorKind::kDomainError, "probability level must lie in (0, 1)");
  }
}

}  // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_sf(double z) { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_quantile(double u) {
  require_unit_open(u);
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * u);
}

std::string to_string(LawKind kind) {
  switch (kind) {
    case LawKind::kUniform: return "uniform";
    case LawKind::kGaussian: return "gaussian";
    case LawKind::kLaplace: return "laplace";
    case LawKind::kTabulated: return "tabulated";
    case LawKind::kChi: return "chi";
    case LawKind::kConstant: return "constant";
  }
  return "unknown";
}

UnivariateLaw UnivariateLaw::uniform(double a, double b) {
  if (!(std::isfinite(a) && std::isfinite(b) && a < b)) {
    throw Error(ErrorKind::kDomainError, "uniform law needs finite a < b");
  }
  return {LawKind::kUniform, a, b};
}

UnivariateLaw UnivariateLaw::gaussian(double mu, double sigma) {
  if (!(std::isfinite(mu) && sigma > 0.0 && std::isfinite(sigma))) {
    throw Error(ErrorKind::kDomainError, "gaussian law needs finite mu and sigma > 0");
  }
  return {LawKind::kGaussian, mu, sigma};
}

UnivariateLaw UnivariateLaw::laplace(double mu, double b) {
  if (!(std::isfinite(mu) && b > 0.0 && std::isfinite(b))) {
    throw Error(ErrorKind::kDomainError, "laplace law needs finite mu and b > 0");
  }
  return {LawKind::kLaplace, mu, b};
}

UnivariateLaw UnivariateLaw::tabulated(std::vector<double> quantile_knots) {
  if (quantile_knots.size() < 2) {
    throw Error(ErrorKind::kDomainError, "tabulated law needs at least two knots");
  }
  for (std::size_t i = 0; i < quantile_knots.size(); ++i) {
    if (!std::isfinite(quantile_knots[i]) ||
        (i > 0 && !(quantile_knots[i] > quantile_knots[i - 1]))) {
      throw Error(ErrorKind::kDomainError, "tabulated knots must be finite and strictly increasing");
    }
  }
  UnivariateLaw law(LawKind::kTabulated, quantile_knots.front(), quantile_knots.back());
  law.knots_ = std::move(quantile_knots);
  return law;
}

UnivariateLaw UnivariateLaw::chi(int dof) {
  if (dof < 1) throw Error(ErrorKind::kDomainError, "chi law needs dof >= 1");
  UnivariateLaw law(LawKind::kChi, 0.0, 0.0);
  law.dof_ = dof;
  return law;
}

UnivariateLaw UnivariateLaw::constant(double r) {
  if (!(r > 0.0 && std::isfinite(r))) {
    throw Error(ErrorKind::kDomainError, "constant radial law needs r > 0");
  }
  return {LawKind::kConstant, r, 0.0};
}

std::pair<double, double> UnivariateLaw::support() const {
  switch (kind_) {
    case LawKind::kUniform:
    case LawKind::kTabulated:
      return {params_[0], params_[1]};
    case LawKind::kGaussian:
    case LawKind::kLaplace:
      return {-kInf, kInf};
    case LawKind::kChi:
      return {0.0, kInf};
    case LawKind::kConstant:
      return {params_[0], params_[0]};
  }
  return {-kInf, kInf};
}

bool UnivariateLaw::in_interior(double x) const {
  const auto [lo, hi] = support();
  return std::isfinite(x) && x > lo && x < hi;
}

double UnivariateLaw::location() const {
  switch (kind_) {
    case LawKind::kUniform: return 0.5 * (params_[0] + params_[1]);
    case LawKind::kGaussian:
    case LawKind::kLaplace: return params_[0];
    case LawKind::kTabulated: return knots_[knots_.size() / 2];
    case LawKind::kChi: return std::sqrt(std::max(dof_ - 0.5, 0.5));
    case LawKind::kConstant: return params_[0];
  }
  return 0.0;
}

double UnivariateLaw::scale() const {
  switch (kind_) {
    case LawKind::kUniform: return params_[1] - params_[0];
    case LawKind::kGaussian:
    case LawKind::kLaplace: return params_[1];
    case LawKind::kTabulated: return knots_.back() - knots_.front();
    case LawKind::kChi: return 1.0;
    case LawKind::kConstant: return 1.0;
  }
  return 1.0;
}

double UnivariateLaw::density(double x) const {
  switch (kind_) {
    case LawKind::kUniform:
      return (x >= params_[0] && x <= params_[1]) ? 1.0 / (params_[1] - params_[0]) : 0.0;
    case LawKind::kGaussian:
      return normal_pdf((x - params_[0]) / params_[1]) / params_[1];
    case LawKind::kLaplace:
      return std::exp(-std::abs(x - params_[0]) / params_[1]) / (2.0 * params_[1]);
    case LawKind::kTabulated: {
      if (x < knots_.front() || x > knots_.back()) return 0.0;
      const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
      const std::size_t i =
          std::min<std::size_t>(static_cast<std::size_t>(it - knots_.begin()), knots_.size() - 1) - 1;
      const double n = static_cast<double>(knots_.size() - 1);
      return 1.0 / (n * (knots_[i + 1] - knots_[i]));
    }
    case LawKind::kChi: {
      if (x <= 0.0) return 0.0;
      const double k = dof_;
      return std::exp((k - 1.0) * std::log(x) - 0.5 * x * x - (0.5 * k - 1.0) * std::numbers::ln2 -
                      std::lgamma(0.5 * k));
    }
    case LawKind::kConstant:
      throw Error(ErrorKind::kDomainError, "constant law has no density");
  }
  return 0.0;
}

double UnivariateLaw::cdf(double x) const {
  switch (kind_) {
    case LawKind::kUniform:
      return std::clamp((x - params_[0]) / (params_[1] - params_[0]), 0.0, 1.0);
    case LawKind::kGaussian:
      return normal_cdf((x - params_[0]) / params_[1]);
    case LawKind::kLaplace: {
      const double z = (x - params_[0]) / params_[1];
      return z < 0.0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
    }
    case LawKind::kTabulated: {
      if (x <= knots_.front()) return 0.0;
      if (x >= knots_.back()) return 1.0;
      const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
      const std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
      const double n = static_cast<double>(knots_.size() - 1);
      return (static_cast<double>(i) + (x - knots_[i]) / (knots_[i + 1] - knots_[i])) / n;
    }
    case LawKind::kChi:
      return x <= 0.0 ? 0.0 : boost::math::gamma_p(0.5 * dof_, 0.5 * x * x);
    case LawKind::kConstant:
      return x < params_[0] ? 0.0 : 1.0;
  }
  return 0.0;
}

double UnivariateLaw::sf(double x) const {
  switch (kind_) {
    case LawKind::kUniform:
      return std::clamp((params_[1] - x) / (params_[1] - params_[0]), 0.0, 1.0);
    case LawKind::kGaussian:
      return normal_sf((x - params_[0]) / params_[1]);
    case LawKind::kLaplace: {
      const double z = (x - params_[0]) / params_[1];
      return z > 0.0 ? 0.5 * std::exp(-z) : 1.0 - 0.5 * std::exp(z);
    }
    case LawKind::kChi:
      return x <= 0.0 ? 1.0 : boost::math::gamma_q(0.5 * dof_, 0.5 * x * x);
    case LawKind::kTabulated:
    case LawKind::kConstant:
      return 1.0 - cdf(x);
  }
  return 0.0;
}

double UnivariateLaw::bracketed_quantile(double target, bool upper) const {
  const auto [slo, shi] = support();
  const double mu = location();
  const double sc = scale();
  double lo = std::max(slo, mu - 40.0 * sc);
  double hi = std::min(shi, mu + 40.0 * sc);
  // residual > 0 means x is too far right
  const auto residual = [&](double x) { return upper ? target - sf(x) : cdf(x) - target; };

  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (residual(mid) > 0.0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    const double slope = density(x);
    if (!(slope > 0.0)) break;
    const double r = residual(x);
    const double candidate = x - r / slope;
    if (!(candidate >= lo && candidate <= hi)) break;
    if (std::abs(residual(candidate)) >= std::abs(r)) break;
    x = candidate;
  }
  return x;
}

double UnivariateLaw::quantile(double u) const {
  require_unit_open(u);
  switch (kind_) {
    case LawKind::kUniform:
      return params_[0] + u * (params_[1] - params_[0]);
    case LawKind::kGaussian:
      return params_[0] + params_[1] * normal_quantile(u);
    case LawKind::kLaplace:
      return u < 0.5 ? params_[0] + params_[1] * std::log(2.0 * u)
                     : params_[0] - params_[1] * std::log(2.0 * (1.0 - u));
    case LawKind::kTabulated: {
      const double n = static_cast<double>(knots_.size() - 1);
      const double pos = u * n;
      const auto i = std::min(static_cast<std::size_t>(pos), knots_.size() - 2);
      const double frac = pos - static_cast<double>(i);
      return knots_[i] + frac * (knots_[i + 1] - knots_[i]);
    }
    case LawKind::kChi:
      return bracketed_quantile(u, false);
    case LawKind::kConstant:
      return params_[0];
  }
  return 0.0;
}

double UnivariateLaw::quantile_upper(double q) const {
  require_unit_open(q);
  switch (kind_) {
    case LawKind::kUniform:
      return params_[1] - q * (params_[1] - params_[0]);
    case LawKind::kGaussian:
      return params_[0] - params_[1] * normal_quantile(q);
    case LawKind::kLaplace:
      return q < 0.5 ? params_[0] - params_[1] * std::log(2.0 * q)
                     : params_[0] + params_[1] * std::log(2.0 * (1.0 - q));
    case LawKind::kChi:
      return bracketed_quantile(q, true);
    case LawKind::kTabulated:
    case LawKind::kConstant:
      return quantile(1.0 - q);
  }
  return 0.0;
}

double UnivariateLaw::sample(Rng& rng) const {
  switch (kind_) {
    case LawKind::kGaussian:
      return params_[0] + params_[1] * rng.normal();
    case LawKind::kChi:
      return rng.normal_vector(dof_).norm();
    case LawKind::kConstant:
      return params_[0];
    default:
      return quantile(rng.uniform_open());
  }
}

FactorialDistribution::FactorialDistribution(std::vector<UnivariateLaw> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw Error(ErrorKind::kDomainError, "factorial law needs d >= 1");
  for (const auto& c : components_) {
    if (!c.has_density()) {
      throw Error(ErrorKind::kDomainError, "source components need a density");
    }
  }
}

FactorialDistribution FactorialDistribution::iid(const UnivariateLaw& law, int d) {
  return FactorialDistribution(std::vector<UnivariateLaw>(static_cast<std::size_t>(d), law));
}

double FactorialDistribution::density(const Vector& s) const {
  double p = 1.0;
  for (int i = 0; i < dim(); ++i) p *= component(i).density(s(i));
  return p;
}

Vector FactorialDistribution::sample(Rng& rng) const {
  Vector s(dim());
  for (int i = 0; i < dim(); ++i) s(i) = component(i).sample(rng);
  return s;
}

bool FactorialDistribution::in_interior(const Vector& s) const {
  if (s.size() != dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    if (!component(i).in_interior(s(i))) return false;
  }
  return true;
}

SphericalSampler::SphericalSampler(int ambient_dim, UnivariateLaw radial_law)
    : ambient_dim_(ambient_dim), radial_(std::move(radial_law)) {
  if (ambient_dim_ < 1) throw Error(ErrorKind::kDomainError, "ambient dimension must be >= 1");
  const auto [lo, hi] = radial_.support();
  (void)hi;
  if (lo < 0.0) throw Error(ErrorKind::kDomainError, "radial law must live on [0, inf)");
}

SphericalSampler SphericalSampler::standard_gaussian(int ambient_dim) {
  return {ambient_dim, UnivariateLaw::chi(ambient_dim)};
}

SphericalSampler SphericalSampler::unit(int ambient_dim) {
  return {ambient_dim, UnivariateLaw::constant(1.0)};
}

Vector SphericalSampler::sample(Rng& rng) const {
  Vector g = rng.normal_vector(ambient_dim_);
  // chi(m) radius times a uniform direction is exactly a standard Gaussian.
  if (radial_.kind() == LawKind::kChi && radial_.dof() == ambient_dim_) return g;
  const double norm = g.norm();
  return (radial_.sample(rng) / norm) * g;
}

Matrix sample_isotropic_matrix(int m, int d, const SphericalSampler& sampler, Rng& rng) {
  if (d < 1 || m < d) throw Error(ErrorKind::kDomainError, "need m >= d >= 1");
  if (sampler.ambient_dim() != m) {
    throw Error(ErrorKind::kDimensionMismatch, "sampler ambient dimension differs from m");
  }
  Matrix j(m, d);
  for (int attempt = 0; attempt < 4; ++attempt) {
    for (int c = 0; c < d; ++c) j.col(c) = sampler.sample(rng);
    if (has_full_column_rank(j)) return j;
  }
  throw Error(ErrorKind::kRankDeficient, "sampled matrix failed the rank check 4 times");
}

Matrix sample_isotropic_matrix(int m, int d, const SphericalSampler& sampler, std::uint64_t seed) {
  Rng rng(seed);
  return sample_isotropic_matrix(m, d, sampler, rng);
}

std::vector<Vector> sample_factorial(const FactorialDistribution& p_s, int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorKind::kDomainError, "n must be >= 1");
  Rng rng(seed);
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(p_s.sample(rng));
  return out;
}

}  // namespace ima
