#include "ima/grid_map.hpp"

#include <algorithm>
#include <cmath>

#include "ima/contrast.hpp"
#include "ima/errors.hpp"

namespace ima {

int grid_pieces(double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw Error(ErrorKind::kDomainError, "grid width must lie in (0, 1]");
  }
  // Guard against 1/delta landing a hair above an integer.
  const double ratio = 1.0 / delta;
  const double nearest = std::round(ratio);
  const double cells = std::abs(ratio - nearest) < 1e-12 * nearest ? nearest : std::ceil(ratio);
  return static_cast<int>(cells) + 1;
}

SmoothGridMap::SmoothGridMap(double delta, double eps, std::vector<Matrix> blocks)
    : p_(grid_pieces(delta)), delta_(delta), eps_(eps), blocks_(std::move(blocks)) {
  if (!(eps_ >= 0.0)) throw Error(ErrorKind::kDomainError, "eps must be non-negative");
  if (eps_ > 0.0 && !(eps_ < delta_ / 4.0)) {
    throw Error(ErrorKind::kDomainError, "smoothing needs eps < delta/4");
  }
  if (static_cast<int>(blocks_.size()) != p_) {
    throw Error(ErrorKind::kDimensionMismatch,
                "expected " + std::to_string(p_) + " blocks, got " + std::to_string(blocks_.size()));
  }
  m_ = static_cast<int>(blocks_.front().rows());
  d_ = static_cast<int>(blocks_.front().cols());
  if (d_ < 1 || m_ < d_) throw Error(ErrorKind::kDimensionMismatch, "blocks need m >= d >= 1");
  for (const auto& b : blocks_) {
    if (b.rows() != m_ || b.cols() != d_) {
      throw Error(ErrorKind::kDimensionMismatch, "blocks differ in shape");
    }
    if (!b.allFinite()) throw Error(ErrorKind::kNonFinite, "block has non-finite entries");
  }

  offsets_.assign(static_cast<std::size_t>(p_), Matrix::Zero(m_, d_));
  for (int t = 1; t < p_; ++t) {
    offsets_[static_cast<std::size_t>(t)] =
        offsets_[static_cast<std::size_t>(t - 1)] + blocks_[static_cast<std::size_t>(t - 1)] * delta_;
  }

  if (m_ > p_ * d_) {
    Matrix stacked(m_, p_ * d_);
    for (int t = 0; t < p_; ++t) stacked.middleCols(t * d_, d_) = blocks_[static_cast<std::size_t>(t)];
    if (!has_full_column_rank(stacked, kDefaultRankTol)) {
      throw Error(ErrorKind::kRankDeficient, "block columns are not jointly independent");
    }
  } else {
    warnings_.push_back("m <= p*d: joint column independence not guaranteed (m=" +
                        std::to_string(m_) + ", p*d=" + std::to_string(p_ * d_) + ")");
  }

  // Adjacent affine pieces must meet at every knot.
  for (int t = 1; t < p_; ++t) {
    const double knot = t * delta_;
    for (int k = 0; k < d_; ++k) {
      const Vector left = piece_value(t, k, knot);
      const Vector right = piece_value(t + 1, k, knot);
      const double scale = std::max(1.0, left.norm());
      if ((left - right).norm() > 1e-12 * scale) {
        throw Error(ErrorKind::kNonFinite, "affine pieces disagree at a knot");
      }
    }
  }
}

Vector SmoothGridMap::piece_value(int t, int k, double sk) const {
  const auto idx = static_cast<std::size_t>(t - 1);
  return blocks_[idx].col(k) * (sk - (t - 1) * delta_) + offsets_[idx].col(k);
}

Vector SmoothGridMap::coordinate_value(int k, double sk) const {
  if (eps_ == 0.0) {
    // half-open cells ((t-1) delta, t delta]; s = 0 falls in the first one
    int t = static_cast<int>(std::ceil(sk / delta_));
    t = std::clamp(t, 1, p_);
    return piece_value(t, k, sk);
  }
  Vector out = Vector::Zero(m_);
  for (int t = 1; t <= p_; ++t) {
    const double w = smooth_step(sk - (t - 1) * delta_, eps_) - smooth_step(sk - t * delta_, eps_);
    if (w != 0.0) out += w * piece_value(t, k, sk);
  }
  return out;
}

Vector SmoothGridMap::coordinate_derivative(int k, double sk) const {
  if (eps_ == 0.0) {
    const double pos = sk / delta_;
    if (std::abs(pos - std::round(pos)) * delta_ < 1e-12) {
      throw Error(ErrorKind::kOnKnot, "unsmoothed grid map has no Jacobian at a knot");
    }
    const int t = std::clamp(static_cast<int>(std::ceil(pos)), 1, p_);
    return blocks_[static_cast<std::size_t>(t - 1)].col(k);
  }
  Vector out = Vector::Zero(m_);
  for (int t = 1; t <= p_; ++t) {
    const double a = sk - (t - 1) * delta_;
    const double b = sk - t * delta_;
    const double w = smooth_step(a, eps_) - smooth_step(b, eps_);
    const double dw = smooth_step_derivative(a, eps_) - smooth_step_derivative(b, eps_);
    if (w != 0.0) out += w * blocks_[static_cast<std::size_t>(t - 1)].col(k);
    if (dw != 0.0) out += dw * piece_value(t, k, sk);
  }
  return out;
}

Vector SmoothGridMap::eval(const Vector& s, EvalStats*) const {
  check_in_domain(*this, s);
  Vector x = Vector::Zero(m_);
  for (int k = 0; k < d_; ++k) x += coordinate_value(k, s(k));
  return x;
}

Matrix SmoothGridMap::jacobian(const Vector& s, EvalStats*) const {
  check_in_domain(*this, s);
  Matrix j(m_, d_);
  for (int k = 0; k < d_; ++k) j.col(k) = coordinate_derivative(k, s(k));
  return j;
}

std::vector<double> SmoothGridMap::knots() const {
  std::vector<double> out;
  for (int t = 0; t <= p_; ++t) out.push_back(t * delta_);
  return out;
}

bool SmoothGridMap::in_boundary_region(const Vector& s) const {
  if (eps_ == 0.0) return false;
  for (int k = 0; k < d_; ++k) {
    const double nearest = std::round(s(k) / delta_) * delta_;
    if (std::abs(s(k) - nearest) < eps_) return true;
  }
  return false;
}

double SmoothGridMap::boundary_measure_per_axis() const {
  if (eps_ == 0.0) return 0.0;
  double total = 0.0;
  for (double knot : knots()) {
    const double lo = std::max(0.0, knot - eps_);
    const double hi = std::min(1.0, knot + eps_);
    if (hi > lo) total += hi - lo;
  }
  return total;
}

double SmoothGridMap::boundary_probability_uniform() const {
  return 1.0 - std::pow(1.0 - boundary_measure_per_axis(), d_);
}

SmoothGridMap sample_grid_map(int d, int m, double delta, const SphericalSampler& sampler,
                              double eps, std::uint64_t seed) {
  const int p = grid_pieces(delta);
  if (sampler.ambient_dim() != m) {
    throw Error(ErrorKind::kDimensionMismatch, "sampler ambient dimension differs from m");
  }
  if (d < 1 || m < d) throw Error(ErrorKind::kDomainError, "need m >= d >= 1");
  Rng rng(seed);
  std::vector<Matrix> blocks;
  blocks.reserve(static_cast<std::size_t>(p));
  for (int t = 0; t < p; ++t) {
    Matrix b(m, d);
    for (int k = 0; k < d; ++k) b.col(k) = sampler.sample(rng);
    blocks.push_back(std::move(b));
  }
  return SmoothGridMap(delta, eps, std::move(blocks));
}

}  // namespace ima
