#include "ima_cli/json_io.hpp"

#include <cmath>
#include <numbers>

#include "ima/conformal.hpp"
#include "ima/errors.hpp"
#include "ima/grid_map.hpp"
#include "ima/mpa.hpp"
#include "ima/rng.hpp"
#include "ima/two_piece.hpp"

namespace ima::cli {

namespace {

template <class Fn>
auto guarded(const std::string& where, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (is_numerical_failure(e.kind())) throw;
    throw ValidationError(where + ": " + e.what());
  }
}

const Json& require_object(const Json& j, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected an object");
  return j;
}

}  // namespace

ObjectReader::ObjectReader(const Json& object, std::string where)
    : obj_(require_object(object, where)), where_(std::move(where)) {}

void ObjectReader::fail(const std::string& key, const std::string& what) const {
  throw ValidationError(where_ + "." + key + ": " + what);
}

const Json& ObjectReader::raw(const std::string& key) {
  seen_.insert(key);
  return obj_.at(key);
}

double ObjectReader::number(const std::string& key, double fallback) {
  if (!has(key)) return fallback;
  const Json& v = raw(key);
  if (!v.is_number()) fail(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(key, "must be finite");
  return x;
}

int ObjectReader::integer(const std::string& key, int fallback) {
  if (!has(key)) return fallback;
  const Json& v = raw(key);
  if (!v.is_number_integer()) fail(key, "expected an integer");
  const auto x = v.get<long long>();
  if (x < -2147483647LL || x > 2147483647LL) fail(key, "out of range");
  return static_cast<int>(x);
}

std::uint64_t ObjectReader::u64(const std::string& key, std::uint64_t fallback) {
  if (!has(key)) return fallback;
  const Json& v = raw(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
  fail(key, "expected a non-negative 64-bit integer");
}

std::string ObjectReader::string(const std::string& key, const std::string& fallback) {
  if (!has(key)) return fallback;
  const Json& v = raw(key);
  if (!v.is_string()) fail(key, "expected a string");
  return v.get<std::string>();
}

std::vector<int> ObjectReader::int_list(const std::string& key, const std::vector<int>& fallback) {
  if (!has(key)) return fallback;
  const Json& v = raw(key);
  if (!v.is_array()) fail(key, "expected an array of integers");
  std::vector<int> out;
  for (const auto& e : v) {
    if (!e.is_number_integer()) fail(key, "expected an array of integers");
    out.push_back(e.get<int>());
  }
  return out;
}

std::vector<double> ObjectReader::number_list(const std::string& key, const std::vector<double>& fallback) {
  if (!has(key)) return fallback;
  const Json& v = raw(key);
  if (!v.is_array()) fail(key, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) fail(key, "expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

void ObjectReader::finish() const {
  for (const auto& [key, value] : obj_.items()) {
    if (!seen_.count(key)) throw ValidationError(where_ + ": unknown key '" + key + "'");
  }
}

Json law_to_json(const UnivariateLaw& law) {
  switch (law.kind()) {
    case LawKind::kUniform:
      return {{"kind", "uniform"}, {"a", law.param(0)}, {"b", law.param(1)}};
    case LawKind::kGaussian:
      return {{"kind", "gaussian"}, {"mu", law.param(0)}, {"sigma", law.param(1)}};
    case LawKind::kLaplace:
      return {{"kind", "laplace"}, {"mu", law.param(0)}, {"b", law.param(1)}};
    case LawKind::kTabulated:
      return {{"kind", "tabulated"}, {"knots", law.knots()}};
    case LawKind::kChi:
      return {{"kind", "chi"}, {"dof", law.dof()}};
    case LawKind::kConstant:
      return {{"kind", "constant"}, {"r", law.param(0)}};
  }
  return {};
}

UnivariateLaw law_from_json(const Json& j, const std::string& where) {
  ObjectReader r(j, where);
  const std::string kind = r.string("kind", "");
  const auto law = guarded(where, [&] {
    if (kind == "uniform") return UnivariateLaw::uniform(r.number("a", 0.0), r.number("b", 1.0));
    if (kind == "gaussian") return UnivariateLaw::gaussian(r.number("mu", 0.0), r.number("sigma", 1.0));
    if (kind == "laplace") return UnivariateLaw::laplace(r.number("mu", 0.0), r.number("b", 1.0));
    if (kind == "tabulated") return UnivariateLaw::tabulated(r.number_list("knots", {}));
    if (kind == "chi") return UnivariateLaw::chi(r.integer("dof", 1));
    if (kind == "constant") return UnivariateLaw::constant(r.number("r", 1.0));
    throw ValidationError(where + ".kind: expected one of uniform, gaussian, laplace, tabulated, chi, constant");
  });
  r.finish();
  return law;
}

Json sources_to_json(const FactorialDistribution& p) {
  Json out = Json::array();
  for (const auto& law : p.components()) out.push_back(law_to_json(law));
  return out;
}

FactorialDistribution sources_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ValidationError(where + ": expected a non-empty array of laws");
  std::vector<UnivariateLaw> laws;
  for (std::size_t i = 0; i < j.size(); ++i) {
    auto law = law_from_json(j[i], where + "[" + std::to_string(i) + "]");
    if (!law.has_density()) throw ValidationError(where + ": source laws need a density");
    laws.push_back(std::move(law));
  }
  return FactorialDistribution(std::move(laws));
}

Json matrix_to_json(const Matrix& a) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < a.cols(); ++k) row.push_back(a(i, k));
    out.push_back(row);
  }
  return out;
}

Matrix matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
    throw ValidationError(where + ": expected a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ValidationError(where + ": rows must have equal length");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      const Json& v = row[static_cast<std::size_t>(k)];
      if (!v.is_number() || !std::isfinite(v.get<double>())) {
        throw ValidationError(where + ": entries must be finite numbers");
      }
      a(i, k) = v.get<double>();
    }
  }
  return a;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Vector vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ValidationError(where + ": expected a non-empty array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number() || !std::isfinite(j[i].get<double>())) {
      throw ValidationError(where + ": entries must be finite numbers");
    }
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

Json transform_to_json(const ElementTransform& t) {
  switch (t.kind) {
    case TransformKind::kAffine:
      return {{"kind", "affine"}, {"a", t.a}, {"b", t.b}};
    case TransformKind::kCube:
      return {{"kind", "cube"}};
    case TransformKind::kTanh:
      return {{"kind", "tanh"}};
  }
  return {};
}

ElementTransform transform_from_json(const Json& j, const std::string& where) {
  ObjectReader r(j, where);
  ElementTransform t;
  const std::string kind = r.string("kind", "affine");
  if (kind == "affine") {
    t.kind = TransformKind::kAffine;
    t.a = r.number("a", 1.0);
    t.b = r.number("b", 0.0);
  } else if (kind == "cube") {
    t.kind = TransformKind::kCube;
  } else if (kind == "tanh") {
    t.kind = TransformKind::kTanh;
  } else {
    r.fail("kind", "expected one of affine, cube, tanh");
  }
  r.finish();
  guarded(where, [&] {
    validate_transform(t);
    return 0;
  });
  return t;
}

std::string radial_name(RadialFamily family) {
  return family == RadialFamily::kUnit ? "unit" : "gaussian";
}

RadialFamily radial_from_name(const std::string& name, const std::string& where) {
  if (name == "gaussian") return RadialFamily::kGaussian;
  if (name == "unit") return RadialFamily::kUnit;
  throw ValidationError(where + ": radial must be 'gaussian' or 'unit'");
}

Json normalize_map_spec(const Json& j, const std::string& where) {
  ObjectReader r(j, where);
  const std::string family = r.string("family", "");
  Json out{{"family", family}};
  if (family == "linear") {
    if (!r.has("matrix")) r.fail("matrix", "required");
    out["matrix"] = matrix_to_json(matrix_from_json(r.raw("matrix"), where + ".matrix"));
    if (r.has("offset")) out["offset"] = vector_to_json(vector_from_json(r.raw("offset"), where + ".offset"));
  } else if (family == "grid") {
    out["d"] = r.integer("d", 2);
    out["m"] = r.integer("m", 8);
    out["delta"] = r.number("delta", 0.5);
    out["eps"] = r.number("eps", 0.01);
    out["radial"] = radial_name(radial_from_name(r.string("radial", "gaussian"), where + ".radial"));
  } else if (family == "two_piece") {
    out["d"] = r.integer("d", 2);
    out["m"] = r.integer("m", 8);
    out["k"] = r.integer("k", 0);
    out["c"] = r.number("c", 0.5);
    out["eps"] = r.number("eps", 0.01);
    out["radial"] = radial_name(radial_from_name(r.string("radial", "gaussian"), where + ".radial"));
  } else if (family == "conformal") {
    out["d"] = r.integer("d", 2);
    out["m"] = r.integer("m", 5);
    out["scale"] = r.number("scale", 1.5);
    out["inversion_center"] = nullptr;
    if (r.has("inversion_center") && !r.raw("inversion_center").is_null()) {
      out["inversion_center"] =
          vector_to_json(vector_from_json(r.raw("inversion_center"), where + ".inversion_center"));
    }
  } else if (family == "mpa") {
    out["sources"] = r.has("sources") ? sources_to_json(sources_from_json(r.raw("sources"), where + ".sources"))
                                      : sources_to_json(FactorialDistribution::iid(UnivariateLaw::laplace(0, 1), 2));
    out["rotation_degrees"] = r.number("rotation_degrees", 30.0);
  } else {
    r.fail("family", "expected one of linear, grid, two_piece, conformal, mpa");
  }
  r.finish();
  try {
    guarded(where, [&] { return build_map(out, 0); });
  } catch (const Error&) {
    // numerical failures depend on the sampled draw and surface at run time
  }
  return out;
}

MapPtr build_map(const Json& spec, std::uint64_t seed) {
  const std::string family = spec.at("family").get<std::string>();
  if (family == "linear") {
    std::optional<Vector> offset;
    if (spec.contains("offset")) offset = vector_from_json(spec.at("offset"), "offset");
    return std::make_shared<const LinearMap>(matrix_from_json(spec.at("matrix"), "matrix"), offset);
  }
  const auto sampler_for = [&](int m) {
    return make_sampler(radial_from_name(spec.at("radial").get<std::string>(), "radial"), m);
  };
  if (family == "grid") {
    const int m = spec.at("m").get<int>();
    if (m < 1) throw Error(ErrorKind::kDomainError, "m must be positive");
    return std::make_shared<const SmoothGridMap>(sample_grid_map(spec.at("d").get<int>(), m,
                                                                 spec.at("delta").get<double>(), sampler_for(m),
                                                                 spec.at("eps").get<double>(), seed));
  }
  if (family == "two_piece") {
    const int m = spec.at("m").get<int>();
    if (m < 1) throw Error(ErrorKind::kDomainError, "m must be positive");
    return std::make_shared<const TwoPieceMap>(sample_two_piece(spec.at("d").get<int>(), m, spec.at("k").get<int>(),
                                                                spec.at("c").get<double>(), spec.at("eps").get<double>(),
                                                                sampler_for(m), seed));
  }
  if (family == "conformal") {
    const int d = spec.at("d").get<int>();
    const int m = spec.at("m").get<int>();
    if (d < 1 || m < d) throw Error(ErrorKind::kDomainError, "conformal map needs 1 <= d <= m");
    const double scale = spec.at("scale").get<double>();
    if (!(scale > 0.0)) throw Error(ErrorKind::kDomainError, "scale must be positive");
    Rng rng(seed);
    const Matrix embed = random_orthonormal_columns(m, d, rng);
    std::vector<ConformalPrimitive> inner{Similarity{scale, random_orthogonal(d, rng), Vector::Zero(d)}};
    if (!spec.at("inversion_center").is_null()) {
      inner.push_back(Inversion{vector_from_json(spec.at("inversion_center"), "inversion_center")});
    }
    return std::make_shared<const ConformalMap>(embed, std::move(inner));
  }
  if (family == "mpa") {
    const auto sources = sources_from_json(spec.at("sources"), "sources");
    if (sources.dim() != 2) throw Error(ErrorKind::kDimensionMismatch, "mpa spec is two-dimensional");
    const double radians = spec.at("rotation_degrees").get<double>() * std::numbers::pi / 180.0;
    return std::make_shared<const RotatedGaussianMPA>(sources, rotation_2d(radians));
  }
  throw ValidationError("unknown map family '" + family + "'");
}

FactorialDistribution default_sources_for(const Json& spec) {
  const std::string family = spec.at("family").get<std::string>();
  if (family == "mpa") return sources_from_json(spec.at("sources"), "sources");
  if (family == "grid" || family == "two_piece") {
    return FactorialDistribution::iid(UnivariateLaw::uniform(0.0, 1.0), spec.at("d").get<int>());
  }
  const int d = family == "linear" ? static_cast<int>(spec.at("matrix")[0].size()) : spec.at("d").get<int>();
  return FactorialDistribution::iid(UnivariateLaw::gaussian(0.0, 1.0), d);
}

}  // namespace ima::cli
