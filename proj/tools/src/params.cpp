#include <algorithm>
#include <cmath>
#include <numbers>

#include "ima/errors.hpp"
#include "ima/grid_map.hpp"
#include "ima/mpa.hpp"
#include "ima_cli/run.hpp"

namespace ima::cli {

namespace {

void require(bool ok, const std::string& where, const std::string& what) {
  if (!ok) throw ValidationError(where + ": " + what);
}

void check_m_list(const std::vector<int>& ms, int d, const std::string& where) {
  require(!ms.empty(), where, "must not be empty");
  for (int m : ms) require(m >= std::max(2, d) && m <= 1000000, where, "every m must be in [max(2, d), 1e6]");
}

Json sweep_params(const Json& p) {
  ObjectReader r(p, "params");
  const SweepConfig def;
  const int d = r.integer("d", def.d);
  const double delta = r.number("delta", def.delta);
  const auto ms = r.int_list("m_list", def.m_list);
  const int trials = r.integer("trials", def.trials);
  const std::string radial = r.string("radial", radial_name(def.radial));
  const double kappa = r.number("kappa", def.kappa);
  r.finish();
  require(d >= 1 && d <= 64, "params.d", "must be in [1, 64]");
  require(delta > 0.0, "params.delta", "must be positive");
  check_m_list(ms, d, "params.m_list");
  require(trials >= 100, "params.trials", "must be >= 100");
  radial_from_name(radial, "params.radial");
  require(kappa > 0.0, "params.kappa", "must be positive");
  return {{"d", d}, {"delta", delta}, {"m_list", ms}, {"trials", trials}, {"radial", radial}, {"kappa", kappa}};
}

Json genericity_params(const Json& p) {
  ObjectReader r(p, "params");
  const GenericityConfig def;
  const int d = r.integer("d", def.d);
  const auto ms = r.int_list("m_list", def.m_list);
  const double grid_delta = r.number("grid_delta", def.grid_delta);
  const double eps = r.number("eps", def.eps);
  const double delta_contrast = r.number("delta_contrast", def.delta_contrast);
  const int trials = r.integer("trials", def.trials);
  const int n_mc = r.integer("n_mc", def.n_mc);
  const std::string radial = r.string("radial", radial_name(def.radial));
  const double kappa = r.number("kappa", def.kappa);
  r.finish();
  require(d >= 1 && d <= 16, "params.d", "must be in [1, 16]");
  check_m_list(ms, d, "params.m_list");
  require(grid_delta > 0.0 && grid_delta <= 1.0, "params.grid_delta", "must be in (0, 1]");
  require(eps > 0.0 && eps < grid_delta / 4.0, "params.eps", "must satisfy 0 < eps < grid_delta/4");
  require(delta_contrast > 0.0, "params.delta_contrast", "must be positive");
  require(trials >= 1, "params.trials", "must be >= 1");
  require(n_mc >= 100, "params.n_mc", "must be >= 100");
  radial_from_name(radial, "params.radial");
  require(kappa > 0.0, "params.kappa", "must be positive");
  return {{"d", d},           {"m_list", ms}, {"grid_delta", grid_delta}, {"eps", eps},
          {"delta_contrast", delta_contrast}, {"trials", trials}, {"n_mc", n_mc},
          {"radial", radial}, {"kappa", kappa}};
}

Json spurious_params(const Json& p) {
  ObjectReader r(p, "params");
  const SpuriousConfig def;
  Json out;
  out["m"] = r.integer("m", def.m);
  out["sources"] = sources_to_json(r.has("sources") ? sources_from_json(r.raw("sources"), "params.sources")
                                                    : def.sources);
  out["rotation_degrees"] = r.number("rotation_degrees", def.rotation_degrees);
  out["rotation"] = nullptr;
  if (r.has("rotation") && !r.raw("rotation").is_null()) {
    out["rotation"] = matrix_to_json(matrix_from_json(r.raw("rotation"), "params.rotation"));
  }
  out["similarity_scale"] = r.number("similarity_scale", def.similarity_scale);
  out["inversion_center"] = nullptr;
  if (r.has("inversion_center") && !r.raw("inversion_center").is_null()) {
    out["inversion_center"] = vector_to_json(vector_from_json(r.raw("inversion_center"), "params.inversion_center"));
  }
  out["n_samples"] = r.integer("n_samples", def.n_samples);
  out["darmois_resolution"] = r.integer("darmois_resolution", def.darmois_resolution);
  out["darmois_half_width"] = r.number("darmois_half_width", def.darmois_half_width);
  out["floor"] = r.number("floor", def.floor);
  out["sigma_factor"] = r.number("sigma_factor", def.sigma_factor);
  out["ground_truth_tol"] = r.number("ground_truth_tol", def.ground_truth_tol);
  r.finish();

  require(out["m"].get<int>() >= 2, "params.m", "must be >= 2");
  require(out["sources"].size() == 2, "params.sources", "needs exactly two laws");
  require(out["similarity_scale"].get<double>() > 0.0, "params.similarity_scale", "must be positive");
  require(out["n_samples"].get<int>() >= 100, "params.n_samples", "must be >= 100");
  const int res = out["darmois_resolution"].get<int>();
  require(res >= 128 && res <= 8192, "params.darmois_resolution", "must be in [128, 8192]");
  require(out["darmois_half_width"].get<double>() > 0.0, "params.darmois_half_width", "must be positive");
  require(out["floor"].get<double>() >= 0.0, "params.floor", "must be non-negative");
  require(out["sigma_factor"].get<double>() > 0.0, "params.sigma_factor", "must be positive");
  require(out["ground_truth_tol"].get<double>() >= 0.0, "params.ground_truth_tol", "must be non-negative");
  if (!out["inversion_center"].is_null()) {
    require(out["inversion_center"].size() == 2, "params.inversion_center", "must have two entries");
  }
  Matrix rot = out["rotation"].is_null()
                   ? rotation_2d(out["rotation_degrees"].get<double>() * std::numbers::pi / 180.0)
                   : matrix_from_json(out["rotation"], "params.rotation");
  require(rot.rows() == 2 && rot.cols() == 2, "params.rotation", "must be 2x2");
  require((rot.transpose() * rot - Matrix::Identity(2, 2)).isZero(1e-12), "params.rotation", "must be orthogonal");
  require(!is_signed_permutation(rot), "params.rotation",
          "is an identity or signed permutation; no spurious solution exists");
  return out;
}

std::vector<int> reversed_order(int d) {
  std::vector<int> perm(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) perm[static_cast<std::size_t>(i)] = d - 1 - i;
  return perm;
}

Json default_transforms(int d) {
  Json out = Json::array();
  for (int i = 0; i < d; ++i) {
    out.push_back(i % 2 == 0 ? transform_to_json({TransformKind::kCube, 1.0, 0.0})
                             : transform_to_json({TransformKind::kAffine, 2.0, -1.0}));
  }
  return out;
}

const Json kDefaultMap{{"family", "grid"}, {"d", 2}, {"m", 8}, {"delta", 0.5}, {"eps", 0.01}, {"radial", "gaussian"}};

int latent_dim_of(const Json& map_spec) {
  const std::string family = map_spec.at("family").get<std::string>();
  if (family == "linear") return static_cast<int>(map_spec.at("matrix")[0].size());
  if (family == "mpa") return static_cast<int>(map_spec.at("sources").size());
  return map_spec.at("d").get<int>();
}

Json map_and_sources(ObjectReader& r, Json& out) {
  const Json map = r.has("map") && !r.raw("map").is_null() ? normalize_map_spec(r.raw("map"), "params.map")
                                                            : normalize_map_spec(kDefaultMap, "params.map");
  out["map"] = map;
  const int d = latent_dim_of(map);
  if (r.has("sources") && !r.raw("sources").is_null()) {
    out["sources"] = sources_to_json(sources_from_json(r.raw("sources"), "params.sources"));
    require(static_cast<int>(out["sources"].size()) == d, "params.sources", "needs one law per latent coordinate");
  } else {
    out["sources"] = sources_to_json(default_sources_for(map));
  }
  out["n"] = r.integer("n", 20000);
  require(out["n"].get<int>() >= 100, "params.n", "must be >= 100");
  return map;
}

Json reparam_params(const Json& p) {
  ObjectReader r(p, "params");
  Json out;
  const Json map = map_and_sources(r, out);
  const int d = latent_dim_of(map);
  const auto perm = r.int_list("permutation", reversed_order(d));
  require(static_cast<int>(perm.size()) == d, "params.permutation", "needs one entry per latent coordinate");
  auto sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < d; ++i) {
    require(sorted[static_cast<std::size_t>(i)] == i, "params.permutation", "must permute 0..d-1");
  }
  out["permutation"] = perm;
  Json transforms = default_transforms(d);
  if (r.has("transforms")) {
    const Json& t = r.raw("transforms");
    require(t.is_array() && static_cast<int>(t.size()) == d, "params.transforms",
            "needs one transform per latent coordinate");
    transforms = Json::array();
    for (std::size_t i = 0; i < t.size(); ++i) {
      transforms.push_back(transform_to_json(transform_from_json(t[i], "params.transforms[" + std::to_string(i) + "]")));
    }
  }
  out["transforms"] = transforms;
  r.finish();
  return out;
}

Json contrast_params(const Json& p) {
  ObjectReader r(p, "params");
  Json out;
  const bool has_matrix = r.has("matrix") && !r.raw("matrix").is_null();
  if (has_matrix) {
    const Matrix a = matrix_from_json(r.raw("matrix"), "params.matrix");
    require(a.rows() >= a.cols(), "params.matrix", "needs at least as many rows as columns");
    out["matrix"] = matrix_to_json(a);
    out["map"] = nullptr;
    out["sources"] = nullptr;
    out["n"] = nullptr;
    require(!(r.has("map") && !r.raw("map").is_null()), "params", "give either matrix or map, not both");
    for (const char* key : {"sources", "n"}) {
      require(!(r.has(key) && !r.raw(key).is_null()), std::string("params.") + key, "only applies to a map");
    }
  } else {
    out["matrix"] = nullptr;
    map_and_sources(r, out);
  }
  r.finish();
  return out;
}

}  // namespace

const std::vector<ParamSpec>& param_specs(const std::string& command) {
  static const std::vector<ParamSpec> sweep{
      {"d", "latent dimension"},
      {"delta", "success threshold on the contrast"},
      {"m_list", "observation dimensions, each >= max(2, d)"},
      {"trials", "random matrices per m (>= 100)"},
      {"radial", "column radial law: gaussian (chi(m)) or unit"},
      {"kappa", "constant of the theoretical bound curve"},
  };
  static const std::vector<ParamSpec> genericity{
      {"d", "latent dimension"},
      {"m_list", "observation dimensions, each >= max(2, d)"},
      {"grid_delta", "grid spacing in (0, 1]"},
      {"eps", "smoothing half-width, 0 < eps < grid_delta/4"},
      {"delta_contrast", "success threshold on the global contrast estimate"},
      {"trials", "sampled maps per m"},
      {"n_mc", "uniform latent draws per map (>= 100)"},
      {"radial", "column radial law: gaussian (chi(m)) or unit"},
      {"kappa", "constant of the theoretical bound curve"},
  };
  static const std::vector<ParamSpec> spurious{
      {"m", "observation dimension of the conformal map"},
      {"sources", "two source laws"},
      {"rotation_degrees", "rotation angle used when rotation is null"},
      {"rotation", "explicit 2x2 orthogonal matrix or null"},
      {"similarity_scale", "scale of the conformal similarity"},
      {"inversion_center", "adds an inversion about this point, or null"},
      {"n_samples", "Monte Carlo draws per estimate"},
      {"darmois_resolution", "Darmois table nodes per axis"},
      {"darmois_half_width", "Darmois table covers [-w, w]^2"},
      {"floor", "absolute floor a spurious contrast must exceed"},
      {"sigma_factor", "spurious contrast must exceed this many standard errors"},
      {"ground_truth_tol", "largest accepted ground-truth contrast"},
  };
  static const std::vector<ParamSpec> reparam{
      {"map", "map description (family: linear, grid, two_piece, conformal, mpa)"},
      {"sources", "one law per latent coordinate, or null for the map's default"},
      {"n", "Monte Carlo draws per estimate"},
      {"permutation", "P as a list with P e_j = e_perm[j]"},
      {"transforms", "element-wise transforms h_i (affine, cube, tanh)"},
  };
  static const std::vector<ParamSpec> contrast{
      {"matrix", "Jacobian for a one-off local contrast, or null"},
      {"map", "map description used when matrix is null"},
      {"sources", "one law per latent coordinate, or null for the map's default"},
      {"n", "Monte Carlo draws for the global contrast"},
  };
  if (command == "sweep") return sweep;
  if (command == "genericity") return genericity;
  if (command == "spurious") return spurious;
  if (command == "reparam") return reparam;
  if (command == "contrast") return contrast;
  throw ValidationError("unknown command '" + command + "'");
}

Json normalize_params(const std::string& command, const Json& params) {
  try {
    if (command == "sweep") return sweep_params(params);
    if (command == "genericity") return genericity_params(params);
    if (command == "spurious") return spurious_params(params);
    if (command == "reparam") return reparam_params(params);
    if (command == "contrast") return contrast_params(params);
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("params: ") + e.what());
  }
  throw ValidationError("unknown command '" + command + "'");
}

Json default_params(const std::string& command) { return normalize_params(command, Json::object()); }

std::string params_help(const std::string& command) {
  const Json defaults = default_params(command);
  std::string out = "Parameters (config key \"params\"):\n";
  for (const auto& spec : param_specs(command)) {
    out += "  " + spec.name + " = " + defaults.at(spec.name).dump() + "\n      " + spec.description + "\n";
  }
  return out;
}

}  // namespace ima::cli
