#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "ima/compose.hpp"
#include "ima/distributions.hpp"
#include "ima/experiments.hpp"
#include "ima/mixing.hpp"

namespace ima::cli {

using Json = nlohmann::json;

/// Bad configuration: unknown key, wrong type, or a value outside the
/// owning operation's preconditions.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads keys from a JSON object and rejects any key left unread.
class ObjectReader {
 public:
  ObjectReader(const Json& object, std::string where);

  bool has(const std::string& key) const { return obj_.contains(key); }
  const Json& raw(const std::string& key);

  double number(const std::string& key, double fallback);
  int integer(const std::string& key, int fallback);
  std::uint64_t u64(const std::string& key, std::uint64_t fallback);
  std::string string(const std::string& key, const std::string& fallback);
  std::vector<int> int_list(const std::string& key, const std::vector<int>& fallback);
  std::vector<double> number_list(const std::string& key, const std::vector<double>& fallback);

  /// Throws ValidationError naming the first unknown key.
  void finish() const;

  [[noreturn]] void fail(const std::string& key, const std::string& what) const;

 private:
  const Json& obj_;
  std::string where_;
  std::set<std::string> seen_;
};

Json law_to_json(const UnivariateLaw& law);
UnivariateLaw law_from_json(const Json& j, const std::string& where);

Json sources_to_json(const FactorialDistribution& p);
FactorialDistribution sources_from_json(const Json& j, const std::string& where);

Json matrix_to_json(const Matrix& a);
Matrix matrix_from_json(const Json& j, const std::string& where);
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j, const std::string& where);

Json transform_to_json(const ElementTransform& t);
ElementTransform transform_from_json(const Json& j, const std::string& where);

std::string radial_name(RadialFamily family);
RadialFamily radial_from_name(const std::string& name, const std::string& where);

/// Validates a map description and fills in defaults. Families: linear,
/// grid, two_piece, conformal, mpa.
Json normalize_map_spec(const Json& j, const std::string& where);
/// Builds the map of a normalized description; sampled families draw from `seed`.
MapPtr build_map(const Json& spec, std::uint64_t seed);
/// Source law that matches the map's domain when none is given.
FactorialDistribution default_sources_for(const Json& spec);

}  // namespace ima::cli
