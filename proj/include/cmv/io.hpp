#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cmv/dissection.hpp"
#include "cmv/polytope.hpp"

namespace cmv {

/// Malformed or inconsistent input files.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

struct NamedPolytope {
  std::string name;
  Polytope polytope;
};

/// {"lattice": "Z"|"Q", "dim": d, "polytopes": {name: [[x, ...], ...]} or
/// [{"name": ..., "vertices": [...]}], "pairs": [[inner, outer], ...]}.
/// Coordinates are integers or strings "p/q".
struct Instance {
  LatticeTag lattice = LatticeTag::Z;
  std::size_t dim = 0;
  std::vector<NamedPolytope> polytopes;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // indices into polytopes

  std::vector<Polytope> family() const;
  std::vector<std::string> names() const;
};

Instance parse_instance(const nlohmann::json& j);
Instance load_instance(const std::string& path);
nlohmann::json read_json_file(const std::string& path);

Json to_json(const Instance& inst);
/// FNV-1a 64 as 16 hex digits.
std::string fnv1a_hex(std::string_view text);
/// fnv1a_hex of the canonical form of the instance.
std::string digest(const Instance& inst);

/// "p/q", or "p" for integers.
Json to_json(const Rational& x);
Json to_json(const Point& p);
Json to_json(const std::vector<Point>& ps);
Rational rational_from_json(const nlohmann::json& j);
Point point_from_json(const nlohmann::json& j, std::size_t dim);

/// Cells with their vertex lists, summand decomposition and removed facets.
Json dissection_to_json(const Dissection& d);
/// Rebuilds the polytopes from the vertex data and checks every cell against
/// its summands and the stored removed sets against the rule.
Dissection dissection_from_json(const nlohmann::json& j);

}  // namespace cmv
