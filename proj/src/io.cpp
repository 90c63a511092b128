#include "cmv/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>

#include "cmv/errors.hpp"

namespace cmv {

std::vector<Polytope> Instance::family() const {
  std::vector<Polytope> out;
  for (const auto& np : polytopes) out.push_back(np.polytope);
  return out;
}

std::vector<std::string> Instance::names() const {
  std::vector<std::string> out;
  for (const auto& np : polytopes) out.push_back(np.name);
  return out;
}

Json to_json(const Rational& x) { return to_string(x); }

Json to_json(const Point& p) {
  Json a = Json::array();
  for (const auto& x : p) a.push_back(to_json(x));
  return a;
}

Json to_json(const std::vector<Point>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(to_json(p));
  return a;
}

Rational rational_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
  }
  throw InputError("coordinates must be integers or strings \"p/q\", got " + j.dump());
}

Point point_from_json(const nlohmann::json& j, std::size_t dim) {
  if (!j.is_array()) throw InputError("a point must be an array, got " + j.dump());
  if (j.size() != dim) {
    throw InputError("point " + j.dump() + " has " + std::to_string(j.size()) +
                     " coordinates, expected " + std::to_string(dim));
  }
  Point p;
  for (const auto& x : j) p.push_back(rational_from_json(x));
  return p;
}

namespace {

std::vector<Point> points_from_json(const nlohmann::json& j, std::size_t dim,
                                    const std::string& what) {
  if (!j.is_array() || j.empty()) throw InputError(what + " needs a nonempty vertex list");
  std::vector<Point> pts;
  for (const auto& v : j) pts.push_back(point_from_json(v, dim));
  return pts;
}

Polytope hull_for(const std::vector<Point>& pts, LatticeTag tag, const std::string& name) {
  try {
    return convex_hull(pts, tag);
  } catch (const LatticeError& e) {
    throw InputError("polytope '" + name + "': " + e.what());
  }
}

}  // namespace

Instance parse_instance(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("an instance must be a JSON object");
  Instance inst;
  const std::string lattice = j.value("lattice", std::string("Z"));
  if (lattice == "Z") {
    inst.lattice = LatticeTag::Z;
  } else if (lattice == "Q") {
    inst.lattice = LatticeTag::Q;
  } else {
    throw InputError("lattice must be \"Z\" or \"Q\", got \"" + lattice + "\"");
  }
  if (!j.contains("dim") || !j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0) {
    throw InputError("\"dim\" must be a positive integer");
  }
  inst.dim = j["dim"].get<std::size_t>();
  if (!j.contains("polytopes")) throw InputError("missing \"polytopes\"");
  const auto& ps = j["polytopes"];
  auto add = [&](const std::string& name, const nlohmann::json& verts) {
    for (const auto& np : inst.polytopes) {
      if (np.name == name) throw InputError("duplicate polytope name '" + name + "'");
    }
    inst.polytopes.push_back(
        {name, hull_for(points_from_json(verts, inst.dim, "polytope '" + name + "'"), inst.lattice,
                        name)});
  };
  if (ps.is_object()) {
    for (const auto& [name, verts] : ps.items()) add(name, verts);
  } else if (ps.is_array()) {
    std::size_t k = 0;
    for (const auto& entry : ps) {
      ++k;
      if (entry.is_array()) {
        add("P" + std::to_string(k), entry);
      } else if (entry.is_object() && entry.contains("vertices")) {
        add(entry.value("name", "P" + std::to_string(k)), entry["vertices"]);
      } else {
        throw InputError("each polytope needs a \"vertices\" list");
      }
    }
  } else {
    throw InputError("\"polytopes\" must be an object or an array");
  }

  if (j.contains("pairs")) {
    auto index_of = [&](const nlohmann::json& n) {
      if (!n.is_string()) throw InputError("pair entries must be polytope names");
      for (std::size_t i = 0; i < inst.polytopes.size(); ++i) {
        if (inst.polytopes[i].name == n.get<std::string>()) return i;
      }
      throw InputError("unknown polytope '" + n.get<std::string>() + "' in pairs");
    };
    for (const auto& pr : j["pairs"]) {
      if (!pr.is_array() || pr.size() != 2) throw InputError("each pair must be [inner, outer]");
      inst.pairs.emplace_back(index_of(pr[0]), index_of(pr[1]));
    }
  }
  return inst;
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

Instance load_instance(const std::string& path) { return parse_instance(read_json_file(path)); }

Json to_json(const Instance& inst) {
  Json j;
  j["lattice"] = inst.lattice == LatticeTag::Z ? "Z" : "Q";
  j["dim"] = inst.dim;
  Json ps = Json::array();
  for (const auto& np : inst.polytopes) {
    ps.push_back(Json{{"name", np.name}, {"vertices", to_json(np.polytope.vertices())}});
  }
  j["polytopes"] = ps;
  Json pairs = Json::array();
  for (const auto& [a, b] : inst.pairs) {
    pairs.push_back(Json::array({inst.polytopes[a].name, inst.polytopes[b].name}));
  }
  j["pairs"] = pairs;
  return j;
}

std::string digest(const Instance& inst) { return fnv1a_hex(to_json(inst).dump()); }

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json dissection_to_json(const Dissection& d) {
  Json j;
  j["format"] = "cmv-dissection";
  j["version"] = 1;
  j["ambient_dim"] = d.target.ambient_dim();
  j["target"] = to_json(d.target.vertices());
  if (d.rule) {
    j["rule"] = Json{{"kind", d.rule->kind == HalfOpenRule::Kind::point ? "point" : "direction"},
                     {"vector", to_json(d.rule->vector)}};
  } else {
    j["rule"] = nullptr;
  }
  Json cells = Json::array();
  for (const auto& c : d.cells) {
    Json summands = Json::array();
    for (const auto& s : c.summands) summands.push_back(to_json(s.vertices()));
    cells.push_back(Json{{"vertices", to_json(c.cell.vertices())},
                         {"summands", summands},
                         {"removed", c.removed}});
  }
  j["cells"] = cells;
  return j;
}

Dissection dissection_from_json(const nlohmann::json& j) {
  if (!j.is_object() || j.value("format", std::string()) != "cmv-dissection") {
    throw InputError("not a cmv-dissection document");
  }
  if (!j.contains("ambient_dim") || !j["ambient_dim"].is_number_unsigned()) {
    throw InputError("missing \"ambient_dim\"");
  }
  const auto d = j["ambient_dim"].get<std::size_t>();
  Dissection out;
  out.target = convex_hull(points_from_json(j.at("target"), d, "target"));
  if (j.contains("rule") && !j["rule"].is_null()) {
    const auto& r = j["rule"];
    const std::string kind = r.value("kind", std::string());
    if (kind != "point" && kind != "direction") throw InputError("rule kind must be point or direction");
    out.rule = HalfOpenRule{kind == "point" ? HalfOpenRule::Kind::point : HalfOpenRule::Kind::direction,
                            point_from_json(r.at("vector"), d)};
  }
  if (!j.contains("cells") || !j["cells"].is_array()) throw InputError("missing \"cells\"");
  std::size_t k = 0;
  for (const auto& jc : j["cells"]) {
    ++k;
    const std::string label = "cell " + std::to_string(k);
    std::vector<Polytope> summands;
    for (const auto& js : jc.at("summands")) {
      summands.push_back(convex_hull(points_from_json(js, d, label + " summand")));
    }
    auto cell = MixedCell::from_summands(std::move(summands), d);
    if (cell.cell.vertices() != points_from_json(jc.at("vertices"), d, label)) {
      throw InputError(label + ": vertices do not match the sum of its summands");
    }
    const auto& removed = jc.at("removed");
    if (!removed.is_array()) throw InputError(label + ": \"removed\" must be an array");
    for (const auto& r : removed) {
      if (!r.is_number_unsigned() || r.get<std::size_t>() >= cell.cell.facets().size()) {
        throw InputError(label + ": removed facet index out of range");
      }
      cell.removed.push_back(r.get<std::size_t>());
    }
    if (out.rule && out.rule->apply(cell.cell).removed != cell.removed) {
      throw InputError(label + ": removed facets disagree with the rule");
    }
    out.cells.push_back(std::move(cell));
  }
  return out;
}

}  // namespace cmv
