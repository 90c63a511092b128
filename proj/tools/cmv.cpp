#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cmv/cayley.hpp"
#include "cmv/dissection.hpp"
#include "cmv/errors.hpp"
#include "cmv/io.hpp"
#include "cmv/lattice.hpp"
#include "cmv/positivity.hpp"
#include "cmv/valuation.hpp"
#include "cmv/verify.hpp"

using namespace cmv;

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kViolation = 2;

struct Options {
  std::string input;
  std::string valuation = "dvol";
  std::string mode = "boxcell";
  std::uint64_t seed = 42;
  std::size_t trials = 200;
  std::size_t dim = 0;  // 0: command default
  std::vector<long> n;
  std::optional<long> max_dilate;
  std::vector<std::string> suites;
  std::string export_path;
  std::string from;
  std::optional<std::uint64_t> shuffle;
  bool json = false;
  bool timing = false;
};

struct Outcome {
  Json report;
  int code = kOk;
};

// ---- rendering ------------------------------------------------------------

bool is_flat(const Json& j) {
  return j.is_array() && std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
}

// Scalars, lists of scalars and lists of such lists print on one line.
bool is_scalar_array(const Json& j) {
  return j.is_array() &&
         std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive() || is_flat(x); });
}

std::string inline_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + inline_text(j[i]);
    return s + "]";
  }
  return j.dump();
}

void render(std::ostream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_primitive() || is_scalar_array(value)) {
        os << pad << key << ": " << inline_text(value) << "\n";
      } else if (value.empty()) {
        os << pad << key << ": (none)\n";
      } else {
        os << pad << key << ":\n";
        render(os, value, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& item : j) {
      if (item.is_primitive() || is_scalar_array(item)) {
        os << pad << "- " << inline_text(item) << "\n";
      } else {
        std::ostringstream inner;
        render(inner, item, indent + 2);
        std::string text = inner.str();
        text.replace(static_cast<std::size_t>(indent), 2, "- ");
        os << text;
      }
    }
  } else {
    os << pad << inline_text(j) << "\n";
  }
}

// ---- helpers --------------------------------------------------------------

Valuation valuation_named(const std::string& name, bool allow_fixture) {
  if (allow_fixture && name == "vertex-count") return faulty_vertex_count();
  auto phi = builtin_valuation(name);
  if (!phi) throw InputError("unknown valuation '" + name + "' (expected dvol, vol, euler or interior)");
  return *phi;
}

Instance require_instance(const Options& o) {
  if (o.input.empty()) throw InputError("--input is required");
  return load_instance(o.input);
}

Json header(const std::string& command, const Options& o, const Instance* inst) {
  Json r;
  r["command"] = command;
  if (inst) {
    r["input"] = o.input;
    r["digest"] = digest(*inst);
  }
  r["seed"] = o.seed;
  return r;
}

std::string subset_label(std::uint32_t mask, const std::vector<std::string>& names) {
  std::string s = "{";
  bool first = true;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!(mask >> i & 1)) continue;
    s += (first ? "" : ", ") + names[i];
    first = false;
  }
  return s + "}";
}

Json witness_json(const PositivityDecision& dec, const std::vector<std::string>& names) {
  Json w = Json::array();
  for (const auto& s : dec.witness) {
    Json dir = Json::array();
    for (const auto& x : s.direction) dir.push_back(x.str());
    w.push_back(Json{{"polytope", names[s.owner]}, {"start", to_json(s.start)}, {"end", to_json(s.end)},
                     {"direction", dir}});
  }
  return w;
}

Json positivity_json(const PositivityDecision& dec, const std::vector<std::string>& names) {
  Json j{{"positive", dec.positive}, {"witness", witness_json(dec, names)}};
  if (!dec.note.empty()) j["note"] = dec.note;
  return j;
}

bool all_integral(const std::vector<Polytope>& ps) {
  return std::all_of(ps.begin(), ps.end(), [](const Polytope& p) { return p.has_integral_vertices(); });
}

std::string vanishing_note(std::size_t r, std::size_t d) {
  return std::to_string(r) + " polytopes in dimension " + std::to_string(d) +
         ": combinatorial mixed valuations of more than d arguments vanish";
}

// ---- commands -------------------------------------------------------------

Outcome cmd_cm(const Options& o) {
  const auto inst = require_instance(o);
  const auto phi = valuation_named(o.valuation, false);
  const auto ps = inst.family();
  const auto names = inst.names();
  Outcome out{header("cm", o, &inst)};
  out.report["valuation"] = phi.name();
  const auto table = cm_table(phi, ps, inst.dim);
  Json terms = Json::array();
  for (const auto& t : table.terms) {
    terms.push_back(Json{{"subset", subset_label(t.subset, names)}, {"sign", t.sign}, {"value", to_json(t.value)}});
  }
  Json results;
  results["value"] = to_json(table.value);
  results["terms"] = terms;
  if (ps.size() > inst.dim) results["note"] = vanishing_note(ps.size(), inst.dim);
  if (phi.name() == "dvol" && all_integral(ps)) {
    const auto dec = decide_positive(ps, inst.dim);
    results["positivity"] = positivity_json(dec, names);
    if (dec.positive != (table.value > 0)) out.code = kViolation;
  }
  out.report["results"] = results;
  return out;
}

Outcome cmd_ehrhart(const Options& o) {
  const auto inst = require_instance(o);
  const auto phi = valuation_named(o.valuation, false);
  const auto ps = inst.family();
  if (ps.empty()) throw InputError("ehrhart needs at least one polytope");
  Outcome out{header("ehrhart", o, &inst)};
  out.report["valuation"] = phi.name();
  const auto fit = fit_mixed_polynomial(phi, ps, inst.dim);
  Json coeffs = Json::array();
  for (const auto& [alpha, c] : fit.polynomial.coefficients) {
    if (c != 0) coeffs.push_back(Json{{"alpha", alpha}, {"value", to_json(c)}});
  }
  Json results;
  results["degree_bound"] = fit.degree_bound;
  results["coefficients"] = coeffs;
  results["grid_reproduced"] = fit.grid_reproduced;
  results["probe"] = Json{{"n", fit.probe},
                          {"value", to_json(fit.probe_value)},
                          {"prediction", to_json(fit.probe_prediction)},
                          {"matches", fit.probe_matches}};
  bool ok = fit.ok();
  if (ps.size() == 1) {
    const auto h = fit_h_star_vector(phi, ps[0]);
    Json entries = Json::array();
    for (const auto& x : h.vector.entries) entries.push_back(to_json(x));
    results["h_vector"] = entries;
    results["h_vector_check"] = Json{{"value", to_json(h.check_value)}, {"prediction", to_json(h.check_prediction)}};
    ok = ok && h.ok();
  }
  if (o.max_dilate) {
    if (*o.max_dilate < 0) throw InputError("--max-dilate must be nonnegative");
    Json rows = Json::array();
    for (long k = 0; k <= *o.max_dilate; ++k) {
      const std::vector<long> n(ps.size(), k);
      const Rational value = evaluate_dilated_sum(phi, ps, n, inst.dim);
      const Rational predicted = fit.polynomial.evaluate(n);
      ok = ok && value == predicted;
      rows.push_back(Json{{"n", k}, {"value", to_json(value)}, {"prediction", to_json(predicted)}});
    }
    results["dilates"] = rows;
  }
  out.report["results"] = results;
  if (!ok) out.code = kViolation;
  return out;
}

Outcome cmd_mixed_volume(const Options& o) {
  const auto inst = require_instance(o);
  const auto ps = inst.family();
  if (ps.size() != inst.dim) {
    throw InputError("mixed-volume needs exactly " + std::to_string(inst.dim) + " polytopes, got " +
                     std::to_string(ps.size()));
  }
  Outcome out{header("mixed-volume", o, &inst)};
  const Rational scaled_mv = cm(volume(), ps, inst.dim);
  Integer fact = 1;
  for (std::size_t k = 2; k <= inst.dim; ++k) fact *= static_cast<long>(k);
  const Rational mv = scaled_mv / Rational(fact);
  Json results;
  results["mixed_volume"] = to_json(mv);
  results["cm_vol"] = to_json(scaled_mv);
  if (inst.lattice == LatticeTag::Z && all_integral(ps)) {
    const Rational discrete = cm(discrete_volume(), ps, inst.dim);
    results["cm_dvol"] = to_json(discrete);
    results["agrees"] = discrete == scaled_mv;
    if (discrete != scaled_mv) out.code = kViolation;
  }
  out.report["results"] = results;
  return out;
}

Outcome cmd_positivity(const Options& o) {
  const auto inst = require_instance(o);
  const auto ps = inst.family();
  const auto names = inst.names();
  if (!all_integral(ps)) throw InputError("positivity needs lattice polytopes");
  Outcome out{header("positivity", o, &inst)};
  const auto dec = decide_positive(ps, inst.dim);
  const Rational value = cm(discrete_volume(), ps, inst.dim);
  const Integer bound = cylinder_lower_bound(ps);
  Json results = positivity_json(dec, names);
  results["cm_dvol"] = to_json(value);
  results["cylinder_lower_bound"] = bound.str();
  const bool consistent = dec.positive == (value > 0) && value >= Rational(bound) && (!dec.positive || value >= 1);
  results["consistent"] = consistent;
  out.report["results"] = results;
  if (!consistent) out.code = kViolation;
  return out;
}

Json certificate_json(const Dissection& d, bool with_cells) {
  Json j;
  j["rule"] = d.rule ? d.rule->describe() : "none";
  const auto cc = count_certificate(d);
  const auto vc = volume_certificate(d);
  const auto pc = partition_check(d);
  j["count"] = Json{{"total", cc.total}, {"expected", cc.expected}, {"ok", cc.ok()}};
  j["volume"] = Json{{"total", to_json(vc.total)}, {"expected", to_json(vc.expected)}, {"ok", vc.ok()}};
  j["partition"] = Json{{"points", pc.points},
                        {"uncovered", pc.uncovered},
                        {"multiply_covered", pc.multiply_covered},
                        {"stray", pc.stray},
                        {"ok", pc.ok()}};
  if (with_cells) {
    Json cells = Json::array();
    for (std::size_t i = 0; i < d.cells.size(); ++i) {
      const auto& c = d.cells[i];
      cells.push_back(Json{{"vertices", to_json(c.cell.vertices())},
                           {"cylinder_order", c.cylinder_order()},
                           {"removed", c.removed},
                           {"count", cc.cell_counts[i]}});
    }
    j["cells"] = cells;
  }
  return j;
}

bool certificates_ok(const Json& c) {
  return c["count"]["ok"].get<bool>() && c["volume"]["ok"].get<bool>() && c["partition"]["ok"].get<bool>();
}

void write_export(const Options& o, const Dissection& d) {
  if (o.export_path.empty()) return;
  std::ofstream f(o.export_path);
  if (!f) throw InputError("cannot write '" + o.export_path + "'");
  f << dissection_to_json(d).dump(2) << "\n";
}

Dissection closed_by_interior_point(Dissection d, std::uint64_t seed) {
  assign_half_open(d, {HalfOpenRule::Kind::point, generic_interior_point(d, seed)});
  return d;
}

Outcome cmd_dissect(const Options& o) {
  if (!o.from.empty()) {
    const auto doc = read_json_file(o.from);
    const auto d = dissection_from_json(doc);
    Outcome out{header("dissect", o, nullptr)};
    out.report["from"] = o.from;
    out.report["digest"] = fnv1a_hex(dissection_to_json(d).dump());
    out.report["cells"] = d.cells.size();
    if (!d.rule) throw InputError("the imported dissection has no half-open rule");
    out.report["certificates"] = certificate_json(d, true);
    if (!certificates_ok(out.report["certificates"])) out.code = kViolation;
    return out;
  }

  if (o.mode == "boxcell") {
    const std::size_t d = o.dim ? o.dim : 2;
    const long n = o.n.empty() ? 2 : o.n[0];
    if (n < 1 || o.n.size() > 1) throw InputError("boxcell needs a single --n >= 1");
    Outcome out{header("dissect", o, nullptr)};
    out.report["mode"] = "boxcell";
    out.report["dim"] = d;
    out.report["n"] = n;
    const auto dis = boxcell_dissection(d, n);
    out.report["cells"] = dis.cells.size();
    Json census = Json::object();
    for (const auto& c : dis.cells) {
      const std::string k = std::to_string(c.cylinder_order());
      census[k] = census.value(k, 0) + 1;
    }
    out.report["census"] = census;
    const auto closed = closed_by_interior_point(dis, o.seed);
    out.report["certificates"] = certificate_json(closed, true);
    out.report["direction_certificates"] = certificate_json(dis, false);
    if (!certificates_ok(out.report["certificates"]) || !certificates_ok(out.report["direction_certificates"])) {
      out.code = kViolation;
    }
    write_export(o, closed);
    return out;
  }

  const auto inst = require_instance(o);
  const auto ps = inst.family();
  Outcome out{header("dissect", o, &inst)};
  out.report["mode"] = o.mode;
  if (o.mode == "staircase") {
    if (ps.size() != 2) throw InputError("staircase needs exactly two polytopes");
    if (!ps[0].is_simplex() || !ps[1].is_simplex()) throw InputError("staircase needs two simplices");
    if (!MixedCell::from_summands(ps, inst.dim).exact()) throw InputError("staircase needs an exact sum");
    const auto dis = closed_by_interior_point(staircase_dissection(ps[0], ps[1]), o.seed);
    out.report["cells"] = dis.cells.size();
    out.report["certificates"] = certificate_json(dis, true);
    if (!certificates_ok(out.report["certificates"])) out.code = kViolation;
    write_export(o, dis);
    return out;
  }
  if (o.mode != "cayley") throw InputError("unknown mode '" + o.mode + "' (expected boxcell, staircase or cayley)");
  if (ps.empty()) throw InputError("cayley needs at least one polytope");
  if (!inst.pairs.empty()) {
    std::vector<Polytope> inner, outer;
    for (const auto& [a, b] : inst.pairs) {
      inner.push_back(ps[a]);
      outer.push_back(ps[b]);
    }
    std::vector<long> n = o.n.empty() ? std::vector<long>(inner.size(), 1) : o.n;
    if (n.size() != inner.size()) throw InputError("--n needs one entry per pair");
    const auto md = mixed_difference_dissection(inner, outer);
    const auto c = difference_counts(md, n, o.seed);
    out.report["n"] = n;
    out.report["cells"] = md.dissection.cells.size();
    out.report["inner_cells"] = md.inner_cells;
    out.report["certificates"] = Json{
        {"point", to_json(c.q)},
        {"inner", Json{{"total", c.inner_total}, {"expected", c.inner_expected}}},
        {"difference", Json{{"total", c.difference_total}, {"expected", c.difference_expected}}},
        {"ok", c.ok()}};
    if (!c.ok()) out.code = kViolation;
    write_export(o, md.dissection);
    return out;
  }
  std::vector<long> n = o.n.empty() ? std::vector<long>(ps.size(), 1) : o.n;
  if (n.size() != ps.size()) throw InputError("--n needs one entry per polytope");
  if (std::any_of(n.begin(), n.end(), [](long x) { return x < 0; })) throw InputError("--n entries must be >= 0");
  const auto md = fine_mixed_dissection(ps, o.shuffle);
  const auto counts = dilated_cell_counts(md, n, o.seed);
  out.report["n"] = n;
  out.report["cells"] = md.dissection.cells.size();
  Json mixed = Json::array();
  for (const auto& c : md.dissection.cells) {
    Json summands = Json::array();
    for (const auto& s : c.summands) summands.push_back(to_json(s.vertices()));
    mixed.push_back(Json{{"summands", summands}, {"cylinder_order", c.cylinder_order()}});
  }
  out.report["mixed_cells"] = mixed;
  out.report["certificates"] = certificate_json(counts.dissection, true);
  if (!certificates_ok(out.report["certificates"])) out.code = kViolation;
  write_export(o, counts.dissection);
  return out;
}

Outcome cmd_verify(const Options& o) {
  SuiteOptions so;
  so.dim = o.dim ? o.dim : 3;
  so.trials = o.trials;
  so.seed = o.seed;
  std::vector<std::string> names = o.suites.empty() ? std::vector<std::string>{"all"} : o.suites;
  for (const auto& n : names) {
    if (n != "all" && !canonical_suite_name(n)) {
      std::string known;
      for (const auto& k : suite_names()) known += (known.empty() ? "" : ", ") + k;
      throw InputError("unknown suite '" + n + "'; known suites: " + known);
    }
  }
  Outcome out{header("verify", o, nullptr)};
  out.report["dim"] = so.dim;
  out.report["trials"] = so.trials;
  if (!o.valuation.empty()) {
    so.valuation = valuation_named(o.valuation, true);
    out.report["valuation"] = so.valuation->name();
  }
  Json suites = Json::array();
  bool all = true;
  for (const auto& r : run_suites(names, so)) {
    Json s{{"suite", r.name}, {"passed", r.passed}, {"checks", r.checks}, {"failures", r.failures}};
    if (!r.passed) s["counterexample"] = r.counterexample;
    if (!r.note.empty()) s["note"] = r.note;
    suites.push_back(s);
    all = all && r.passed;
  }
  out.report["suites"] = suites;
  out.report["passed"] = all;
  if (!all) out.code = kViolation;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact combinatorial mixed valuations of lattice polytopes"};
  app.require_subcommand(1);
  Options o;
  std::string valuation_flag;

  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", o.json, "Print the report as JSON");
    sub->add_flag("--timing", o.timing, "Add the elapsed time to the report");
    sub->add_option("--seed", o.seed, "Seed for all randomness")->capture_default_str();
  };
  auto add_input = [&](CLI::App* sub) { sub->add_option("--input", o.input, "Instance JSON file"); };
  auto add_valuation = [&](CLI::App* sub) {
    sub->add_option("--valuation", valuation_flag, "dvol | vol | euler | interior");
  };

  auto* cm_cmd = app.add_subcommand("cm", "Combinatorial mixed valuation with its inclusion-exclusion table");
  add_common(cm_cmd);
  add_input(cm_cmd);
  add_valuation(cm_cmd);

  auto* ehr = app.add_subcommand("ehrhart", "Binomial-basis coefficients and h-vector");
  add_common(ehr);
  add_input(ehr);
  add_valuation(ehr);
  ehr->add_option("--max-dilate", o.max_dilate, "Also compare phi(n P) with the polynomial for n <= N");

  auto* mv = app.add_subcommand("mixed-volume", "Mixed volume of d polytopes in R^d");
  add_common(mv);
  add_input(mv);

  auto* pos = app.add_subcommand("positivity", "Decide positivity of the discrete mixed volume");
  add_common(pos);
  add_input(pos);

  auto* dis = app.add_subcommand("dissect", "Build a dissection and its certificates");
  add_common(dis);
  add_input(dis);
  dis->add_option("--mode", o.mode, "boxcell | staircase | cayley")->capture_default_str();
  dis->add_option("--dim", o.dim, "Dimension for boxcell (default 2)");
  dis->add_option("--n", o.n, "Dilation factor (boxcell) or one multiplicity per polytope (cayley)")->delimiter(',');
  dis->add_option("--shuffle", o.shuffle, "Seed for shuffling the placing order (cayley)");
  dis->add_option("--export", o.export_path, "Write the dissection as JSON");
  dis->add_option("--from", o.from, "Re-certify an exported dissection");

  auto* ver = app.add_subcommand("verify", "Run the seeded property suites");
  add_common(ver);
  ver->add_option("--suite", o.suites, "Suite names (default all)")->delimiter(',');
  ver->add_option("--dim", o.dim, "Largest sampled dimension (default 3)");
  ver->add_option("--trials", o.trials, "Trials per suite")->capture_default_str();
  ver->add_option("--valuation", valuation_flag,
                  "Run the valuation suites on this valuation; vertex-count is a faulty fixture");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    if (*cm_cmd || *ehr || *dis) o.valuation = valuation_flag.empty() ? "dvol" : valuation_flag;
    if (*ver) o.valuation = valuation_flag;
    if (*cm_cmd) out = cmd_cm(o);
    if (*ehr) out = cmd_ehrhart(o);
    if (*mv) out = cmd_mixed_volume(o);
    if (*pos) out = cmd_positivity(o);
    if (*dis) out = cmd_dissect(o);
    if (*ver) out = cmd_verify(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  if (o.timing) {
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    out.report["elapsed_seconds"] = elapsed.count();
  }
  if (o.json) {
    std::cout << out.report.dump(2) << "\n";
  } else {
    render(std::cout, out.report, 0);
  }
  return out.code;
}
