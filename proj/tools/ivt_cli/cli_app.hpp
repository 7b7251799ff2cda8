#pragma once

// Command-line front end. run_cli() parses arguments, dispatches to the
// engine and renders a JSON or CSV report; main() is a thin wrapper so tests
// can drive the same code in-process.
//
// JSON layout: {"config": {...}, "result": {...}, "findings": [...]}. Every
// integer is written as a decimal string, sets as sorted arrays.
//
// Exit codes: 0 success, 1 a checked property failed (only with --assert, or
// an orbit that exhausted its step budget), 2 invalid input.

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <system_error>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ivt/ivt.hpp"

namespace ivt::cli {

using Json = nlohmann::ordered_json;

inline constexpr int exit_ok = 0;
inline constexpr int exit_property_failed = 1;
inline constexpr int exit_invalid_input = 2;

/// Raw option values as given on the command line; validated lazily so that
/// each command only checks what it uses.
struct RunConfig {
  std::string command;
  std::string radix;
  std::string rule;
  std::string semantics = "trimmed";
  std::string bound = "10000";
  std::string max_steps = "10000";
  std::string format = "json";
  std::string out;
  bool assert_result = false;

  // command arguments
  std::string x;
  std::string n;
  std::string set;
  std::string j1;
  std::string j2;
  std::string width;
  std::string sigma;
  std::string outer;
  std::string inner;
  std::string against;
  std::string x_bar;
  std::string radius;
  std::string threads = "0";
};

/// A rendered command result. csv_header/csv_rows use a fixed column order
/// per command.
struct Report {
  Json result = Json::object();
  std::vector<std::string> findings;
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  std::optional<bool> verdict;  // the property --assert checks, if any
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string str(const Value& v) { return v.str(); }
template <class T>
  requires std::is_integral_v<T>
std::string str(T v) {
  return std::to_string(v);
}

inline Json values_json(const std::vector<Value>& vs) {
  Json arr = Json::array();
  for (const auto& v : vs) arr.push_back(str(v));
  return arr;
}

inline Json digits_json(std::span<const Digit> ds) {
  Json arr = Json::array();
  for (Digit d : ds) arr.push_back(str(int{d}));
  return arr;
}

inline std::string digits_text(std::span<const Digit> ds) {
  std::string s;
  for (Digit d : ds) {
    if (!s.empty()) s += ' ';
    s += std::to_string(int{d});
  }
  return s;
}

inline std::string join_values(const std::vector<Value>& vs) {
  std::string s;
  for (const auto& v : vs) {
    if (!s.empty()) s += ' ';
    s += str(v);
  }
  return s;
}

inline Json optional_json(const std::optional<Value>& v) {
  return v ? Json(str(*v)) : Json(nullptr);
}

inline std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec == std::errc::invalid_argument || ptr != end) {
    throw InputError("invalid " + what + ": '" + text + "'");
  }
  if (ec == std::errc::result_out_of_range) throw InputError(what + " out of range: " + text);
  return v;
}

inline std::string require(const std::string& value, const std::string& flag) {
  if (value.empty()) throw InputError("missing required option " + flag);
  return value;
}

inline Value parse_natural(const std::string& text, const std::string& flag) {
  try {
    return parse_value(require(text, flag));
  } catch (const Error&) {
    throw InputError("invalid value for " + flag + ": '" + text + "'");
  }
}

inline std::vector<Value> parse_list(const std::string& text, const std::string& flag) {
  std::vector<Value> out;
  std::stringstream ss(require(text, flag));
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_natural(item, flag));
  return out;
}

inline std::vector<Value> parse_set_unsorted(const std::string& text) { return parse_list(text, "list"); }

inline std::vector<Value> parse_set(const std::string& text) {
  std::vector<Value> out = parse_list(text, "--set");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Parsed, validated view of a RunConfig.
class Context {
 public:
  explicit Context(const RunConfig& cfg) : cfg_(cfg) {}

  const RunConfig& config() const { return cfg_; }

  Radix radix() const {
    const auto p = parse_u64(require(cfg_.radix, "--radix"), "radix");
    if (p < Radix::min_value || p > Radix::max_value) {
      throw InputError("radix must lie in [2, 16], got " + cfg_.radix);
    }
    return Radix(static_cast<unsigned>(p));
  }

  RuleIndex rule_index(const std::string& text, const std::string& flag) const {
    const Radix p = radix();
    RuleIndex j = 0;
    try {
      j = parse_u64(require(text, flag), "rule index");
    } catch (const InputError& e) {
      if (std::string(e.what()).find("out of range") != std::string::npos) {
        throw InputError("rule index out of range: " + text);
      }
      throw;
    }
    if (!is_valid_rule(p, j)) {
      throw InputError("rule index out of range: " + text + " >= " + str(p.value()) + "^" +
                       str(p.value()));
    }
    return j;
  }

  RuleIndex rule() const { return rule_index(cfg_.rule, "--rule"); }

  Semantics semantics() const {
    const std::string& s = cfg_.semantics;
    if (s == "trimmed") return Trimmed{};
    if (s.rfind("fixed:", 0) == 0) {
      const auto k = parse_u64(s.substr(6), "fixed width");
      if (k == 0) throw InputError("fixed width must be positive");
      return FixedWidth{k};
    }
    throw InputError("semantics must be 'trimmed' or 'fixed:K', got '" + s + "'");
  }

  IvtSystem system() const { return IvtSystem(radix(), rule(), semantics()); }

  Value bound() const { return parse_natural(cfg_.bound, "--bound"); }
  std::uint64_t max_steps() const { return parse_u64(cfg_.max_steps, "max steps"); }
  Value value(const std::string& text, const std::string& flag) const {
    return parse_natural(text, flag);
  }
  std::uint64_t count(const std::string& text, const std::string& flag) const {
    return parse_u64(require(text, flag), flag);
  }

  std::size_t width() const {
    if (!cfg_.width.empty()) {
      const auto k = parse_u64(cfg_.width, "width");
      if (k == 0) throw InputError("width must be positive");
      return k;
    }
    if (auto fw = std::get_if<FixedWidth>(&semantics_cache())) return fw->width;
    throw InputError("missing required option --width");
  }

 private:
  const Semantics& semantics_cache() const {
    if (!sem_) sem_ = semantics();
    return *sem_;
  }

  const RunConfig& cfg_;
  mutable std::optional<Semantics> sem_;
};

inline Json orbit_json(const OrbitRecord& rec) {
  return Json{{"start", str(rec.start)},
              {"transient", values_json(rec.transient)},
              {"cycle", values_json(rec.cycle)},
              {"visited", values_json(rec.visited())},
              {"steps_to_cycle", str(rec.steps_to_cycle())},
              {"cycle_length", str(rec.cycle_length())}};
}

inline std::string yes_no(bool b) { return b ? "true" : "false"; }

// --- commands ---------------------------------------------------------------

inline Report cmd_apply(const Context& ctx) {
  const IvtSystem sys = ctx.system();
  const Value x = ctx.value(ctx.config().x, "--x");
  const Value y = apply(sys, x);
  Report r;
  r.result = Json{{"x", str(x)}, {"value", str(y)}};
  r.csv_header = {"x", "value"};
  r.csv_rows = {{str(x), str(y)}};
  return r;
}

inline Report cmd_iterate(const Context& ctx) {
  const IvtSystem sys = ctx.system();
  const Value x = ctx.value(ctx.config().x, "--x");
  const auto n = ctx.count(ctx.config().n, "--n");
  const Value y = iterate(sys, x, n);
  Report r;
  r.result = Json{{"x", str(x)}, {"n", str(n)}, {"value", str(y)}};
  if (sys.is_fixed_width()) {
    const Value via = iterate_via_decomposition(sys, x, n);
    r.result["value_via_word_map"] = str(via);
    if (via != y) r.findings.push_back("word-map decomposition disagrees with direct iteration");
  }
  r.csv_header = {"x", "n", "value"};
  r.csv_rows = {{str(x), str(n), str(y)}};
  return r;
}

inline Report cmd_orbit(const Context& ctx) {
  const IvtSystem sys = ctx.system();
  const Value x = ctx.value(ctx.config().x, "--x");
  const OrbitRecord rec = orbit(sys, x, ctx.max_steps());
  Report r;
  r.result = orbit_json(rec);
  r.csv_header = {"step", "value", "phase"};
  std::size_t step = 0;
  for (const auto& v : rec.transient) r.csv_rows.push_back({str(step++), str(v), "transient"});
  for (const auto& v : rec.cycle) r.csv_rows.push_back({str(step++), str(v), "cycle"});
  if (rec.cycle_length() == 1) {
    r.findings.push_back("orbit ends in the fixed point " + str(rec.cycle.front()));
  } else {
    r.findings.push_back("orbit ends in a cycle of length " + str(rec.cycle_length()));
  }
  return r;
}

inline Report cmd_fixed_points(const Context& ctx) {
  const IvtSystem sys = ctx.system();
  const Value bound = ctx.bound();
  const auto pts = fixed_points(sys, bound);
  Report r;
  r.result = Json{{"fixed_digits", digits_json(sys.table().fixed_digits())},
                  {"count", str(pts.size())},
                  {"points", values_json(pts)}};
  r.csv_header = {"value"};
  for (const auto& v : pts) r.csv_rows.push_back({str(v)});
  return r;
}

inline Report cmd_periodic_points(const Context& ctx) {
  const Radix p = ctx.radix();
  const RuleIndex j = ctx.rule();
  const std::size_t k = ctx.width();
  const auto pts = periodic_points(p, j, k);
  Report r;
  Json arr = Json::array();
  for (const auto& pt : pts) {
    arr.push_back(Json{{"value", str(pt.value)}, {"period", str(pt.period)}});
    r.csv_rows.push_back({str(pt.value), str(pt.period)});
  }
  r.result = Json{{"width", str(k)}, {"count", str(pts.size())}, {"points", arr}};
  r.csv_header = {"value", "period"};
  return r;
}

inline Report cmd_census(const Context& ctx) {
  const Radix p = ctx.radix();
  if (!ctx.config().rule.empty() && ctx.config().rule != "all") {
    throw InputError("census runs over every rule; use --rule all or omit it");
  }
  if (ctx.semantics() != Semantics{Trimmed{}}) {
    throw InputError("census requires trimmed semantics");
  }
  const Value bound = ctx.bound();
  const auto threads = ctx.count(ctx.config().threads, "--threads");
  const CensusReport rep = census(p, bound, ctx.max_steps(), static_cast<unsigned>(threads));

  Report r;
  Json rules = Json::array();
  r.csv_header = {"rule", "table"};
  for (auto pred : all_predicates) r.csv_header.emplace_back(to_string(pred));
  for (auto pred : all_predicates) r.csv_header.push_back(std::string(to_string(pred)) + "_witness");
  for (const auto& e : rep.entries) {
    Json entry{{"rule", str(e.rule)}, {"table", digits_json(e.table)}};
    std::vector<std::string> row{str(e.rule), digits_text(e.table)};
    std::vector<std::string> witnesses;
    for (const auto& v : e.verdicts) {
      Json verdict{{"holds", v.holds}, {"witness", optional_json(v.witness)}};
      if (v.witness) {
        verdict["witness_cycle"] = v.witness_orbit ? values_json(v.witness_orbit->cycle) : Json(nullptr);
      }
      if (v.predicate == CollatzPredicate::ReachesFixedPointCommonC) {
        verdict["common_fixed_point"] = optional_json(v.common_fixed_point);
      }
      entry[std::string(to_string(v.predicate))] = verdict;
      row.push_back(yes_no(v.holds));
      witnesses.push_back(v.witness ? str(*v.witness) : "");
    }
    row.insert(row.end(), witnesses.begin(), witnesses.end());
    rules.push_back(entry);
    r.csv_rows.push_back(std::move(row));
  }
  Json counts = Json::object();
  Json agrees = Json::object();
  for (std::size_t k = 0; k < 3; ++k) {
    const std::string name(to_string(all_predicates[k]));
    counts[name] = str(rep.counts[k]);
    agrees[name] = rep.agrees_with_claim[k];
    r.findings.push_back(name + ": " + str(rep.counts[k]) + " of " + str(rep.entries.size()) +
                         " rules hold on [0, " + str(bound) + "]; claimed count " +
                         str(rep.claim_count) +
                         (rep.agrees_with_claim[k] ? " (agrees)" : " (differs)"));
  }
  r.result = Json{{"radix", str(p.value())},
                  {"bound", str(bound)},
                  {"max_steps", str(rep.max_steps)},
                  {"rule_count", str(rep.entries.size())},
                  {"claim_count", str(rep.claim_count)},
                  {"counts", counts},
                  {"agrees_with_claim", agrees},
                  {"rules", rules}};
  return r;
}

inline Report cmd_stability(const Context& ctx) {
  const IvtSystem sys = ctx.system();
  const Value x_bar = ctx.value(ctx.config().x_bar, "--xbar");
  const bool local = !ctx.config().radius.empty();
  const StabilityVerdict v =
      local ? local_stability_check(sys, x_bar, ctx.value(ctx.config().radius, "--radius"),
                                    ctx.max_steps())
            : global_stability_check(sys, x_bar, ctx.bound(), ctx.max_steps());
  Report r;
  r.result = Json{{"scope", local ? "local" : "global"},
                  {"x_bar", str(x_bar)},
                  {"holds", v.holds},
                  {"witness", optional_json(v.witness)},
                  {"stable_radius", optional_json(v.stable_radius)}};
  r.csv_header = {"scope", "x_bar", "holds", "witness", "stable_radius"};
  r.csv_rows = {{local ? "local" : "global", str(x_bar), yes_no(v.holds),
                 v.witness ? str(*v.witness) : "", v.stable_radius ? str(*v.stable_radius) : ""}};
  r.verdict = v.holds;
  return r;
}

inline Report cmd_contraction(const Context& ctx) {
  const Radix p = ctx.radix();
  const RuleIndex j = ctx.rule();
  if (ctx.semantics() != Semantics{Trimmed{}}) {
    throw InputError("contraction check requires trimmed semantics");
  }
  const ContractionVerdict v = contraction_check(p, j, ctx.bound());
  Report r;
  Json witness = v.witness ? Json::array({str(v.witness->first), str(v.witness->second)}) : Json(nullptr);
  r.result = Json{{"holds", v.holds}, {"witness", witness}};
  r.csv_header = {"holds", "witness_x", "witness_y"};
  r.csv_rows = {{yes_no(v.holds), v.witness ? str(v.witness->first) : "",
                 v.witness ? str(v.witness->second) : ""}};
  r.findings.push_back(v.holds ? "apply is constant on the bound, hence a contraction under the discrete metric"
                               : "apply separates two points, so no contraction factor below 1 exists");
  r.verdict = v.holds;
  return r;
}

inline Report cmd_invariant_sets(const Context& ctx) {
  const IvtSystem sys = ctx.system();
  const InvariantSetReport rep = invariant_set_search(sys, ctx.bound());
  Report r;
  Json comps = Json::array();
  r.csv_header = {"component", "value"};
  for (std::size_t c = 0; c < rep.components.size(); ++c) {
    comps.push_back(values_json(rep.components[c]));
    for (const auto& v : rep.components[c]) r.csv_rows.push_back({str(c), str(v)});
  }
  r.result = Json{{"component_count", str(rep.components.size())},
                  {"has_nontrivial_invariant_set", rep.has_nontrivial_invariant_set()},
                  {"components", comps}};
  r.findings.push_back(rep.has_nontrivial_invariant_set()
                           ? "nontrivial invariant sets exist on the bound (not ergodic there)"
                           : "no nontrivial invariant set on the bound");
  r.verdict = !rep.has_nontrivial_invariant_set();
  return r;
}

inline Report cmd_preimage(const Context& ctx) {
  const IvtSystem sys = ctx.system();
  const auto targets = parse_set(ctx.config().set);
  const auto pre = preimage(sys, targets, ctx.bound());
  Report r;
  r.result = Json{{"set", values_json(targets)}, {"preimage", values_json(pre)}};
  r.csv_header = {"value"};
  for (const auto& v : pre) r.csv_rows.push_back({str(v)});
  return r;
}

inline Report cmd_measure(const Context& ctx) {
  const IvtSystem sys = ctx.system();
  const auto targets = parse_set(ctx.config().set);
  const std::uint64_t n = ctx.config().n.empty() ? 1 : ctx.count(ctx.config().n, "--n");
  const MeasureAudit a = measure_audit(sys, targets, ctx.bound(), n);
  Report r;
  r.result = Json{{"steps", str(a.steps)},
                  {"set", values_json(a.set)},
                  {"mu_set", str(a.mu_set)},
                  {"mu_set_on_bound", str(a.mu_set_on_bound)},
                  {"preimage", values_json(a.preimage)},
                  {"mu_preimage", str(a.mu_preimage)},
                  {"preserving_on_bound", a.preserving_on_bound},
                  {"growth_flag", a.growth_flag}};
  r.csv_header = {"mu_set", "mu_set_on_bound", "mu_preimage", "preserving_on_bound", "growth_flag"};
  r.csv_rows = {{str(a.mu_set), str(a.mu_set_on_bound), str(a.mu_preimage),
                 yes_no(a.preserving_on_bound), yes_no(a.growth_flag)}};
  if (!a.preserving_on_bound) r.findings.push_back("counting measure not preserved on the bound");
  if (a.growth_flag) r.findings.push_back("preimage grows when the bound doubles");
  r.verdict = a.preserving_on_bound;
  return r;
}

inline Report cmd_injectivity(const Context& ctx) {
  const IvtSystem sys = ctx.system();
  const InjectivityAudit a = injectivity_audit(sys, ctx.bound());
  Report r;
  Json witness = nullptr;
  if (a.witness) {
    witness = Json{{"x", str(a.witness->x)}, {"y", str(a.witness->y)}, {"image", str(a.witness->image)}};
  }
  r.result = Json{{"injective", a.injective},
                  {"witness", witness},
                  {"predicted_injective", a.predicted_injective},
                  {"characterization_match", a.characterization_match}};
  r.csv_header = {"injective", "predicted_injective", "characterization_match"};
  r.csv_rows = {{yes_no(a.injective), yes_no(a.predicted_injective), yes_no(a.characterization_match)}};
  if (!a.characterization_match) {
    r.findings.push_back("scan disagrees with the permutation-fixing-zero characterization on this bound");
  }
  r.verdict = a.injective;
  return r;
}

inline Json certificate_json(const ConjugacyCertificate& c) {
  return Json{{"from_rule", str(c.from_rule)},
              {"to_rule", str(c.to_rule)},
              {"sigma", digits_json(c.sigma.entries())},
              {"width", str(c.width)},
              {"kind", std::string(to_string(c.kind))}};
}

inline Json failure_json(const SemiconjugacyFailure& f) {
  return Json{{"level", f.level == SemiconjugacyFailure::Level::Digit ? "digit" : "word"},
              {"point", str(f.point)},
              {"lhs", str(f.lhs)},
              {"rhs", str(f.rhs)}};
}

inline std::vector<Digit> parse_digit_map(const std::string& text, Radix p) {
  std::vector<Digit> out;
  for (const auto& v : parse_set_unsorted(text)) {
    if (v >= p.value()) throw InputError("sigma entry out of range: " + str(v));
    out.push_back(static_cast<Digit>(v.convert_to<unsigned>()));
  }
  if (out.size() != p.value()) throw InputError("sigma must list exactly p digits");
  return out;
}

inline Report cmd_conjugacy(const Context& ctx) {
  const Radix p = ctx.radix();
  const RuleIndex j1 = ctx.rule_index(ctx.config().j1, "--j1");
  const RuleIndex j2 = ctx.rule_index(ctx.config().j2, "--j2");
  const std::size_t k = ctx.width();
  Report r;
  r.csv_header = {"sigma", "kind", "width"};

  std::vector<DigitMap> candidates;
  if (!ctx.config().sigma.empty()) {
    candidates.emplace_back(p, parse_digit_map(ctx.config().sigma, p));
  } else {
    if (p.value() > 8) throw InputError("permutation search is limited to radix <= 8");
    candidates = find_digit_conjugacies(p, j1, j2);
  }

  Json certs = Json::array();
  Json failures = Json::array();
  for (const auto& sigma : candidates) {
    const auto res = check_semiconjugacy(p, j1, j2, sigma, k);
    if (const auto* c = std::get_if<ConjugacyCertificate>(&res)) {
      certs.push_back(certificate_json(*c));
      r.csv_rows.push_back({digits_text(c->sigma.entries()), std::string(to_string(c->kind)), str(k)});
    } else {
      Json f = failure_json(std::get<SemiconjugacyFailure>(res));
      f["sigma"] = digits_json(sigma.entries());
      failures.push_back(f);
    }
  }
  r.result = Json{{"j1", str(j1)},
                  {"j2", str(j2)},
                  {"width", str(k)},
                  {"search", ctx.config().sigma.empty() ? "all digit permutations" : "given sigma"},
                  {"certificate", certs.empty() ? Json(nullptr) : certs.front()},
                  {"certificates", certs},
                  {"failures", failures}};
  if (certs.empty()) r.findings.push_back("no digit-induced conjugacy found");
  r.verdict = !certs.empty();
  return r;
}

inline Report cmd_cross_factor(const Context& ctx) {
  const Radix p = ctx.radix();
  const RuleIndex j1 = ctx.rule_index(ctx.config().j1, "--j1");
  const RuleIndex j2 = ctx.rule_index(ctx.config().j2, "--j2");
  const std::size_t k = ctx.width();
  const CrossFactorResult res = cross_factor_check(p, j1, j2, k);
  Report r;
  r.result = Json{{"j1", str(j1)},
                  {"j2", str(j2)},
                  {"width", str(k)},
                  {"holds", res.holds},
                  {"witness", res.witness ? failure_json(*res.witness) : Json(nullptr)}};
  r.csv_header = {"j1", "j2", "width", "holds"};
  r.csv_rows = {{str(j1), str(j2), str(k), yes_no(res.holds)}};
  r.verdict = res.holds;
  return r;
}

inline Report cmd_compose(const Context& ctx) {
  const Radix p = ctx.radix();
  const RuleIndex outer = ctx.rule_index(ctx.config().outer, "--outer");
  const RuleIndex inner = ctx.rule_index(ctx.config().inner, "--inner");
  const RuleIndex index = compose_rules(p, outer, inner);
  Report r;
  r.result = Json{{"outer", str(outer)},
                  {"inner", str(inner)},
                  {"index", str(index)},
                  {"table", digits_json(rule_from_index(p, index).entries())}};
  r.csv_header = {"outer", "inner", "index"};
  r.csv_rows = {{str(outer), str(inner), str(index)}};

  if (!ctx.config().against.empty()) {
    const auto pair = parse_set_unsorted(ctx.config().against);
    if (pair.size() != 2) throw InputError("--against takes OUTER,INNER");
    const RuleIndex o2 = ctx.rule_index(str(pair[0]), "--against");
    const RuleIndex i2 = ctx.rule_index(str(pair[1]), "--against");
    const std::size_t k = ctx.config().width.empty() ? 4 : ctx.width();
    const CompositionCheck check = check_composition_identity(p, outer, inner, o2, i2, k);
    r.result["against"] = Json{{"outer", str(o2)},
                               {"inner", str(i2)},
                               {"index", str(check.rhs_index)},
                               {"max_width", str(k)},
                               {"holds", check.holds}};
    r.findings.push_back(check.holds ? "composites agree on every word up to the given width"
                                     : "composites differ");
    r.verdict = check.holds;
  }
  return r;
}

}  // namespace detail

/// Renders `report` in the configured format.
inline std::string render(const RunConfig& cfg, const Json& config_json, const Report& report) {
  if (cfg.format == "csv") {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out += ',';
        out += cells[i];
      }
      out += '\n';
    };
    line(report.csv_header);
    for (const auto& row : report.csv_rows) line(row);
    return out;
  }
  Json doc{{"config", config_json}, {"result", report.result}, {"findings", report.findings}};
  return doc.dump(2) + "\n";
}

inline Json config_json(const RunConfig& cfg) {
  Json j{{"command", cfg.command},
         {"radix", cfg.radix},
         {"rule", cfg.rule.empty() ? Json(nullptr) : Json(cfg.rule)},
         {"semantics", cfg.semantics},
         {"bound", cfg.bound},
         {"max_steps", cfg.max_steps},
         {"format", cfg.format}};
  const std::pair<const char*, const std::string*> extras[] = {
      {"x", &cfg.x},         {"n", &cfg.n},         {"set", &cfg.set},
      {"j1", &cfg.j1},       {"j2", &cfg.j2},       {"width", &cfg.width},
      {"sigma", &cfg.sigma}, {"outer", &cfg.outer}, {"inner", &cfg.inner},
      {"against", &cfg.against}, {"xbar", &cfg.x_bar}, {"radius", &cfg.radius}};
  for (const auto& [name, value] : extras)
    if (!value->empty()) j[name] = *value;
  return j;
}

using Command = std::function<Report(const detail::Context&)>;

inline const std::map<std::string, std::pair<Command, std::string>>& commands() {
  static const std::map<std::string, std::pair<Command, std::string>> table{
      {"apply", {detail::cmd_apply, "evaluate the IVT once"}},
      {"iterate", {detail::cmd_iterate, "apply the IVT n times"}},
      {"orbit", {detail::cmd_orbit, "transient and cycle of a trajectory"}},
      {"fixed-points", {detail::cmd_fixed_points, "fixed points up to the bound"}},
      {"periodic-points", {detail::cmd_periodic_points, "periodic points on fixed-width words"}},
      {"census", {detail::cmd_census, "Collatz-like classification of every rule"}},
      {"stability", {detail::cmd_stability, "global (or local, with --radius) stability of a steady state"}},
      {"contraction", {detail::cmd_contraction, "contraction check under the discrete metric"}},
      {"invariant-sets", {detail::cmd_invariant_sets, "invariant-set partition of [0, bound]"}},
      {"preimage", {detail::cmd_preimage, "preimage of a finite set"}},
      {"measure", {detail::cmd_measure, "counting-measure preservation audit"}},
      {"injectivity", {detail::cmd_injectivity, "injectivity audit on [0, bound]"}},
      {"conjugacy", {detail::cmd_conjugacy, "digit-induced conjugacy certificates"}},
      {"cross-factor", {detail::cmd_cross_factor, "factor relation between the two composites"}},
      {"compose", {detail::cmd_compose, "index of a composed rule"}},
  };
  return table;
}

/// Entry point shared by main() and the tests. args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Integral value transformation explorer"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--radix", cfg.radix, "base p, 2..16");
  app.add_option("--rule", cfg.rule, "rule index j < p^p");
  app.add_option("--semantics", cfg.semantics, "trimmed | fixed:K");
  app.add_option("--bound", cfg.bound, "upper end of scanned ranges");
  app.add_option("--max-steps", cfg.max_steps, "orbit step budget");
  app.add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", cfg.out, "write the report here instead of stdout");
  app.add_flag("--assert", cfg.assert_result, "exit 1 when the checked property fails");

  for (const auto& [name, entry] : commands()) {
    CLI::App* sub = app.add_subcommand(name, entry.second);
    sub->fallthrough();
    sub->callback([&cfg, n = name] { cfg.command = n; });
    auto opt = [&](const char* flag, std::string& field, const char* help) {
      sub->add_option(flag, field, help);
    };
    if (name == "apply" || name == "iterate" || name == "orbit") opt("--x", cfg.x, "starting value");
    if (name == "iterate" || name == "measure") opt("--n", cfg.n, "number of steps");
    if (name == "preimage" || name == "measure") opt("--set", cfg.set, "comma-separated values");
    if (name == "conjugacy" || name == "cross-factor") {
      opt("--j1", cfg.j1, "first rule index");
      opt("--j2", cfg.j2, "second rule index");
    }
    if (name == "conjugacy" || name == "cross-factor" || name == "periodic-points" ||
        name == "compose") {
      opt("--width", cfg.width, "word width k");
    }
    if (name == "conjugacy") opt("--sigma", cfg.sigma, "digit map to check, e.g. 1,2,0");
    if (name == "compose") {
      opt("--outer", cfg.outer, "outer rule index");
      opt("--inner", cfg.inner, "inner rule index");
      opt("--against", cfg.against, "OUTER,INNER composite to compare word-wise");
    }
    if (name == "stability") {
      opt("--xbar", cfg.x_bar, "steady state");
      opt("--radius", cfg.radius, "neighbourhood radius for a local check");
    }
    if (name == "census") opt("--threads", cfg.threads, "worker threads (0 = all cores)");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_invalid_input;
  }

  Report report;
  try {
    const detail::Context ctx(cfg);
    report = commands().at(cfg.command).first(ctx);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return exit_invalid_input;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return e.code() == ErrorCode::StepBudgetExceeded ? exit_property_failed : exit_invalid_input;
  }

  const std::string text = render(cfg, config_json(cfg), report);
  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << cfg.out << "\n";
      return exit_invalid_input;
    }
    file << text;
  }
  if (cfg.assert_result && report.verdict && !*report.verdict) return exit_property_failed;
  return exit_ok;
}

}  // namespace ivt::cli
