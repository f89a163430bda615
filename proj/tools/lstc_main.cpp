#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lstc/bounds.hpp"
#include "lstc/error.hpp"
#include "lstc/invariants.hpp"
#include "lstc/replication.hpp"
#include "lstc/serialize.hpp"
#include "lstc/space_expr.hpp"

using namespace lstc;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

int run_bounds(const std::string& expr, const std::string& inv, bool json, const std::vector<std::string>& disabled) {
  EvalOptions opts;
  opts.disabled_rules.insert(disabled.begin(), disabled.end());
  BoundResult r = evaluate(parse_space_expr(expr), parse_invariant(inv), opts);
  if (json)
    std::cout << bound_to_json(r).dump(2) << "\n";
  else
    std::cout << format_bound(r);
  return kOk;
}

int run_ring(const std::string& expr, const std::string& field, bool table, bool json) {
  const GradedAlgebra a = ring_for_expr(parse_space_expr(expr), parse_field(field));
  if (json) {
    std::cout << algebra_to_json(a, table).dump(2) << "\n";
    return kOk;
  }
  for (int d = 0; d <= a.top_degree(); ++d) {
    auto [lo, hi] = a.degree_range(d);
    std::vector<std::string> names;
    for (auto i = lo; i < hi; ++i) names.push_back(a.render_monomial(a.basis_monomial(i)));
    std::cout << "H^" << d << "\t" << (hi - lo) << "\t" << join(names, " ") << "\n";
  }
  if (table) {
    std::vector<std::string> terms;
    const auto dims = poincare_polynomial(a);
    for (std::size_t d = 0; d < dims.size(); ++d)
      if (dims[d]) terms.push_back(std::to_string(dims[d]) + (d ? "t^" + std::to_string(d) : ""));
    std::cout << "poincare\t" << join(terms, " + ") << "\n";
    for (std::uint32_t i = 1; i < a.dim(); ++i)
      for (std::uint32_t j = i; j < a.dim(); ++j) {
        const Element p = a.element(a.multiply_basis(i, j));
        if (p.is_zero()) continue;
        std::cout << a.render_monomial(a.basis_monomial(i)) << " . " << a.render_monomial(a.basis_monomial(j))
                  << " = " << a.render(p) << "\n";
      }
  }
  return kOk;
}

Json witness_json(const GradedAlgebra& a, const WitnessProduct& w) {
  Json j;
  j["factors"] = Json::array();
  for (const auto& f : w.factors) j["factors"].push_back(a.render(f));
  j["value"] = a.render(w.value);
  return j;
}

void print_witness(const GradedAlgebra& a, const WitnessProduct& w) {
  std::vector<std::string> fs;
  for (const auto& f : w.factors) fs.push_back("(" + a.render(f) + ")");
  std::cout << "witness: " << (fs.empty() ? std::string("1") : join(fs, " * ")) << "\n";
  std::cout << "value: " << a.render(w.value) << "\n";
}

int run_cup_length(const std::string& expr, const std::string& field, bool witness, bool json, bool zcl) {
  const GradedAlgebra a = ring_for_expr(parse_space_expr(expr), parse_field(field));
  int length = 0;
  std::optional<GradedAlgebra> ambient;
  WitnessProduct w;
  if (zcl) {
    ZeroDivisorResult z = zero_divisor_cup_length(a);
    length = z.length;
    w = std::move(z.witness);
    ambient = std::move(z.square);
  } else {
    CupLengthResult c = cup_length(a);
    length = c.length;
    w = std::move(c.witness);
    ambient = a;
  }
  if (json) {
    Json j;
    j["expr"] = render(parse_space_expr(expr));
    j["field"] = std::string(field_name(a.field()));
    j[zcl ? "zcl" : "cup_length"] = length;
    if (witness) j["witness"] = witness_json(*ambient, w);
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << length << "\n";
  if (witness) print_witness(*ambient, w);
  return kOk;
}

int run_verify(bool verbose) {
  bool all = true;
  for (const auto& c : run_replication()) {
    std::cout << format_criterion(c, verbose);
    all = all && c.passed();
  }
  return all ? kOk : kMismatch;
}

int run_rules(bool json) {
  if (json) {
    Json j;
    j["rules"] = Json::array();
    for (const auto& r : list_rules())
      j["rules"].push_back({{"id", r.id}, {"direction", r.direction}, {"statement", r.statement}, {"citation", r.citation}});
    j["facts"] = Json::array();
    for (const auto& f : list_facts())
      j["facts"].push_back({{"id", f.id}, {"statement", f.statement}, {"citation", f.citation}});
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  for (const auto& r : list_rules())
    std::cout << r.id << "\t" << r.direction << "\t" << r.statement << "\t" << r.citation << "\n";
  for (const auto& f : list_facts()) std::cout << f.id << "\tfact\t" << f.statement << "\t" << f.citation << "\n";
  return kOk;
}

int run_cover(const std::string& expr, const std::string& kind) {
  const CoverEntry c = cover_size(parse_space_expr(expr), kind == "categorical" ? CoverKind::Categorical : CoverKind::MotionPlanning);
  std::cout << c.q << "\t" << c.citation << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohomology rings, cup-lengths and category/complexity bounds"};
  app.require_subcommand(1);

  std::string expr, invariant = "cat", field = "gf2", kind = "motion", output = "text";
  bool json = false, table = false, witness = false, verbose = false;
  std::vector<std::string> disabled;

  auto* bounds = app.add_subcommand("bounds", "Interval for cat, TC, cat_Z2 or TC_Z2 with its derivation");
  bounds->add_option("expr", expr, "Space expression")->required();
  bounds->add_option("--invariant,-i", invariant, "cat | tc | eqcat | eqtc")
      ->check(CLI::IsMember({"cat", "tc", "eqcat", "eqtc"}));
  bounds->add_flag("--json", json, "JSON output");
  bounds->add_option("--output,-o", output, "text | json")->check(CLI::IsMember({"text", "json"}));
  bounds->add_option("--disable", disabled, "Rule ids to switch off");

  auto* ring = app.add_subcommand("ring", "Per-degree basis of the cohomology ring");
  ring->add_option("expr", expr, "Space expression")->required();
  ring->add_option("--field,-f", field, "gf2 | q")->check(CLI::IsMember({"gf2", "q"}));
  ring->add_flag("--table", table, "Also print the Poincare polynomial and nonzero products");
  ring->add_flag("--json", json, "JSON output");
  ring->add_option("--output,-o", output, "text | json")->check(CLI::IsMember({"text", "json"}));

  auto add_length_command = [&](const std::string& name, const std::string& help) {
    auto* sc = app.add_subcommand(name, help);
    sc->add_option("expr", expr, "Space expression")->required();
    sc->add_option("--field,-f", field, "gf2 | q")->check(CLI::IsMember({"gf2", "q"}));
    sc->add_flag("--witness", witness, "Print a nonzero product of maximal length");
    sc->add_flag("--json", json, "JSON output");
    sc->add_option("--output,-o", output, "text | json")->check(CLI::IsMember({"text", "json"}));
    return sc;
  };
  auto* cl = add_length_command("cup-length", "Cup-length of the cohomology ring");
  auto* zcl = add_length_command("zcl", "Zero-divisor cup-length");

  auto* verify = app.add_subcommand("verify-paper", "Check the published integer values (criteria 1-9)");
  verify->add_flag("--verbose,-v", verbose, "Show passing rows too");

  auto* rules = app.add_subcommand("rules", "Inference rules and cited facts");
  rules->add_flag("--json", json, "JSON output");
  rules->add_option("--output,-o", output, "text | json")->check(CLI::IsMember({"text", "json"}));

  auto* cover = app.add_subcommand("cover", "Invariant cover size for a Z2 space");
  cover->add_option("expr", expr, "Z2 space expression, e.g. Z2[conj]{T(4)}")->required();
  cover->add_option("--kind", kind, "motion | categorical")->check(CLI::IsMember({"motion", "categorical"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  json = json || output == "json";

  try {
    if (*bounds) return run_bounds(expr, invariant, json, disabled);
    if (*ring) return run_ring(expr, field, table, json);
    if (*cl) return run_cup_length(expr, field, witness, json, false);
    if (*zcl) return run_cup_length(expr, field, witness, json, true);
    if (*verify) return run_verify(verbose);
    if (*rules) return run_rules(json);
    if (*cover) return run_cover(expr, kind);
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n  " << expr << "\n  " << std::string(e.position(), ' ') << "^\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
