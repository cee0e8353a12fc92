// wfc: command-line front end for the workflow-net complexity library.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wfc/compose.hpp"
#include "wfc/generators.hpp"
#include "wfc/graph.hpp"
#include "wfc/harness.hpp"
#include "wfc/io.hpp"
#include "wfc/metrics.hpp"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A path on disk, or failing that a net reference such as a fixture name.
wfc::WorkflowNet load(const std::string& arg) {
  if (std::filesystem::exists(arg)) return wfc::load_net(arg);
  return wfc::resolve_net_ref(arg);
}

std::uint64_t effective_seed(std::uint64_t flag) {
  if (const char* env = std::getenv("WFC_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError("WFC_SEED is not a non-negative integer");
    }
  }
  return flag;
}

std::vector<wfc::MetricId> parse_measures(const std::vector<std::string>& ids) {
  std::vector<wfc::MetricId> out;
  for (const auto& s : ids) {
    auto m = wfc::parse_metric(s);
    if (!m) throw UsageError("unknown measure: " + s);
    out.push_back(*m);
  }
  if (out.empty()) out.assign(std::begin(wfc::kAllMetrics), std::end(wfc::kAllMetrics));
  return out;
}

int cmd_score(const std::string& file, const std::vector<std::string>& ids, const std::string& format) {
  auto net = load(file);
  auto measures = parse_measures(ids);
  json results = json::array();
  for (auto m : measures) {
    std::string name(wfc::to_string(m));
    try {
      auto v = wfc::compute(m, net);
      if (format == "structured") {
        json r{{"measure", name}, {"value", v.exact_text()}, {"approx", v.approx}, {"exact", v.is_exact}};
        if (v.special_case) r["special_case"] = true;
        results.push_back(r);
      } else {
        std::string line = name + "=" + v.decimal_text(10);
        if (v.is_exact && boost::multiprecision::denominator(v.exact) != 1) line += " (" + v.exact_text() + ")";
        if (v.special_case) line += " [undefined, reported as 0]";
        std::cout << line << "\n";
      }
    } catch (const wfc::BudgetExceeded& e) {
      if (format == "structured")
        results.push_back({{"measure", name}, {"error", e.what()}});
      else
        std::cout << name << "=error: " << e.what() << "\n";
    }
  }
  if (format == "structured") {
    json doc{{"schema", "wfc/1"}, {"kind", "score"}, {"net", net.net_name()}, {"results", results}};
    std::cout << doc.dump(2) << "\n";
  }
  return kOk;
}

int cmd_compose(const std::string& op_name, const std::string& out, const std::vector<std::string>& files) {
  auto op = wfc::parse_operator(op_name);
  if (!op) throw UsageError("unknown operator: " + op_name);
  if (files.size() < 2) throw UsageError("compose needs at least two nets");
  std::vector<wfc::WorkflowNet> nets;
  for (const auto& f : files) nets.push_back(load(f));
  wfc::save_native(wfc::compose(*op, nets), out);
  return kOk;
}

int cmd_validate(const std::string& file) {
  auto net = load(file);
  std::cout << "valid: " << net.net_name() << " (" << net.place_count() << " places, "
            << net.transition_count() << " transitions, " << net.arc_count() << " arcs)\n";
  return kOk;
}

int cmd_generate(const std::string& family, const std::vector<std::string>& params, const std::string& out) {
  wfc::NetFamilySpec spec{family, {}};
  for (const auto& p : params) {
    auto eq = p.find('=');
    if (eq == std::string::npos) throw UsageError("--param expects k=v, got " + p);
    try {
      spec.params[p.substr(0, eq)] = std::stol(p.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("--param value is not an integer: " + p);
    }
  }
  wfc::save_native(wfc::build_family(spec), out);
  return kOk;
}

int cmd_language(const std::string& file, std::size_t max_len) {
  auto net = load(file);
  wfc::LanguageBounds bounds;
  bounds.max_visible_length = max_len;
  auto lang = wfc::bounded_language(net, bounds);
  for (const auto& trace : lang.traces) {
    if (trace.empty()) {
      std::cout << "ε\n";
      continue;
    }
    for (std::size_t i = 0; i < trace.size(); ++i) std::cout << (i ? " " : "") << trace[i];
    std::cout << "\n";
  }
  if (lang.truncated) std::cout << "(truncated)\n";
  return kOk;
}

void print_evidence(const wfc::Evidence& e, const std::string& indent) {
  if (!e.nets.empty()) {
    std::cout << indent << "nets:";
    for (const auto& n : e.nets) std::cout << " " << n;
    std::cout << "\n";
  }
  if (!e.values.empty()) {
    std::cout << indent << "values:";
    for (const auto& v : e.values) std::cout << " " << v;
    std::cout << "\n";
  }
  if (!e.relation.empty()) std::cout << indent << "relation: " << e.relation << "\n";
  if (!e.note.empty()) std::cout << indent << "note: " << e.note << "\n";
  std::cout << indent << "samples: " << e.samples << "\n";
}

int cmd_properties(const std::string& measure, const std::string& property, std::size_t budget, std::uint64_t seed) {
  auto m = wfc::parse_metric(measure);
  if (!m) throw UsageError("unknown measure: " + measure);
  auto p = wfc::parse_property(property);
  if (!p) throw UsageError("unknown property: " + property);
  wfc::HarnessConfig cfg;
  cfg.search_budget = budget;
  cfg.seed = effective_seed(seed);
  auto v = wfc::check(*m, *p, cfg);
  std::cout << measure << " " << property << ": " << wfc::to_string(v.status) << " (holds: "
            << (wfc::holds(*p, v) ? "yes" : "no") << ")\n";
  if (v.per_operator.empty()) print_evidence(v.evidence, "  ");
  for (const auto& [op, ov] : v.per_operator) {
    std::cout << "  " << wfc::symbol(op) << " " << wfc::to_string(op) << ": " << wfc::to_string(ov.status)
              << "\n";
    print_evidence(ov.evidence, "    ");
  }
  return kOk;
}

int cmd_report(std::size_t budget, std::uint64_t seed, const std::string& expected, const std::string& format) {
  wfc::HarnessConfig cfg;
  cfg.search_budget = budget;
  cfg.seed = effective_seed(seed);
  std::vector<wfc::ExpectedCell> table;
  if (!expected.empty()) table = wfc::load_expected(expected);
  auto report = wfc::full_report(cfg);
  std::cout << (format == "structured" ? wfc::render_json(report) : wfc::render_text(report));
  if (expected.empty()) return kOk;
  auto mismatches = wfc::compare_to_expected(report, table);
  if (format != "structured") {
    std::cout << "\n" << table.size() << " expected cells, " << mismatches.size() << " mismatches\n";
  }
  for (const auto& mm : mismatches) std::cerr << "mismatch: " << wfc::describe(mm) << "\n";
  return mismatches.empty() ? kOk : kDomainError;
}

int cmd_export_dot(const std::string& file) {
  std::cout << wfc::export_dot(load(file));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complexity measures for labeled workflow nets"};
  app.require_subcommand(1);

  std::string net_file, format = "text", op, out, family, expected, measure, property;
  std::vector<std::string> measures, files, params;
  std::size_t max_len = 12, budget = 200;
  std::uint64_t seed = 0;
  const std::vector<std::string> formats{"text", "structured"};

  auto* score = app.add_subcommand("score", "Compute complexity measures of a net");
  score->add_option("net", net_file, "Net file")->required();
  score->add_option("--measure", measures, "Measure id (repeatable)");
  score->add_option("--format", format, "Output format")->check(CLI::IsMember(formats));

  auto* comp = app.add_subcommand("compose", "Compose nets with a block operator");
  comp->add_option("--op", op, "seq, par, xor or loop")
      ->required()
      ->check(CLI::IsMember({"seq", "par", "xor", "loop"}));
  comp->add_option("-o", out, "Output file")->required();
  comp->add_option("nets", files, "Operand net files")->required();

  auto* val = app.add_subcommand("validate", "Check that a file holds a workflow net");
  val->add_option("net", net_file, "Net file")->required();

  auto* gen = app.add_subcommand("generate", "Instantiate a parametric family");
  gen->add_option("family", family, "Family name")->required();
  gen->add_option("--param", params, "Parameter k=v (repeatable)");
  gen->add_option("-o", out, "Output file")->required();

  auto* lang = app.add_subcommand("language", "List the bounded visible language");
  lang->add_option("net", net_file, "Net file")->required();
  lang->add_option("--max-len", max_len, "Maximum trace length")->required()->check(CLI::PositiveNumber);

  auto* props = app.add_subcommand("properties", "Check one property for one measure");
  props->add_option("--measure", measure, "Measure id")->required();
  props->add_option("--property", property, "Property id")->required();
  props->add_option("--budget", budget, "Search budget")->check(CLI::NonNegativeNumber);
  props->add_option("--seed", seed, "Random seed (WFC_SEED overrides)");

  auto* rep = app.add_subcommand("report", "Check every measure against every property");
  rep->add_option("--budget", budget, "Search budget")->check(CLI::NonNegativeNumber);
  rep->add_option("--seed", seed, "Random seed (WFC_SEED overrides)");
  rep->add_option("--expected", expected, "Expected-table fixture");
  rep->add_option("--format", format, "Output format")->check(CLI::IsMember(formats));

  auto* dot = app.add_subcommand("export-dot", "Render a net as Graphviz DOT");
  dot->add_option("net", net_file, "Net file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsageError;
  }

  try {
    if (*score) return cmd_score(net_file, measures, format);
    if (*comp) return cmd_compose(op, out, files);
    if (*val) return cmd_validate(net_file);
    if (*gen) return cmd_generate(family, params, out);
    if (*lang) return cmd_language(net_file, max_len);
    if (*props) return cmd_properties(measure, property, budget, seed);
    if (*rep) return cmd_report(budget, seed, expected, format);
    if (*dot) return cmd_export_dot(net_file);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainError;
  }
  return kUsageError;
}
