#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wfc/compose.hpp"
#include "wfc/graph.hpp"
#include "wfc/metrics.hpp"
#include "wfc/net.hpp"

namespace wfc {

enum class PropertyId { w1, w2, w3, w4, w5, w6, w7, w8, w9, defined, minimum, inf, notsup, additive };

inline constexpr PropertyId kAllProperties[] = {
    PropertyId::w1,      PropertyId::w2,      PropertyId::w3,  PropertyId::w4,     PropertyId::w5,
    PropertyId::w6,      PropertyId::w7,      PropertyId::w8,  PropertyId::w9,     PropertyId::defined,
    PropertyId::minimum, PropertyId::inf,     PropertyId::notsup, PropertyId::additive};

std::string_view to_string(PropertyId p);
std::optional<PropertyId> parse_property(std::string_view s);

// w5, w6, w9, notsup and additive are judged per operator.
bool is_operator_scoped(PropertyId p);

// Existential properties hold when a witness is found; the others are
// universal and hold while no counterexample turns up.
bool is_existential(PropertyId p);

enum class Status { ConfirmedByWitness, Falsified, NotFalsified, TheoremVerified };
std::string_view to_string(Status s);

struct Evidence {
  std::vector<std::string> nets;    // net references, see resolve_net_ref
  std::vector<std::string> values;  // measure values, same order as nets
  std::string relation;             // e.g. "C(m1) != C(m2)"
  std::size_t samples = 0;          // cases examined
  std::string note;
};

struct OperatorVerdict {
  Status status = Status::NotFalsified;
  Evidence evidence;
};

struct PropertyVerdict {
  Status status = Status::NotFalsified;
  Evidence evidence;
  std::map<Operator, OperatorVerdict> per_operator;  // operator-scoped properties only
};

bool holds(PropertyId p, Status s);
bool holds(PropertyId p, const PropertyVerdict& v);  // all operators hold for scoped properties

struct HarnessConfig {
  std::size_t search_budget = 200;  // random nets, family length and permutation attempts
  std::uint64_t seed = 0;
  LanguageBounds language_bounds{};
  PathBudget path_budget{};
  MetricConfig metric_config{};
};

// A replayable case from the per-measure analyses.
struct WitnessCase {
  MetricId measure;
  PropertyId property;
  std::optional<Operator> op;
  std::vector<std::string> nets;
  std::string source;
};

const std::vector<WitnessCase>& witness_catalog();

// Relation the case's nets must satisfy, derived from the property.
std::string witness_relation(const WitnessCase& w);

struct WitnessReplay {
  bool satisfied = false;
  std::vector<std::string> values;
  std::string detail;
};

WitnessReplay replay(const WitnessCase& w, const MetricConfig& config = {},
                     const LanguageBounds& bounds = {});

// Net references:
//   <fixture>                      fixture catalog entry
//   family:<name>:<k>=<v>,...      parametric family
//   rev:<ref>                      all arcs reversed
//   tauify:<ref>                   every label replaced by tau
//   single:<label>                 one transition net ("tau" for silent)
//   random:<seed>:<max_leaves>     random block net
//   par_nest:<k>                   k nested parallel compositions of single transitions
WorkflowNet resolve_net_ref(std::string_view ref);

struct ReportCell {
  MetricId measure;
  PropertyId property;
  PropertyVerdict verdict;
};

struct Report {
  HarnessConfig config;
  std::vector<ReportCell> cells;  // measure-major, 17 x 14

  const ReportCell& cell(MetricId m, PropertyId p) const;
};

class Harness {
 public:
  explicit Harness(HarnessConfig config = {});
  ~Harness();
  Harness(const Harness&) = delete;
  Harness& operator=(const Harness&) = delete;

  PropertyVerdict check(MetricId m, PropertyId p);
  Report full_report();

 private:
  struct State;
  std::unique_ptr<State> s_;
};

PropertyVerdict check(MetricId m, PropertyId p, const HarnessConfig& config = {});
Report full_report(const HarnessConfig& config = {});

// Expected-table fixture: {"cells": [{"measure", "property", "operator"?, "expected": "yes"|"no"}]}.
struct ExpectedCell {
  MetricId measure;
  PropertyId property;
  std::optional<Operator> op;
  bool expected;
};

std::vector<ExpectedCell> parse_expected(std::string_view json_text);
std::vector<ExpectedCell> load_expected(const std::string& path);

struct Mismatch {
  MetricId measure;
  PropertyId property;
  std::optional<Operator> op;
  bool expected;
  bool observed;
  Status status;
};

std::vector<Mismatch> compare_to_expected(const Report& report,
                                          const std::vector<ExpectedCell>& expected);

std::string render_text(const Report& report);
std::string render_json(const Report& report);  // shares the envelope of the score output
std::string describe(const Mismatch& m);

}  // namespace wfc
