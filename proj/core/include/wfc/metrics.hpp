#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wfc/graph.hpp"
#include "wfc/net.hpp"

namespace wfc {

enum class MetricId { size, mm, ch, cc, ts, sep, cfc, mcd, seq, acd, depth, diam, cyc, cnc, dens, dup, esf };

inline constexpr MetricId kAllMetrics[] = {
    MetricId::size, MetricId::mm,  MetricId::ch,    MetricId::cc,   MetricId::ts,  MetricId::sep,
    MetricId::cfc,  MetricId::mcd, MetricId::seq,   MetricId::acd,  MetricId::depth,
    MetricId::diam, MetricId::cyc, MetricId::cnc,   MetricId::dens, MetricId::dup, MetricId::esf};

std::string_view to_string(MetricId m);
std::optional<MetricId> parse_metric(std::string_view s);
std::string_view dimension(MetricId m);  // e.g. "Token Behavior Complexity"

enum class UndefinedPolicy { SpecialCaseZero, Error };

struct MetricConfig {
  UndefinedPolicy undefined_policy = UndefinedPolicy::SpecialCaseZero;
  bool dup_count_tau = true;
  PathBudget path_budget{};
  int ch_precision = 10;
};

struct MetricValue {
  MetricId id = MetricId::size;
  Rational exact;       // for ch: the decimal rounded to ch_precision digits
  double approx = 0.0;
  bool is_exact = true;  // false only for ch
  bool special_case = false;

  std::string exact_text() const;             // "n/d", or a decimal for ch
  std::string decimal_text(int digits = 10) const;
};

class UndefinedForNet : public std::runtime_error {
 public:
  explicit UndefinedForNet(MetricId m);
  MetricId measure() const noexcept { return m_; }

 private:
  MetricId m_;
};

MetricValue compute(MetricId m, const WorkflowNet& net, const MetricConfig& config = {});

struct MetricResult {
  MetricId id;
  std::optional<MetricValue> value;
  std::string error;  // set when value is empty
};

// Never throws for per-measure failures; they are recorded in the result.
std::vector<MetricResult> compute_all(const WorkflowNet& net, const MetricConfig& config = {});

// Per-node depth values (in-depth from the source; out-depth on the reversed net).
struct DepthProfile {
  std::vector<long> in, out;
};
DepthProfile depth_profile(const WorkflowNet& net, const PathBudget& budget = {});

std::string rational_text(const Rational& r);                 // "n" or "n/d"
std::string decimal_text(const Rational& r, int digits = 10);  // rounded half away from zero

}  // namespace wfc
