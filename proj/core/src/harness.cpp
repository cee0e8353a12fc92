#include "wfc/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "wfc/generators.hpp"

namespace wfc {

namespace {

constexpr std::size_t kMetricCount = std::size(kAllMetrics);

std::size_t mi(MetricId m) { return static_cast<std::size_t>(m); }
std::size_t oi(Operator op) { return static_cast<std::size_t>(op); }

struct PropertyName {
  PropertyId id;
  std::string_view name;
};

constexpr PropertyName kPropertyNames[] = {
    {PropertyId::w1, "w1"},           {PropertyId::w2, "w2"},           {PropertyId::w3, "w3"},
    {PropertyId::w4, "w4"},           {PropertyId::w5, "w5"},           {PropertyId::w6, "w6"},
    {PropertyId::w7, "w7"},           {PropertyId::w8, "w8"},           {PropertyId::w9, "w9"},
    {PropertyId::defined, "defined"}, {PropertyId::minimum, "minimum"}, {PropertyId::inf, "inf"},
    {PropertyId::notsup, "notsup"},   {PropertyId::additive, "additive"}};

}  // namespace

std::string_view to_string(PropertyId p) {
  for (const auto& e : kPropertyNames)
    if (e.id == p) return e.name;
  return "?";
}

std::optional<PropertyId> parse_property(std::string_view s) {
  for (const auto& e : kPropertyNames)
    if (e.name == s) return e.id;
  return std::nullopt;
}

bool is_operator_scoped(PropertyId p) {
  return p == PropertyId::w5 || p == PropertyId::w6 || p == PropertyId::w9 ||
         p == PropertyId::notsup || p == PropertyId::additive;
}

bool is_existential(PropertyId p) {
  switch (p) {
    case PropertyId::w1:
    case PropertyId::w3:
    case PropertyId::w4:
    case PropertyId::w6:
    case PropertyId::w7:
    case PropertyId::w9:
    case PropertyId::notsup:
    case PropertyId::inf:
    case PropertyId::minimum:
      return true;
    default:
      return false;
  }
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::ConfirmedByWitness: return "ConfirmedByWitness";
    case Status::Falsified: return "Falsified";
    case Status::NotFalsified: return "NotFalsified";
    case Status::TheoremVerified: return "TheoremVerified";
  }
  return "?";
}

bool holds(PropertyId p, Status s) {
  if (is_existential(p)) return s == Status::ConfirmedByWitness;
  return s == Status::NotFalsified || s == Status::TheoremVerified;
}

bool holds(PropertyId p, const PropertyVerdict& v) {
  if (!is_operator_scoped(p) || v.per_operator.empty()) return holds(p, v.status);
  for (const auto& [op, ov] : v.per_operator)
    if (!holds(p, ov.status)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Net references

namespace {

FamilyParams parse_params(std::string_view text) {
  FamilyParams out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto comma = text.find(',', pos);
    auto item = text.substr(pos, comma == std::string_view::npos ? text.size() - pos : comma - pos);
    auto eq = item.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("bad family parameter: " + std::string(item));
    out[std::string(item.substr(0, eq))] = std::stol(std::string(item.substr(eq + 1)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

WorkflowNet tauify(const WorkflowNet& net) {
  auto d = net.describe();
  for (auto& t : d.transitions) t.label.reset();
  d.name = "tauify(" + net.net_name() + ")";
  return WorkflowNet::validate(d);
}

// Parallel composition nested k levels deep: depth grows by one per level.
WorkflowNet par_nest(long k) {
  WorkflowNet net = single_transition(Label{"a"});
  for (long i = 1; i <= k; ++i) net = compose(Operator::Par, net, single_transition(Label{"a"}));
  return net;
}

}  // namespace

WorkflowNet resolve_net_ref(std::string_view ref) {
  auto after = [&](std::string_view prefix) { return ref.substr(prefix.size()); };
  if (ref.starts_with("rev:")) return reversed(resolve_net_ref(after("rev:")));
  if (ref.starts_with("tauify:")) return tauify(resolve_net_ref(after("tauify:")));
  if (ref.starts_with("single:")) {
    auto l = after("single:");
    return single_transition(l == kTauMarker ? Label{} : Label{std::string(l)});
  }
  if (ref.starts_with("par_nest:")) return par_nest(std::stol(std::string(after("par_nest:"))));
  if (ref.starts_with("random:")) {
    auto rest = after("random:");
    auto colon = rest.find(':');
    RandomNetSpec spec;
    spec.seed = std::stoull(std::string(rest.substr(0, colon)));
    if (colon != std::string_view::npos) spec.max_leaves = std::stoul(std::string(rest.substr(colon + 1)));
    return random_block_net(spec);
  }
  if (ref.starts_with("family:")) {
    auto rest = after("family:");
    auto colon = rest.find(':');
    NetFamilySpec spec{std::string(rest.substr(0, colon)), {}};
    if (colon != std::string_view::npos) spec.params = parse_params(rest.substr(colon + 1));
    return build_family(spec);
  }
  return build_fixture(ref);
}

namespace {

std::string family_ref(const std::string& name, const FamilyParams& params) {
  std::string s = "family:" + name + ":";
  bool first = true;
  for (const auto& [k, v] : params) {
    s += (first ? "" : ",") + k + "=" + std::to_string(v);
    first = false;
  }
  return s;
}

std::string op_ref(Operator op, const std::string& a, const std::string& b) {
  return std::string(to_string(op)) + "(" + a + ", " + b + ")";
}

using Values = std::array<std::optional<MetricValue>, kMetricCount>;

Values compute_values(const WorkflowNet& net, const MetricConfig& cfg) {
  Values out;
  for (MetricId m : kAllMetrics) {
    try {
      out[mi(m)] = compute(m, net, cfg);
    } catch (const std::exception&) {
      // Budget or definedness failures leave the slot empty; the cell skips it.
    }
  }
  return out;
}

std::string text(const std::optional<MetricValue>& v) { return v ? v->exact_text() : "undefined"; }

bool has_connector(const WorkflowNet& net) {
  for (NodeIndex v = 0; v < net.node_count(); ++v)
    if (net.pre(v).size() > 1 || net.post(v).size() > 1) return true;
  return false;
}

bool same_structure(const WorkflowNet& a, const WorkflowNet& b) {
  auto da = a.describe(), db = b.describe();
  return da.places == db.places && da.transitions == db.transitions && da.arcs == db.arcs;
}

// Runs body(i) for i in [0, n) on a few threads; results are written by index.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  std::size_t workers = std::max(1u, std::min(16u, std::thread::hardware_concurrency()));
  if (n < 4 || workers == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace

// ---------------------------------------------------------------------------
// Witness catalog

const std::vector<WitnessCase>& witness_catalog() {
  using M = MetricId;
  using P = PropertyId;
  static const std::vector<WitnessCase> cases = [] {
    std::vector<WitnessCase> v;
    auto add = [&](M m, P p, std::vector<std::string> nets, std::string src,
                   std::optional<Operator> op = std::nullopt) {
      v.push_back({m, p, op, std::move(nets), std::move(src)});
    };
    auto all_ops = [&](M m, P p, std::vector<std::string> nets, const std::string& src) {
      for (Operator op : kAllOperators) add(m, p, nets, src, op);
    };
    add(M::size, P::w1, {"W1_size", "W2_size"}, "size examples");
    add(M::size, P::w3, {"W2_size", "W3_size"}, "size examples");
    add(M::size, P::w4, {"W1_size", "W2_size"}, "size examples");
    add(M::size, P::w7, {"W3_size", "W4_size"}, "size permutation");

    add(M::mm, P::w1, {"W1_mm", "W2_mm"}, "mm examples");
    add(M::mm, P::w3, {"W2_mm", "W3_mm"}, "mm examples");
    add(M::mm, P::w4, {"W1_mm", "W2_mm"}, "mm examples");
    add(M::mm, P::w7, {"W4_mm", "W5_mm"}, "mm permutation pair");
    all_ops(M::mm, P::w5, {"W2_mm", "W3_mm"}, "mm monotonicity analysis");

    add(M::ch, P::w1, {"W1_ch", "W2_ch"}, "ch examples");
    add(M::ch, P::w3, {"W2_ch", "W3_ch"}, "ch examples");
    add(M::ch, P::w4, {"W1_ch", "W2_ch"}, "ch examples");
    add(M::ch, P::w7, {"W6_ch", "W7_ch"}, "ch permutation pair");
    add(M::ch, P::w6, {"W4_ch", "W5_ch", "W3_ch"}, "ch composition pair", Operator::Xor);
    add(M::ch, P::w6, {"W4_ch", "W5_ch", "W3_ch"}, "ch composition pair", Operator::Loop);

    add(M::cc, P::w1, {"W1_cc", "W2_cc"}, "cc monotonicity figure operands");
    add(M::cc, P::w3, {"W5_cc", "W6_cc"}, "cc equal-score pair");
    add(M::cc, P::w4, {"W3_cc", "W4_cc"}, "cc language pair");
    add(M::cc, P::w7, {"W7_cc", "W8_cc"}, "cc permutation pair");
    add(M::cc, P::w5, {"W1_cc", "W2_cc"}, "cc monotonicity figure", Operator::Par);
    add(M::cc, P::w6, {"family:cc_fin:k=1", "family:cc_fin:k=2", "family:cc_fin:k=1"},
        "cc composition analysis", Operator::Par);
    all_ops(M::cc, P::w9, {"family:cc_min:k=1", "family:cc_min:k=1"}, "cc subadditivity analysis");

    add(M::ts, P::w1, {"W1_ts", "W2_ts"}, "ts examples");
    add(M::ts, P::w4, {"W1_ts", "W2_ts"}, "ts examples");
    add(M::ts, P::w7, {"W3_ts", "W4_ts"}, "ts permutation pair");

    add(M::sep, P::w1, {"W1_sep", "W2_sep"}, "sep examples");
    add(M::sep, P::w3, {"W1_sep", "W3_sep"}, "sep examples");
    add(M::sep, P::w4, {"W1_sep", "W2_sep"}, "sep examples");
    add(M::sep, P::w7, {"W9_sep", "W10_sep"}, "sep permutation pair");
    add(M::sep, P::w5, {"W6_sep", "W5_sep"}, "sep xor counterexample", Operator::Xor);
    all_ops(M::sep, P::w6, {"W7_sep", "W8_sep", "W0"}, "sep composition pair");

    add(M::cfc, P::w1, {"W1_cfc", "W2_cfc"}, "cfc examples");
    add(M::cfc, P::w3, {"W2_cfc", "W3_cfc"}, "cfc examples");
    add(M::cfc, P::w4, {"W1_cfc", "W2_cfc"}, "cfc examples");
    add(M::cfc, P::w7, {"W4_cfc", "W5_cfc"}, "cfc permutation pair");

    add(M::mcd, P::w1, {"W1_mcd", "W2_mcd"}, "mcd examples");
    add(M::mcd, P::w3, {"W2_mcd", "W3_mcd"}, "mcd examples");
    add(M::mcd, P::w4, {"W1_mcd", "W2_mcd"}, "mcd examples");
    add(M::mcd, P::w7, {"W4_mcd", "W5_mcd"}, "mcd permutation pair");

    add(M::seq, P::w1, {"W1_seq", "W2_seq"}, "seq examples");
    add(M::seq, P::w3, {"W1_seq", "W3_seq"}, "seq examples");
    add(M::seq, P::w4, {"W1_seq", "W2_seq"}, "seq examples");
    add(M::seq, P::w5, {"W4_seq", "W0"}, "seq monotonicity figure", Operator::Par);
    all_ops(M::seq, P::w6, {"W4_seq", "W5_seq", "W0"}, "seq composition pair");

    add(M::acd, P::w1, {"W1_acd", "W2_acd"}, "acd examples");
    add(M::acd, P::w3, {"W2_acd", "W3_acd"}, "acd examples");
    add(M::acd, P::w4, {"W1_acd", "W2_acd"}, "acd examples");
    add(M::acd, P::w7, {"W7_acd", "W8_acd"}, "acd permutation pair");
    all_ops(M::acd, P::w5, {"W6_acd", "W5_acd"}, "acd monotonicity figure");

    add(M::depth, P::w1, {"W1_depth", "W3_depth"}, "depth examples");
    add(M::depth, P::w3, {"W1_depth", "W2_depth"}, "depth examples");
    add(M::depth, P::w4, {"W2_depth", "W3_depth"}, "depth examples");
    add(M::depth, P::w7, {"W5_depth", "W6_depth"}, "depth permutation pair");
    add(M::depth, P::w9, {"rev:family:depth_ladder:n=3", "family:depth_ladder:n=3"},
        "depth subadditivity analysis", Operator::Seq);
    for (Operator op : {Operator::Par, Operator::Xor, Operator::Loop})
      add(M::depth, P::w9, {"W0", "W0"}, "depth subadditivity analysis", op);

    add(M::diam, P::w1, {"W1_diam", "W3_diam"}, "diam examples");
    add(M::diam, P::w3, {"W1_diam", "W2_diam"}, "diam examples");
    add(M::diam, P::w4, {"W2_diam", "W3_diam"}, "diam examples");
    add(M::diam, P::w7, {"W4_diam", "W5_diam"}, "diam permutation pair");

    add(M::cyc, P::w1, {"W1_cyc", "W3_cyc"}, "cyc examples");
    add(M::cyc, P::w3, {"W1_cyc", "W2_cyc"}, "cyc examples");
    add(M::cyc, P::w4, {"W2_cyc", "W3_cyc"}, "cyc examples");
    add(M::cyc, P::w7, {"W4_cyc", "W5_cyc"}, "cyc permutation pair");
    for (Operator op : {Operator::Seq, Operator::Par, Operator::Xor})
      add(M::cyc, P::w5, {"W3_cyc", "W1_cyc"}, "cyc monotonicity analysis", op);
    add(M::cyc, P::w9, {"W0", "W0"}, "cyc subadditivity analysis", Operator::Loop);

    add(M::cnc, P::w1, {"W1_cnc", "W2_cnc"}, "cnc examples");
    add(M::cnc, P::w4, {"W1_cnc", "W2_cnc"}, "cnc examples");

    add(M::dens, P::w1, {"W1_dens", "W2_dens"}, "dens examples");
    add(M::dens, P::w4, {"W1_dens", "W2_dens"}, "dens examples");
    add(M::dens, P::w7, {"W3_dens", "W4_dens"}, "dens permutation pair");

    add(M::dup, P::w1, {"W1_dup", "W2_dup"}, "dup examples");
    add(M::dup, P::w3, {"W1_dup", "W3_dup"}, "dup examples");
    add(M::dup, P::w4, {"W1_dup", "W2_dup"}, "dup examples");

    add(M::esf, P::w1, {"W1_esf", "W2_esf"}, "esf examples");
    add(M::esf, P::w4, {"W1_esf", "W2_esf"}, "esf examples");
    add(M::esf, P::w7, {"W3_esf", "W4_esf"}, "esf permutation pair");
    return v;
  }();
  return cases;
}

std::string witness_relation(const WitnessCase& w) {
  switch (w.property) {
    case PropertyId::w1: return "C(m1) != C(m2)";
    case PropertyId::w3: return "m1 != m2 and C(m1) = C(m2)";
    case PropertyId::w4: return "L(m1) = L(m2) and C(m1) != C(m2)";
    case PropertyId::w5: return "C(op(m1,m2)) < C(m1) or C(op(m1,m2)) < C(m2)";
    case PropertyId::w6: return "C(m1) = C(m2) and C(op(m1,m3)) != C(op(m2,m3))";
    case PropertyId::w7: return "m2 in Perm(m1) and C(m1) != C(m2)";
    case PropertyId::w9: return "C(op(m1,m2)) > C(m1) + C(m2)";
    case PropertyId::notsup: return "C(op(m1,m2)) < C(m1) + C(m2)";
    case PropertyId::additive: return "C(op(m1,m2)) != C(m1) + C(m2)";
    default: return "";
  }
}

WitnessReplay replay(const WitnessCase& w, const MetricConfig& config, const LanguageBounds& bounds) {
  WitnessReplay r;
  std::vector<WorkflowNet> nets;
  for (const auto& ref : w.nets) nets.push_back(resolve_net_ref(ref));
  auto C = [&](const WorkflowNet& n) {
    auto v = compute(w.measure, n, config);
    r.values.push_back(v.exact_text());
    return v.exact;
  };
  auto need = [&](std::size_t k) {
    if (nets.size() < k) throw std::invalid_argument("witness needs " + std::to_string(k) + " nets");
  };
  auto composed = [&](const WorkflowNet& a, const WorkflowNet& b) {
    if (!w.op) throw std::invalid_argument("witness needs an operator");
    return compose(*w.op, a, b);
  };
  switch (w.property) {
    case PropertyId::w1: need(2); r.satisfied = C(nets[0]) != C(nets[1]); break;
    case PropertyId::w3:
      need(2);
      r.satisfied = !same_structure(nets[0], nets[1]) && C(nets[0]) == C(nets[1]);
      break;
    case PropertyId::w4: {
      need(2);
      auto l1 = bounded_language(nets[0], bounds), l2 = bounded_language(nets[1], bounds);
      bool same = !l1.truncated && !l2.truncated && l1.traces == l2.traces;
      r.satisfied = same && C(nets[0]) != C(nets[1]);
      if (!same) r.detail = "languages differ or were truncated";
      break;
    }
    case PropertyId::w5: {
      need(2);
      auto a = C(nets[0]), b = C(nets[1]), c = C(composed(nets[0], nets[1]));
      r.satisfied = c < a || c < b;
      break;
    }
    case PropertyId::w6: {
      need(3);
      auto a = C(nets[0]), b = C(nets[1]);
      auto c1 = C(composed(nets[0], nets[2])), c2 = C(composed(nets[1], nets[2]));
      r.satisfied = a == b && c1 != c2;
      break;
    }
    case PropertyId::w7:
      need(2);
      r.satisfied = is_permutation(nets[0], nets[1]) && C(nets[0]) != C(nets[1]);
      break;
    case PropertyId::w9:
    case PropertyId::notsup:
    case PropertyId::additive: {
      need(2);
      auto a = C(nets[0]), b = C(nets[1]), c = C(composed(nets[0], nets[1]));
      r.satisfied = w.property == PropertyId::w9       ? c > a + b
                    : w.property == PropertyId::notsup ? c < a + b
                                                       : c != a + b;
      break;
    }
    default:
      r.detail = "property has no replayable witness form";
  }
  return r;
}

// ---------------------------------------------------------------------------
// Search state

namespace {

struct PoolEntry {
  std::string ref;
  WorkflowNet net;
  bool block = false;  // produced by the block operators, hence sound
  bool connectors = false;
  Values values;
};

PoolEntry make_entry(std::string ref, WorkflowNet net, bool block, const MetricConfig& cfg) {
  PoolEntry e{std::move(ref), std::move(net), block, false, {}};
  e.connectors = has_connector(e.net);
  e.values = compute_values(e.net, cfg);
  return e;
}

// Closed-form composition theorems for binary compositions; the value is the
// predicate relating C(op(m1,m2)) to the operand values.
using Theorem = std::function<bool(const Rational& a, const Rational& b, const Rational& c)>;

std::optional<Theorem> identity(MetricId m, Operator op) {
  auto plus = [](long k) -> Theorem {
    return [k](const Rational& a, const Rational& b, const Rational& c) { return c == a + b + k; };
  };
  switch (m) {
    case MetricId::size: {
      constexpr long glue[] = {1, 4, 6, 10};
      return plus(glue[oi(op)]);
    }
    case MetricId::ts: return plus(op == Operator::Par ? 1 : 0);
    case MetricId::cfc: return plus(op == Operator::Seq ? 0 : op == Operator::Par ? 1 : 2);
    case MetricId::esf: return plus(0);
    case MetricId::diam:
      switch (op) {
        case Operator::Seq: return plus(1);
        case Operator::Par:
        case Operator::Xor:
          return [](const Rational& a, const Rational& b, const Rational& c) {
            return c == 4 + std::max(a, b);
          };
        case Operator::Loop:
          return [](const Rational& a, const Rational&, const Rational& c) { return c == 8 + a; };
      }
      break;
    default: break;
  }
  return std::nullopt;
}

std::optional<Theorem> subadditive(MetricId m, Operator op) {
  // Iteration closes a new cycle, so the cyclicity bound excludes it.
  if (m == MetricId::cyc && op == Operator::Loop) return std::nullopt;
  if (m == MetricId::mm || m == MetricId::cnc || m == MetricId::dens || m == MetricId::cyc)
    return [](const Rational& a, const Rational& b, const Rational& c) { return c <= a + b; };
  return std::nullopt;
}

}  // namespace

struct Harness::State {
  HarnessConfig cfg;
  std::once_flag single_once, pair_once, lang_once;
  std::vector<PoolEntry> single;
  std::vector<PoolEntry> pairs;
  // composed[op][i * n + j]: values of op(pairs[i], pairs[j])
  std::array<std::vector<Values>, 4> composed;
  std::vector<std::optional<Language>> languages;  // parallel to single

  explicit State(HarnessConfig c) : cfg(std::move(c)) {}

  std::vector<std::string> random_refs(std::size_t count, std::size_t leaves, std::uint64_t salt) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count; ++i)
      out.push_back("random:" + std::to_string(cfg.seed * 1000003 + salt + i) + ":" + std::to_string(leaves));
    return out;
  }

  std::vector<PoolEntry> build_entries(const std::vector<std::pair<std::string, bool>>& refs) const {
    std::vector<std::optional<PoolEntry>> slots(refs.size());
    parallel_for(refs.size(), [&](std::size_t i) {
      slots[i] = make_entry(refs[i].first, resolve_net_ref(refs[i].first), refs[i].second, cfg.metric_config);
    });
    std::vector<PoolEntry> out;
    for (auto& e : slots) out.push_back(std::move(*e));
    return out;
  }

  void build_single() {
    std::vector<std::pair<std::string, bool>> refs;
    for (const auto& f : list_fixtures()) refs.emplace_back(f, false);
    refs.emplace_back("single:b", true);
    refs.emplace_back("single:tau", true);
    for (const auto& info : family_catalog()) {
      for (long bump : {0L, 1L}) {
        FamilyParams p;
        for (std::size_t k = 0; k < info.params.size(); ++k) p[info.params[k]] = info.min_values[k] + bump;
        refs.emplace_back(family_ref(info.name, p), false);
      }
    }
    refs.emplace_back("rev:family:depth_ladder:n=3", false);
    for (const auto& r : random_refs(cfg.search_budget, 5, 0)) refs.emplace_back(r, true);
    single = build_entries(refs);
  }

  void build_pairs() {
    std::vector<std::pair<std::string, bool>> refs = {
        {"W0", true},          {"single:b", true},   {"single:tau", true}, {"W2_mm", false},
        {"W3_mm", false},      {"W1_ch", false},     {"W3_ch", false},     {"W4_ch", false},
        {"W5_ch", false},      {"W1_cc", false},     {"W2_cc", false},     {"W5_cc", false},
        {"W6_cc", false},      {"W2_sep", false},    {"W5_sep", false},    {"W6_sep", false},
        {"W7_sep", false},     {"W8_sep", false},    {"W2_cfc", false},    {"W2_mcd", false},
        {"W4_seq", false},     {"W5_seq", false},    {"W5_acd", false},    {"W6_acd", false},
        {"W2_ts", false},      {"W1_depth", false},  {"W3_depth", false},  {"W3_cyc", false},
        {"W3_cnc", false},     {"W2_esf", false},    {"W2_dup", false},    {"family:cc_fin:k=1", false},
        {"family:cc_fin:k=2", false}, {"family:depth_ladder:n=3", false},
        {"rev:family:depth_ladder:n=3", false}, {"family:cyc_loop:k=2", false},
        {"family:cyc_dense:k=1", false}};
    for (long k = 1; k <= 6; ++k) refs.emplace_back("family:diam_chain:k=" + std::to_string(k), false);
    for (const auto& r : random_refs(std::min<std::size_t>(cfg.search_budget, 8), 4, 500000))
      refs.emplace_back(r, true);
    pairs = build_entries(refs);
    const std::size_t n = pairs.size();
    for (auto& c : composed) c.assign(n * n, Values{});
    parallel_for(4 * n * n, [&](std::size_t k) {
      std::size_t op = k / (n * n), ij = k % (n * n);
      auto net = compose(kAllOperators[op], pairs[ij / n].net, pairs[ij % n].net);
      composed[op][ij] = compute_values(net, cfg.metric_config);
    });
  }

  void build_languages() {
    ensure_single();
    languages.assign(single.size(), std::nullopt);
    parallel_for(single.size(), [&](std::size_t i) {
      try {
        auto l = bounded_language(single[i].net, cfg.language_bounds);
        if (!l.truncated) languages[i] = std::move(l);
      } catch (const StateBudgetExceeded&) {
      }
    });
  }

  void ensure_single() { std::call_once(single_once, [&] { build_single(); }); }
  void ensure_pairs() { std::call_once(pair_once, [&] { build_pairs(); }); }
  void ensure_languages() { std::call_once(lang_once, [&] { build_languages(); }); }

  // Operands admitted to composition checks for measure m.
  bool eligible(MetricId m, const PoolEntry& e) const {
    if (m == MetricId::ch || m == MetricId::mcd || m == MetricId::acd) return e.connectors;
    return true;
  }

  PropertyVerdict check(MetricId m, PropertyId p);

  PropertyVerdict check_pair_w1_w3(MetricId m, bool differ);
  PropertyVerdict check_w2(MetricId m);
  PropertyVerdict check_w4(MetricId m);
  PropertyVerdict check_w7(MetricId m);
  PropertyVerdict check_w8(MetricId m);
  PropertyVerdict check_defined(MetricId m);
  PropertyVerdict check_minimum(MetricId m);
  PropertyVerdict check_inf(MetricId m);
  OperatorVerdict check_op(MetricId m, PropertyId p, Operator op);
};

namespace {

std::optional<WitnessReplay> replay_first(MetricId m, PropertyId p, std::optional<Operator> op,
                                          const HarnessConfig& cfg, Evidence& ev) {
  for (const auto& w : witness_catalog()) {
    if (w.measure != m || w.property != p || w.op != op) continue;
    auto r = replay(w, cfg.metric_config, cfg.language_bounds);
    ev.samples++;
    if (r.satisfied) {
      ev.nets = w.nets;
      ev.values = r.values;
      ev.relation = witness_relation(w);
      ev.note = "witness: " + w.source;
      return r;
    }
  }
  return std::nullopt;
}

}  // namespace

PropertyVerdict Harness::State::check_pair_w1_w3(MetricId m, bool differ) {
  PropertyVerdict v;
  PropertyId p = differ ? PropertyId::w1 : PropertyId::w3;
  if (replay_first(m, p, std::nullopt, cfg, v.evidence)) {
    v.status = Status::ConfirmedByWitness;
    return v;
  }
  ensure_single();
  for (std::size_t i = 0; i < single.size(); ++i) {
    for (std::size_t j = i + 1; j < single.size(); ++j) {
      const auto &a = single[i].values[mi(m)], &b = single[j].values[mi(m)];
      if (!a || !b) continue;
      ++v.evidence.samples;
      bool eq = a->exact == b->exact;
      if (differ ? !eq : (eq && !same_structure(single[i].net, single[j].net))) {
        v.status = Status::ConfirmedByWitness;
        v.evidence.nets = {single[i].ref, single[j].ref};
        v.evidence.values = {text(a), text(b)};
        v.evidence.relation = differ ? "C(m1) != C(m2)" : "m1 != m2 and C(m1) = C(m2)";
        v.evidence.note = "search";
        return v;
      }
    }
  }
  v.status = Status::NotFalsified;
  return v;
}

PropertyVerdict Harness::State::check_w4(MetricId m) {
  PropertyVerdict v;
  if (replay_first(m, PropertyId::w4, std::nullopt, cfg, v.evidence)) {
    v.status = Status::ConfirmedByWitness;
    return v;
  }
  ensure_languages();
  std::map<std::set<Trace>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < single.size(); ++i)
    if (languages[i] && single[i].values[mi(m)]) groups[languages[i]->traces].push_back(i);
  for (const auto& [lang, members] : groups) {
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b) {
        ++v.evidence.samples;
        const auto &x = single[members[a]].values[mi(m)], &y = single[members[b]].values[mi(m)];
        if (x->exact != y->exact) {
          v.status = Status::ConfirmedByWitness;
          v.evidence.nets = {single[members[a]].ref, single[members[b]].ref};
          v.evidence.values = {text(x), text(y)};
          v.evidence.relation = "L(m1) = L(m2) and C(m1) != C(m2)";
          v.evidence.note = "search";
          return v;
        }
      }
  }
  v.status = Status::NotFalsified;
  return v;
}

// Padding families with a single (silent) label: if one of them keeps the
// score constant, infinitely many nets share a value.
PropertyVerdict Harness::State::check_w2(MetricId m) {
  PropertyVerdict v;
  const std::vector<std::function<std::string(long)>> families = {
      [](long k) { return "tauify:family:diam_chain:k=" + std::to_string(k); },
      [](long k) { return "tauify:family:dens_fan:k=" + std::to_string(k); },
      [](long k) { return "tauify:family:cnc_one:k=" + std::to_string(k); },
      [](long k) { return "tauify:family:esf:k=2,n=" + std::to_string(k); },
  };
  const long K = static_cast<long>(cfg.search_budget);
  v.evidence.relation = "C(m_k) constant for k = 1..budget";
  for (const auto& fam : families) {
    std::optional<Rational> first;
    bool constant = K >= 2;
    std::vector<std::optional<Rational>> vals(K);
    parallel_for(K, [&](std::size_t i) {
      try {
        vals[i] = compute(m, resolve_net_ref(fam(static_cast<long>(i) + 1)), cfg.metric_config).exact;
      } catch (const std::exception&) {
      }
    });
    v.evidence.samples += K;
    for (const auto& x : vals) {
      if (!x || (first && *x != *first)) {
        constant = false;
        break;
      }
      first = *x;
    }
    if (constant) {
      v.status = Status::Falsified;
      v.evidence.nets = {fam(1), fam(K)};
      v.evidence.values = {rational_text(*first), rational_text(*first)};
      v.evidence.note = std::to_string(K) + " distinct nets with equal score";
      return v;
    }
  }
  v.status = Status::NotFalsified;
  return v;
}

namespace {

// Random rewiring: same transitions and labels, fresh places and flow.
std::optional<WorkflowNet> rewire(const WorkflowNet& base, Rng& rng) {
  auto d = base.describe();
  std::size_t inner = rng.below(4);
  std::vector<std::string> places{"pi", "po"};
  for (std::size_t k = 0; k < inner; ++k) places.push_back("q" + std::to_string(k));
  d.places = places;
  d.arcs.clear();
  std::vector<std::string> ins{"pi"}, outs{"po"};
  for (std::size_t k = 2; k < places.size(); ++k) {
    ins.push_back(places[k]);
    outs.push_back(places[k]);
  }
  for (const auto& t : d.transitions) {
    std::set<std::string> pre, post;
    pre.insert(ins[rng.below(ins.size())]);
    post.insert(outs[rng.below(outs.size())]);
    for (const auto& p : ins)
      if (rng.chance(1, 4)) pre.insert(p);
    for (const auto& p : outs)
      if (rng.chance(1, 4)) post.insert(p);
    for (const auto& p : pre) d.arcs.emplace_back(p, t.id);
    for (const auto& p : post) d.arcs.emplace_back(t.id, p);
  }
  d.source = "pi";
  d.sink = "po";
  d.name = "perm(" + base.net_name() + ")";
  try {
    return WorkflowNet::validate(d);
  } catch (const NetError&) {
    return std::nullopt;
  }
}

}  // namespace

PropertyVerdict Harness::State::check_w7(MetricId m) {
  PropertyVerdict v;
  if (replay_first(m, PropertyId::w7, std::nullopt, cfg, v.evidence)) {
    v.status = Status::ConfirmedByWitness;
    return v;
  }
  ensure_single();
  v.evidence.relation = "m2 in Perm(m1) and C(m1) != C(m2)";
  // Fixture permutation pairs.
  for (std::size_t i = 0; i < single.size(); ++i)
    for (std::size_t j = i + 1; j < single.size(); ++j) {
      if (!is_permutation(single[i].net, single[j].net)) continue;
      const auto &a = single[i].values[mi(m)], &b = single[j].values[mi(m)];
      if (!a || !b) continue;
      ++v.evidence.samples;
      if (a->exact != b->exact) {
        v.status = Status::ConfirmedByWitness;
        v.evidence.nets = {single[i].ref, single[j].ref};
        v.evidence.values = {text(a), text(b)};
        v.evidence.note = "permutation pair in pool";
        return v;
      }
    }
  // Budgeted rewiring of small pool nets.
  Rng rng(cfg.seed ^ 0x7e57u);
  std::size_t attempts = 0;
  for (std::size_t i = 0; i < single.size() && attempts < cfg.search_budget; ++i) {
    const auto& base = single[i];
    if (base.net.transition_count() > 6 || !base.values[mi(m)]) continue;
    for (int r = 0; r < 4 && attempts < cfg.search_budget; ++r) {
      ++attempts;
      auto perm = rewire(base.net, rng);
      if (!perm) continue;
      ++v.evidence.samples;
      try {
        auto c = compute(m, *perm, cfg.metric_config);
        if (c.exact != base.values[mi(m)]->exact) {
          v.status = Status::ConfirmedByWitness;
          v.evidence.nets = {base.ref, "rewired " + base.ref + " (" + std::to_string(r) + ")"};
          v.evidence.values = {text(base.values[mi(m)]), c.exact_text()};
          v.evidence.note = "random rewiring";
          return v;
        }
      } catch (const std::exception&) {
      }
    }
  }
  v.status = Status::NotFalsified;
  return v;
}

PropertyVerdict Harness::State::check_w8(MetricId m) {
  PropertyVerdict v;
  ensure_single();
  Rng rng(cfg.seed ^ 0x8e1au);
  v.evidence.relation = "C(relabel(m)) = C(m)";
  for (const auto& e : single) {
    if (!e.values[mi(m)]) continue;
    std::set<std::string> labels;
    for (NodeIndex t : e.net.transitions())
      if (const auto& l = e.net.label(t)) labels.insert(*l);
    std::vector<std::string> fresh;
    for (std::size_t k = 0; k < labels.size(); ++k) fresh.push_back("r" + std::to_string(k));
    for (std::size_t k = fresh.size(); k > 1; --k) std::swap(fresh[k - 1], fresh[rng.below(k)]);
    RelabelingMap map;
    std::size_t k = 0;
    for (const auto& l : labels) map[l] = fresh[k++];
    ++v.evidence.samples;
    auto c = compute(m, relabel(e.net, map), cfg.metric_config);
    if (c.exact != e.values[mi(m)]->exact) {
      v.status = Status::Falsified;
      v.evidence.nets = {e.ref};
      v.evidence.values = {text(e.values[mi(m)]), c.exact_text()};
      return v;
    }
  }
  v.status = Status::NotFalsified;
  return v;
}

PropertyVerdict Harness::State::check_defined(MetricId m) {
  PropertyVerdict v;
  ensure_single();
  MetricConfig strict = cfg.metric_config;
  strict.undefined_policy = UndefinedPolicy::Error;
  v.evidence.relation = "C(m) defined and >= 0";
  for (const auto& e : single) {
    ++v.evidence.samples;
    try {
      auto c = compute(m, e.net, strict);
      if (c.exact < 0) {
        v.status = Status::Falsified;
        v.evidence.nets = {e.ref};
        v.evidence.values = {c.exact_text()};
        return v;
      }
    } catch (const UndefinedForNet&) {
      v.status = Status::Falsified;
      v.evidence.nets = {e.ref};
      v.evidence.values = {"undefined"};
      v.evidence.note = "no connectors";
      return v;
    } catch (const std::exception&) {
    }
  }
  v.status = Status::NotFalsified;
  return v;
}

PropertyVerdict Harness::State::check_minimum(MetricId m) {
  PropertyVerdict v;
  ensure_single();
  std::optional<std::size_t> arg;
  for (std::size_t i = 0; i < single.size(); ++i) {
    const auto& x = single[i].values[mi(m)];
    if (x && (!arg || x->exact < single[*arg].values[mi(m)]->exact)) arg = i;
  }
  if (!arg) return v;
  const Rational pool_min = single[*arg].values[mi(m)]->exact;
  // A strictly decreasing family that drops below every pool value shows
  // that the pool minimum is not a minimum, and the decrease never stops.
  const long K = std::min<long>(static_cast<long>(cfg.search_budget), 40);
  for (const auto& info : family_catalog()) {
    std::vector<std::optional<Rational>> vals(K);
    parallel_for(K, [&](std::size_t i) {
      FamilyParams p;
      for (std::size_t k = 0; k < info.params.size(); ++k) p[info.params[k]] = info.min_values[k];
      p[info.params[0]] = info.min_values[0] + static_cast<long>(i);
      try {
        vals[i] = compute(m, build_family({info.name, p}), cfg.metric_config).exact;
      } catch (const std::exception&) {
      }
    });
    v.evidence.samples += K;
    bool decreasing = K >= 2;
    for (long i = 0; i < K && decreasing; ++i)
      if (!vals[i] || (i > 0 && !(*vals[i] < *vals[i - 1]))) decreasing = false;
    if (decreasing && *vals[K - 1] < pool_min) {
      v.status = Status::Falsified;
      v.evidence.nets = {family_ref(info.name, {{info.params[0], info.min_values[0]}}),
                         family_ref(info.name, {{info.params[0], info.min_values[0] + K - 1}})};
      v.evidence.values = {rational_text(*vals[0]), rational_text(*vals[K - 1])};
      v.evidence.relation = "strictly decreasing below the pool minimum";
      return v;
    }
  }
  v.status = Status::ConfirmedByWitness;
  v.evidence.nets = {single[*arg].ref};
  v.evidence.values = {rational_text(pool_min)};
  v.evidence.relation = "no net found below C(m)";
  return v;
}

PropertyVerdict Harness::State::check_inf(MetricId m) {
  static const std::map<MetricId, std::function<std::string(long)>> growth = {
      {MetricId::size, [](long k) { return "family:diam_chain:k=" + std::to_string(k); }},
      {MetricId::mm, [](long k) { return "family:mm:c=" + std::to_string(k) + ",k=1"; }},
      {MetricId::ch, [](long k) { return "family:ch:k=1,n=" + std::to_string(k + 1); }},
      {MetricId::cc, [](long k) { return "family:cc_min:k=" + std::to_string(k); }},
      {MetricId::ts, [](long k) { return "family:ts:c=" + std::to_string(k) + ",k=1"; }},
      {MetricId::sep, [](long k) { return "family:sep:m=" + std::to_string(k) + ",n=1"; }},
      {MetricId::cfc, [](long k) { return "family:cfc:c=" + std::to_string(k) + ",k=1"; }},
      {MetricId::mcd, [](long k) { return "family:mcd:c=1,n=" + std::to_string(k + 1); }},
      {MetricId::seq, [](long k) { return "family:seq:c=2,k=" + std::to_string(k); }},
      {MetricId::acd, [](long k) { return "family:acd:c=" + std::to_string(k + 1) + ",k=1"; }},
      {MetricId::depth, [](long k) { return "par_nest:" + std::to_string(k); }},
      {MetricId::diam, [](long k) { return "family:diam_chain:k=" + std::to_string(k); }},
      {MetricId::cyc, [](long k) { return "family:cyc_loop:k=" + std::to_string(k + 1); }},
      {MetricId::cnc, [](long k) { return "family:cnc_chain:k=" + std::to_string(k); }},
      {MetricId::dens, [](long k) { return "family:dens_chain:k=" + std::to_string(k); }},
      {MetricId::dup, [](long k) { return "family:dup_chain:c=" + std::to_string(k); }},
      {MetricId::esf, [](long k) { return "family:esf:k=" + std::to_string(k + 1) + ",n=1"; }},
  };
  PropertyVerdict v;
  const auto& fam = growth.at(m);
  // Family members grow linearly; 40 members keep the path searches cheap.
  const long K = std::min<long>(static_cast<long>(cfg.search_budget), 40);
  std::vector<std::optional<Rational>> vals(K);
  parallel_for(K, [&](std::size_t i) {
    try {
      vals[i] = compute(m, resolve_net_ref(fam(static_cast<long>(i) + 1)), cfg.metric_config).exact;
    } catch (const std::exception&) {
    }
  });
  std::set<Rational> distinct;
  std::size_t failed = 0;
  for (const auto& x : vals) {
    if (x) distinct.insert(*x);
    else ++failed;
  }
  v.evidence.samples = K;
  v.evidence.relation = "pairwise distinct C(m_k) along the family";
  v.evidence.note = std::to_string(distinct.size()) + " distinct values";
  if (failed) v.evidence.note += ", " + std::to_string(failed) + " members not computed";
  if (K >= 2 && distinct.size() == static_cast<std::size_t>(K)) {
    v.status = Status::ConfirmedByWitness;
    v.evidence.nets = {fam(1), fam(K)};
    v.evidence.values = {rational_text(*vals.front()), rational_text(*vals.back())};
  } else {
    v.status = Status::NotFalsified;
  }
  return v;
}

OperatorVerdict Harness::State::check_op(MetricId m, PropertyId p, Operator op) {
  OperatorVerdict ov;
  auto& ev = ov.evidence;
  bool existential = is_existential(p);
  if (replay_first(m, p, op, cfg, ev)) {
    ov.status = existential ? Status::ConfirmedByWitness : Status::Falsified;
    return ov;
  }
  ensure_pairs();
  const std::size_t n = pairs.size();
  const auto& cache = composed[oi(op)];
  auto C = [&](std::size_t i) -> const std::optional<MetricValue>& { return pairs[i].values[mi(m)]; };
  auto Cop = [&](std::size_t i, std::size_t j) -> const std::optional<MetricValue>& {
    return cache[i * n + j][mi(m)];
  };
  auto ok = [&](std::size_t i) {
    if (!eligible(m, pairs[i])) return false;
    // Iteration keeps cyc monotone only for sound nets.
    if (m == MetricId::cyc && op == Operator::Loop && p == PropertyId::w5) return pairs[i].block;
    return true;
  };
  auto found = [&](std::vector<std::size_t> idx, std::vector<std::string> vals, std::string rel) {
    ov.status = existential ? Status::ConfirmedByWitness : Status::Falsified;
    for (auto i : idx) ev.nets.push_back(pairs[i].ref);
    ev.values = std::move(vals);
    ev.relation = std::move(rel);
    ev.note = "search";
    return ov;
  };

  if (p == PropertyId::w6) {
    for (std::size_t a = 0; a < n; ++a) {
      if (!ok(a) || !C(a)) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        if (!ok(b) || !C(b) || C(a)->exact != C(b)->exact) continue;
        for (std::size_t c = 0; c < n; ++c) {
          if (!ok(c)) continue;
          const auto &x = Cop(a, c), &y = Cop(b, c);
          if (!x || !y) continue;
          ++ev.samples;
          if (x->exact != y->exact)
            return found({a, b, c}, {text(C(a)), text(C(b)), text(x), text(y)},
                         "C(m1) = C(m2) and C(op(m1,m3)) != C(op(m2,m3))");
        }
      }
    }
  } else {
    auto thm = identity(m, op);
    bool identity_ok = thm.has_value();
    auto sub = subadditive(m, op);
    bool sub_ok = sub.has_value();
    for (std::size_t a = 0; a < n; ++a) {
      if (!ok(a) || !C(a)) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (!ok(b) || !C(b) || !Cop(a, b)) continue;
        ++ev.samples;
        const Rational &x = C(a)->exact, &y = C(b)->exact, &z = Cop(a, b)->exact;
        if (thm && !(*thm)(x, y, z)) identity_ok = false;
        if (sub && !(*sub)(x, y, z)) sub_ok = false;
        bool hit = false;
        std::string rel;
        switch (p) {
          case PropertyId::w5: hit = z < x || z < y; rel = "C(op(m1,m2)) < C(m1) or C(op(m1,m2)) < C(m2)"; break;
          case PropertyId::w9: hit = z > x + y; rel = "C(op(m1,m2)) > C(m1) + C(m2)"; break;
          case PropertyId::notsup: hit = z < x + y; rel = "C(op(m1,m2)) < C(m1) + C(m2)"; break;
          case PropertyId::additive: hit = z != x + y; rel = "C(op(m1,m2)) != C(m1) + C(m2)"; break;
          default: break;
        }
        if (hit)
          return found({a, b}, {text(C(a)), text(C(b)), text(Cop(a, b))}, rel);
      }
    }
    // No witness or counterexample. Report closed-form theorems that were
    // confirmed on every sample as TheoremVerified.
    bool theorem = false;
    if (identity_ok && ev.samples > 0) {
      theorem = p == PropertyId::w5 || p == PropertyId::additive || p == PropertyId::w9 ||
                p == PropertyId::notsup;
      if (theorem) ev.note = "closed-form composition identity holds on all samples";
    }
    if (!theorem && sub_ok && p == PropertyId::w9 && ev.samples > 0) {
      theorem = true;
      ev.note = "subadditivity holds on all samples";
    }
    ov.status = theorem ? Status::TheoremVerified : Status::NotFalsified;
    return ov;
  }
  // w6 without a witness: identities that depend only on operand values make
  // the measure composition-insensitive.
  auto thm = identity(m, op);
  ov.status = Status::NotFalsified;
  if (thm && ev.samples > 0) {
    bool all = true;
    for (std::size_t a = 0; a < n && all; ++a)
      for (std::size_t b = 0; b < n && all; ++b)
        if (ok(a) && ok(b) && C(a) && C(b) && Cop(a, b))
          all = (*thm)(C(a)->exact, C(b)->exact, Cop(a, b)->exact);
    if (all) {
      ov.status = Status::TheoremVerified;
      ev.note = "closed-form composition identity holds on all samples";
    }
  }
  return ov;
}

PropertyVerdict Harness::State::check(MetricId m, PropertyId p) {
  switch (p) {
    case PropertyId::w1: return check_pair_w1_w3(m, true);
    case PropertyId::w3: return check_pair_w1_w3(m, false);
    case PropertyId::w2: return check_w2(m);
    case PropertyId::w4: return check_w4(m);
    case PropertyId::w7: return check_w7(m);
    case PropertyId::w8: return check_w8(m);
    case PropertyId::defined: return check_defined(m);
    case PropertyId::minimum: return check_minimum(m);
    case PropertyId::inf: return check_inf(m);
    default: break;
  }
  PropertyVerdict v;
  bool existential = is_existential(p);
  bool all_confirmed = true, any_falsified = false, all_theorem = true;
  for (Operator op : kAllOperators) {
    auto ov = check_op(m, p, op);
    all_confirmed &= ov.status == Status::ConfirmedByWitness;
    any_falsified |= ov.status == Status::Falsified;
    all_theorem &= ov.status == Status::TheoremVerified;
    v.evidence.samples += ov.evidence.samples;
    v.per_operator[op] = std::move(ov);
  }
  if (existential)
    v.status = all_confirmed ? Status::ConfirmedByWitness
                             : (all_theorem ? Status::TheoremVerified : Status::NotFalsified);
  else
    v.status = any_falsified ? Status::Falsified
                             : (all_theorem ? Status::TheoremVerified : Status::NotFalsified);
  return v;
}

// ---------------------------------------------------------------------------

Harness::Harness(HarnessConfig config) : s_(std::make_unique<State>(std::move(config))) {}
Harness::~Harness() = default;

PropertyVerdict Harness::check(MetricId m, PropertyId p) { return s_->check(m, p); }

Report Harness::full_report() {
  Report r;
  r.config = s_->cfg;
  s_->ensure_single();
  s_->ensure_pairs();
  s_->ensure_languages();
  for (MetricId m : kAllMetrics)
    for (PropertyId p : kAllProperties) r.cells.push_back({m, p, {}});
  // Cells only read the shared caches; each writes its own slot.
  std::mutex mu;
  parallel_for(r.cells.size(), [&](std::size_t i) {
    auto v = s_->check(r.cells[i].measure, r.cells[i].property);
    std::lock_guard lock(mu);
    r.cells[i].verdict = std::move(v);
  });
  return r;
}

const ReportCell& Report::cell(MetricId m, PropertyId p) const {
  for (const auto& c : cells)
    if (c.measure == m && c.property == p) return c;
  throw std::out_of_range("report has no cell " + std::string(to_string(m)) + "/" +
                          std::string(to_string(p)));
}

PropertyVerdict check(MetricId m, PropertyId p, const HarnessConfig& config) {
  Harness h(config);
  return h.check(m, p);
}

Report full_report(const HarnessConfig& config) {
  Harness h(config);
  return h.full_report();
}

// ---------------------------------------------------------------------------
// Expected tables

std::vector<ExpectedCell> parse_expected(std::string_view json_text) {
  auto j = nlohmann::json::parse(json_text);
  std::vector<ExpectedCell> out;
  for (const auto& c : j.at("cells")) {
    auto m = parse_metric(c.at("measure").get<std::string>());
    auto p = parse_property(c.at("property").get<std::string>());
    if (!m || !p) throw std::invalid_argument("unknown measure or property in expected table");
    ExpectedCell e{*m, *p, std::nullopt, false};
    if (c.contains("operator")) {
      e.op = parse_operator(c.at("operator").get<std::string>());
      if (!e.op) throw std::invalid_argument("unknown operator in expected table");
    }
    auto x = c.at("expected").get<std::string>();
    if (x != "yes" && x != "no") throw std::invalid_argument("expected must be yes or no");
    e.expected = x == "yes";
    out.push_back(e);
  }
  return out;
}

std::vector<ExpectedCell> load_expected(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_expected(ss.str());
}

std::vector<Mismatch> compare_to_expected(const Report& report, const std::vector<ExpectedCell>& expected) {
  std::vector<Mismatch> out;
  for (const auto& e : expected) {
    const auto& cell = report.cell(e.measure, e.property);
    bool observed;
    Status status;
    if (e.op) {
      auto it = cell.verdict.per_operator.find(*e.op);
      status = it == cell.verdict.per_operator.end() ? cell.verdict.status : it->second.status;
      observed = holds(e.property, status);
    } else {
      status = cell.verdict.status;
      observed = holds(e.property, cell.verdict);
    }
    if (observed != e.expected) out.push_back({e.measure, e.property, e.op, e.expected, observed, status});
  }
  return out;
}

std::string describe(const Mismatch& m) {
  std::string s = std::string(to_string(m.measure)) + "/" + std::string(to_string(m.property));
  if (m.op) s += "/" + std::string(to_string(*m.op));
  s += ": expected " + std::string(m.expected ? "yes" : "no") + ", observed " +
       (m.observed ? "yes" : "no") + " (" + std::string(to_string(m.status)) + ")";
  return s;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string mark(PropertyId p, Status s) { return holds(p, s) ? "Y" : "N"; }

char status_code(Status s) {
  switch (s) {
    case Status::ConfirmedByWitness: return 'C';
    case Status::Falsified: return 'F';
    case Status::NotFalsified: return 'N';
    case Status::TheoremVerified: return 'T';
  }
  return '?';
}

std::string cell_text(const ReportCell& c) {
  const auto& v = c.verdict;
  if (is_operator_scoped(c.property) && !v.per_operator.empty()) {
    bool uniform = true;
    for (const auto& [op, ov] : v.per_operator)
      uniform &= holds(c.property, ov.status) == holds(c.property, v.per_operator.begin()->second.status);
    if (!uniform) {
      std::string s;
      for (const auto& [op, ov] : v.per_operator) s += std::string(symbol(op)) + mark(c.property, ov.status);
      return s;
    }
  }
  return std::string(holds(c.property, v) ? "Y" : "N") + ":" + status_code(v.status);
}

nlohmann::json evidence_json(const Evidence& e) {
  return {{"nets", e.nets}, {"values", e.values}, {"relation", e.relation},
          {"samples", e.samples}, {"note", e.note}};
}

}  // namespace

std::string render_text(const Report& report) {
  std::ostringstream out;
  std::vector<std::string> header{"measure"};
  for (PropertyId p : kAllProperties) header.emplace_back(to_string(p));
  std::vector<std::vector<std::string>> rows{header};
  for (MetricId m : kAllMetrics) {
    std::vector<std::string> row{std::string(to_string(m))};
    for (PropertyId p : kAllProperties) row.push_back(cell_text(report.cell(m, p)));
    rows.push_back(row);
  }
  // Widths by code points so the operator symbols line up.
  auto width = [](const std::string& s) {
    std::size_t w = 0;
    for (unsigned char ch : s) w += (ch & 0xC0) != 0x80;
    return w;
  };
  std::vector<std::size_t> w(header.size(), 0);
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], width(r[i]));
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      out << r[i] << std::string(w[i] - width(r[i]), ' ');
      out << (i + 1 < r.size() ? "  " : "\n");
    }
  }
  out << "\nY/N: property holds / fails. C ConfirmedByWitness, F Falsified, N NotFalsified, "
         "T TheoremVerified.\n";
  out << "budget " << report.config.search_budget << ", seed " << report.config.seed << "\n";
  return out.str();
}

std::string render_json(const Report& report) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& c : report.cells) {
    nlohmann::json j{{"measure", to_string(c.measure)},
                     {"property", to_string(c.property)},
                     {"status", to_string(c.verdict.status)},
                     {"holds", holds(c.property, c.verdict)},
                     {"evidence", evidence_json(c.verdict.evidence)}};
    if (!c.verdict.per_operator.empty()) {
      nlohmann::json per;
      for (const auto& [op, ov] : c.verdict.per_operator)
        per[std::string(to_string(op))] = {{"status", to_string(ov.status)},
                                           {"holds", holds(c.property, ov.status)},
                                           {"evidence", evidence_json(ov.evidence)}};
      j["per_operator"] = per;
    }
    cells.push_back(j);
  }
  nlohmann::json doc{{"schema", "wfc/1"},
                     {"kind", "report"},
                     {"config", {{"budget", report.config.search_budget}, {"seed", report.config.seed}}},
                     {"cells", cells}};
  return doc.dump(2) + "\n";
}

}  // namespace wfc
