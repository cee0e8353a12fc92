#include "wfc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "detail/scc_order.hpp"

namespace wfc {

namespace {

struct MetricInfo {
  MetricId id;
  std::string_view name;
  std::string_view dimension;
};

constexpr MetricInfo kInfo[] = {
    {MetricId::size, "size", "Token Behavior Complexity"},
    {MetricId::mm, "mm", "Token Behavior Complexity"},
    {MetricId::ch, "ch", "Token Behavior Complexity"},
    {MetricId::cc, "cc", "Token Behavior Complexity"},
    {MetricId::ts, "ts", "Token Behavior Complexity"},
    {MetricId::sep, "sep", "Token Behavior Complexity"},
    {MetricId::cfc, "cfc", "Token Behavior Complexity"},
    {MetricId::mcd, "mcd", "Node IO Complexity"},
    {MetricId::seq, "seq", "Node IO Complexity"},
    {MetricId::acd, "acd", "Node IO Complexity"},
    {MetricId::depth, "depth", "Path Complexity"},
    {MetricId::diam, "diam", "Path Complexity"},
    {MetricId::cyc, "cyc", "Path Complexity"},
    {MetricId::cnc, "cnc", "Degree of Connectedness"},
    {MetricId::dens, "dens", "Degree of Connectedness"},
    {MetricId::dup, "dup", "Other"},
    {MetricId::esf, "esf", "Other"},
};

const MetricInfo& info(MetricId m) { return kInfo[static_cast<int>(m)]; }

Rational ratio(std::size_t a, std::size_t b) { return Rational(a) / Rational(b); }

MetricValue make(MetricId id, Rational v, bool special = false) {
  MetricValue mv;
  mv.id = id;
  mv.approx = v.convert_to<double>();
  mv.exact = std::move(v);
  mv.special_case = special;
  return mv;
}

MetricValue undefined(MetricId id, const MetricConfig& cfg) {
  if (cfg.undefined_policy == UndefinedPolicy::Error) throw UndefinedForNet(id);
  return make(id, 0, true);
}

Rational decimal_rational(double x, int digits) {
  BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(digits));
  double scaled = std::round(x * std::pow(10.0, digits));
  return Rational(BigInt(static_cast<long long>(scaled)), scale);
}

// Clamped per-step depth propagation; max over simple paths from `start`.
std::vector<long> lambda(const std::vector<std::vector<NodeIndex>>& succ, NodeIndex start,
                         const std::vector<bool>& split, const std::vector<bool>& join,
                         const PathBudget& budget) {
  const std::size_t n = succ.size();
  auto step = [&](long x, NodeIndex u, NodeIndex v) {
    long d = 0;
    if (split[u] && !join[v]) d = 1;
    if (!split[u] && join[v]) d = -1;
    return std::max(0L, x + d);
  };
  auto scc = detail::strongly_connected(succ);
  std::vector<long> val(n, -1), ent(n, -1);
  ent[start] = 0;
  std::size_t steps = 0;
  for (auto c : scc.topo) {
    const auto& members = scc.members[c];
    for (NodeIndex e : members) {
      if (ent[e] < 0) continue;
      val[e] = std::max(val[e], ent[e]);
      if (members.size() == 1) continue;
      // Simple paths inside the component, starting from entry e.
      std::vector<bool> on(n, false);
      std::vector<NodeIndex> path{e};
      std::vector<long> value{ent[e]};
      std::vector<std::size_t> next{0};
      on[e] = true;
      while (!path.empty()) {
        NodeIndex v = path.back();
        auto& i = next.back();
        if (i >= succ[v].size()) {
          on[v] = false;
          path.pop_back();
          value.pop_back();
          next.pop_back();
          continue;
        }
        NodeIndex w = succ[v][i++];
        if (on[w] || scc.component[w] != c) continue;
        if (++steps > budget.max_enumerated_paths) {
          if (budget.on_exceed == OnExceed::Error) throw BudgetExceeded("depth path search");
          path.clear();
          break;
        }
        long x = step(value.back(), v, w);
        val[w] = std::max(val[w], x);
        on[w] = true;
        path.push_back(w);
        value.push_back(x);
        next.push_back(0);
      }
    }
    for (NodeIndex x : members) {
      if (val[x] < 0) continue;
      for (NodeIndex y : succ[x])
        if (scc.component[y] != c) ent[y] = std::max(ent[y], step(val[x], x, y));
    }
  }
  for (auto& v : val) v = std::max(v, 0L);
  return val;
}

MetricValue compute_impl(MetricId m, const WorkflowNet& net, const MetricConfig& cfg) {
  const std::size_t n = net.node_count();
  const auto cls = classify_connectors(net);
  auto sum_post = [&](const std::vector<bool>& set) {
    std::size_t s = 0;
    for (NodeIndex v = 0; v < n; ++v)
      if (set[v]) s += net.post(v).size();
    return s;
  };
  auto sum_pre = [&](const std::vector<bool>& set) {
    std::size_t s = 0;
    for (NodeIndex v = 0; v < n; ++v)
      if (set[v]) s += net.pre(v).size();
    return s;
  };
  auto absdiff = [](std::size_t a, std::size_t b) { return a > b ? a - b : b - a; };
  auto count = [&](const std::vector<bool>& set) {
    return static_cast<std::size_t>(std::count(set.begin(), set.end(), true));
  };

  switch (m) {
    case MetricId::size:
      return make(m, n);

    case MetricId::mm:
      return make(m, absdiff(sum_post(cls.s_and), sum_pre(cls.j_and)) +
                         absdiff(sum_post(cls.s_xor), sum_pre(cls.j_xor)));

    case MetricId::ch: {
      std::size_t c_and = cls.and_connectors().size(), c_xor = cls.xor_connectors().size();
      std::size_t c = c_and + c_xor;
      if (c == 0) {
        auto v = undefined(m, cfg);
        v.is_exact = false;
        return v;
      }
      auto term = [&](std::size_t k) {
        if (k == 0) return 0.0;
        double p = static_cast<double>(k) / static_cast<double>(c);
        return -p * std::log2(p);
      };
      double h = term(c_and) + term(c_xor);
      MetricValue v;
      v.id = m;
      v.approx = h;
      v.exact = decimal_rational(h, cfg.ch_precision);
      v.is_exact = false;
      return v;
    }

    case MetricId::cc: {
      std::vector<Rational> w(n, Rational(1));
      for (NodeIndex v = 0; v < n; ++v)
        if (cls.is_xor(v)) w[v] = Rational(1, static_cast<long>(net.degree(v)));
      Rational total = max_product_sum(net, w);
      return make(m, Rational(1) - total / Rational(n * (n - 1)));
    }

    case MetricId::ts: {
      std::size_t s = 0;
      for (NodeIndex t : net.transitions()) s += net.post(t).size() - 1;
      return make(m, s);
    }

    case MetricId::sep:
      return make(m, Rational(1) - ratio(articulation_points(net).size(), n - 2));

    case MetricId::cfc:
      return make(m, count(cls.s_and) + sum_post(cls.s_xor));

    case MetricId::mcd: {
      auto c = cls.connectors();
      if (c.empty()) return undefined(m, cfg);
      std::size_t best = 0;
      for (NodeIndex v : c) best = std::max(best, net.degree(v));
      return make(m, best);
    }

    case MetricId::seq: {
      std::size_t plain = 0;
      for (auto [a, b] : net.arcs())
        if (!cls.is_connector(a) && !cls.is_connector(b)) ++plain;
      return make(m, Rational(1) - ratio(plain, net.arc_count()));
    }

    case MetricId::acd: {
      auto c = cls.connectors();
      if (c.empty()) return undefined(m, cfg);
      std::size_t s = 0;
      for (NodeIndex v : c) s += net.degree(v);
      return make(m, ratio(s, c.size()));
    }

    case MetricId::depth: {
      auto prof = depth_profile(net, cfg.path_budget);
      long best = 0;
      for (NodeIndex v = 0; v < n; ++v) best = std::max(best, std::min(prof.in[v], prof.out[v]));
      return make(m, best);
    }

    case MetricId::diam:
      return make(m, longest_trail(net, cfg.path_budget).nodes.size());

    case MetricId::cyc:
      return make(m, ratio(nodes_on_cycles(net).size(), n));

    case MetricId::cnc:
      return make(m, ratio(net.arc_count(), n));

    case MetricId::dens:
      return make(m, ratio(net.arc_count(), 2 * net.transition_count() * (net.place_count() - 1)));

    case MetricId::dup: {
      std::map<Label, std::size_t> occ;
      for (NodeIndex t : net.transitions())
        if (cfg.dup_count_tau || !is_tau(net.label(t))) ++occ[net.label(t)];
      std::size_t s = 0;
      for (const auto& [l, k] : occ) s += k - 1;
      return make(m, s);
    }

    case MetricId::esf: {
      std::size_t s = 0;
      for (NodeIndex p : net.places()) {
        bool ok = std::all_of(net.pre(p).begin(), net.pre(p).end(),
                              [&](NodeIndex t) { return cls.s_and[t]; }) &&
                  std::all_of(net.post(p).begin(), net.post(p).end(),
                              [&](NodeIndex t) { return cls.j_and[t]; });
        if (ok) ++s;
      }
      return make(m, s);
    }
  }
  throw std::logic_error("unknown metric");
}

}  // namespace

std::string_view to_string(MetricId m) { return info(m).name; }

std::optional<MetricId> parse_metric(std::string_view s) {
  for (const auto& i : kInfo)
    if (i.name == s) return i.id;
  return std::nullopt;
}

std::string_view dimension(MetricId m) { return info(m).dimension; }

UndefinedForNet::UndefinedForNet(MetricId m)
    : std::runtime_error("UndefinedForNet: " + std::string(to_string(m))), m_(m) {}

std::string rational_text(const Rational& r) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(r);
  if (boost::multiprecision::denominator(r) != 1) os << "/" << boost::multiprecision::denominator(r);
  return os.str();
}

std::string decimal_text(const Rational& r, int digits) {
  BigInt num = boost::multiprecision::numerator(r), den = boost::multiprecision::denominator(r);
  bool neg = num < 0;
  if (neg) num = -num;
  BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(digits));
  BigInt q = (num * scale * 2 + den) / (den * 2);  // round half up on the magnitude
  BigInt ip = q / scale, fp = q % scale;
  std::string frac = fp.str();
  frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  std::string out = (neg && q != 0 ? "-" : "") + ip.str();
  if (!frac.empty()) out += "." + frac;
  return out;
}

std::string MetricValue::exact_text() const {
  return is_exact ? rational_text(exact) : wfc::decimal_text(exact, 10);
}

std::string MetricValue::decimal_text(int digits) const { return wfc::decimal_text(exact, digits); }

DepthProfile depth_profile(const WorkflowNet& net, const PathBudget& budget) {
  const std::size_t n = net.node_count();
  auto cls = classify_connectors(net);
  std::vector<bool> split(n), join(n);
  for (NodeIndex v = 0; v < n; ++v) {
    split[v] = cls.is_split(v);
    join[v] = cls.is_join(v);
  }
  std::vector<std::vector<NodeIndex>> succ(n), pred(n);
  for (NodeIndex v = 0; v < n; ++v) {
    succ[v] = net.post(v);
    pred[v] = net.pre(v);
  }
  DepthProfile p;
  p.in = lambda(succ, net.source(), split, join, budget);
  // On the reversed net, joins become splits and vice versa.
  p.out = lambda(pred, net.sink(), join, split, budget);
  return p;
}

MetricValue compute(MetricId m, const WorkflowNet& net, const MetricConfig& config) {
  return compute_impl(m, net, config);
}

std::vector<MetricResult> compute_all(const WorkflowNet& net, const MetricConfig& config) {
  std::vector<MetricResult> out;
  for (MetricId m : kAllMetrics) {
    MetricResult r{m, std::nullopt, {}};
    try {
      r.value = compute(m, net, config);
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace wfc
