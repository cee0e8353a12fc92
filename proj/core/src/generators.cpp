#include "wfc/generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "wfc/io.hpp"

#ifndef WFC_DEFAULT_FIXTURE_DIR
#define WFC_DEFAULT_FIXTURE_DIR "fixtures"
#endif

namespace wfc {

namespace {

// Small helper for hand-built nets. Transitions without an explicit label
// get their own id as a visible label.
class NetBuilder {
 public:
  explicit NetBuilder(std::string name) { d_.name = std::move(name); }
  NetBuilder& place(const std::string& p) {
    d_.places.push_back(p);
    return *this;
  }
  NetBuilder& transition(const std::string& t) { return transition(t, Label{t}); }
  NetBuilder& transition(const std::string& t, Label l) {
    d_.transitions.push_back({t, std::move(l)});
    return *this;
  }
  NetBuilder& arc(const std::string& a, const std::string& b) {
    d_.arcs.emplace_back(a, b);
    return *this;
  }
  // a -> t -> b with a fresh transition t.
  NetBuilder& step(const std::string& a, const std::string& t, const std::string& b) {
    transition(t);
    return arc(a, t).arc(t, b);
  }
  WorkflowNet build(const std::string& source = "pi", const std::string& sink = "po") {
    d_.source = source;
    d_.sink = sink;
    return WorkflowNet::validate(d_);
  }

 private:
  NetDescription d_;
};

std::string idx(const std::string& base, long i) { return base + std::to_string(i); }
std::string idx(const std::string& base, long i, long j) {
  return base + std::to_string(i) + "_" + std::to_string(j);
}

// pi -> t1 -> p1 -> ... -> tk -> `end`; returns the builder with places pi, p1..p(k-1).
void chain(NetBuilder& b, long k, const std::string& start, const std::string& end,
           const std::string& tname = "t", const std::string& pname = "p") {
  std::string prev = start;
  for (long i = 1; i <= k; ++i) {
    std::string next = i == k ? end : idx(pname, i);
    if (i < k) b.place(next);
    b.step(prev, idx(tname, i), next);
    prev = next;
  }
}

long param(const NetFamilySpec& s, const FamilyInfo& info, std::size_t i) {
  const auto& name = info.params[i];
  auto it = s.params.find(name);
  if (it == s.params.end()) throw ParamOutOfRange(info.name + ": missing parameter " + name);
  if (it->second < info.min_values[i])
    throw ParamOutOfRange(info.name + ": " + name + " must be >= " + std::to_string(info.min_values[i]));
  if (it->second > 200) throw ParamOutOfRange(info.name + ": " + name + " too large");
  return it->second;
}

}  // namespace

const std::vector<FamilyInfo>& family_catalog() {
  static const std::vector<FamilyInfo> catalog = {
      {"mm", {"c", "k"}, {1, 1}, MetricId::mm, "2(c+1)"},
      {"ch", {"k", "n"}, {1, 2}, MetricId::ch, "-(1/(n+1) log2 1/(n+1) + n/(n+1) log2 n/(n+1))"},
      {"cc_fin", {"k"}, {1}, MetricId::cc, "1/2"},
      {"cc_min", {"k"}, {1}, MetricId::cc, "1/(2k+4)"},
      {"ts", {"c", "k"}, {0, 1}, MetricId::ts, "c"},
      {"cfc", {"c", "k"}, {0, 1}, MetricId::cfc, "c"},
      {"mcd", {"c", "n"}, {1, 2}, MetricId::mcd, "n+1"},
      {"seq", {"c", "k"}, {2, 1}, MetricId::seq, "2/(2k+1)"},
      {"acd", {"c", "k"}, {2, 1}, MetricId::acd, "c+1/2"},
      {"sep", {"n", "m"}, {1, 1}, MetricId::sep, "1-(n+2)/(3n+2m)"},
      {"depth_ladder", {"n"}, {2}, MetricId::depth, "1"},
      {"diam_chain", {"k"}, {1}, MetricId::diam, "2k+1"},
      {"cyc_loop", {"k"}, {2}, MetricId::cyc, "1/(k+1)"},
      {"cyc_dense", {"k"}, {1}, MetricId::cyc, "k/(k+1)"},
      {"cnc_one", {"k"}, {1}, MetricId::cnc, "1"},
      {"cnc_chain", {"k"}, {1}, MetricId::cnc, "2k/(2k+1)"},
      {"dens_fan", {"k"}, {1}, MetricId::dens, "1"},
      {"dens_chain", {"k"}, {1}, MetricId::dens, "1/k"},
      {"dup_chain", {"c"}, {0}, MetricId::dup, "c"},
      {"esf", {"n", "k"}, {1, 2}, MetricId::esf, "k"},
  };
  return catalog;
}

const FamilyInfo& family_info(std::string_view name) {
  for (const auto& f : family_catalog())
    if (f.name == name) return f;
  throw ParamOutOfRange("unknown family " + std::string(name));
}

WorkflowNet build_family(const NetFamilySpec& spec) {
  const auto& info = family_info(spec.family);
  auto P = [&](std::size_t i) { return param(spec, info, i); };
  std::string name = spec.family + "(";
  for (std::size_t i = 0; i < info.params.size(); ++i)
    name += (i ? "," : "") + info.params[i] + "=" + std::to_string(P(i));
  name += ")";
  NetBuilder b(name);
  b.place("pi").place("po");
  const std::string& f = spec.family;

  // chain of k-1 transitions; returns the place that feeds t_k
  auto lead = [&](long k) -> std::string {
    if (k == 1) return "pi";
    b.place("p");
    chain(b, k - 1, "pi", "p");
    return "p";
  };
  // t_k and-splits into `width` places, each closed by its own transition into p_o
  auto fan_out = [&](long k, long width) {
    std::string tk = idx("t", k);
    b.transition(tk).arc(lead(k), tk);
    for (long j = 1; j <= width; ++j) {
      b.place(idx("q", j)).arc(tk, idx("q", j));
      b.step(idx("q", j), idx("u", j), "po");
    }
  };

  if (f == "mm") {
    fan_out(P(1), P(0) + 1);
    return b.build();
  }
  if (f == "ch") {
    long k = P(0), n = P(1);
    b.place("p");
    chain(b, k, "pi", "p");
    for (long j = 1; j <= n; ++j) {
      auto t = [&](long i) { return idx("b", j, i); };
      auto q = [&](long i) { return idx("q", j, i); };
      for (long i = 1; i <= 4; ++i) b.place(q(i));
      b.transition(t(1)).transition(t(4));
      b.arc("p", t(1)).arc(t(1), q(1)).arc(t(1), q(2));
      b.step(q(1), t(2), q(3)).step(q(2), t(3), q(4));
      b.arc(q(3), t(4)).arc(q(4), t(4)).arc(t(4), "po");
    }
    return b.build();
  }
  if (f == "cc_fin" || f == "diam_chain" || f == "dens_chain" || f == "cnc_chain") {
    chain(b, P(0), "pi", "po");
    return b.build();
  }
  if (f == "cc_min") {
    // chain t1..t(k+1) plus a back edge t(k+1) -> p(k+1) -> t1
    long k = P(0);
    chain(b, k + 1, "pi", "po");
    b.place(idx("p", k + 1)).arc(idx("t", k + 1), idx("p", k + 1)).arc(idx("p", k + 1), "t1");
    return b.build();
  }
  if (f == "ts") {
    long c = P(0), k = P(1);
    std::string tk = idx("t", k);
    b.transition(tk).arc(lead(k), tk);
    b.transition("j").arc("j", "po");
    for (long i = 1; i <= c + 1; ++i) {
      b.place(idx("x", i)).place(idx("y", i));
      b.arc(tk, idx("x", i));
      b.step(idx("x", i), idx("u", i), idx("y", i));
      b.arc(idx("y", i), "j");
    }
    return b.build();
  }
  if (f == "cfc") {
    // chain of k transitions followed by c and-diamonds in sequence
    long c = P(0), k = P(1);
    std::string cur = c == 0 ? "po" : "d0";
    if (c > 0) b.place(cur);
    chain(b, k, "pi", cur);
    for (long j = 1; j <= c; ++j) {
      std::string next = j == c ? "po" : idx("d", j);
      if (j < c) b.place(next);
      auto s = idx("s", j), jn = idx("j", j);
      b.transition(s).transition(jn).arc(cur, s).arc(jn, next);
      for (long side = 1; side <= 2; ++side) {
        auto x = idx("x", j, side), y = idx("y", j, side);
        b.place(x).place(y).arc(s, x);
        b.step(x, idx("u", j, side), y);
        b.arc(y, jn);
      }
      cur = next;
    }
    return b.build();
  }
  if (f == "mcd") {
    long c = P(0), n = P(1);
    b.place("p");
    chain(b, c, "pi", "p");
    for (long j = 1; j <= n; ++j) b.step("p", idx("u", j), "po");
    return b.build();
  }
  if (f == "seq") {
    // c alternative sequences of k transitions between p_i and p_o
    long c = P(0), k = P(1);
    for (long j = 1; j <= c; ++j) {
      std::string prev = "pi";
      for (long i = 1; i <= k; ++i) {
        std::string next = i == k ? "po" : idx("p", j, i);
        if (i < k) b.place(next);
        b.step(prev, idx("t", j, i), next);
        prev = next;
      }
    }
    return b.build();
  }
  if (f == "acd") {
    fan_out(P(1), P(0));
    return b.build();
  }
  if (f == "sep") {
    long n = P(0), m = P(1);
    b.transition("ts").transition("tj").arc("pi", "ts").arc("tj", "po");
    for (long i = 1; i <= n; ++i) {
      b.place(idx("p", i));
      b.transition(idx("l", i)).arc(idx("p", i), idx("l", i)).arc(idx("l", i), idx("p", i));
      if (i > 1) b.step(idx("p", i - 1), idx("a", i), idx("p", i));
    }
    for (long i = 1; i <= m; ++i) {
      b.place(idx("q", i));
      if (i > 1) b.step(idx("q", i - 1), idx("b", i), idx("q", i));
    }
    b.arc("ts", "p1").arc("ts", "q1").arc(idx("p", n), "tj").arc(idx("q", m), "tj");
    return b.build();
  }
  if (f == "depth_ladder") {
    // p_i fans out to n+1 transitions; all but one enter a ladder of n-1 places
    long n = P(0);
    b.step("pi", "x0", "po");
    b.place("r1");
    b.step("pi", "x1", "r1");
    for (long j = 1; j < n; ++j) {
      std::string next = j == n - 1 ? "po" : idx("r", j + 1);
      if (j < n - 1) b.place(next);
      b.step("pi", idx("x", j + 1), idx("r", j));
      b.transition(idx("h", j), Label{}).arc(idx("r", j), idx("h", j)).arc(idx("h", j), next);
    }
    return b.build();
  }
  if (f == "cyc_loop") {
    long k = P(0);
    chain(b, k, "pi", "po");
    auto p = idx("p", k - 1), t = idx("t", k + 1);
    b.transition(t).arc(p, t).arc(t, p);
    return b.build();
  }
  if (f == "cyc_dense") {
    long k = P(0);
    auto q = [&](long i) { return idx("q", i); };
    for (long i = 1; i <= k; ++i) b.place(idx("p", i)).place(q(i));
    b.step("pi", "t0", q(k));
    b.step(q(k), "t1", "p1");
    for (long i = 2; i <= k; ++i) b.step(idx("p", i - 1), idx("t", i), idx("p", i));
    std::string pk = idx("p", k);
    if (k == 1) {
      b.step(pk, "s1", q(1));
    } else {
      b.step(pk, "s1", q(1));
      for (long i = 2; i <= k; ++i) b.step(q(i - 1), idx("s", i), q(i));
    }
    b.step(pk, "s0", "po");
    return b.build();
  }
  if (f == "cnc_one") {
    long k = P(0);
    b.place("l").place("r");
    chain(b, k, "pi", "l", "a", "lp");
    b.step("l", "x1", "r").step("l", "x2", "r");
    chain(b, k, "r", "po", "b", "rp");
    return b.build();
  }
  if (f == "dens_fan") {
    long k = P(0);
    for (long j = 1; j <= k; ++j) b.step("pi", idx("t", j), "po");
    return b.build();
  }
  if (f == "dup_chain") {
    long c = P(0);
    std::string prev = "pi";
    for (long i = 1; i <= c + 1; ++i) {
      std::string next = i == c + 1 ? "po" : idx("p", i);
      if (i <= c) b.place(next);
      b.transition(idx("t", i), Label{"a"}).arc(prev, idx("t", i)).arc(idx("t", i), next);
      prev = next;
    }
    return b.build();
  }
  if (f == "esf") {
    long n = P(0), k = P(1);
    b.place("p");
    chain(b, n, "pi", "p");
    auto s = idx("t", n + 1), j = idx("t", n + 2);
    b.transition(s).transition(j).arc("p", s).arc(j, "po");
    for (long i = 1; i <= k; ++i) b.place(idx("q", i)).arc(s, idx("q", i)).arc(idx("q", i), j);
    return b.build();
  }
  throw ParamOutOfRange("unknown family " + f);
}

double family_expected_approx(const NetFamilySpec& spec) {
  if (spec.family == "ch") {
    const auto& info = family_info("ch");
    double n = static_cast<double>(param(spec, info, 1));
    double a = 1.0 / (n + 1), x = n / (n + 1);
    return -(a * std::log2(a) + x * std::log2(x));
  }
  return family_expected_exact(spec)->convert_to<double>();
}

std::optional<Rational> family_expected_exact(const NetFamilySpec& spec) {
  const auto& info = family_info(spec.family);
  auto P = [&](std::size_t i) { return Rational(param(spec, info, i)); };
  const std::string& f = spec.family;
  if (f == "mm") return 2 * (P(0) + 1);
  if (f == "ch") return std::nullopt;
  if (f == "cc_fin") return Rational(1, 2);
  if (f == "cc_min") return 1 / (2 * P(0) + 4);
  if (f == "ts" || f == "cfc" || f == "dup_chain") return P(0);
  if (f == "mcd") return P(1) + 1;
  if (f == "seq") return 2 / (2 * P(1) + 1);
  if (f == "acd") return P(0) + Rational(1, 2);
  if (f == "sep") return 1 - (P(0) + 2) / (3 * P(0) + 2 * P(1));
  if (f == "depth_ladder") return Rational(1);
  if (f == "diam_chain") return 2 * P(0) + 1;
  if (f == "cyc_loop") return 1 / (P(0) + 1);
  if (f == "cyc_dense") return P(0) / (P(0) + 1);
  if (f == "cnc_one" || f == "dens_fan") return Rational(1);
  if (f == "cnc_chain") return 2 * P(0) / (2 * P(0) + 1);
  if (f == "dens_chain") return 1 / P(0);
  if (f == "esf") return P(1);
  throw ParamOutOfRange("unknown family " + f);
}

std::filesystem::path fixture_dir() {
  if (const char* env = std::getenv("WFC_FIXTURE_DIR"); env && *env) return env;
  return WFC_DEFAULT_FIXTURE_DIR;
}

std::vector<std::string> list_fixtures() {
  std::vector<std::string> out;
  const std::string ext = ".wfnet.json";
  std::error_code ec;
  for (const auto& e : std::filesystem::directory_iterator(fixture_dir(), ec)) {
    auto name = e.path().filename().string();
    if (name.size() > ext.size() && name.compare(name.size() - ext.size(), ext.size(), ext) == 0)
      out.push_back(name.substr(0, name.size() - ext.size()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

WorkflowNet build_fixture(std::string_view name) {
  auto path = fixture_dir() / (std::string(name) + ".wfnet.json");
  if (!std::filesystem::exists(path)) throw UnknownFixture("unknown fixture " + std::string(name));
  return load_net(path);
}

WorkflowNet reversed(const WorkflowNet& net) {
  auto d = net.describe();
  for (auto& [a, b] : d.arcs) std::swap(a, b);
  std::swap(d.source, d.sink);
  d.name = "rev(" + d.name + ")";
  return WorkflowNet::validate(d);
}

WorkflowNet single_transition(const Label& label) {
  NetDescription d;
  d.name = "W0[" + label_text(label) + "]";
  d.places = {"i", "o"};
  d.transitions = {{"t", label}};
  d.arcs = {{"i", "t"}, {"t", "o"}};
  d.source = "i";
  d.sink = "o";
  return WorkflowNet::validate(d);
}

namespace {

WorkflowNet random_tree(Rng& rng, const RandomNetSpec& spec, std::size_t leaves) {
  if (leaves <= 1) {
    std::size_t a = std::max<std::size_t>(spec.leaf_alphabet_size, 1);
    std::string label(1, static_cast<char>('a' + rng.below(std::min<std::size_t>(a, 26))));
    return single_transition(label);
  }
  unsigned total = 0;
  for (auto [op, w] : spec.operator_weights) total += w;
  if (total == 0) throw std::invalid_argument("operator weights are all zero");
  auto draw = rng.below(total);
  Operator op = Operator::Seq;
  for (auto [o, w] : spec.operator_weights) {
    if (draw < w) {
      op = o;
      break;
    }
    draw -= w;
  }
  std::size_t arity = 2;
  std::size_t max_arity = std::min(spec.max_arity, leaves);
  if (max_arity > 2) arity = 2 + rng.below(max_arity - 1);
  // Split the leaves into `arity` non-empty parts.
  std::vector<std::size_t> parts(arity, 1);
  for (std::size_t rest = leaves - arity; rest > 0; --rest) ++parts[rng.below(arity)];
  std::vector<WorkflowNet> children;
  for (auto p : parts) children.push_back(random_tree(rng, spec, p));
  return compose(op, children);
}

}  // namespace

WorkflowNet random_block_net(Rng& rng, const RandomNetSpec& spec) {
  if (spec.max_leaves < 1) throw std::invalid_argument("max_leaves must be positive");
  std::size_t leaves = 1 + rng.below(spec.max_leaves);
  return random_tree(rng, spec, leaves);
}

WorkflowNet random_block_net(const RandomNetSpec& spec) {
  Rng rng(spec.seed);
  return random_block_net(rng, spec);
}

}  // namespace wfc
