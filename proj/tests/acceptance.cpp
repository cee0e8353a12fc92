// Acceptance suite: one PASS/FAIL line per criterion on stdout, details on
// stderr. Pass criterion numbers as arguments to run a subset.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "wfc/compose.hpp"
#include "wfc/generators.hpp"
#include "wfc/graph.hpp"
#include "wfc/harness.hpp"
#include "wfc/metrics.hpp"
#include "wfc/net.hpp"

using namespace wfc;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> failures;
  std::string summary;

  void fail(std::string what) {
    pass = false;
    failures.push_back(std::move(what));
  }
};

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(BigInt(s));
  return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

// ---------------------------------------------------------------------------
// 1. Figure captions

struct Golden {
  std::string fixture;
  MetricId measure;
  std::string value;  // "n/d" exact, or a decimal compared within 1e-4
};

Outcome golden_suite() {
  using M = MetricId;
  const std::vector<Golden> table = {
      {"W0", M::size, "3"},          {"W0", M::depth, "0"},         {"W0", M::diam, "3"},
      {"W0", M::cnc, "2/3"},
      {"W1_size", M::size, "3"},     {"W2_size", M::size, "5"},     {"W3_size", M::size, "5"},
      {"W4_size", M::size, "6"},
      {"W1_mm", M::mm, "0"},         {"W2_mm", M::mm, "4"},         {"W3_mm", M::mm, "4"},
      {"W4_mm", M::mm, "2"},         {"W5_mm", M::mm, "0"},
      {"W1_ch", M::ch, "0.9852"},    {"W2_ch", M::ch, "0"},         {"W3_ch", M::ch, "0"},
      {"W4_ch", M::ch, "0.9183"},    {"W5_ch", M::ch, "0.9183"},
      {"W_and_cc", M::cc, "34/45"},  {"W1_cc", M::cc, "0.8796"},    {"W2_cc", M::cc, "1/2"},
      {"W3_cc", M::cc, "0"},         {"W4_cc", M::cc, "13/16"},     {"W7_cc", M::cc, "0"},
      {"W8_cc", M::cc, "53/63"},
      {"W1_ts", M::ts, "1"},         {"W2_ts", M::ts, "2"},         {"W3_ts", M::ts, "1"},
      {"W4_ts", M::ts, "2"},
      {"W1_sep", M::sep, "0"},       {"W2_sep", M::sep, "1"},       {"W3_sep", M::sep, "0"},
      {"W4_sep", M::sep, "13/14"},   {"W5_sep", M::sep, "3/4"},     {"W6_sep", M::sep, "1"},
      {"W7_sep", M::sep, "1/4"},     {"W8_sep", M::sep, "1/4"},     {"W9_sep", M::sep, "1/4"},
      {"W10_sep", M::sep, "1/2"},
      {"W1_cfc", M::cfc, "0"},       {"W2_cfc", M::cfc, "2"},       {"W3_cfc", M::cfc, "2"},
      {"W4_cfc", M::cfc, "2"},       {"W5_cfc", M::cfc, "4"},
      {"W1_mcd", M::mcd, "2"},       {"W2_mcd", M::mcd, "3"},       {"W3_mcd", M::mcd, "3"},
      {"W4_mcd", M::mcd, "3"},       {"W5_mcd", M::mcd, "4"},
      {"W1_seq", M::seq, "5/6"},     {"W2_seq", M::seq, "1/2"},     {"W3_seq", M::seq, "5/6"},
      {"W4_seq", M::seq, "1"},       {"W6_seq", M::seq, "1"},       {"W7_seq", M::seq, "7/8"},
      {"W1_acd", M::acd, "2"},       {"W2_acd", M::acd, "3"},       {"W3_acd", M::acd, "3"},
      {"W4_acd", M::acd, "11/3"},    {"W5_acd", M::acd, "4"},       {"W6_acd", M::acd, "2"},
      {"W7_acd", M::acd, "8/3"},     {"W8_acd", M::acd, "7/2"},
      {"W1_depth", M::depth, "1"},   {"W2_depth", M::depth, "1"},   {"W3_depth", M::depth, "2"},
      {"W4_depth", M::depth, "1"},   {"W5_depth", M::depth, "2"},   {"W6_depth", M::depth, "1"},
      {"W1_diam", M::diam, "3"},     {"W2_diam", M::diam, "3"},     {"W3_diam", M::diam, "5"},
      {"W4_diam", M::diam, "7"},     {"W5_diam", M::diam, "9"},
      {"W1_cyc", M::cyc, "0"},       {"W2_cyc", M::cyc, "0"},       {"W3_cyc", M::cyc, "1/3"},
      {"W4_cyc", M::cyc, "1/3"},     {"W5_cyc", M::cyc, "0"},
      {"W1_cnc", M::cnc, "2/3"},     {"W2_cnc", M::cnc, "1"},       {"W3_cnc", M::cnc, "8/5"},
      {"W1_dens", M::dens, "1"},     {"W2_dens", M::dens, "1/2"},   {"W3_dens", M::dens, "1/2"},
      {"W4_dens", M::dens, "1/3"},
      {"W1_dup", M::dup, "0"},       {"W2_dup", M::dup, "2"},       {"W3_dup", M::dup, "0"},
      {"W1_esf", M::esf, "0"},       {"W2_esf", M::esf, "2"},       {"W3_esf", M::esf, "0"},
      {"W4_esf", M::esf, "2"},
  };
  Outcome out;
  std::set<std::string> nets;
  for (const auto& g : table) {
    nets.insert(g.fixture);
    auto v = compute(g.measure, build_fixture(g.fixture));
    bool ok;
    if (g.value.find('.') != std::string::npos)
      ok = std::abs(v.approx - std::stod(g.value)) < 1e-4;
    else
      ok = v.exact == parse_rational(g.value);
    if (!ok)
      out.fail(g.fixture + " " + std::string(to_string(g.measure)) + ": caption " + g.value + ", computed " +
               v.exact_text());
  }
  if (nets.size() < 30) out.fail("only " + std::to_string(nets.size()) + " fixture nets covered");
  out.summary = std::to_string(table.size()) + " caption values on " + std::to_string(nets.size()) + " nets, " +
                std::to_string(out.failures.size()) + " mismatches";
  return out;
}

// ---------------------------------------------------------------------------
// 2. Family closed forms

Outcome family_suite() {
  Outcome out;
  std::size_t checked = 0;
  for (const auto& info : family_catalog()) {
    // Cartesian grid of every parameter from its minimum up to 6.
    std::vector<long> cur = info.min_values;
    while (true) {
      NetFamilySpec spec{info.name, {}};
      for (std::size_t i = 0; i < cur.size(); ++i) spec.params[info.params[i]] = cur[i];
      auto v = compute(info.measure, build_family(spec));
      auto expected = family_expected_exact(spec);
      bool ok = expected ? v.exact == *expected
                         : std::abs(v.approx - family_expected_approx(spec)) < 1e-9;
      ++checked;
      if (!ok) {
        std::ostringstream s;
        s << info.name << "(";
        for (std::size_t i = 0; i < cur.size(); ++i) s << (i ? "," : "") << info.params[i] << "=" << cur[i];
        s << "): formula " << (expected ? rational_text(*expected) : std::to_string(family_expected_approx(spec)))
          << ", computed " << v.exact_text();
        out.fail(s.str());
      }
      std::size_t i = 0;
      for (; i < cur.size(); ++i) {
        if (++cur[i] <= 6) break;
        cur[i] = info.min_values[i];
      }
      if (i == cur.size()) break;
    }
  }
  out.summary = std::to_string(checked) + " family instances, " + std::to_string(out.failures.size()) +
                " mismatches";
  return out;
}

// ---------------------------------------------------------------------------
// 3. Composition theorems

Outcome theorem_suite() {
  Outcome out;
  constexpr std::size_t kNets = 200;
  std::vector<WorkflowNet> nets;
  for (std::size_t i = 0; i < kNets; ++i) nets.push_back(random_block_net(RandomNetSpec{.seed = 1000 + i}));
  const long size_glue[] = {1, 4, 6, 10};
  std::size_t checks = 0;
  for (std::size_t i = 0; i < kNets; ++i) {
    const auto& a = nets[i];
    const auto& b = nets[(i + 1) % kNets];
    for (Operator op : kAllOperators) {
      auto c = compose(op, a, b);
      auto val = [&](MetricId m, const WorkflowNet& n) { return compute(m, n).exact; };
      auto expect = [&](MetricId m, bool ok, const Rational& lhs) {
        ++checks;
        if (!ok)
          out.fail("net " + std::to_string(i) + " " + std::string(to_string(op)) + " " +
                   std::string(to_string(m)) + ": composed value " + rational_text(lhs));
      };
      using M = MetricId;
      auto s = val(M::size, c);
      expect(M::size, s == val(M::size, a) + val(M::size, b) + size_glue[static_cast<int>(op)], s);
      auto t = val(M::ts, c);
      expect(M::ts, t == val(M::ts, a) + val(M::ts, b) + (op == Operator::Par ? 1 : 0), t);
      auto f = val(M::cfc, c);
      long cfc_glue = op == Operator::Seq ? 0 : op == Operator::Par ? 1 : 2;
      expect(M::cfc, f == val(M::cfc, a) + val(M::cfc, b) + cfc_glue, f);
      auto e = val(M::esf, c);
      expect(M::esf, e == val(M::esf, a) + val(M::esf, b), e);
      auto d = val(M::diam, c), da = val(M::diam, a), db = val(M::diam, b);
      Rational dexp = op == Operator::Seq    ? Rational(1 + da + db)
                      : op == Operator::Loop ? Rational(8 + da)
                                             : Rational(4 + std::max(da, db));
      expect(M::diam, d == dexp, d);
      for (M m : {M::mm, M::cnc, M::dens, M::cyc}) {
        // The cyclicity bound excludes iteration, which closes a new cycle.
        if (m == M::cyc && op == Operator::Loop) continue;
        auto x = val(m, c);
        expect(m, x <= val(m, a) + val(m, b), x);
      }
    }
  }
  out.summary = std::to_string(kNets) + " random block nets, " + std::to_string(checks) + " checks, " +
                std::to_string(out.failures.size()) + " violations";
  return out;
}

// ---------------------------------------------------------------------------
// 4. Tables

Outcome table_suite() {
  Outcome out;
  auto expected = load_expected(std::string(WFC_SOURCE_DIR) + "/tables.json");
  auto report = full_report(HarnessConfig{});
  auto mismatches = compare_to_expected(report, expected);
  for (const auto& m : mismatches) out.fail(describe(m));
  out.summary = std::to_string(expected.size()) + " expected cells, " + std::to_string(mismatches.size()) +
                " mismatches";
  out.pass = mismatches.empty();
  return out;
}

// ---------------------------------------------------------------------------
// 5. Oracles

std::vector<Rational> cc_weights(const WorkflowNet& net) {
  auto cls = classify_connectors(net);
  std::vector<Rational> w(net.node_count(), Rational(1));
  for (NodeIndex v = 0; v < net.node_count(); ++v)
    if (cls.is_xor(v)) w[v] = Rational(1, static_cast<long>(net.degree(v)));
  return w;
}

std::vector<std::vector<Rational>> brute_values(const WorkflowNet& net, const std::vector<Rational>& w) {
  const std::size_t n = net.node_count();
  std::vector<std::vector<Rational>> v(n, std::vector<Rational>(n, Rational(0)));
  for (NodeIndex a = 0; a < n; ++a)
    for (NodeIndex b = 0; b < n; ++b)
      simple_paths(net, a, b, PathBudget{}, [&](const std::vector<NodeIndex>& path) {
        Rational p(1);
        std::set<NodeIndex> seen(path.begin(), path.end());
        for (NodeIndex x : seen) p *= w[x];
        if (p > v[a][b]) v[a][b] = p;
        return true;
      });
  return v;
}

std::set<NodeIndex> brute_cut_vertices(const WorkflowNet& net) {
  auto sk = undirected_skeleton(net);
  std::vector<std::vector<NodeIndex>> adj(sk.node_count);
  for (auto [u, v] : sk.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  auto components = [&](NodeIndex removed) {
    std::vector<bool> seen(sk.node_count, false);
    std::size_t count = 0;
    for (NodeIndex s = 0; s < sk.node_count; ++s) {
      if (s == removed || seen[s]) continue;
      ++count;
      std::queue<NodeIndex> q;
      q.push(s);
      seen[s] = true;
      while (!q.empty()) {
        auto x = q.front();
        q.pop();
        for (auto y : adj[x])
          if (y != removed && !seen[y]) {
            seen[y] = true;
            q.push(y);
          }
      }
    }
    return count;
  };
  const NodeIndex none = sk.node_count;
  std::size_t base = components(none);
  std::set<NodeIndex> out;
  for (NodeIndex v = 0; v < sk.node_count; ++v)
    if (components(v) > base) out.insert(v);
  return out;
}

Outcome oracle_suite() {
  Outcome out;
  std::vector<std::pair<std::string, WorkflowNet>> nets;
  for (const auto& f : list_fixtures()) nets.emplace_back(f, build_fixture(f));
  std::size_t randoms = 0;
  for (std::uint64_t seed = 0; randoms < 100; ++seed) {
    auto net = random_block_net(RandomNetSpec{.seed = seed, .max_leaves = 3});
    if (net.node_count() > 12) continue;
    nets.emplace_back("random " + std::to_string(seed), net);
    ++randoms;
  }
  std::size_t pairs = 0;
  for (const auto& [name, net] : nets) {
    auto w = cc_weights(net);
    auto fast = max_product_values(net, w);
    auto slow = brute_values(net, w);
    for (NodeIndex a = 0; a < net.node_count(); ++a)
      for (NodeIndex b = 0; b < net.node_count(); ++b) {
        ++pairs;
        if (fast[a][b] != slow[a][b])
          out.fail(name + " V(" + net.name(a) + "," + net.name(b) + "): closure " + rational_text(fast[a][b]) +
                   ", enumeration " + rational_text(slow[a][b]));
      }
    if (articulation_points(net) != brute_cut_vertices(net)) out.fail(name + ": cut vertices differ");
  }
  out.summary = std::to_string(nets.size()) + " nets (" + std::to_string(randoms) + " random), " +
                std::to_string(pairs) + " V entries, " + std::to_string(out.failures.size()) + " discrepancies";
  return out;
}

// ---------------------------------------------------------------------------
// 6. Languages

Outcome language_suite() {
  const std::set<std::string> e_a{"ε", "a"};
  const std::vector<std::pair<std::vector<std::string>, std::set<std::string>>> cases = {
      {{"W0", "W1_size", "W2_size", "W3_cc", "W4_cc", "W1_sep", "W2_sep", "W1_cfc", "W2_cfc", "W1_mcd",
        "W2_mcd", "W1_acd", "W2_acd", "W2_diam", "W3_diam", "W1_cnc", "W2_cnc", "W1_dens", "W2_dens", "W1_dup",
        "W2_dup"},
       e_a},
      {{"W1_mm", "W2_mm"}, {"ε", "a", "b"}},
      {{"W1_ch", "W2_ch"}, {"ε", "a", "b", "ac", "bd"}},
      {{"W1_ts", "W2_ts"}, {"ε", "a", "ab", "abc", "abd", "abcd", "abdc", "abcde", "abdce"}},
      {{"W1_seq", "W2_seq"}, {"ε", "a", "ab", "ac"}},
      {{"W2_depth", "W3_depth"}, {"ε", "a", "b", "c"}},
      {{"W2_cyc", "W3_cyc", "W1_esf", "W2_esf"}, {"ε", "a", "ab"}},
  };
  Outcome out;
  std::size_t nets = 0;
  for (const auto& [fixtures, expected] : cases) {
    for (const auto& f : fixtures) {
      ++nets;
      auto lang = bounded_language(build_fixture(f));
      std::set<std::string> got;
      for (const auto& t : lang.traces) got.insert(format_trace(t));
      if (lang.truncated) out.fail(f + ": exploration truncated");
      if (got != expected) {
        std::string s;
        for (const auto& t : got) s += (s.empty() ? "" : ",") + t;
        out.fail(f + ": got {" + s + "}");
      }
    }
  }
  out.summary = std::to_string(nets) + " nets, " + std::to_string(out.failures.size()) + " differences";
  return out;
}

// ---------------------------------------------------------------------------
// 7. Structural properties on random nets

Outcome structural_suite() {
  Outcome out;
  constexpr std::size_t kNets = 1000;
  Rng rng(7);
  for (std::size_t i = 0; i < kNets; ++i) {
    auto net = random_block_net(RandomNetSpec{.seed = 50000 + i});
    try {
      auto again = WorkflowNet::validate(net.describe());
      if (!(again == net)) out.fail("net " + std::to_string(i) + ": revalidation changed the net");
    } catch (const NetError& e) {
      out.fail("net " + std::to_string(i) + ": " + e.what());
      continue;
    }
    std::set<std::string> labels;
    for (NodeIndex t : net.transitions())
      if (net.label(t)) labels.insert(*net.label(t));
    std::vector<std::string> fresh;
    for (std::size_t k = 0; k < labels.size(); ++k) fresh.push_back("x" + std::to_string(k));
    for (std::size_t k = fresh.size(); k > 1; --k) std::swap(fresh[k - 1], fresh[rng.below(k)]);
    RelabelingMap map;
    std::size_t k = 0;
    for (const auto& l : labels) map[l] = fresh[k++];
    auto renamed = relabel(net, map);
    for (MetricId m : kAllMetrics) {
      auto a = compute(m, net), b = compute(m, renamed);
      if (a.exact != b.exact)
        out.fail("net " + std::to_string(i) + " " + std::string(to_string(m)) + " changes under relabeling");
      if (m == MetricId::cnc && a.exact < Rational(2, 3))
        out.fail("net " + std::to_string(i) + " cnc " + a.exact_text() + " < 2/3");
      if (m == MetricId::cc && (a.exact < 0 || a.exact >= 1))
        out.fail("net " + std::to_string(i) + " cc " + a.exact_text() + " outside [0,1)");
    }
  }
  out.summary = std::to_string(kNets) + " random block nets, " + std::to_string(out.failures.size()) +
                " violations";
  return out;
}

struct Criterion {
  int number;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "figure-value golden suite", 10, golden_suite},
      {2, "family closed forms", 10, family_suite},
      {3, "composition theorems", 60, theorem_suite},
      {4, "table reproduction", 300, table_suite},
      {5, "oracle equivalence", 60, oracle_suite},
      {6, "language suite", 5, language_suite},
      {7, "structural properties", 60, structural_suite},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

  bool all = true;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.number)) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
      o.summary = "aborted";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) o.fail("runtime over the " + std::to_string(c.limit_seconds) + " s limit");
    for (const auto& f : o.failures) std::cerr << "  criterion " << c.number << ": " << f << "\n";
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.number << " " << c.name << ": " << o.summary
              << " (" << timing << ")" << std::endl;
    all &= o.pass;
  }
  return all ? 0 : 1;
}
