#include "doctest.h"
#include "wfc/generators.hpp"
#include "wfc/graph.hpp"
#include "wfc/metrics.hpp"

using namespace wfc;

namespace {

std::set<std::string> names(const WorkflowNet& net, const std::set<NodeIndex>& nodes) {
  std::set<std::string> out;
  for (auto v : nodes) out.insert(net.name(v));
  return out;
}

std::set<std::string> traces(const Language& l) {
  std::set<std::string> out;
  for (const auto& t : l.traces) out.insert(format_trace(t));
  return out;
}

}  // namespace

TEST_CASE("articulation points") {
  auto w0 = build_fixture("W0");
  CHECK(names(w0, articulation_points(w0)) == std::set<std::string>{"t1"});
  CHECK(articulation_points(build_fixture("W2_sep")).empty());
  CHECK(articulation_points(build_fixture("W7_sep")).size() == 3);
}

TEST_CASE("nodes on cycles") {
  CHECK(nodes_on_cycles(build_fixture("W2_cyc")).empty());
  CHECK(nodes_on_cycles(build_fixture("W3_cyc")).size() == 2);
  CHECK(nodes_on_cycles(build_family({"cyc_dense", {{"k", 2}}})).size() == 8);
}

TEST_CASE("simple paths") {
  auto w0 = build_fixture("W0");
  auto paths = simple_paths(w0, w0.source(), w0.sink(), PathBudget{});
  REQUIRE(paths.size() == 1);
  CHECK(paths[0].size() == 3);
  CHECK(simple_paths(w0, w0.sink(), w0.source(), PathBudget{}).empty());
  auto mcd = build_fixture("W2_mcd");
  CHECK(simple_paths(mcd, mcd.source(), mcd.sink(), PathBudget{}).size() == 3);
}

TEST_CASE("path budget") {
  auto net = build_family({"diam_chain", {{"k", 6}}});
  PathBudget tight;
  tight.max_enumerated_paths = 2;
  CHECK_THROWS_AS(simple_paths(net, net.source(), net.sink(), tight), BudgetExceeded);
}

TEST_CASE("max product values") {
  auto net = build_fixture("W_and_cc");
  auto cls = classify_connectors(net);
  std::vector<Rational> w(net.node_count(), Rational(1));
  for (NodeIndex v = 0; v < net.node_count(); ++v)
    if (cls.is_xor(v)) w[v] = Rational(1, static_cast<long>(net.degree(v)));
  auto V = max_product_values(net, w);
  for (NodeIndex v = 0; v < net.node_count(); ++v) CHECK(V[net.sink()][v] == 0);
  CHECK(V[net.source()][net.index_of("p3")] == Rational(1, 9));
  CHECK(max_product_sum(net, w) == Rational(21) + Rational(16, 3) + Rational(5, 9));

  std::vector<Rational> bad(net.node_count(), Rational(2));
  CHECK_THROWS_AS(max_product_values(net, bad), WeightOutOfRange);
}

TEST_CASE("longest trail") {
  CHECK(longest_trail(build_fixture("W0"), PathBudget{}).nodes.size() == 3);
  CHECK(longest_trail(build_fixture("W3_diam"), PathBudget{}).nodes.size() == 5);
  CHECK(longest_trail(build_family({"diam_chain", {{"k", 4}}}), PathBudget{}).nodes.size() == 9);
}

TEST_CASE("bounded language") {
  CHECK(traces(bounded_language(build_fixture("W0"))) == std::set<std::string>{"ε", "a"});
  CHECK(traces(bounded_language(build_fixture("W1_ch"))) ==
        std::set<std::string>{"ε", "a", "b", "ac", "bd"});
  auto loop = bounded_language(build_fixture("W3_cyc"), LanguageBounds{3, 4, 1000});
  CHECK(loop.traces.count({}) == 1);
  for (const auto& t : loop.traces) CHECK(t.size() <= 3);
}
