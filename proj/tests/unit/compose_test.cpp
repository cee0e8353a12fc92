#include "doctest.h"
#include "wfc/compose.hpp"
#include "wfc/generators.hpp"
#include "wfc/metrics.hpp"

using namespace wfc;

TEST_CASE("glue sizes") {
  auto w0 = build_fixture("W0");
  const std::pair<Operator, long> cases[] = {
      {Operator::Seq, 7}, {Operator::Par, 10}, {Operator::Xor, 12}, {Operator::Loop, 16}};
  for (auto [op, size] : cases) CHECK(compute(MetricId::size, compose(op, w0, w0)).exact == size);
  CHECK(compute(MetricId::size, compose(Operator::Seq, {w0, w0, w0})).exact == 3 * 3 + 2);
}

TEST_CASE("operand prefixes and glue names") {
  auto w0 = build_fixture("W0");
  auto par = compose(Operator::Par, w0, w0);
  CHECK(par.find("L1.t1").has_value());
  CHECK(par.find("L2.t1").has_value());
  CHECK(par.find("pi*").has_value());
  CHECK(par.find("po*").has_value());
  CHECK_FALSE(par.label(par.index_of("ti*")).has_value());
  auto fresh = compose(Operator::Par, w0, w0, GlueLabels::Fresh);
  CHECK(fresh.label(fresh.index_of("ti*")).has_value());
}

TEST_CASE("arity") {
  CHECK_THROWS_AS(compose(Operator::Seq, std::vector<WorkflowNet>{build_fixture("W0")}), CompositionError);
}

TEST_CASE("operator names") {
  for (Operator op : kAllOperators) CHECK(parse_operator(to_string(op)) == op);
  CHECK_FALSE(parse_operator("and").has_value());
}

TEST_CASE("relabel") {
  auto net = build_fixture("W2_dup");
  auto renamed = relabel(net, {{"a", "z"}});
  CHECK(compute(MetricId::dup, renamed).exact == 2);
  std::set<std::string> labels;
  for (auto t : renamed.transitions())
    if (renamed.label(t)) labels.insert(*renamed.label(t));
  CHECK(labels.count("a") == 0);
  auto back = relabel(renamed, {{"z", "a"}});
  CHECK(back.describe().transitions == net.describe().transitions);
  CHECK_THROWS_AS(relabel(build_fixture("W1_ch"), {{"a", "b"}}), NotInjective);
}

TEST_CASE("permutations") {
  CHECK(is_permutation(build_fixture("W4_mm"), build_fixture("W5_mm")));
  CHECK(is_permutation(build_fixture("W6_ch"), build_fixture("W7_ch")));
  CHECK_FALSE(is_permutation(build_fixture("W1_size"), build_fixture("W2_size")));
}
