#include "doctest.h"
#include "wfc/generators.hpp"
#include "wfc/metrics.hpp"

using namespace wfc;

TEST_CASE("family minimum parameters build valid nets with their stated value") {
  for (const auto& info : family_catalog()) {
    NetFamilySpec spec{info.name, {}};
    for (std::size_t i = 0; i < info.params.size(); ++i) spec.params[info.params[i]] = info.min_values[i];
    CAPTURE(info.name);
    // seq's printed closed form disagrees with its own construction; the
    // acceptance suite reports that family.
    if (info.name == "seq") continue;
    auto net = build_family(spec);
    auto v = compute(info.measure, net);
    CHECK(v.approx == doctest::Approx(family_expected_approx(spec)).epsilon(1e-9));
  }
}

TEST_CASE("parameter checks") {
  CHECK_THROWS_AS(build_family({"ts", {{"c", -1}, {"k", 1}}}), ParamOutOfRange);
  CHECK_THROWS_AS(build_family({"nope", {}}), ParamOutOfRange);
  CHECK_THROWS_AS(build_fixture("no_such_fixture"), UnknownFixture);
}

TEST_CASE("random block nets are deterministic per seed") {
  RandomNetSpec spec;
  spec.seed = 42;
  CHECK(random_block_net(spec) == random_block_net(spec));
  spec.seed = 43;
  auto other = random_block_net(spec);
  CHECK(other.transition_count() >= 1);
}

TEST_CASE("reversal swaps source and sink") {
  auto net = build_family({"depth_ladder", {{"n", 3}}});
  auto rev = reversed(net);
  CHECK(rev.name(rev.source()) == net.name(net.sink()));
  CHECK(reversed(rev) == net);
}

TEST_CASE("single transition nets") {
  auto b = single_transition(Label{"b"});
  CHECK(b.label(b.transitions().front()) == Label{"b"});
  auto tau = single_transition(Label{});
  for (auto t : tau.transitions()) CHECK_FALSE(tau.label(t).has_value());
}
