#include "doctest.h"
#include "wfc/generators.hpp"
#include "wfc/net.hpp"

using namespace wfc;

namespace {

NetDescription w0_description() {
  NetDescription d;
  d.name = "W0";
  d.places = {"pi", "po"};
  d.transitions = {{"t", Label{"a"}}};
  d.arcs = {{"pi", "t"}, {"t", "po"}};
  return d;
}

NetErrorKind error_of(const NetDescription& d) {
  try {
    WorkflowNet::validate(d);
  } catch (const NetError& e) {
    return e.kind();
  }
  FAIL("validation unexpectedly succeeded");
  return NetErrorKind::UnknownNode;
}

}  // namespace

TEST_CASE("validate infers source and sink and indexes nodes by name") {
  auto net = WorkflowNet::validate(w0_description());
  CHECK(net.node_count() == 3);
  CHECK(net.place_count() == 2);
  CHECK(net.transition_count() == 1);
  CHECK(net.name(net.source()) == "pi");
  CHECK(net.name(net.sink()) == "po");
  CHECK(net.index_of("pi") < net.index_of("po"));
  CHECK(net.preset("t") == std::set<std::string>{"pi"});
}

TEST_CASE("validation errors") {
  auto d = w0_description();
  SUBCASE("place to place arc") {
    d.places.push_back("q");
    d.arcs.push_back({"pi", "q"});
    CHECK(error_of(d) == NetErrorKind::NotBipartite);
  }
  SUBCASE("dangling arc") {
    d.arcs.push_back({"t", "nowhere"});
    CHECK(error_of(d) == NetErrorKind::DanglingArc);
  }
  SUBCASE("duplicate arc") {
    d.arcs.push_back({"pi", "t"});
    CHECK(error_of(d) == NetErrorKind::DuplicateArc);
  }
  SUBCASE("no transitions") {
    d.transitions.clear();
    d.arcs.clear();
    CHECK(error_of(d) == NetErrorKind::NoTransitions);
  }
  SUBCASE("two sources") {
    d.places.push_back("p2");
    d.arcs.push_back({"p2", "t"});
    CHECK(error_of(d) == NetErrorKind::MultipleSources);
  }
  SUBCASE("node off the source-sink path") {
    d.transitions.push_back({"u", Label{"b"}});
    d.places.push_back("q");
    d.arcs.push_back({"pi", "u"});
    d.arcs.push_back({"u", "q"});
    d.arcs.push_back({"q", "u"});
    d.sink = "po";
    CHECK(error_of(d) == NetErrorKind::NodeOffPath);
  }
  SUBCASE("reserved label") {
    d.transitions[0].label = std::string(kTauMarker);
    CHECK(error_of(d) == NetErrorKind::ReservedLabel);
  }
}

TEST_CASE("describe and validate round-trip") {
  for (const auto& name : list_fixtures()) {
    auto net = build_fixture(name);
    CHECK(WorkflowNet::validate(net.describe()) == net);
  }
}

TEST_CASE("connector classification") {
  auto net = build_fixture("W1_mm");
  auto cls = classify_connectors(net);
  CHECK(cls.s_xor[net.source()]);
  CHECK(cls.j_xor[net.sink()]);
  CHECK_FALSE(cls.is_and(net.index_of("t1")));
  auto par = build_fixture("W2_ts");
  CHECK_FALSE(classify_connectors(par).and_connectors().empty());
}
