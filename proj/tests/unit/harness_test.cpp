#include "doctest.h"
#include "wfc/harness.hpp"

using namespace wfc;

TEST_CASE("every catalog witness replays") {
  for (const auto& w : witness_catalog()) {
    CAPTURE(std::string(to_string(w.measure)) + " " + std::string(to_string(w.property)) + " " + w.source);
    auto r = replay(w);
    CHECK(r.satisfied);
  }
}

TEST_CASE("net references") {
  CHECK(resolve_net_ref("W0").transition_count() == 1);
  CHECK(resolve_net_ref("family:diam_chain:k=3").transition_count() == 3);
  CHECK(resolve_net_ref("rev:W0").transition_count() == 1);
  auto tau = resolve_net_ref("tauify:W1_ch");
  for (auto t : tau.transitions()) CHECK_FALSE(tau.label(t).has_value());
  CHECK(resolve_net_ref("par_nest:2").transition_count() == 3 + 4);
  CHECK(resolve_net_ref("random:5:4") == resolve_net_ref("random:5:4"));
}

TEST_CASE("truth mapping") {
  CHECK(holds(PropertyId::w1, Status::ConfirmedByWitness));
  CHECK_FALSE(holds(PropertyId::w1, Status::NotFalsified));
  CHECK(holds(PropertyId::w5, Status::TheoremVerified));
  CHECK_FALSE(holds(PropertyId::w5, Status::Falsified));
  for (PropertyId p : kAllProperties) CHECK(parse_property(to_string(p)) == p);
}

TEST_CASE("single checks") {
  HarnessConfig cfg;
  cfg.search_budget = 20;
  auto size_w1 = check(MetricId::size, PropertyId::w1, cfg);
  CHECK(size_w1.status == Status::ConfirmedByWitness);
  CHECK(size_w1.evidence.nets == std::vector<std::string>{"W1_size", "W2_size"});
  auto mm_w5 = check(MetricId::mm, PropertyId::w5, cfg);
  CHECK(mm_w5.status == Status::Falsified);
  CHECK(mm_w5.per_operator.size() == 4);
  auto size_add = check(MetricId::esf, PropertyId::additive, cfg);
  CHECK(size_add.per_operator.at(Operator::Par).status == Status::TheoremVerified);
  auto cc_min = check(MetricId::cc, PropertyId::minimum, cfg);
  CHECK(cc_min.status == Status::Falsified);
  auto ch_def = check(MetricId::ch, PropertyId::defined, cfg);
  CHECK(ch_def.status == Status::Falsified);
}

TEST_CASE("expected table comparison") {
  HarnessConfig cfg;
  cfg.search_budget = 10;
  Harness h(cfg);
  Report report;
  report.config = cfg;
  for (PropertyId p : {PropertyId::w1, PropertyId::w5})
    report.cells.push_back({MetricId::size, p, h.check(MetricId::size, p)});
  auto table = parse_expected(R"({"cells": [
      {"measure": "size", "property": "w1", "expected": "yes"},
      {"measure": "size", "property": "w5", "operator": "par", "expected": "yes"}]})");
  CHECK(compare_to_expected(report, table).empty());

  // One flipped cell yields exactly one mismatch.
  table[0].expected = false;
  auto mismatches = compare_to_expected(report, table);
  REQUIRE(mismatches.size() == 1);
  CHECK(mismatches[0].property == PropertyId::w1);
  CHECK(describe(mismatches[0]).find("size/w1") != std::string::npos);

  CHECK_THROWS(parse_expected(R"({"cells": [{"measure": "size", "property": "w1", "expected": "maybe"}]})"));
  CHECK(render_json(report).find("\"kind\": \"report\"") != std::string::npos);
}

TEST_CASE("shipped table parses") {
  auto table = load_expected(std::string(WFC_SOURCE_DIR) + "/tables.json");
  CHECK(table.size() == 268);
}
