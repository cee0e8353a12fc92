#include <cmath>

#include "doctest.h"
#include "wfc/compose.hpp"
#include "wfc/generators.hpp"
#include "wfc/metrics.hpp"

using namespace wfc;

namespace {

Rational value(MetricId m, const std::string& fixture) { return compute(m, build_fixture(fixture)).exact; }

}  // namespace

TEST_CASE("W0 values") {
  auto w0 = build_fixture("W0");
  CHECK(compute(MetricId::size, w0).exact == 3);
  CHECK(compute(MetricId::cnc, w0).exact == Rational(2, 3));
  CHECK(compute(MetricId::diam, w0).exact == 3);
  CHECK(compute(MetricId::depth, w0).exact == 0);
  CHECK(compute(MetricId::dens, w0).exact == 1);
}

TEST_CASE("caption values") {
  CHECK(value(MetricId::cc, "W_and_cc") == Rational(34, 45));
  CHECK(value(MetricId::cc, "W4_cc") == Rational(13, 16));
  CHECK(value(MetricId::cc, "W8_cc") == Rational(53, 63));
  CHECK(value(MetricId::sep, "W4_sep") == Rational(13, 14));
  CHECK(value(MetricId::seq, "W1_seq") == Rational(5, 6));
  CHECK(value(MetricId::acd, "W4_acd") == Rational(11, 3));
  CHECK(value(MetricId::cnc, "W3_cnc") == Rational(8, 5));
  CHECK(compute(MetricId::ch, build_fixture("W1_ch")).approx == doctest::Approx(0.9852).epsilon(1e-4));
}

TEST_CASE("undefined measures") {
  auto w0 = build_fixture("W0");
  auto v = compute(MetricId::mcd, w0);
  CHECK(v.special_case);
  CHECK(v.exact == 0);
  MetricConfig strict;
  strict.undefined_policy = UndefinedPolicy::Error;
  CHECK_THROWS_AS(compute(MetricId::ch, w0, strict), UndefinedForNet);
  CHECK_THROWS_AS(compute(MetricId::acd, w0, strict), UndefinedForNet);
}

TEST_CASE("compute_all records every measure") {
  auto results = compute_all(build_fixture("M_example"));
  CHECK(results.size() == std::size(kAllMetrics));
  for (const auto& r : results) CHECK(r.value.has_value());
}

TEST_CASE("depth profile and composition") {
  auto w0 = build_fixture("W0");
  CHECK(compute(MetricId::depth, compose(Operator::Par, w0, w0)).exact == 1);
  auto p = depth_profile(build_fixture("W3_depth"));
  CHECK(*std::max_element(p.in.begin(), p.in.end()) >= 2);
}

TEST_CASE("text rendering") {
  CHECK(rational_text(Rational(4, 6)) == "2/3");
  CHECK(rational_text(Rational(5)) == "5");
  CHECK(decimal_text(Rational(2, 3), 4) == "0.6667");
  CHECK(decimal_text(Rational(-1, 8), 2) == "-0.13");
  for (MetricId m : kAllMetrics) CHECK(parse_metric(to_string(m)) == m);
}
