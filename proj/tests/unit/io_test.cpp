#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "wfc/generators.hpp"
#include "wfc/io.hpp"
#include "wfc/metrics.hpp"

using namespace wfc;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kW0Pnml = R"(<?xml version="1.0"?>
<pnml><net id="n" type="http://www.pnml.org/version-2009/grammar/ptnet"><page id="pg">
  <place id="pi"/><place id="po"/>
  <transition id="t1"><name><text>a</text></name></transition>
  <arc id="a1" source="pi" target="t1"/><arc id="a2" source="t1" target="po"/>
</page></net></pnml>)";

}  // namespace

TEST_CASE("native round-trip on the fixture catalog") {
  for (const auto& name : list_fixtures()) {
    auto text = slurp(fixture_dir() / (name + ".wfnet.json"));
    auto net = parse_native(text);
    CHECK(write_native(net) == text);
    CHECK(parse_native(write_native(net)) == net);
  }
}

TEST_CASE("native syntax errors") {
  CHECK_THROWS_AS(parse_native("{"), SyntaxError);
  CHECK_THROWS_AS(parse_native(R"({"name":"x","places":["pi","po"],"transitions":[{"id":"t","label":"a"}],
      "arcs":[["pi","t"],["t","po"]],"source":"pi"})"),
                  SyntaxError);
}

TEST_CASE("PNML subset") {
  auto net = parse_pnml_subset(kW0Pnml);
  CHECK(net.describe().transitions == build_fixture("W0").describe().transitions);
  CHECK(compute(MetricId::size, net).exact == 3);

  std::string two_sources = kW0Pnml;
  const std::string po = "<place id=\"po\"/>";
  two_sources.replace(two_sources.find(po), po.size(),
                      "<place id=\"po\"/><place id=\"px\"/><arc id=\"a3\" source=\"px\" target=\"t1\"/>");
  CHECK_THROWS_AS(parse_pnml_subset(two_sources), NetError);

  std::string weighted = kW0Pnml;
  const std::string plain = "<arc id=\"a1\" source=\"pi\" target=\"t1\"/>";
  weighted.replace(weighted.find(plain), plain.size(),
                   "<arc id=\"a1\" source=\"pi\" target=\"t1\"><inscription><text>2</text></inscription></arc>");
  CHECK_THROWS_AS(parse_pnml_subset(weighted), UnsupportedFeature);
}

TEST_CASE("DOT export") {
  auto dot = export_dot(build_fixture("W0"));
  std::size_t nodes = 0, arcs = 0;
  std::istringstream in(dot);
  for (std::string line; std::getline(in, line);) {
    if (line.find("->") != std::string::npos)
      ++arcs;
    else if (line.find("shape=") != std::string::npos)
      ++nodes;
  }
  CHECK(nodes == 3);
  CHECK(arcs == 2);
  for (const auto& name : list_fixtures()) CHECK_FALSE(export_dot(build_fixture(name)).empty());
}

TEST_CASE("load and save by extension") {
  auto dir = std::filesystem::temp_directory_path();
  auto native = dir / "wfc_io_test.wfnet.json";
  save_native(build_fixture("W1_ch"), native);
  CHECK(load_net(native) == build_fixture("W1_ch"));
  auto pnml = dir / "wfc_io_test.pnml";
  std::ofstream(pnml) << kW0Pnml;
  CHECK(load_net(pnml).transition_count() == 1);
  std::filesystem::remove(native);
  std::filesystem::remove(pnml);
}
