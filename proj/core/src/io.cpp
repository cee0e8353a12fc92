#include "wfc/io.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <algorithm>
#include <fstream>
#include "json.hpp"
#include <sstream>

namespace wfc {

using nlohmann::json;

SyntaxError::SyntaxError(std::size_t line, const std::string& what)
    : std::runtime_error("SyntaxError(line " + std::to_string(line) + "): " + what), line_(line) {}

namespace {

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

const json& field(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw SyntaxError(1, std::string("missing field '") + key + "'");
  return *it;
}

std::string str(const json& j, const char* what) {
  if (!j.is_string()) throw SyntaxError(1, std::string(what) + " must be a string");
  return j.get<std::string>();
}

}  // namespace

WorkflowNet parse_native(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SyntaxError(line_of(text, e.byte), e.what());
  }
  if (!doc.is_object()) throw SyntaxError(1, "document must be an object");
  static const char* known[] = {"name", "places", "transitions", "arcs", "source", "sink"};
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (std::find_if(std::begin(known), std::end(known),
                     [&](const char* k) { return it.key() == k; }) == std::end(known))
      throw SyntaxError(1, "unknown field '" + it.key() + "'");

  NetDescription d;
  d.name = doc.contains("name") ? str(doc["name"], "name") : std::string();
  const auto& places = field(doc, "places");
  const auto& transitions = field(doc, "transitions");
  const auto& arcs = field(doc, "arcs");
  if (!places.is_array() || !transitions.is_array() || !arcs.is_array())
    throw SyntaxError(1, "places, transitions and arcs must be arrays");
  for (const auto& p : places) d.places.push_back(str(p, "place"));
  for (const auto& t : transitions) {
    if (!t.is_object()) throw SyntaxError(1, "transition must be an object");
    TransitionDecl td;
    td.id = str(field(t, "id"), "transition id");
    const auto& l = field(t, "label");
    if (!l.is_null()) td.label = str(l, "label");
    d.transitions.push_back(std::move(td));
  }
  for (const auto& a : arcs) {
    if (!a.is_array() || a.size() != 2) throw SyntaxError(1, "arc must be a [from, to] pair");
    d.arcs.emplace_back(str(a[0], "arc end"), str(a[1], "arc end"));
  }
  d.source = str(field(doc, "source"), "source");
  d.sink = str(field(doc, "sink"), "sink");
  return WorkflowNet::validate(d);
}

std::string write_native(const WorkflowNet& net) {
  auto d = net.describe();
  auto q = [](const std::string& s) { return json(s).dump(); };
  std::ostringstream os;
  os << "{\n  \"name\": " << q(d.name) << ",\n  \"places\": [";
  for (std::size_t i = 0; i < d.places.size(); ++i) os << (i ? ", " : "") << q(d.places[i]);
  os << "],\n  \"transitions\": [\n";
  for (std::size_t i = 0; i < d.transitions.size(); ++i) {
    const auto& t = d.transitions[i];
    os << "    {\"id\": " << q(t.id) << ", \"label\": " << (t.label ? q(*t.label) : "null") << "}"
       << (i + 1 < d.transitions.size() ? ",\n" : "\n");
  }
  os << "  ],\n  \"arcs\": [\n";
  for (std::size_t i = 0; i < d.arcs.size(); ++i)
    os << "    [" << q(d.arcs[i].first) << ", " << q(d.arcs[i].second) << "]"
       << (i + 1 < d.arcs.size() ? ",\n" : "\n");
  os << "  ],\n  \"source\": " << q(*d.source) << ",\n  \"sink\": " << q(*d.sink) << "\n}\n";
  return os.str();
}

WorkflowNet parse_pnml_subset(std::string_view text) {
  namespace pt = boost::property_tree;
  pt::ptree doc;
  std::istringstream in{std::string(text)};
  try {
    pt::read_xml(in, doc);
  } catch (const pt::xml_parser_error& e) {
    throw SyntaxError(e.line(), e.message());
  }
  auto root = doc.get_child_optional("pnml");
  if (!root) throw SyntaxError(1, "missing <pnml> root");
  std::vector<const pt::ptree*> nets;
  for (const auto& [k, v] : *root)
    if (k == "net") nets.push_back(&v);
  if (nets.size() != 1) throw UnsupportedFeature("exactly one <net> element is supported");
  const pt::ptree& net = *nets.front();

  std::vector<const pt::ptree*> pages;
  for (const auto& [k, v] : net)
    if (k == "page") pages.push_back(&v);
  if (pages.size() > 1) throw UnsupportedFeature("multiple pages");
  const pt::ptree& body = pages.empty() ? net : *pages.front();

  NetDescription d;
  d.name = net.get("name.text", net.get("<xmlattr>.id", std::string()));
  for (const auto& [k, v] : body) {
    if (k == "place") {
      d.places.push_back(v.get<std::string>("<xmlattr>.id"));
    } else if (k == "transition") {
      TransitionDecl t;
      t.id = v.get<std::string>("<xmlattr>.id");
      auto name = v.get("name.text", std::string());
      if (!name.empty() && name != kTauMarker) t.label = name;
      d.transitions.push_back(std::move(t));
    } else if (k == "arc") {
      auto w = v.get_optional<std::string>("inscription.text");
      if (w && *w != "1") throw UnsupportedFeature("arc inscription " + *w);
      d.arcs.emplace_back(v.get<std::string>("<xmlattr>.source"),
                          v.get<std::string>("<xmlattr>.target"));
    } else if (k == "page") {
      throw UnsupportedFeature("nested pages");
    }
  }
  return WorkflowNet::validate(d);
}

std::string export_dot(const WorkflowNet& net) {
  auto q = [](const std::string& s) { return json(s).dump(); };
  std::ostringstream os;
  os << "digraph " << q(net.net_name()) << " {\n  rankdir=LR;\n";
  for (NodeIndex v = 0; v < net.node_count(); ++v) {
    os << "  " << q(net.name(v)) << " [";
    if (net.is_place(v)) {
      os << "shape=circle, label=\"\"";
      if (v == net.source()) os << ", xlabel=\"p_i\"";
      if (v == net.sink()) os << ", xlabel=\"p_o\"";
    } else if (is_tau(net.label(v))) {
      os << "shape=box, style=filled, fillcolor=gray30, label=\"\"";
    } else {
      os << "shape=box, label=" << q(*net.label(v));
    }
    os << "];\n";
  }
  for (auto [a, b] : net.arcs()) os << "  " << q(net.name(a)) << " -> " << q(net.name(b)) << ";\n";
  os << "}\n";
  return os.str();
}

WorkflowNet load_net(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  if (path.extension() == ".pnml") return parse_pnml_subset(ss.str());
  return parse_native(ss.str());
}

void save_native(const WorkflowNet& net, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << write_native(net);
}

}  // namespace wfc
