#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "wfc/net.hpp"

namespace wfc {

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class UnsupportedFeature : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Native format: {"name", "places", "transitions": [{"id", "label"|null}],
// "arcs": [[from, to]], "source", "sink"}.
WorkflowNet parse_native(std::string_view text);
std::string write_native(const WorkflowNet& net);

// PNML with a single page; transition names are labels (absent, empty or
// "tau" means silent). Source and sink are inferred.
WorkflowNet parse_pnml_subset(std::string_view text);

std::string export_dot(const WorkflowNet& net);

// Chooses the parser by extension (.pnml, otherwise native).
WorkflowNet load_net(const std::filesystem::path& path);
void save_native(const WorkflowNet& net, const std::filesystem::path& path);

}  // namespace wfc
