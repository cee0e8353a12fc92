#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wfc {

using NodeIndex = std::uint32_t;

enum class NodeKind { Place, Transition };

// Transition label; an empty optional is the silent label tau.
using Label = std::optional<std::string>;

inline constexpr std::string_view kTauMarker = "tau";

inline bool is_tau(const Label& l) { return !l.has_value(); }
std::string label_text(const Label& l);

enum class NetErrorKind {
  NotBipartite,
  MultipleSources,
  MultipleSinks,
  NoSource,
  NoSink,
  InvalidSource,
  InvalidSink,
  NodeOffPath,
  SourceEqualsSink,
  DanglingArc,
  DuplicateName,
  DuplicateArc,
  EmptyName,
  ReservedLabel,
  NoTransitions,
  UnknownNode,
};

std::string_view to_string(NetErrorKind k);

class NetError : public std::runtime_error {
 public:
  NetError(NetErrorKind kind, std::string element);
  NetErrorKind kind() const noexcept { return kind_; }
  const std::string& element() const noexcept { return element_; }

 private:
  NetErrorKind kind_;
  std::string element_;
};

struct TransitionDecl {
  std::string id;
  Label label;

  bool operator==(const TransitionDecl&) const = default;
};

// Unvalidated net description, the input of WorkflowNet::validate.
struct NetDescription {
  std::string name;
  std::vector<std::string> places;
  std::vector<TransitionDecl> transitions;
  std::vector<std::pair<std::string, std::string>> arcs;
  std::optional<std::string> source;  // inferred from empty presets when absent
  std::optional<std::string> sink;
};

class WorkflowNet {
 public:
  static WorkflowNet validate(const NetDescription& d);

  const std::string& net_name() const noexcept { return name_; }

  std::size_t node_count() const noexcept { return names_.size(); }
  std::size_t place_count() const noexcept { return n_places_; }
  std::size_t transition_count() const noexcept { return names_.size() - n_places_; }
  std::size_t arc_count() const noexcept { return arcs_.size(); }

  // Nodes are indexed in lexicographic name order.
  const std::string& name(NodeIndex v) const { return names_.at(v); }
  NodeKind kind(NodeIndex v) const { return kinds_.at(v); }
  bool is_place(NodeIndex v) const { return kinds_.at(v) == NodeKind::Place; }
  bool is_transition(NodeIndex v) const { return kinds_.at(v) == NodeKind::Transition; }
  const Label& label(NodeIndex t) const;

  std::optional<NodeIndex> find(std::string_view name) const;
  NodeIndex index_of(std::string_view name) const;  // throws UnknownNode

  const std::vector<NodeIndex>& pre(NodeIndex v) const { return pre_.at(v); }
  const std::vector<NodeIndex>& post(NodeIndex v) const { return post_.at(v); }
  std::size_t degree(NodeIndex v) const { return pre_.at(v).size() + post_.at(v).size(); }

  NodeIndex source() const noexcept { return source_; }
  NodeIndex sink() const noexcept { return sink_; }

  // Sorted by (from, to).
  const std::vector<std::pair<NodeIndex, NodeIndex>>& arcs() const noexcept { return arcs_; }
  std::vector<NodeIndex> places() const;
  std::vector<NodeIndex> transitions() const;

  // Name-level queries.
  std::set<std::string> preset(std::string_view v) const;
  std::set<std::string> postset(std::string_view v) const;
  std::size_t degree(std::string_view v) const;

  // Canonical description (lexicographic nodes and arcs, explicit source/sink).
  NetDescription describe() const;

  WorkflowNet with_name(std::string name) const;

  friend bool operator==(const WorkflowNet& a, const WorkflowNet& b);

 private:
  WorkflowNet() = default;

  std::string name_;
  std::vector<std::string> names_;
  std::vector<NodeKind> kinds_;
  std::vector<Label> labels_;  // indexed by node; unused for places
  std::vector<std::vector<NodeIndex>> pre_, post_;
  std::vector<std::pair<NodeIndex, NodeIndex>> arcs_;
  std::size_t n_places_ = 0;
  NodeIndex source_ = 0, sink_ = 0;
};

struct ConnectorClassification {
  std::vector<bool> s_xor, j_xor, s_and, j_and;

  bool is_xor(NodeIndex v) const { return s_xor[v] || j_xor[v]; }
  bool is_and(NodeIndex v) const { return s_and[v] || j_and[v]; }
  bool is_connector(NodeIndex v) const { return is_xor(v) || is_and(v); }
  bool is_split(NodeIndex v) const { return s_xor[v] || s_and[v]; }
  bool is_join(NodeIndex v) const { return j_xor[v] || j_and[v]; }

  std::vector<NodeIndex> xor_connectors() const;
  std::vector<NodeIndex> and_connectors() const;
  std::vector<NodeIndex> connectors() const;
};

ConnectorClassification classify_connectors(const WorkflowNet& net);

}  // namespace wfc
