#include "wfc/net.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace wfc {

std::string label_text(const Label& l) { return l ? *l : std::string(kTauMarker); }

std::string_view to_string(NetErrorKind k) {
  switch (k) {
    case NetErrorKind::NotBipartite: return "NotBipartite";
    case NetErrorKind::MultipleSources: return "MultipleSources";
    case NetErrorKind::MultipleSinks: return "MultipleSinks";
    case NetErrorKind::NoSource: return "NoSource";
    case NetErrorKind::NoSink: return "NoSink";
    case NetErrorKind::InvalidSource: return "InvalidSource";
    case NetErrorKind::InvalidSink: return "InvalidSink";
    case NetErrorKind::NodeOffPath: return "NodeOffPath";
    case NetErrorKind::SourceEqualsSink: return "SourceEqualsSink";
    case NetErrorKind::DanglingArc: return "DanglingArc";
    case NetErrorKind::DuplicateName: return "DuplicateName";
    case NetErrorKind::DuplicateArc: return "DuplicateArc";
    case NetErrorKind::EmptyName: return "EmptyName";
    case NetErrorKind::ReservedLabel: return "ReservedLabel";
    case NetErrorKind::NoTransitions: return "NoTransitions";
    case NetErrorKind::UnknownNode: return "UnknownNode";
  }
  return "?";
}

NetError::NetError(NetErrorKind kind, std::string element)
    : std::runtime_error(std::string(to_string(kind)) + ": " + element),
      kind_(kind),
      element_(std::move(element)) {}

namespace {

std::vector<bool> reach(std::size_t n, NodeIndex start,
                        const std::vector<std::vector<NodeIndex>>& adj) {
  std::vector<bool> seen(n, false);
  std::vector<NodeIndex> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    NodeIndex v = stack.back();
    stack.pop_back();
    for (NodeIndex w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace

WorkflowNet WorkflowNet::validate(const NetDescription& d) {
  std::map<std::string, std::pair<NodeKind, Label>> decl;
  for (const auto& p : d.places) {
    if (p.empty()) throw NetError(NetErrorKind::EmptyName, "place");
    if (!decl.emplace(p, std::pair{NodeKind::Place, Label{}}).second)
      throw NetError(NetErrorKind::DuplicateName, p);
  }
  for (const auto& t : d.transitions) {
    if (t.id.empty()) throw NetError(NetErrorKind::EmptyName, "transition");
    if (t.label && (t.label->empty() || *t.label == kTauMarker))
      throw NetError(NetErrorKind::ReservedLabel, t.id);
    if (!decl.emplace(t.id, std::pair{NodeKind::Transition, t.label}).second)
      throw NetError(NetErrorKind::DuplicateName, t.id);
  }
  if (d.transitions.empty()) throw NetError(NetErrorKind::NoTransitions, d.name);

  WorkflowNet net;
  net.name_ = d.name;
  std::map<std::string, NodeIndex, std::less<>> index;
  for (const auto& [name, kl] : decl) {
    index.emplace(name, static_cast<NodeIndex>(net.names_.size()));
    net.names_.push_back(name);
    net.kinds_.push_back(kl.first);
    net.labels_.push_back(kl.second);
    if (kl.first == NodeKind::Place) ++net.n_places_;
  }
  const std::size_t n = net.names_.size();
  net.pre_.assign(n, {});
  net.post_.assign(n, {});

  for (const auto& [a, b] : d.arcs) {
    auto ia = index.find(a), ib = index.find(b);
    if (ia == index.end()) throw NetError(NetErrorKind::DanglingArc, a + "->" + b);
    if (ib == index.end()) throw NetError(NetErrorKind::DanglingArc, a + "->" + b);
    if (net.kinds_[ia->second] == net.kinds_[ib->second])
      throw NetError(NetErrorKind::NotBipartite, a + "->" + b);
    net.arcs_.emplace_back(ia->second, ib->second);
  }
  std::sort(net.arcs_.begin(), net.arcs_.end());
  for (std::size_t i = 1; i < net.arcs_.size(); ++i) {
    if (net.arcs_[i] == net.arcs_[i - 1])
      throw NetError(NetErrorKind::DuplicateArc,
                     net.names_[net.arcs_[i].first] + "->" + net.names_[net.arcs_[i].second]);
  }
  for (auto [a, b] : net.arcs_) {
    net.post_[a].push_back(b);
    net.pre_[b].push_back(a);
  }
  for (auto& v : net.pre_) std::sort(v.begin(), v.end());

  auto resolve = [&](const std::optional<std::string>& declared, bool want_source) -> NodeIndex {
    const auto& side = want_source ? net.pre_ : net.post_;
    if (declared) {
      auto it = index.find(*declared);
      if (it == index.end() || net.kinds_[it->second] != NodeKind::Place)
        throw NetError(want_source ? NetErrorKind::InvalidSource : NetErrorKind::InvalidSink,
                       *declared);
      if (!side[it->second].empty())
        throw NetError(want_source ? NetErrorKind::InvalidSource : NetErrorKind::InvalidSink,
                       *declared);
      return it->second;
    }
    std::vector<NodeIndex> cands;
    for (NodeIndex v = 0; v < n; ++v)
      if (net.kinds_[v] == NodeKind::Place && side[v].empty()) cands.push_back(v);
    if (cands.empty())
      throw NetError(want_source ? NetErrorKind::NoSource : NetErrorKind::NoSink, d.name);
    if (cands.size() > 1) {
      std::string who;
      for (NodeIndex v : cands) who += (who.empty() ? "" : ",") + net.names_[v];
      throw NetError(want_source ? NetErrorKind::MultipleSources : NetErrorKind::MultipleSinks,
                     who);
    }
    return cands.front();
  };
  net.source_ = resolve(d.source, true);
  net.sink_ = resolve(d.sink, false);
  if (net.source_ == net.sink_) throw NetError(NetErrorKind::SourceEqualsSink, net.names_[net.source_]);

  auto fwd = reach(n, net.source_, net.post_);
  auto bwd = reach(n, net.sink_, net.pre_);
  for (NodeIndex v = 0; v < n; ++v)
    if (!fwd[v] || !bwd[v]) throw NetError(NetErrorKind::NodeOffPath, net.names_[v]);

  // Every node is reachable from the source, so only the source has an empty
  // preset; symmetric for the sink. Transitions with an empty side are
  // impossible for the same reason.
  for (NodeIndex v = 0; v < n; ++v) {
    if (v != net.source_ && net.pre_[v].empty())
      throw NetError(NetErrorKind::MultipleSources, net.names_[v]);
    if (v != net.sink_ && net.post_[v].empty())
      throw NetError(NetErrorKind::MultipleSinks, net.names_[v]);
  }
  return net;
}

const Label& WorkflowNet::label(NodeIndex t) const {
  if (!is_transition(t)) throw NetError(NetErrorKind::UnknownNode, names_.at(t) + " is not a transition");
  return labels_[t];
}

std::optional<NodeIndex> WorkflowNet::find(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<NodeIndex>(it - names_.begin());
}

NodeIndex WorkflowNet::index_of(std::string_view name) const {
  auto v = find(name);
  if (!v) throw NetError(NetErrorKind::UnknownNode, std::string(name));
  return *v;
}

std::vector<NodeIndex> WorkflowNet::places() const {
  std::vector<NodeIndex> out;
  for (NodeIndex v = 0; v < node_count(); ++v)
    if (is_place(v)) out.push_back(v);
  return out;
}

std::vector<NodeIndex> WorkflowNet::transitions() const {
  std::vector<NodeIndex> out;
  for (NodeIndex v = 0; v < node_count(); ++v)
    if (is_transition(v)) out.push_back(v);
  return out;
}

std::set<std::string> WorkflowNet::preset(std::string_view v) const {
  std::set<std::string> out;
  for (NodeIndex u : pre(index_of(v))) out.insert(names_[u]);
  return out;
}

std::set<std::string> WorkflowNet::postset(std::string_view v) const {
  std::set<std::string> out;
  for (NodeIndex u : post(index_of(v))) out.insert(names_[u]);
  return out;
}

std::size_t WorkflowNet::degree(std::string_view v) const { return degree(index_of(v)); }

NetDescription WorkflowNet::describe() const {
  NetDescription d;
  d.name = name_;
  for (NodeIndex v = 0; v < node_count(); ++v) {
    if (is_place(v))
      d.places.push_back(names_[v]);
    else
      d.transitions.push_back({names_[v], labels_[v]});
  }
  for (auto [a, b] : arcs_) d.arcs.emplace_back(names_[a], names_[b]);
  d.source = names_[source_];
  d.sink = names_[sink_];
  return d;
}

WorkflowNet WorkflowNet::with_name(std::string name) const {
  WorkflowNet copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

bool operator==(const WorkflowNet& a, const WorkflowNet& b) {
  return a.names_ == b.names_ && a.kinds_ == b.kinds_ && a.labels_ == b.labels_ &&
         a.arcs_ == b.arcs_ && a.source_ == b.source_ && a.sink_ == b.sink_;
}

ConnectorClassification classify_connectors(const WorkflowNet& net) {
  const std::size_t n = net.node_count();
  ConnectorClassification c;
  c.s_xor.assign(n, false);
  c.j_xor.assign(n, false);
  c.s_and.assign(n, false);
  c.j_and.assign(n, false);
  for (NodeIndex v = 0; v < n; ++v) {
    bool split = net.post(v).size() > 1, join = net.pre(v).size() > 1;
    if (net.is_place(v)) {
      c.s_xor[v] = split;
      c.j_xor[v] = join;
    } else {
      c.s_and[v] = split;
      c.j_and[v] = join;
    }
  }
  return c;
}

namespace {
template <class Pred>
std::vector<NodeIndex> collect(std::size_t n, Pred p) {
  std::vector<NodeIndex> out;
  for (NodeIndex v = 0; v < n; ++v)
    if (p(v)) out.push_back(v);
  return out;
}
}  // namespace

std::vector<NodeIndex> ConnectorClassification::xor_connectors() const {
  return collect(s_xor.size(), [&](NodeIndex v) { return is_xor(v); });
}
std::vector<NodeIndex> ConnectorClassification::and_connectors() const {
  return collect(s_xor.size(), [&](NodeIndex v) { return is_and(v); });
}
std::vector<NodeIndex> ConnectorClassification::connectors() const {
  return collect(s_xor.size(), [&](NodeIndex v) { return is_connector(v); });
}

}  // namespace wfc
