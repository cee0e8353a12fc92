#include "wfc/graph.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/biconnected_components.hpp>
#include <boost/graph/strong_components.hpp>

#include <algorithm>
#include <deque>
#include <limits>
#include <queue>
#include <optional>

#include "detail/scc_order.hpp"

namespace wfc {

UndirectedSkeleton undirected_skeleton(const WorkflowNet& net) {
  UndirectedSkeleton s;
  s.node_count = net.node_count();
  for (auto [a, b] : net.arcs()) s.edges.emplace_back(std::min(a, b), std::max(a, b));
  std::sort(s.edges.begin(), s.edges.end());
  s.edges.erase(std::unique(s.edges.begin(), s.edges.end()), s.edges.end());
  return s;
}

std::set<NodeIndex> articulation_points(const WorkflowNet& net) {
  using G = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  auto sk = undirected_skeleton(net);
  G g(sk.node_count);
  for (auto [a, b] : sk.edges) boost::add_edge(a, b, g);
  std::vector<G::vertex_descriptor> cut;
  boost::articulation_points(g, std::back_inserter(cut));
  return {cut.begin(), cut.end()};
}

namespace detail {

SccInfo strongly_connected(const std::vector<std::vector<NodeIndex>>& succ) {
  using G = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;
  const std::size_t n = succ.size();
  G g(n);
  for (NodeIndex v = 0; v < n; ++v)
    for (NodeIndex w : succ[v]) boost::add_edge(v, w, g);
  SccInfo info;
  info.component.assign(n, 0);
  std::size_t k = boost::strong_components(
      g, boost::make_iterator_property_map(info.component.begin(), boost::get(boost::vertex_index, g)));
  info.members.assign(k, {});
  for (NodeIndex v = 0; v < n; ++v) info.members[info.component[v]].push_back(v);

  // Topological order of the condensation (Kahn, smallest id first for determinism).
  std::vector<std::set<std::size_t>> cs(k);
  std::vector<std::size_t> indeg(k, 0);
  for (NodeIndex v = 0; v < n; ++v)
    for (NodeIndex w : succ[v]) {
      auto a = info.component[v], b = info.component[w];
      if (a != b && cs[a].insert(b).second) ++indeg[b];
    }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t c = 0; c < k; ++c)
    if (indeg[c] == 0) ready.push(c);
  while (!ready.empty()) {
    auto c = ready.top();
    ready.pop();
    info.topo.push_back(c);
    for (auto d : cs[c])
      if (--indeg[d] == 0) ready.push(d);
  }
  return info;
}

}  // namespace detail

namespace {

std::vector<std::vector<NodeIndex>> successors(const WorkflowNet& net) {
  std::vector<std::vector<NodeIndex>> s(net.node_count());
  for (NodeIndex v = 0; v < net.node_count(); ++v) s[v] = net.post(v);
  return s;
}

void check_size(const WorkflowNet& net, const PathBudget& budget) {
  if (net.node_count() > budget.max_nodes || net.arc_count() > budget.max_arcs)
    throw BudgetExceeded("net exceeds path budget size limits");
}

}  // namespace

std::set<NodeIndex> nodes_on_cycles(const WorkflowNet& net) {
  auto info = detail::strongly_connected(successors(net));
  std::set<NodeIndex> out;
  for (const auto& m : info.members)
    if (m.size() >= 2) out.insert(m.begin(), m.end());
  return out;
}

void simple_paths(const WorkflowNet& net, NodeIndex from, NodeIndex to, const PathBudget& budget,
                  const std::function<bool(const std::vector<NodeIndex>&)>& visit) {
  check_size(net, budget);
  const std::size_t n = net.node_count();
  std::vector<bool> on(n, false);
  std::vector<NodeIndex> path{from};
  std::vector<std::size_t> next{0};  // index into post() of the top node
  on[from] = true;
  std::size_t steps = 0;
  // Nodes names are sorted with their indices, so index order is lexicographic.
  while (!path.empty()) {
    NodeIndex v = path.back();
    auto& i = next.back();
    if (i >= net.post(v).size()) {
      on[v] = false;
      path.pop_back();
      next.pop_back();
      continue;
    }
    NodeIndex w = net.post(v)[i++];
    if (++steps > budget.max_enumerated_paths) {
      if (budget.on_exceed == OnExceed::Error) throw BudgetExceeded("simple path enumeration");
      return;
    }
    if (w == to) {
      path.push_back(w);
      bool go_on = visit(path);
      path.pop_back();
      if (!go_on) return;
      if (w == from) continue;
    }
    if (on[w] || w == to) continue;
    on[w] = true;
    path.push_back(w);
    next.push_back(0);
  }
}

std::vector<std::vector<NodeIndex>> simple_paths(const WorkflowNet& net, NodeIndex from,
                                                 NodeIndex to, const PathBudget& budget) {
  std::vector<std::vector<NodeIndex>> out;
  simple_paths(net, from, to, budget, [&](const std::vector<NodeIndex>& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

namespace {

void check_weights(const WorkflowNet& net, const std::vector<Rational>& w) {
  if (w.size() != net.node_count()) throw WeightOutOfRange("one weight per node required");
  for (const auto& x : w)
    if (x <= 0 || x > 1) throw WeightOutOfRange("weight outside (0,1]");
}

// Max-product closure by Dijkstra from every source. A path's value is the
// product of the weights of the nodes it visits; weights are at most one, so
// extending a path never improves it and the greedy order is exact. The
// diagonal is closed afterwards from the predecessors of the source.
template <class Value, class Better, class Extend>
std::vector<std::vector<Value>> closure(const WorkflowNet& net, const Value& none, Better better,
                                        Extend extend) {
  const std::size_t n = net.node_count();
  std::vector<std::vector<Value>> V(n, std::vector<Value>(n, none));
  for (NodeIndex s = 0; s < n; ++s) {
    auto& best = V[s];
    std::vector<bool> done(n, false);
    auto cmp = [&](const std::pair<Value, NodeIndex>& a, const std::pair<Value, NodeIndex>& b) {
      if (better(b.first, a.first)) return true;
      if (better(a.first, b.first)) return false;
      return a.second > b.second;
    };
    std::priority_queue<std::pair<Value, NodeIndex>, std::vector<std::pair<Value, NodeIndex>>,
                        decltype(cmp)>
        pq(cmp);
    done[s] = true;
    for (NodeIndex w : net.post(s)) {
      Value c = extend(std::nullopt, s, w);
      if (better(c, best[w])) {
        best[w] = c;
        pq.emplace(c, w);
      }
    }
    while (!pq.empty()) {
      auto [val, v] = pq.top();
      pq.pop();
      if (done[v] || better(best[v], val)) continue;
      done[v] = true;
      for (NodeIndex w : net.post(v)) {
        if (done[w]) continue;
        Value c = extend(val, v, w);
        if (better(c, best[w])) {
          best[w] = c;
          pq.emplace(c, w);
        }
      }
    }
    for (NodeIndex u : net.pre(s))
      if (better(best[u], best[s])) best[s] = best[u];
  }
  return V;
}

// Returns denominators k with w = 1/k, or empty when some weight is not a unit fraction.
std::vector<std::uint64_t> unit_denominators(const std::vector<Rational>& w) {
  std::vector<std::uint64_t> out;
  for (const auto& x : w) {
    if (boost::multiprecision::numerator(x) != 1) return {};
    BigInt d = boost::multiprecision::denominator(x);
    if (d > 1000000) return {};
    out.push_back(static_cast<std::uint64_t>(d));
  }
  return out;
}

}  // namespace

std::vector<std::vector<Rational>> max_product_values(const WorkflowNet& net,
                                                      const std::vector<Rational>& weights) {
  check_weights(net, weights);
  return closure<Rational>(
      net, Rational(0), [](const Rational& a, const Rational& b) { return a > b; },
      [&](const std::optional<Rational>& a, NodeIndex u, NodeIndex v) {
        return (a ? *a : weights[u]) * weights[v];
      });
}

Rational max_product_sum(const WorkflowNet& net, const std::vector<Rational>& weights) {
  check_weights(net, weights);
  auto den = unit_denominators(weights);
  if (!den.empty()) {
    // Path values are 1/D; minimise D. Saturate on overflow and fall back.
    constexpr std::uint64_t kNone = 0, kOverflow = std::numeric_limits<std::uint64_t>::max();
    bool overflow = false;
    auto V = closure<std::uint64_t>(
        net, kNone,
        [](std::uint64_t a, std::uint64_t b) { return a != kNone && (b == kNone || a < b); },
        [&](const std::optional<std::uint64_t>& a, NodeIndex u, NodeIndex v) {
          unsigned __int128 p = static_cast<unsigned __int128>(a ? *a : den[u]) * den[v];
          if (p >= kOverflow) {
            overflow = true;
            return kOverflow;
          }
          return static_cast<std::uint64_t>(p);
        });
    if (!overflow) {
      std::map<std::uint64_t, std::uint64_t> count;
      for (const auto& row : V)
        for (auto d : row)
          if (d != kNone) ++count[d];
      Rational sum = 0;
      for (auto [d, c] : count) sum += Rational(c) / Rational(d);
      return sum;
    }
  }
  Rational sum = 0;
  for (const auto& row : max_product_values(net, weights))
    for (const auto& x : row) sum += x;
  return sum;
}

namespace {

class StepCounter {
 public:
  explicit StepCounter(const PathBudget& b) : budget_(b) {}
  // Returns false when the search must stop (saturate mode).
  bool tick(const char* what) {
    if (++steps_ <= budget_.max_enumerated_paths) return true;
    if (budget_.on_exceed == OnExceed::Error) throw BudgetExceeded(what);
    saturated_ = true;
    return false;
  }
  bool saturated() const { return saturated_; }

 private:
  const PathBudget& budget_;
  std::size_t steps_ = 0;
  bool saturated_ = false;
};

}  // namespace

Trail longest_trail(const WorkflowNet& net, const PathBudget& budget) {
  check_size(net, budget);
  const std::size_t n = net.node_count();
  auto scc = detail::strongly_connected(successors(net));
  StepCounter counter(budget);

  // Arc ids local to each component, for the used-arc sets of the inner search.
  std::vector<std::vector<std::pair<NodeIndex, std::size_t>>> inner(n);  // (succ, arc id)
  std::vector<std::size_t> arc_ids_in_comp(scc.members.size(), 0);
  for (auto [a, b] : net.arcs())
    if (scc.component[a] == scc.component[b])
      inner[a].emplace_back(b, arc_ids_in_comp[scc.component[a]]++);

  constexpr std::size_t kNone = 0;
  std::vector<std::size_t> enter_len(n, kNone), exit_len(n, kNone);
  std::vector<NodeIndex> enter_from(n, 0);                      // exit node of previous component
  std::vector<std::vector<NodeIndex>> exit_path(n);             // inner walk entry..node
  enter_len[net.source()] = 1;

  for (auto c : scc.topo) {
    const auto& members = scc.members[c];
    for (NodeIndex e : members) {
      if (enter_len[e] == kNone) continue;
      auto offer = [&](const std::vector<NodeIndex>& walk) {
        NodeIndex x = walk.back();
        std::size_t len = enter_len[e] + walk.size() - 1;
        if (len > exit_len[x]) {
          exit_len[x] = len;
          exit_path[x] = walk;
        }
      };
      if (members.size() == 1) {
        offer({e});
        continue;
      }
      // Exhaustive trail search inside the component.
      std::vector<bool> used(arc_ids_in_comp[c], false);
      std::vector<NodeIndex> walk{e};
      std::vector<std::size_t> next{0};
      offer(walk);
      bool stop = false;
      while (!walk.empty() && !stop) {
        NodeIndex v = walk.back();
        auto& i = next.back();
        if (i >= inner[v].size()) {
          walk.pop_back();
          next.pop_back();
          if (!walk.empty()) {
            // release the arc that led to v
            NodeIndex u = walk.back();
            const auto& [w, id] = inner[u][next.back() - 1];
            (void)w;
            used[id] = false;
          }
          continue;
        }
        auto [w, id] = inner[v][i++];
        if (used[id]) continue;
        if (!counter.tick("longest trail search")) {
          stop = true;
          break;
        }
        used[id] = true;
        walk.push_back(w);
        next.push_back(0);
        offer(walk);
      }
    }
    for (NodeIndex x : members) {
      if (exit_len[x] == kNone) continue;
      for (NodeIndex y : net.post(x)) {
        if (scc.component[y] == c) continue;
        if (exit_len[x] + 1 > enter_len[y]) {
          enter_len[y] = exit_len[x] + 1;
          enter_from[y] = x;
        }
      }
    }
  }

  Trail t;
  t.saturated = counter.saturated();
  std::vector<std::vector<NodeIndex>> pieces;
  NodeIndex x = net.sink();
  while (true) {
    pieces.push_back(exit_path[x]);
    NodeIndex e = exit_path[x].front();
    if (e == net.source()) break;
    x = enter_from[e];
  }
  for (auto it = pieces.rbegin(); it != pieces.rend(); ++it)
    t.nodes.insert(t.nodes.end(), it->begin(), it->end());
  return t;
}

std::string format_trace(const Trace& t) {
  if (t.empty()) return "ε";
  std::string s;
  for (const auto& a : t) s += a;
  return s;
}

Language bounded_language(const WorkflowNet& net, const LanguageBounds& bounds) {
  using Marking = std::vector<std::uint8_t>;
  const auto places = net.places();
  std::vector<std::size_t> slot(net.node_count(), 0);
  for (std::size_t i = 0; i < places.size(); ++i) slot[places[i]] = i;
  const auto trans = net.transitions();

  Language lang;
  std::size_t states = 0;
  auto count_state = [&] {
    if (++states > bounds.max_states) throw StateBudgetExceeded("language exploration");
  };

  auto enabled = [&](const Marking& m, NodeIndex t) {
    for (NodeIndex p : net.pre(t))
      if (m[slot[p]] == 0) return false;
    return true;
  };
  // Fires t; returns false when a place would exceed the token cap.
  auto fire = [&](const Marking& m, NodeIndex t, Marking& out) {
    out = m;
    for (NodeIndex p : net.pre(t)) --out[slot[p]];
    for (NodeIndex p : net.post(t)) {
      if (out[slot[p]] >= bounds.max_tokens_per_place) return false;
      ++out[slot[p]];
    }
    return true;
  };
  auto tau_closure = [&](std::set<Marking> s) {
    std::deque<Marking> work(s.begin(), s.end());
    Marking next;
    while (!work.empty()) {
      Marking m = std::move(work.front());
      work.pop_front();
      for (NodeIndex t : trans) {
        if (!is_tau(net.label(t)) || !enabled(m, t)) continue;
        if (!fire(m, t, next)) {
          lang.truncated = true;
          continue;
        }
        if (s.insert(next).second) {
          count_state();
          work.push_back(next);
        }
      }
    }
    return s;
  };

  Marking init(places.size(), 0);
  init[slot[net.source()]] = 1;
  count_state();
  std::deque<std::pair<Trace, std::set<Marking>>> frontier;
  frontier.emplace_back(Trace{}, tau_closure({init}));
  lang.traces.insert(Trace{});
  Marking next;
  while (!frontier.empty()) {
    auto [trace, ms] = std::move(frontier.front());
    frontier.pop_front();
    std::map<std::string, std::set<Marking>> by_label;
    for (const auto& m : ms)
      for (NodeIndex t : trans) {
        if (is_tau(net.label(t)) || !enabled(m, t)) continue;
        if (!fire(m, t, next)) {
          lang.truncated = true;
          continue;
        }
        by_label[*net.label(t)].insert(next);
      }
    if (by_label.empty()) continue;
    if (trace.size() >= bounds.max_visible_length) {
      lang.truncated = true;
      continue;
    }
    for (auto& [a, succ] : by_label) {
      for (std::size_t i = 0; i < succ.size(); ++i) count_state();
      Trace longer = trace;
      longer.push_back(a);
      lang.traces.insert(longer);
      frontier.emplace_back(std::move(longer), tau_closure(std::move(succ)));
    }
  }
  return lang;
}

}  // namespace wfc
