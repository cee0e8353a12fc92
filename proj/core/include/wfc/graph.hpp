#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wfc/net.hpp"

namespace wfc {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

enum class OnExceed { Error, Saturate };

// Limits for the exhaustive path and trail searches. max_enumerated_paths
// bounds the number of search steps (partial paths extended).
struct PathBudget {
  std::size_t max_nodes = 100000;
  std::size_t max_arcs = 1000000;
  std::size_t max_enumerated_paths = 5000000;
  OnExceed on_exceed = OnExceed::Error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct UndirectedSkeleton {
  std::size_t node_count = 0;
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;  // u < v, sorted, antiparallel arcs merged
};

UndirectedSkeleton undirected_skeleton(const WorkflowNet& net);

std::set<NodeIndex> articulation_points(const WorkflowNet& net);

// Nodes in strongly connected components with at least two nodes.
std::set<NodeIndex> nodes_on_cycles(const WorkflowNet& net);

// Enumerates every directed path from `from` to `to` with at least one arc
// and no repeated node (except that from == to closes a cycle), in
// lexicographic order. The callback returns false to stop early.
void simple_paths(const WorkflowNet& net, NodeIndex from, NodeIndex to, const PathBudget& budget,
                  const std::function<bool(const std::vector<NodeIndex>&)>& visit);

std::vector<std::vector<NodeIndex>> simple_paths(const WorkflowNet& net, NodeIndex from,
                                                 NodeIndex to, const PathBudget& budget);

class WeightOutOfRange : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// V(u, v): maximum over directed paths u ~> v with at least one arc of the
// product of the weights of the nodes on the path, each counted once; 0 when
// there is no such path. V(v, v) is the best cycle through v. Weights must
// lie in (0, 1].
std::vector<std::vector<Rational>> max_product_values(const WorkflowNet& net,
                                                      const std::vector<Rational>& weights);

// Sum of all V values; uses exact integer arithmetic when every weight is a
// unit fraction 1/k.
Rational max_product_sum(const WorkflowNet& net, const std::vector<Rational>& weights);

struct Trail {
  std::vector<NodeIndex> nodes;
  bool saturated = false;  // search stopped at the budget (OnExceed::Saturate)
};

// Longest source-to-sink walk that never reuses an arc, by node count.
Trail longest_trail(const WorkflowNet& net, const PathBudget& budget);

struct LanguageBounds {
  std::size_t max_visible_length = 12;
  std::size_t max_tokens_per_place = 4;
  std::size_t max_states = 100000;
};

class StateBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Trace = std::vector<std::string>;

struct Language {
  std::set<Trace> traces;  // prefix-closed, contains the empty trace
  bool truncated = false;  // length or token cap cut off some behaviour
};

// Visible traces of firing sequences from one token on the source.
Language bounded_language(const WorkflowNet& net, const LanguageBounds& bounds = {});

std::string format_trace(const Trace& t);  // "ε" for the empty trace, else concatenated labels

}  // namespace wfc
