#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wfc/net.hpp"

namespace wfc {

enum class Operator { Seq, Par, Xor, Loop };

inline constexpr Operator kAllOperators[] = {Operator::Seq, Operator::Par, Operator::Xor,
                                             Operator::Loop};

std::string_view to_string(Operator op);     // seq, par, xor, loop
std::string_view symbol(Operator op);        // ->, ∧, ×, ↻
std::optional<Operator> parse_operator(std::string_view s);

// Labels of the glue transitions introduced by an operator.
enum class GlueLabels { Tau, Fresh };

class CompositionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operand i's nodes are renamed "L<i>.<name>". For Loop, operand 1 is the do
// body and operands 2..n are redo bodies.
WorkflowNet compose(Operator op, const std::vector<WorkflowNet>& operands,
                    GlueLabels glue = GlueLabels::Tau);
WorkflowNet compose(Operator op, const WorkflowNet& a, const WorkflowNet& b,
                    GlueLabels glue = GlueLabels::Tau);

using RelabelingMap = std::map<std::string, std::string>;

class NotInjective : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Replaces visible labels through `map` (labels absent from the map are kept).
// The induced map on the net's visible labels must be injective.
WorkflowNet relabel(const WorkflowNet& net, const RelabelingMap& map);

// Same transitions with identical labels; places and flow may differ.
bool is_permutation(const WorkflowNet& a, const WorkflowNet& b);

}  // namespace wfc
