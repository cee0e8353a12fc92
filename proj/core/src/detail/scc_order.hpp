#pragma once

#include <cstddef>
#include <vector>

#include "wfc/net.hpp"

namespace wfc::detail {

struct SccInfo {
  std::vector<std::size_t> component;            // node -> component id
  std::vector<std::vector<NodeIndex>> members;   // sorted node lists
  std::vector<std::size_t> topo;                 // components in topological order
};

SccInfo strongly_connected(const std::vector<std::vector<NodeIndex>>& succ);

}  // namespace wfc::detail
