#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wfc/compose.hpp"
#include "wfc/metrics.hpp"
#include "wfc/net.hpp"

namespace wfc {

class ParamOutOfRange : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnknownFixture : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using FamilyParams = std::map<std::string, long>;

struct NetFamilySpec {
  std::string family;
  FamilyParams params;
};

struct FamilyInfo {
  std::string name;
  std::vector<std::string> params;
  std::vector<long> min_values;  // per parameter
  MetricId measure;              // the measure the family is built for
  std::string formula;           // human-readable closed form
};

const std::vector<FamilyInfo>& family_catalog();
const FamilyInfo& family_info(std::string_view name);  // throws ParamOutOfRange for unknown names

WorkflowNet build_family(const NetFamilySpec& spec);

// Closed-form value of the family's measure; ch is the only inexact one.
double family_expected_approx(const NetFamilySpec& spec);
std::optional<Rational> family_expected_exact(const NetFamilySpec& spec);

// Fixture catalog: <dir>/<name>.wfnet.json. The directory defaults to the
// source tree's fixtures/ and can be overridden with WFC_FIXTURE_DIR.
std::filesystem::path fixture_dir();
std::vector<std::string> list_fixtures();
WorkflowNet build_fixture(std::string_view name);

// All arcs reversed, source and sink swapped.
WorkflowNet reversed(const WorkflowNet& net);

// W0 with the given transition label.
WorkflowNet single_transition(const Label& label);

// Deterministic draws from a 64-bit Mersenne twister (std distributions are
// implementation-defined, so they are avoided for reproducibility).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : gen_() % n; }
  long between(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }
  std::uint64_t next() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

struct RandomNetSpec {
  std::uint64_t seed = 0;
  std::size_t max_leaves = 6;
  std::map<Operator, unsigned> operator_weights{
      {Operator::Seq, 1}, {Operator::Par, 1}, {Operator::Xor, 1}, {Operator::Loop, 1}};
  std::size_t leaf_alphabet_size = 4;
  std::size_t max_arity = 3;
};

// Process-tree shaped net: leaves are single-transition nets, inner nodes
// apply the block operators.
WorkflowNet random_block_net(const RandomNetSpec& spec);
WorkflowNet random_block_net(Rng& rng, const RandomNetSpec& spec);

}  // namespace wfc
