#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "parhca/problem.hpp"

namespace parhca {

class GenerationError : public std::runtime_error {
 public:
  GenerationError(const std::string& what, int generated)
      : std::runtime_error(what), generated_(generated) {}
  /// Agents placed before free space ran out.
  int generated() const { return generated_; }

 private:
  int generated_;
};

struct InstanceMetadata {
  std::uint64_t seed = 0;
  std::vector<AgentId> sigma;  // order in which agents received endpoints
  friend bool operator==(const InstanceMetadata&, const InstanceMetadata&) = default;
};

struct GeneratedInstance {
  ProblemInstance instance;
  InstanceMetadata meta;
};

/// Draws endpoints so that prioritized planning succeeds under any order:
/// every accepted pair is connected around the endpoints placed so far,
/// its endpoints become obstacles for later pairs, and its static path
/// leaves the pool of future endpoint candidates. `max_tries` bounds the
/// draws per agent (0 means 10 times the remaining candidate count).
GeneratedInstance generate_instance(const GridMap& map, int n_agents, std::uint64_t seed,
                                    int max_tries = 0);

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScenarioEntry {
  int bucket = 0;
  std::string map_name;
  int map_width = 0;
  int map_height = 0;
  AgentTask task;
  double optimal_length = 0;
};

/// MovingAI `.scen` rows (tab separated, optional "version" header).
std::vector<ScenarioEntry> parse_scenario(std::string_view text);

/// Builds an instance from scenario text, validating endpoints against `map`.
ProblemInstance read_scenario(std::string_view text, const GridMap& map);
std::string write_scenario(const ProblemInstance& instance, std::string_view map_name);

/// key=value sidecar recording the generator seed and sigma.
std::string write_metadata(const InstanceMetadata& meta);
InstanceMetadata read_metadata(std::string_view text);

}  // namespace parhca
