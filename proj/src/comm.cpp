#include "parhca/comm.hpp"

#include <stdexcept>

#include "parhca/codec.hpp"

namespace parhca {

std::uint64_t CommLedger::source_goal_bits() const {
  std::uint64_t s = 0;
  for (const auto& it : iterations) s += it.source_goal;
  return s;
}

std::uint64_t CommLedger::path_bits() const {
  std::uint64_t s = 0;
  for (const auto& it : iterations) s += it.paths;
  return s;
}

std::uint64_t CommLedger::ig_bits() const {
  std::uint64_t s = 0;
  for (const auto& it : iterations) s += it.ig;
  return s;
}

std::uint64_t CommLedger::total_bits() const {
  return total_bits_without_source_goal() + source_goal_bits();
}

std::uint64_t CommLedger::total_bits_without_source_goal() const {
  return reservation_table + path_bits() + ig_bits();
}

std::uint64_t bits_source_goal(int n_agents, int map_side) {
  if (n_agents <= 0) return 0;
  return 2ull * static_cast<std::uint64_t>(n_agents) *
         static_cast<std::uint64_t>(ceil_log2(static_cast<std::uint64_t>(map_side)));
}

std::uint64_t bits_paths_iteration(std::span<const std::vector<SubpathSegment>> pending_segments,
                                   int n_agents, int map_side) {
  std::uint64_t total = 0;
  for (const auto& segs : pending_segments) total += path_bits(segs, n_agents, map_side);
  return total;
}

std::uint64_t bits_ig(std::span<const int> intersections_per_agent, int n_agents) {
  const auto id_bits = static_cast<std::uint64_t>(ceil_log2(static_cast<std::uint64_t>(n_agents)));
  std::uint64_t total = 0;
  for (int e : intersections_per_agent) total += 2 * id_bits * static_cast<std::uint64_t>(e);
  return total;
}

std::uint64_t bits_rt(std::span<const int> path_lengths, int n_agents, int map_side) {
  std::uint64_t total = 0;
  for (int len : path_lengths)
    total += header_bits(n_agents, map_side) + kSymbolBits * static_cast<std::uint64_t>(len);
  return total;
}

double comm_time(const CommLedger& ledger, const CommConfig& cfg, bool include_source_goal) {
  if (!(cfg.data_rate_bps > 0)) throw std::invalid_argument("data rate must be positive");
  auto bits = include_source_goal ? ledger.total_bits() : ledger.total_bits_without_source_goal();
  return static_cast<double>(bits) / cfg.data_rate_bps;
}

double speedup(double hca_seconds, double variant_seconds, double comm_seconds) {
  if (!(hca_seconds > 0) || !(variant_seconds > 0) || !(comm_seconds >= 0))
    throw std::invalid_argument("speedup needs positive compute times");
  return hca_seconds / (variant_seconds + comm_seconds);
}

}  // namespace parhca
