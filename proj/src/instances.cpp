#include "parhca/instances.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>
#include <sstream>

#include "parhca/search.hpp"

namespace parhca {

namespace {

// Endpoint candidates with O(1) sampling and removal.
class CandidatePool {
 public:
  explicit CandidatePool(const GridMap& map) : slot_(map.cell_count(), -1) {
    for (int c = 0; c < map.cell_count(); ++c)
      if (!map.blocked(map.coord(c))) add(c);
  }

  int size() const { return static_cast<int>(cells_.size()); }
  int at(int k) const { return cells_[k]; }

  void remove(int cell) {
    int k = slot_[cell];
    if (k < 0) return;
    int last = cells_.back();
    cells_[k] = last;
    slot_[last] = k;
    cells_.pop_back();
    slot_[cell] = -1;
  }

 private:
  void add(int cell) {
    slot_[cell] = static_cast<int>(cells_.size());
    cells_.push_back(cell);
  }

  std::vector<int> cells_;
  std::vector<int> slot_;
};

}  // namespace

GeneratedInstance generate_instance(const GridMap& map, int n_agents, std::uint64_t seed,
                                    int max_tries) {
  if (n_agents < 0) throw std::invalid_argument("agent count must be non-negative");
  std::mt19937_64 rng(seed);

  GeneratedInstance out;
  out.meta.seed = seed;
  out.meta.sigma.resize(n_agents);
  std::iota(out.meta.sigma.begin(), out.meta.sigma.end(), 0);
  std::shuffle(out.meta.sigma.begin(), out.meta.sigma.end(), rng);

  out.instance.map = map;
  out.instance.agents.assign(n_agents, {});
  GridMap occupied = map;  // static obstacles plus committed endpoints
  CandidatePool pool(map);

  for (int placed = 0; placed < n_agents; ++placed) {
    const int budget = max_tries > 0 ? max_tries : 10 * pool.size();
    bool done = false;
    for (int attempt = 0; attempt < budget && pool.size() >= 2; ++attempt) {
      std::uniform_int_distribution<int> first(0, pool.size() - 1);
      std::uniform_int_distribution<int> second(0, pool.size() - 2);
      int i = first(rng), j = second(rng);
      if (j >= i) ++j;
      Coord s = map.coord(pool.at(i)), g = map.coord(pool.at(j));
      auto path = astar_static(occupied, s, g);
      if (!path) continue;

      out.instance.agents[out.meta.sigma[placed]] = {s, g};
      occupied.set_obstacle(s);
      occupied.set_obstacle(g);
      for (Coord c : *path) pool.remove(map.index(c));
      done = true;
      break;
    }
    if (!done)
      throw GenerationError("free space exhausted after " + std::to_string(placed) +
                                " of " + std::to_string(n_agents) + " agents",
                            placed);
  }
  return out;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i <= line.size()) {
    auto j = line.find('\t', i);
    if (j == std::string_view::npos) j = line.size();
    out.push_back(line.substr(i, j - i));
    i = j + 1;
  }
  // fall back to whitespace separation for hand-written files
  if (out.size() == 1) {
    out.clear();
    std::size_t k = 0;
    while (k < line.size()) {
      while (k < line.size() && (line[k] == ' ' || line[k] == '\t')) ++k;
      auto e = k;
      while (e < line.size() && line[e] != ' ' && line[e] != '\t') ++e;
      if (e > k) out.push_back(line.substr(k, e - k));
      k = e;
    }
  }
  return out;
}

template <typename T>
T parse_number(std::string_view tok, int row, const char* what) {
  T v{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ScenarioError("row " + std::to_string(row) + ": bad " + what + " '" +
                        std::string(tok) + "'");
  return v;
}

}  // namespace

std::vector<ScenarioEntry> parse_scenario(std::string_view text) {
  std::vector<ScenarioEntry> out;
  int row = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    ++row;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    if (line.substr(0, 7) == "version") continue;

    auto f = split_fields(line);
    if (f.size() != 9)
      throw ScenarioError("row " + std::to_string(row) + ": expected 9 fields, got " +
                          std::to_string(f.size()));
    ScenarioEntry e;
    e.bucket = parse_number<int>(f[0], row, "bucket");
    e.map_name = std::string(f[1]);
    e.map_width = parse_number<int>(f[2], row, "map width");
    e.map_height = parse_number<int>(f[3], row, "map height");
    e.task.source = {parse_number<int>(f[4], row, "start x"), parse_number<int>(f[5], row, "start y")};
    e.task.goal = {parse_number<int>(f[6], row, "goal x"), parse_number<int>(f[7], row, "goal y")};
    e.optimal_length = parse_number<double>(f[8], row, "optimal length");
    out.push_back(std::move(e));
  }
  return out;
}

ProblemInstance read_scenario(std::string_view text, const GridMap& map) {
  ProblemInstance inst;
  inst.map = map;
  int row = 0;
  for (const auto& e : parse_scenario(text)) {
    ++row;
    if (e.map_width != map.width() || e.map_height != map.height())
      throw ScenarioError("entry " + std::to_string(row) + ": map size mismatch");
    if (!map.passable(e.task.source))
      throw ScenarioError("entry " + std::to_string(row) + ": source blocked or out of bounds");
    if (!map.passable(e.task.goal))
      throw ScenarioError("entry " + std::to_string(row) + ": goal blocked or out of bounds");
    inst.agents.push_back(e.task);
  }
  return inst;
}

std::string write_scenario(const ProblemInstance& instance, std::string_view map_name) {
  std::ostringstream out;
  out << "version 1\n";
  for (const auto& a : instance.agents) {
    auto path = astar_static(instance.map, a.source, a.goal);
    int length = path ? static_cast<int>(path->size()) - 1 : -1;
    out << 0 << '\t' << map_name << '\t' << instance.map.width() << '\t'
        << instance.map.height() << '\t' << a.source.x << '\t' << a.source.y << '\t'
        << a.goal.x << '\t' << a.goal.y << '\t' << length << '\n';
  }
  return out.str();
}

std::string write_metadata(const InstanceMetadata& meta) {
  std::ostringstream out;
  out << "seed=" << meta.seed << "\nsigma=";
  for (std::size_t i = 0; i < meta.sigma.size(); ++i)
    out << (i ? "," : "") << meta.sigma[i];
  out << '\n';
  return out.str();
}

InstanceMetadata read_metadata(std::string_view text) {
  InstanceMetadata meta;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) continue;
    auto key = line.substr(0, eq), value = line.substr(eq + 1);
    if (key == "seed") {
      meta.seed = parse_number<std::uint64_t>(value, 0, "seed");
    } else if (key == "sigma") {
      std::size_t i = 0;
      while (i < value.size()) {
        auto j = value.find(',', i);
        if (j == std::string_view::npos) j = value.size();
        meta.sigma.push_back(parse_number<int>(value.substr(i, j - i), 0, "sigma entry"));
        i = j + 1;
      }
    }
  }
  return meta;
}

}  // namespace parhca
