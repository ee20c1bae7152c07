#include "parhca/bench.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "parhca/instances.hpp"

namespace parhca {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::string fmt_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

std::uint64_t instance_seed(std::uint64_t seed, int index) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(index) + 1));
}

BenchmarkResult run_benchmark(const BenchmarkConfig& config) {
  if (config.agents < 1) throw std::invalid_argument("need at least one agent");
  if (config.instances < 1) throw std::invalid_argument("need at least one instance");

  VariantConfig vcfg;
  vcfg.exact_threshold = config.exact_threshold;
  vcfg.workers = config.workers;
  vcfg.comm.data_rate_bps = config.data_rate_bps;
  vcfg.timeout_seconds = config.timeout_seconds;
  HcaOptions hopts{config.timeout_seconds};

  BenchmarkResult result;
  for (int i = 0; i < config.instances; ++i) {
    const auto seed = instance_seed(config.seed, i);
    BenchmarkRecord rec;
    try {
      GridMap map = config.map ? *config.map
                               : generate_random_map(config.width, config.height,
                                                     config.obstacle_probability,
                                                     splitmix64(seed ^ 0x6d6170));
      auto gen = generate_instance(map, config.agents, splitmix64(seed ^ 0x696e7374));
      auto order = random_order(config.agents, splitmix64(seed ^ 0x6f726465));
      rec = compare(gen.instance, order, vcfg, hopts);
    } catch (const GenerationError& e) {
      rec = BenchmarkRecord{};
      rec.agents = config.agents;
      rec.failure = "generation";
    }
    rec.instance_id = i;
    rec.seed = seed;
    result.records.push_back(std::move(rec));
  }
  result.summary = summarize(result.records);
  return result;
}

RatioStats ratio_stats(std::vector<double> values) {
  RatioStats s;
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  s.min = values.front();
  s.max = values.back();
  s.avg = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  auto n = values.size();
  s.median = n % 2 ? values[n / 2] : (values[n / 2 - 1] + values[n / 2]) / 2.0;
  return s;
}

SummaryStats summarize(const std::vector<BenchmarkRecord>& records) {
  SummaryStats s;
  std::vector<double> soc, mk, tw, ti, sp;
  for (const auto& r : records) {
    if (!r.ok) {
      ++s.failures;
      continue;
    }
    ++s.successes;
    soc.push_back(r.sum_of_costs_ratio);
    mk.push_back(r.makespan_ratio);
    tw.push_back(r.time_ratio_wall);
    ti.push_back(r.time_ratio_ideal);
    sp.push_back(r.speedup);
  }
  s.sum_of_costs = ratio_stats(std::move(soc));
  s.makespan = ratio_stats(std::move(mk));
  s.time_wall = ratio_stats(std::move(tw));
  s.time_ideal = ratio_stats(std::move(ti));
  s.speedup = ratio_stats(std::move(sp));
  return s;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "instance",          "seed",
      "agents",            "ok",
      "failure",           "hca_sum_of_costs",
      "hca_makespan",      "hca_seconds",
      "variant_sum_of_costs", "variant_makespan",
      "variant_wall_seconds", "variant_ideal_seconds",
      "iterations",        "comm_bits",
      "comm_seconds",      "sum_of_costs_ratio",
      "makespan_ratio",    "time_ratio_wall",
      "time_ratio_ideal",  "speedup"};
  return cols;
}

bool is_timing_column(std::string_view name) {
  return name == "hca_seconds" || name == "variant_wall_seconds" ||
         name == "variant_ideal_seconds" || name == "time_ratio_wall" ||
         name == "time_ratio_ideal" || name == "speedup";
}

std::string emit_csv(const std::vector<BenchmarkRecord>& records) {
  std::ostringstream out;
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& r : records) {
    std::string failure = r.failure;
    std::replace(failure.begin(), failure.end(), ',', ';');
    out << r.instance_id << ',' << r.seed << ',' << r.agents << ',' << (r.ok ? 1 : 0) << ','
        << failure << ',' << r.hca_sum_of_costs << ',' << r.hca_makespan << ','
        << fmt_double(r.hca_seconds) << ',' << r.variant_sum_of_costs << ','
        << r.variant_makespan << ',' << fmt_double(r.variant_wall_seconds) << ','
        << fmt_double(r.variant_ideal_seconds) << ',' << r.iterations << ',' << r.comm_bits
        << ',' << fmt_double(r.comm_seconds) << ',' << fmt_double(r.sum_of_costs_ratio) << ','
        << fmt_double(r.makespan_ratio) << ',' << fmt_double(r.time_ratio_wall) << ','
        << fmt_double(r.time_ratio_ideal) << ',' << fmt_double(r.speedup) << '\n';
  }
  return out.str();
}

namespace {

template <typename T>
T field(std::string_view tok, std::size_t row, std::size_t col) {
  T v{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw std::runtime_error("csv row " + std::to_string(row) + ", column " +
                             csv_columns()[col] + ": bad value '" + std::string(tok) + "'");
  return v;
}

}  // namespace

std::vector<BenchmarkRecord> parse_csv(std::string_view text) {
  std::vector<BenchmarkRecord> out;
  std::size_t pos = 0, row = 0;
  const auto& cols = csv_columns();
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    std::vector<std::string_view> f;
    std::size_t i = 0;
    while (i <= line.size()) {
      auto j = line.find(',', i);
      if (j == std::string_view::npos) j = line.size();
      f.push_back(line.substr(i, j - i));
      i = j + 1;
    }
    if (f.size() != cols.size())
      throw std::runtime_error("csv row " + std::to_string(row) + ": expected " +
                               std::to_string(cols.size()) + " columns");
    if (row++ == 0) {
      for (std::size_t c = 0; c < cols.size(); ++c)
        if (f[c] != cols[c]) throw std::runtime_error("unexpected csv header");
      continue;
    }
    BenchmarkRecord r;
    r.instance_id = field<int>(f[0], row, 0);
    r.seed = field<std::uint64_t>(f[1], row, 1);
    r.agents = field<int>(f[2], row, 2);
    r.ok = field<int>(f[3], row, 3) != 0;
    r.failure = std::string(f[4]);
    r.hca_sum_of_costs = field<long long>(f[5], row, 5);
    r.hca_makespan = field<int>(f[6], row, 6);
    r.hca_seconds = field<double>(f[7], row, 7);
    r.variant_sum_of_costs = field<long long>(f[8], row, 8);
    r.variant_makespan = field<int>(f[9], row, 9);
    r.variant_wall_seconds = field<double>(f[10], row, 10);
    r.variant_ideal_seconds = field<double>(f[11], row, 11);
    r.iterations = field<int>(f[12], row, 12);
    r.comm_bits = field<std::uint64_t>(f[13], row, 13);
    r.comm_seconds = field<double>(f[14], row, 14);
    r.sum_of_costs_ratio = field<double>(f[15], row, 15);
    r.makespan_ratio = field<double>(f[16], row, 16);
    r.time_ratio_wall = field<double>(f[17], row, 17);
    r.time_ratio_ideal = field<double>(f[18], row, 18);
    r.speedup = field<double>(f[19], row, 19);
    out.push_back(std::move(r));
  }
  return out;
}

std::string emit_plot_data(const std::vector<BenchmarkRecord>& records) {
  std::ostringstream out;
  out << "metric,x,y\n";
  auto series = [&](const char* name, double BenchmarkRecord::*member) {
    for (const auto& r : records)
      if (r.ok) out << name << ',' << r.instance_id << ',' << fmt_double(r.*member) << '\n';
  };
  series("sum_of_costs_ratio", &BenchmarkRecord::sum_of_costs_ratio);
  series("makespan_ratio", &BenchmarkRecord::makespan_ratio);
  series("time_ratio", &BenchmarkRecord::time_ratio_ideal);
  return out.str();
}

std::string format_summary(const SummaryStats& s) {
  std::ostringstream out;
  out << "successful pairs: " << s.successes << ", failures: " << s.failures << '\n';
  auto line = [&](const char* name, const RatioStats& r) {
    out << name << " (avg, min, max, median): (" << r.avg << ", " << r.min << ", " << r.max
        << ", " << r.median << ")\n";
  };
  line("sum of costs ratio      ", s.sum_of_costs);
  line("makespan ratio          ", s.makespan);
  line("time ratio (measured)   ", s.time_wall);
  line("time ratio (ideal par.) ", s.time_ideal);
  line("speedup incl. comm      ", s.speedup);
  return out.str();
}

}  // namespace parhca
