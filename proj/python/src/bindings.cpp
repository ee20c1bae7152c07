#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "parhca/bench.hpp"
#include "parhca/codec.hpp"
#include "parhca/instances.hpp"
#include "parhca/solver.hpp"

namespace py = pybind11;
using namespace parhca;

namespace {

py::tuple coord_tuple(Coord c) { return py::make_tuple(c.x, c.y); }

Coord to_coord(const std::pair<int, int>& p) { return {p.first, p.second}; }

py::list path_states(const TimedPath& p) {
  py::list out;
  for (const auto& s : p.states) out.append(py::make_tuple(s.cell.x, s.cell.y, s.t));
  return out;
}

TimedPath path_from(AgentId agent, const std::vector<std::tuple<int, int, int>>& states) {
  TimedPath p{agent, {}};
  for (auto [x, y, t] : states) p.states.push_back({{x, y}, t});
  return p;
}

py::dict solution_dict(const Solution& s) {
  py::dict d;
  py::list paths;
  for (const auto& p : s.paths) paths.append(path_states(p));
  d["paths"] = paths;
  d["sum_of_costs"] = s.sum_of_costs;
  d["makespan"] = s.makespan;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Prioritized multi-agent path finding on 4-connected grids";

  py::register_exception<MapFormatError>(m, "MapFormatError", PyExc_ValueError);
  py::register_exception<ScenarioError>(m, "ScenarioError", PyExc_ValueError);
  py::register_exception<CodecError>(m, "CodecError", PyExc_ValueError);
  py::register_exception<GenerationError>(m, "GenerationError", PyExc_RuntimeError);

  py::class_<GridMap>(m, "GridMap")
      .def(py::init<int, int>(), py::arg("width"), py::arg("height"))
      .def_property_readonly("width", &GridMap::width)
      .def_property_readonly("height", &GridMap::height)
      .def("blocked",
           [](const GridMap& g, int x, int y) {
             if (!g.in_bounds({x, y})) throw py::index_error("cell outside the map");
             return g.blocked({x, y});
           })
      .def("passable", [](const GridMap& g, int x, int y) { return g.passable({x, y}); })
      .def(
          "set_obstacle",
          [](GridMap& g, int x, int y, bool obstacle) {
            if (!g.in_bounds({x, y})) throw py::index_error("cell outside the map");
            g.set_obstacle({x, y}, obstacle);
          },
          py::arg("x"), py::arg("y"), py::arg("obstacle") = true)
      .def("free_count", &GridMap::free_count)
      .def("obstacles",
           [](const GridMap& g) {
             py::list out;
             for (auto c : g.obstacles()) out.append(coord_tuple(c));
             return out;
           })
      .def("__eq__", [](const GridMap& a, const GridMap& b) { return a == b; })
      .def("__repr__", [](const GridMap& g) {
        return "<GridMap " + std::to_string(g.width()) + "x" + std::to_string(g.height()) + ">";
      });

  m.def("parse_map", &parse_movingai_map, py::arg("text"));
  m.def("write_map", &write_movingai_map, py::arg("map"));
  m.def("random_map", &generate_random_map, py::arg("width"), py::arg("height"),
        py::arg("obstacle_probability"), py::arg("seed"));
  m.def(
      "downsample_map",
      [](const GridMap& g, int w, int h, bool any_obstacle) {
        return downsample_map(g, w, h,
                              any_obstacle ? DownsampleRule::any_obstacle : DownsampleRule::majority);
      },
      py::arg("map"), py::arg("width"), py::arg("height"), py::arg("any_obstacle") = false);
  m.def("balanced_factorization", [](int n) {
    auto f = balanced_factorization(n);
    return py::make_tuple(f.p, f.q);
  });
  m.def(
      "partition_of",
      [](const GridMap& g, int n_parts, int x, int y) {
        return Partitioning(g, n_parts).partition_of({x, y});
      },
      py::arg("map"), py::arg("n_parts"), py::arg("x"), py::arg("y"));

  py::class_<ProblemInstance>(m, "Instance")
      .def(py::init([](const GridMap& g,
                       const std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>>& a) {
             ProblemInstance inst{g, {}};
             for (const auto& [s, t] : a) inst.agents.push_back({to_coord(s), to_coord(t)});
             return inst;
           }),
           py::arg("map"), py::arg("agents"))
      .def_readonly("map", &ProblemInstance::map)
      .def_property_readonly("agents",
                             [](const ProblemInstance& inst) {
                               py::list out;
                               for (const auto& a : inst.agents)
                                 out.append(py::make_tuple(coord_tuple(a.source), coord_tuple(a.goal)));
                               return out;
                             })
      .def("__len__", &ProblemInstance::agent_count)
      .def("check", &check_instance);

  m.def(
      "generate_instance",
      [](const GridMap& g, int n, std::uint64_t seed) {
        auto out = generate_instance(g, n, seed);
        return py::make_tuple(out.instance, out.meta.sigma);
      },
      py::arg("map"), py::arg("agents"), py::arg("seed"));
  m.def("read_scenario", &read_scenario, py::arg("text"), py::arg("map"));
  m.def("write_scenario", &write_scenario, py::arg("instance"), py::arg("map_name"));
  m.def("random_order", &random_order, py::arg("agents"), py::arg("seed"));

  m.def(
      "solve_hca",
      [](const ProblemInstance& inst, std::optional<PriorityOrder> order, double timeout) {
        HcaResult r;
        {
          py::gil_scoped_release release;
          r = solve_hca(inst, order ? *order : identity_order(inst.agent_count()),
                        HcaOptions{timeout});
        }
        py::dict d = r.solution ? solution_dict(*r.solution) : py::dict();
        d["status"] = to_string(r.status);
        d["blocked_agent"] = r.blocked_agent;
        d["seconds"] = r.compute_seconds;
        return d;
      },
      py::arg("instance"), py::arg("order") = py::none(), py::arg("timeout") = 60.0);
  m.def(
      "solve_variant",
      [](const ProblemInstance& inst, unsigned workers, int exact_threshold, double data_rate,
         double timeout) {
        VariantConfig cfg;
        cfg.workers = workers;
        cfg.exact_threshold = exact_threshold;
        cfg.comm.data_rate_bps = data_rate;
        cfg.timeout_seconds = timeout;
        VariantResult r;
        {
          py::gil_scoped_release release;
          r = solve_variant(inst, cfg);
        }
        py::dict d = r.solution ? solution_dict(*r.solution) : py::dict();
        d["status"] = to_string(r.status);
        d["blocked_agent"] = r.blocked_agent;
        d["iterations"] = r.trace.iterations.size();
        d["wall_seconds"] = r.trace.wall_seconds;
        d["ideal_seconds"] = r.trace.ideal_seconds;
        const auto& l = r.trace.ledger;
        py::dict bits;
        bits["source_goal"] = l.source_goal_bits();
        bits["paths"] = l.path_bits();
        bits["ig"] = l.ig_bits();
        bits["reservation_table"] = l.reservation_table;
        bits["total"] = l.total_bits();
        d["comm_bits"] = bits;
        d["comm_seconds"] = comm_time(l, cfg.comm);
        return d;
      },
      py::arg("instance"), py::arg("workers") = 1u, py::arg("exact_threshold") = kDefaultExactThreshold,
      py::arg("data_rate") = 8e7, py::arg("timeout") = 60.0);

  m.def(
      "validate",
      [](const ProblemInstance& inst, const std::vector<std::vector<std::tuple<int, int, int>>>& paths) {
        std::vector<TimedPath> ps;
        for (std::size_t i = 0; i < paths.size(); ++i)
          ps.push_back(path_from(static_cast<AgentId>(i), paths[i]));
        std::vector<std::string> out;
        for (const auto& v : validate_solution(inst, ps)) out.push_back(v.describe());
        return out;
      },
      py::arg("instance"), py::arg("paths"));

  m.def(
      "encode_path",
      [](AgentId agent, const std::vector<std::tuple<int, int, int>>& states) {
        auto p = path_from(agent, states);
        SubpathSegment seg{agent, 0, p.states, {}, {}};
        return encode_segment(seg).to_string();
      },
      py::arg("agent"), py::arg("states"));
  m.def(
      "decode_path",
      [](const std::string& text) {
        auto seg = decode_segment(parse_segment_text(text));
        py::list out;
        for (const auto& s : seg.states) out.append(py::make_tuple(s.cell.x, s.cell.y, s.t));
        return py::make_tuple(seg.agent, out);
      },
      py::arg("text"));
  m.def(
      "path_bits",
      [](const std::vector<std::tuple<int, int, int>>& states, const GridMap& g, int n_agents) {
        auto p = path_from(0, states);
        auto segs = split_path(p, Partitioning(g, n_agents), g);
        return path_bits(segs, n_agents, g.side());
      },
      py::arg("states"), py::arg("map"), py::arg("n_agents"));
  m.def("bits_source_goal", &bits_source_goal, py::arg("n_agents"), py::arg("map_side"));
  m.def("speedup", &speedup, py::arg("hca_seconds"), py::arg("variant_seconds"),
        py::arg("comm_seconds"));

  m.def(
      "run_benchmark",
      [](int agents, int instances, int width, int height, double obstacle_probability,
         std::uint64_t seed, unsigned workers) {
        BenchmarkConfig cfg;
        cfg.agents = agents;
        cfg.instances = instances;
        cfg.width = width;
        cfg.height = height;
        cfg.obstacle_probability = obstacle_probability;
        cfg.seed = seed;
        cfg.workers = workers;
        BenchmarkResult r;
        {
          py::gil_scoped_release release;
          r = run_benchmark(cfg);
        }
        return py::make_tuple(emit_csv(r.records), format_summary(r.summary));
      },
      py::arg("agents") = 16, py::arg("instances") = 30, py::arg("width") = 50,
      py::arg("height") = 50, py::arg("obstacle_probability") = 0.1, py::arg("seed") = 1,
      py::arg("workers") = 1u);
}
