#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "oddcycle/constructions.hpp"
#include "oddcycle/count.hpp"
#include "oddcycle/error.hpp"
#include "oddcycle/io.hpp"
#include "oddcycle/measure.hpp"
#include "oddcycle/optimize.hpp"
#include "oddcycle/pipeline.hpp"
#include "oddcycle/planar.hpp"
#include "oddcycle/stages.hpp"
#include "oddcycle/tumor.hpp"

namespace py = pybind11;
using namespace oddcycle;

namespace {

GraphFile parse_graph(const std::string& text) {
  try {
    return graph_from_json(Json::parse(text));
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(std::string("graph is not valid JSON: ") + e.what());
  }
}

Embedding need_embedding(const GraphFile& file) {
  if (!file.embedding) throw InvalidArgument("graph has no 'rotation'");
  return *file.embedding;
}

VertexSet pick_B(const std::optional<std::vector<VertexId>>& B,
                 const GraphFile& file) {
  if (B) return VertexSet(B->begin(), B->end());
  if (file.B) return *file.B;
  throw InvalidArgument("no B given and the graph has no 'B'");
}

EdgeMeasure parse_measure(const std::string& text) {
  try {
    return measure_from_json(Json::parse(text));
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(std::string("measure is not valid JSON: ") + e.what());
  }
}

CountOptions counting(unsigned threads) {
  CountOptions o;
  o.budget = budget_from_environment();
  o.threads = threads == 0 ? 1 : threads;
  return o;
}

}  // namespace

PYBIND11_MODULE(_oddcycle, m) {
  m.doc() = "Odd cycles in planar graphs: exact counting, tumor cleaning, "
            "reduction and measure optimization";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<MalformedEmbedding>(m, "MalformedEmbedding", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<NotATumorGraph>(m, "NotATumorGraph", base.ptr());
  py::register_exception<InvariantViolation>(m, "InvariantViolation", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());

  m.def("count", [](const std::string& graph, const std::string& pattern,
                    unsigned threads) {
    return count_copies(parse_graph(graph).graph, Pattern::parse(pattern),
                        counting(threads)).count;
  }, py::arg("graph"), py::arg("pattern"), py::arg("threads") = 1,
     "Number of copies of P<k> or C<k> in a graph given as JSON text.");

  m.def("construct", [](int mm, int t, const std::string& variant,
                        const std::string& shape) {
    if (variant != "a" && variant != "b") {
      throw InvalidArgument("variant must be 'a' or 'b'");
    }
    const Blowup b = build_blowup(
        {mm, t, variant == "b", parse_tumor_shape(shape)});
    return graph_to_json(b.graph, &b.embedding, &b.B).dump();
  }, py::arg("m"), py::arg("t"), py::arg("variant") = "a",
     py::arg("shape") = "path");

  m.def("expected_good_count", [](int mm, int t, const std::string& variant,
                                  int m_cycle) {
    return expected_good_count({mm, t, variant == "b", TumorShape::Path}, m_cycle);
  }, py::arg("m"), py::arg("t"), py::arg("variant"), py::arg("m_cycle"));

  m.def("generate_planar", [](std::size_t n, std::uint64_t seed, double p) {
    const EmbeddedGraph eg = generate_planar(n, seed, p);
    return graph_to_json(eg.graph, &eg.embedding).dump();
  }, py::arg("n"), py::arg("seed"), py::arg("p") = 0.0);

  m.def("validate_embedding", [](const std::string& graph) {
    const GraphFile file = parse_graph(graph);
    return to_json(validate_embedding(file.graph, need_embedding(file))).dump();
  }, py::arg("graph"));

  m.def("count_good_cycles", [](const std::string& graph, int mm,
                                std::optional<std::vector<VertexId>> B,
                                unsigned threads) {
    const GraphFile file = parse_graph(graph);
    const TumorGraph tg = make_tumor(file.graph, need_embedding(file),
                                     pick_B(B, file));
    return to_json(classify_bad_cycles(tg, mm, counting(threads))).dump();
  }, py::arg("graph"), py::arg("m"), py::arg("B") = py::none(),
     py::arg("threads") = 1, "Good/bad census of C_{2m+1} as JSON text.");

  m.def("tumor_clean", [](const std::string& graph, int mm,
                          std::optional<std::vector<VertexId>> B,
                          const std::string& mode) {
    if (mode != "test" && mode != "fast" && mode != "auto") {
      throw InvalidArgument("mode must be test, fast or auto");
    }
    const GraphFile file = parse_graph(graph);
    TumorGraph tg = make_tumor(file.graph, need_embedding(file), pick_B(B, file));
    Json stages = Json::array();
    for (auto* stage : {&stage1, &stage2, &stage3}) {
      StageOptions o = default_stage_options(tg, mm);
      if (mode == "test") o.mode = VerifyMode::Test;
      if (mode == "fast") o.mode = VerifyMode::Fast;
      StageResult r = (*stage)(tg, o);
      stages.push_back(to_json(r.audit));
      tg = std::move(r.graph);
    }
    return Json{{"stages", stages},
                {"benign", is_benign(tg)},
                {"graph", graph_to_json(tg.graph(), &tg.embedding(), &tg.B())}}
        .dump();
  }, py::arg("graph"), py::arg("m"), py::arg("B") = py::none(),
     py::arg("mode") = "auto");

  m.def("reduce", [](const std::string& graph, int mm,
                     const std::string& partition) {
    const GraphFile file = parse_graph(graph);
    std::optional<VertexSet> B;
    if (partition == "given" || (partition == "auto" && file.B)) {
      B = pick_B(std::nullopt, file);
    } else if (partition != "degree" && partition != "auto") {
      throw InvalidArgument("partition must be auto, degree or given");
    }
    return to_json(reduce(file.graph, need_embedding(file), mm, B)).dump();
  }, py::arg("graph"), py::arg("m"), py::arg("partition") = "auto");

  m.def("optimize", [](int mm, int clique, int starts, int max_iters,
                       std::uint64_t seed, unsigned threads) {
    OptimizeOptions o;
    o.m = mm;
    o.clique_size = clique;
    o.starts = starts;
    o.max_iters = max_iters;
    o.seed = seed;
    o.threads = threads == 0 ? 1 : threads;
    OptimizationReport r;
    {
      py::gil_scoped_release release;
      r = optimize(o);
    }
    return to_json(r).dump();
  }, py::arg("m"), py::arg("clique") = 0, py::arg("starts") = 64,
     py::arg("max_iters") = 20000, py::arg("seed") = 0, py::arg("threads") = 1);

  m.def("objective", [](const std::string& measure, int mm) {
    return objective(parse_measure(measure), mm);
  }, py::arg("measure"), py::arg("m"));

  m.def("beta", [](const std::string& measure, const std::string& pattern) {
    return beta(parse_measure(measure), Pattern::parse(pattern));
  }, py::arg("measure"), py::arg("pattern"));

  m.def("kkt_residual", [](const std::string& measure, int mm) {
    const EdgeMeasure mu = parse_measure(measure);
    return to_json(kkt_residual(mu, mm), mu).dump();
  }, py::arg("measure"), py::arg("m"));

  m.def("known_bound", [](int mm) {
    const KnownBound b = known_bound(mm);
    return py::make_tuple(b.value, b.tight);
  }, py::arg("m"));
}
