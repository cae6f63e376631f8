#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "oddcycle/count.hpp"
#include "oddcycle/embedding.hpp"
#include "oddcycle/graph.hpp"
#include "oddcycle/measure.hpp"
#include "oddcycle/optimize.hpp"
#include "oddcycle/pipeline.hpp"
#include "oddcycle/planar.hpp"
#include "oddcycle/stages.hpp"
#include "oddcycle/tumor.hpp"

namespace oddcycle {

using Json = nlohmann::json;

/// Contents of a graph file: {"n", "vertices"?, "edges", "rotation"?, "B"?}.
struct GraphFile {
  Graph graph;
  std::optional<Embedding> embedding;
  std::optional<VertexSet> B;
};

/// Vertices ascending, edges lexicographic. "vertices" is written only when
/// the ids are not exactly 0..n-1.
Json graph_to_json(const Graph& g, const Embedding* emb = nullptr,
                   const VertexSet* B = nullptr);
/// Throws InvalidArgument on malformed content.
GraphFile graph_from_json(const Json& j);

/// {"clique": k, "mass": {"u-v": p, ...}, "labels"?}; zero masses omitted.
Json measure_to_json(const EdgeMeasure& mu);
EdgeMeasure measure_from_json(const Json& j,
                              double tol = kDefaultTolerances.norm);

/// Reads and parses a JSON file; InvalidArgument on missing file or bad JSON.
Json read_json_file(const std::string& path);
/// Writes j.dump(2) followed by a newline.
void write_json_file(const std::string& path, const Json& j);

GraphFile read_graph_file(const std::string& path);

Json to_json(const Edge& e);
Json to_json(const InequalityCheck& c);
Json to_json(const EmbeddingCheck& c);
Json to_json(const PlanarReport& r);
Json to_json(const CopyCount& c);
Json to_json(const BadCycleCensus& c);
Json to_json(const GoodCycleSplit& s);
Json to_json(const StageAudit& a);
Json to_json(const Separation& s);
Json to_json(const PartitionAudit& a);
Json to_json(const BoundReport& r);
Json to_json(const KktReport& r, const EdgeMeasure& mu);
Json to_json(const OptimizationReport& r);
Json to_json(const RootedPathCheck& c);
Json to_json(const VertexBoundVerdict& v);

}  // namespace oddcycle
