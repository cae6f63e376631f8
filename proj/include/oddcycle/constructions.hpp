#pragma once

#include <cstdint>
#include <string>

#include "oddcycle/embedding.hpp"
#include "oddcycle/graph.hpp"

namespace oddcycle {

enum class TumorShape { Path, Cycle };

TumorShape parse_tumor_shape(const std::string& text);
std::string tumor_shape_name(TumorShape shape);

/// Blowup of the cycle C_m: every skeleton edge xy is replaced by t vertices
/// adjacent to both x and y. m = 2 means two anchors joined by two tumors.
struct BlowupSpec {
  int m = 3;
  int t = 1;
  /// Keep the skeleton edges between consecutive anchors.
  bool with_skeleton_edges = false;
  TumorShape shape = TumorShape::Path;
};

struct Blowup {
  Graph graph;
  Embedding embedding;
  /// The m anchors 0..m-1.
  VertexSet B;
};

/// Anchors are 0..m-1; tumor i (between anchors i and i+1 mod m) holds the
/// vertices m + i*t .. m + i*t + t - 1 in path order from the inside out.
Blowup build_blowup(const BlowupSpec& spec);

/// Exact number of good copies of C_{2 m_cycle + 1} in build_blowup(spec)
/// with the anchors as B. Path-shaped tumors only.
std::uint64_t expected_good_count(const BlowupSpec& spec, int m_cycle);

}  // namespace oddcycle
