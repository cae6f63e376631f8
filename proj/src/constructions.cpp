#include "oddcycle/constructions.hpp"

#include <map>
#include <vector>

#include "oddcycle/error.hpp"

namespace oddcycle {

TumorShape parse_tumor_shape(const std::string& text) {
  if (text == "path") return TumorShape::Path;
  if (text == "cycle") return TumorShape::Cycle;
  throw InvalidArgument("tumor shape must be 'path' or 'cycle', got '" + text +
                        "'");
}

std::string tumor_shape_name(TumorShape shape) {
  return shape == TumorShape::Path ? "path" : "cycle";
}

namespace {

void check_spec(const BlowupSpec& spec) {
  if (spec.m < 2) throw InvalidArgument("blowup needs m >= 2");
  if (spec.t < 1) throw InvalidArgument("blowup needs t >= 1");
  if (spec.shape == TumorShape::Cycle && spec.t >= 3) {
    throw InvalidArgument(
        "cycle-shaped tumors with t >= 3 have no planar blowup: both anchors "
        "would have to lie on the same side of the tumor cycle");
  }
}

std::uint64_t power(std::uint64_t base, int exp) {
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

Blowup build_blowup(const BlowupSpec& spec) {
  check_spec(spec);
  const int L = spec.m;
  const int t = spec.t;
  auto anchor = [&](int i) { return static_cast<VertexId>(((i % L) + L) % L); };
  auto member = [&](int tumor, int j) {
    return static_cast<VertexId>(L + tumor * t + j);
  };
  // The skeleton edge (i, i+1) runs around the outside of tumor i. With two
  // anchors only tumor 0 carries one, since a second would be parallel.
  auto has_skeleton = [&](int i) {
    return spec.with_skeleton_edges && (L >= 3 || i == 0);
  };

  std::map<VertexId, std::vector<VertexId>> rotation;
  for (int a = 0; a < L; ++a) {
    auto& order = rotation[anchor(a)];
    const int before = (a - 1 + L) % L;
    if (has_skeleton(a)) order.push_back(anchor(a + 1));
    for (int j = t - 1; j >= 0; --j) order.push_back(member(a, j));
    for (int j = 0; j < t; ++j) order.push_back(member(before, j));
    if (has_skeleton(before)) order.push_back(anchor(before));
  }
  for (int i = 0; i < L; ++i) {
    for (int j = 0; j < t; ++j) {
      auto& order = rotation[member(i, j)];
      if (j + 1 < t) order.push_back(member(i, j + 1));
      order.push_back(anchor(i + 1));
      if (j > 0) order.push_back(member(i, j - 1));
      order.push_back(anchor(i));
    }
  }

  Embedding emb(std::move(rotation));
  Blowup out{emb.underlying_graph(), std::move(emb), {}};
  for (int a = 0; a < L; ++a) out.B.insert(anchor(a));
  if (!validate_embedding(out.graph, out.embedding).planar) {
    throw InvariantViolation("blowup embedding is not planar");
  }
  return out;
}

std::uint64_t expected_good_count(const BlowupSpec& spec, int m_cycle) {
  check_spec(spec);
  const int L = spec.m;
  const bool shifted = spec.with_skeleton_edges && m_cycle + 1 == L;
  if (m_cycle != L && !shifted) {
    throw InvalidArgument(
        "expected_good_count needs m_cycle = m, or m_cycle = m - 1 when the "
        "skeleton edges are present");
  }
  const std::uint64_t t = static_cast<std::uint64_t>(spec.t);

  // Good cycles whose monochromatic pair is an S-S edge.
  std::uint64_t with_ss = 0;
  if (m_cycle == L && L >= 3) {
    with_ss = 2 * static_cast<std::uint64_t>(L) * power(t, L - 1) * (t - 1);
  } else if (m_cycle == 2 && L == 2) {
    // One cluster of 2t vertices carrying 2(t-1) edges serves both roles.
    with_ss = 8 * (t - 1) * (t - 1);
  } else if (m_cycle == 2) {
    // Both S vertices and the S-S edge come from the same tumor.
    with_ss = 2 * static_cast<std::uint64_t>(L) * (t - 1) * (t > 1 ? t - 2 : 0);
  }
  // Good cycles whose monochromatic pair is a skeleton edge.
  std::uint64_t with_bb = 0;
  if (shifted) with_bb = static_cast<std::uint64_t>(L) * power(t, m_cycle);
  return with_ss + with_bb;
}

}  // namespace oddcycle
