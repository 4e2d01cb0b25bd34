#pragma once

#include <map>
#include <set>
#include <vector>

#include "qmod/quiver.hpp"

namespace qmod {

// Total, surjective map from the vertices of a source quiver onto a target.
using VertexMap = std::map<VertexId, VertexId>;

struct PinchResult {
  Quiver quiver;
  VertexMap vertex_map;
};

/// Identify v1 and v2; the merged vertex keeps the smaller id.
PinchResult pinch(const Quiver& q, const VertexId& v1, const VertexId& v2);

/// Remove arrow a; vertices are untouched.
Quiver clip(const Quiver& q, const ArrowId& a);

/// Record of one collapse: which arrow went, its endpoints, and where every
/// vertex landed. The pushforward of a representation uses the marking of
/// `arrow` as the conjugator at `tail`.
struct CollapseStep {
  ArrowId arrow;
  VertexId tail;
  VertexId head;
  VertexId merged;
  VertexMap vertex_map;

  friend bool operator==(const CollapseStep&, const CollapseStep&) = default;
};

struct CollapseResult {
  Quiver quiver;
  RelationSet relations;
  CollapseStep step;
};

/// Merge the endpoints of the non-loop arrow a0 and delete it. Relation
/// words lose every occurrence of a0.
CollapseResult collapse(const Quiver& q, const RelationSet& r, const ArrowId& a0);

Word delete_arrow(const Word& w, const ArrowId& a0);

struct ReductionTrace {
  static constexpr int kVersion = 1;

  Quiver source;
  RelationSet source_relations;
  std::vector<CollapseStep> steps;
  Quiver final_quiver;
  RelationSet final_relations;
};

/// Collapse every arrow of the spanning tree (in discovery order) of a
/// connected quiver, leaving one vertex carrying b1(q) loops.
ReductionTrace reduce_to_rose(const Quiver& q, const RelationSet& r);

/// Re-run the recorded steps on trace.source; throws if any step no longer
/// applies.
Quiver replay(const ReductionTrace& trace);

/// Translate a word on trace.source to the final quiver.
Word translate_word(const ReductionTrace& trace, const Word& w);

Quiver reverse_arrows(const Quiver& q, const std::set<ArrowId>& subset);

bool arrows_equivalent(const Quiver& q1, const Quiver& q2);

}  // namespace qmod
