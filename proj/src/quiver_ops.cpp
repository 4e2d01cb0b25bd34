#include "qmod/quiver_ops.hpp"

#include <algorithm>

#include "qmod/errors.hpp"

namespace qmod {

PinchResult pinch(const Quiver& q, const VertexId& v1, const VertexId& v2) {
  if (!q.has_vertex(v1) || !q.has_vertex(v2)) throw PreconditionError("pinch: unknown vertex");
  if (v1 == v2) throw PreconditionError("pinch: vertices must differ");
  const VertexId& keep = std::min(v1, v2);
  const VertexId& gone = std::max(v1, v2);

  VertexMap map;
  std::vector<VertexId> vertices;
  for (const auto& v : q.vertices()) {
    map[v] = v == gone ? keep : v;
    if (v != gone) vertices.push_back(v);
  }
  std::vector<Arrow> arrows;
  for (const auto& a : q.arrows()) arrows.push_back({a.id, map.at(a.tail), map.at(a.head)});
  return {Quiver(std::move(vertices), std::move(arrows)), std::move(map)};
}

Quiver clip(const Quiver& q, const ArrowId& a) {
  if (!q.has_arrow(a)) throw PreconditionError("clip: unknown arrow '" + a + "'");
  std::vector<Arrow> arrows;
  for (const auto& x : q.arrows())
    if (x.id != a) arrows.push_back(x);
  return Quiver(q.vertices(), std::move(arrows));
}

Word delete_arrow(const Word& w, const ArrowId& a0) {
  Word out;
  for (const auto& l : w.letters)
    if (l.arrow != a0) out.letters.push_back(l);
  return out;
}

CollapseResult collapse(const Quiver& q, const RelationSet& r, const ArrowId& a0) {
  const Arrow& arrow = q.arrow(a0);
  if (arrow.is_loop()) throw PreconditionError("collapse: arrow '" + a0 + "' is a loop");
  PinchResult pinched = pinch(clip(q, a0), arrow.tail, arrow.head);

  RelationSet translated;
  for (const auto& w : r.relations) translated.relations.push_back(delete_arrow(w, a0));

  CollapseStep step{a0, arrow.tail, arrow.head, std::min(arrow.tail, arrow.head),
                    std::move(pinched.vertex_map)};
  return {std::move(pinched.quiver), std::move(translated), std::move(step)};
}

ReductionTrace reduce_to_rose(const Quiver& q, const RelationSet& r) {
  if (!is_connected(q)) throw PreconditionError("reduce_to_rose: quiver is not connected");
  SpanningForest forest = spanning_forest(q);
  ReductionTrace trace{q, r, {}, q, r};
  for (const auto& a : forest.tree_arrows) {
    CollapseResult next = collapse(trace.final_quiver, trace.final_relations, a);
    trace.final_quiver = std::move(next.quiver);
    trace.final_relations = std::move(next.relations);
    trace.steps.push_back(std::move(next.step));
  }
  return trace;
}

Quiver replay(const ReductionTrace& trace) {
  Quiver current = trace.source;
  RelationSet none;
  for (const auto& step : trace.steps) {
    const Arrow& a = current.arrow(step.arrow);
    if (a.tail != step.tail || a.head != step.head)
      throw PreconditionError("replay: step endpoints do not match arrow '" + step.arrow + "'");
    CollapseResult next = collapse(current, none, step.arrow);
    if (next.step.vertex_map != step.vertex_map)
      throw PreconditionError("replay: vertex map mismatch at arrow '" + step.arrow + "'");
    current = std::move(next.quiver);
  }
  return current;
}

Word translate_word(const ReductionTrace& trace, const Word& w) {
  Word out = w;
  for (const auto& step : trace.steps) out = delete_arrow(out, step.arrow);
  return out;
}

Quiver reverse_arrows(const Quiver& q, const std::set<ArrowId>& subset) {
  for (const auto& id : subset)
    if (!q.has_arrow(id)) throw PreconditionError("reverse: unknown arrow '" + id + "'");
  std::vector<Arrow> arrows;
  for (const auto& a : q.arrows())
    arrows.push_back(subset.count(a.id) ? Arrow{a.id, a.head, a.tail} : a);
  return Quiver(q.vertices(), std::move(arrows));
}

bool arrows_equivalent(const Quiver& q1, const Quiver& q2) { return q1.arrow_ids() == q2.arrow_ids(); }

}  // namespace qmod
