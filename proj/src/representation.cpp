#include "qmod/representation.hpp"

#include "qmod/errors.hpp"

namespace qmod {

namespace {

void check_marking(const CMatrix& m, const GroupSpec& g, double tol, const std::string& where) {
  if (m.rows() != g.n || m.cols() != g.n) throw PreconditionError(where + ": matrix size mismatch");
  require_finite(m, where.c_str());
  if (!in_group(m, g, tol))
    throw PreconditionError(where + ": matrix is not in " + to_string(g.family) + "(" +
                            std::to_string(g.n) + ")");
}

void require_same(const Quiver& a, const Quiver& b, const GroupSpec& ga, const GroupSpec& gb,
                  const char* what) {
  if (!(a == b)) throw PreconditionError(std::string(what) + ": quiver mismatch");
  if (!(ga == gb)) throw PreconditionError(std::string(what) + ": group mismatch");
}

}  // namespace

Representation::Representation(Quiver quiver, GroupSpec group, MarkingMap markings, double tol)
    : quiver_(std::move(quiver)), group_(group), markings_(std::move(markings)) {
  if (markings_.size() != quiver_.arrow_count())
    throw PreconditionError("representation: every arrow needs exactly one marking");
  for (const auto& [id, m] : markings_) {
    if (!quiver_.has_arrow(id)) throw PreconditionError("representation: unknown arrow '" + id + "'");
    check_marking(m, group_, tol, "marking of '" + id + "'");
  }
}

const CMatrix& Representation::marking(const ArrowId& a) const {
  auto it = markings_.find(a);
  if (it == markings_.end()) throw PreconditionError("unknown arrow '" + a + "'");
  return it->second;
}

GaugeElement::GaugeElement(Quiver quiver, GroupSpec group, std::map<VertexId, CMatrix> values,
                           double tol)
    : quiver_(std::move(quiver)), group_(group), values_(std::move(values)) {
  if (values_.size() != quiver_.vertex_count())
    throw PreconditionError("gauge element: every vertex needs exactly one value");
  for (const auto& [v, m] : values_) {
    if (!quiver_.has_vertex(v)) throw PreconditionError("gauge element: unknown vertex '" + v + "'");
    check_marking(m, group_, tol, "gauge value at '" + v + "'");
  }
}

GaugeElement GaugeElement::identity(const Quiver& q, const GroupSpec& g) {
  std::map<VertexId, CMatrix> values;
  for (const auto& v : q.vertices()) values[v] = qmod::identity(g.n);
  return GaugeElement(q, g, std::move(values));
}

const CMatrix& GaugeElement::at(const VertexId& v) const {
  auto it = values_.find(v);
  if (it == values_.end()) throw PreconditionError("unknown vertex '" + v + "'");
  return it->second;
}

GaugeElement GaugeElement::inverse() const {
  std::map<VertexId, CMatrix> values;
  for (const auto& [v, m] : values_) values[v] = qmod::inverse(m);
  return GaugeElement(quiver_, group_, std::move(values), 10 * kTolMembership);
}

GaugeElement operator*(const GaugeElement& a, const GaugeElement& b) {
  require_same(a.quiver(), b.quiver(), a.group(), b.group(), "gauge product");
  std::map<VertexId, CMatrix> values;
  for (const auto& [v, m] : a.values()) values[v] = m * b.at(v);
  return GaugeElement(a.quiver(), a.group(), std::move(values), 10 * kTolMembership);
}

Representation random_representation(const Quiver& q, const GroupSpec& g, Rng& rng) {
  MarkingMap m;
  for (const auto& a : q.arrows()) m[a.id] = random_element(g, rng);
  return Representation(q, g, std::move(m));
}

GaugeElement random_gauge(const Quiver& q, const GroupSpec& g, Rng& rng) {
  std::map<VertexId, CMatrix> values;
  for (const auto& v : q.vertices()) values[v] = random_element(g, rng);
  return GaugeElement(q, g, std::move(values));
}

MarkingMap gauge_act_markings(const GaugeElement& g, const Quiver& q, const MarkingMap& markings) {
  if (!(g.quiver() == q)) throw PreconditionError("gauge_act: quiver mismatch");
  std::map<VertexId, CMatrix> inverses;
  for (const auto& [v, m] : g.values()) inverses[v] = inverse(m);
  MarkingMap out;
  for (const auto& a : q.arrows()) {
    auto it = markings.find(a.id);
    if (it == markings.end()) throw PreconditionError("gauge_act: arrow '" + a.id + "' unmarked");
    out[a.id] = g.at(a.head) * it->second * inverses.at(a.tail);
  }
  return out;
}

Representation gauge_act(const GaugeElement& g, const Representation& f) {
  require_same(g.quiver(), f.quiver(), g.group(), f.group(), "gauge_act");
  return Representation(f.quiver(), f.group(), gauge_act_markings(g, f.quiver(), f.markings()),
                        10 * kTolMembership);
}

CMatrix evaluate_word(const Representation& f, const Word& w) {
  if (auto issue = check_composable(f.quiver(), w))
    throw PreconditionError("evaluate_word: letter " + std::to_string(issue->letter_index) + ": " +
                            issue->message);
  CMatrix out = identity(f.group().n);
  for (const auto& l : w.letters)
    out = out * (l.exponent > 0 ? f.marking(l.arrow) : inverse(f.marking(l.arrow)));
  return out;
}

bool satisfies_relations(const Representation& f, const RelationSet& r, double tol) {
  auto violations = validate_relations(f.quiver(), r);
  if (!violations.empty())
    throw PreconditionError("satisfies_relations: relation " +
                            std::to_string(violations.front().relation_index) + ": " +
                            violations.front().message);
  const CMatrix id = identity(f.group().n);
  for (const auto& w : r.relations)
    if (frobenius_distance(evaluate_word(f, w), id) > tol) return false;
  return true;
}

std::vector<Complex> trace_invariants(const Representation& f, const std::vector<Word>& words) {
  std::vector<Complex> out;
  out.reserve(words.size());
  for (const auto& w : words) {
    if (auto issue = check_closed(f.quiver(), w))
      throw PreconditionError("trace_invariants: " + issue->message);
    out.push_back(evaluate_word(f, w).trace());
  }
  return out;
}

std::vector<Word> invariant_word_menu(const Quiver& q, const RelationSet& r) {
  CycleBasis basis = fundamental_cycles(q);
  std::vector<Word> menu = basis.cycles;
  for (std::size_t i = 0; i < basis.cycles.size(); ++i) {
    for (std::size_t j = 0; j < basis.cycles.size(); ++j) {
      if (i == j) continue;
      const Word& a = basis.cycles[i];
      const Word& b = basis.cycles[j];
      if (word_basepoint(q, a) != word_basepoint(q, b)) continue;
      Word ab = a;
      ab.letters.insert(ab.letters.end(), b.letters.begin(), b.letters.end());
      menu.push_back(std::move(ab));
    }
  }
  for (const auto& w : r.relations) menu.push_back(w);
  return menu;
}

Pushforward pushforward_with_conjugators(const Representation& f, const ReductionTrace& trace) {
  if (!(f.quiver() == trace.source)) throw PreconditionError("pushforward: quiver does not match trace");
  const int n = f.group().n;
  Quiver current = trace.source;
  MarkingMap markings = f.markings();
  std::map<VertexId, VertexId> where;  // source vertex -> current vertex
  std::map<VertexId, CMatrix> conjugators;
  for (const auto& v : trace.source.vertices()) {
    where[v] = v;
    conjugators[v] = identity(n);
  }
  RelationSet none;
  for (const auto& step : trace.steps) {
    const Arrow& a0 = current.arrow(step.arrow);
    if (a0.tail != step.tail || a0.head != step.head)
      throw PreconditionError("pushforward: trace step does not match quiver");
    const CMatrix f0 = markings.at(step.arrow);
    const CMatrix f0_inv = inverse(f0);
    // gauge lambda = f0 at the tail, identity elsewhere
    MarkingMap next;
    for (const auto& a : current.arrows()) {
      if (a.id == step.arrow) continue;
      CMatrix m = markings.at(a.id);
      if (a.head == step.tail) m = f0 * m;
      if (a.tail == step.tail) m = m * f0_inv;
      next[a.id] = std::move(m);
    }
    for (auto& [v, c] : conjugators)
      if (where[v] == step.tail) c = f0 * c;
    current = collapse(current, none, step.arrow).quiver;
    for (auto& [v, w] : where) w = step.vertex_map.at(w);
    markings = std::move(next);
  }
  return {Representation(current, f.group(), std::move(markings), 10 * kTolMembership),
          std::move(conjugators)};
}

Representation pushforward_collapse(const Representation& f, const ReductionTrace& trace) {
  return pushforward_with_conjugators(f, trace).representation;
}

GaugeElement induced_gauge(const GaugeElement& g, const ReductionTrace& trace) {
  if (!(g.quiver() == trace.source)) throw PreconditionError("induced_gauge: quiver does not match trace");
  std::map<VertexId, CMatrix> values = g.values();
  for (const auto& step : trace.steps) {
    std::map<VertexId, CMatrix> next;
    for (const auto& [v, m] : values) {
      if (v == step.tail || v == step.head) continue;
      next[step.vertex_map.at(v)] = m;
    }
    next[step.merged] = values.at(step.head);
    values = std::move(next);
  }
  return GaugeElement(trace.final_quiver, g.group(), std::move(values));
}

TreeNormalForm normal_form_tree_gauge(const Representation& f) {
  const Quiver& q = f.quiver();
  if (!is_connected(q)) throw PreconditionError("normal_form_tree_gauge: quiver is not connected");
  SpanningForest forest = spanning_forest(q);
  std::map<VertexId, CMatrix> values;
  for (const auto& v : forest.visit_order) {
    auto it = forest.parent.find(v);
    if (it == forest.parent.end()) {
      values[v] = identity(f.group().n);
      continue;
    }
    const CMatrix& up = values.at(it->second);
    const Arrow& a = q.arrow(forest.parent_arrow.at(v));
    // parent -> v: g(v) f g(parent)^{-1} = I;  v -> parent: g(parent) f g(v)^{-1} = I
    values[v] = a.head == v ? CMatrix(up * inverse(f.marking(a.id))) : CMatrix(up * f.marking(a.id));
  }
  GaugeElement g(q, f.group(), std::move(values), 10 * kTolMembership);
  Representation gauged = gauge_act(g, f);
  return {std::move(g), std::move(gauged)};
}

Representation weighted_act(const GaugeElement& g, const Representation& f, const ArrowWeights& mu,
                            const ArrowWeights& nu) {
  require_same(g.quiver(), f.quiver(), g.group(), f.group(), "weighted_act");
  MarkingMap out;
  for (const auto& a : f.quiver().arrows()) {
    auto m = mu.find(a.id);
    auto n = nu.find(a.id);
    if (m == mu.end() || n == nu.end())
      throw PreconditionError("weighted_act: missing weight for arrow '" + a.id + "'");
    if (m->second < 0 || n->second < 0) throw PreconditionError("weighted_act: weights must be non-negative");
    out[a.id] = matrix_power(g.at(a.head), m->second) * f.marking(a.id) *
                matrix_power(g.at(a.tail), -n->second);
  }
  return Representation(f.quiver(), f.group(), std::move(out), 10 * kTolMembership);
}

Representation reverse_representation(const Representation& f, const std::set<ArrowId>& subset) {
  Quiver reversed = reverse_arrows(f.quiver(), subset);
  MarkingMap out = f.markings();
  for (const auto& id : subset) out[id] = inverse(out[id]);
  return Representation(std::move(reversed), f.group(), std::move(out), 10 * kTolMembership);
}

Representation transport(const Representation& f, const Quiver& target) {
  if (!arrows_equivalent(f.quiver(), target)) throw PreconditionError("transport: quivers are not arrow-equivalent");
  return Representation(target, f.group(), f.markings());
}

GaugeElement pull_back_gauge(const GaugeElement& g2, const Quiver& q1, const VertexMap& map) {
  std::map<VertexId, CMatrix> values;
  for (const auto& v : q1.vertices()) {
    auto it = map.find(v);
    if (it == map.end()) throw PreconditionError("pull_back_gauge: vertex map is not total");
    values[v] = g2.at(it->second);
  }
  return GaugeElement(q1, g2.group(), std::move(values));
}

}  // namespace qmod
