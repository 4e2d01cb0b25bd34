#include "qmod/quiver.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "qmod/errors.hpp"

namespace qmod {

Quiver::Quiver(std::vector<VertexId> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
  if (vertices_.empty()) throw PreconditionError("quiver needs at least one vertex");
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
    throw PreconditionError("duplicate vertex id");
  std::sort(arrows_.begin(), arrows_.end(),
            [](const Arrow& a, const Arrow& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < arrows_.size(); ++i) {
    const Arrow& a = arrows_[i];
    if (i > 0 && arrows_[i - 1].id == a.id)
      throw PreconditionError("duplicate arrow id '" + a.id + "'");
    if (!has_vertex(a.tail) || !has_vertex(a.head))
      throw PreconditionError("arrow '" + a.id + "' references an undeclared vertex");
  }
}

bool Quiver::has_vertex(const VertexId& v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool Quiver::has_arrow(const ArrowId& a) const {
  auto it = std::lower_bound(arrows_.begin(), arrows_.end(), a,
                             [](const Arrow& x, const ArrowId& id) { return x.id < id; });
  return it != arrows_.end() && it->id == a;
}

const Arrow& Quiver::arrow(const ArrowId& a) const {
  auto it = std::lower_bound(arrows_.begin(), arrows_.end(), a,
                             [](const Arrow& x, const ArrowId& id) { return x.id < id; });
  if (it == arrows_.end() || it->id != a) throw PreconditionError("unknown arrow '" + a + "'");
  return *it;
}

std::size_t Quiver::vertex_index(const VertexId& v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) throw PreconditionError("unknown vertex '" + v + "'");
  return static_cast<std::size_t>(it - vertices_.begin());
}

std::vector<ArrowId> Quiver::arrow_ids() const {
  std::vector<ArrowId> ids;
  ids.reserve(arrows_.size());
  for (const auto& a : arrows_) ids.push_back(a.id);
  return ids;
}

Word positive_word(const std::vector<ArrowId>& arrows) {
  Word w;
  for (const auto& a : arrows) w.letters.push_back({a, 1});
  return w;
}

const VertexId& letter_start(const Quiver& q, const Letter& l) {
  const Arrow& a = q.arrow(l.arrow);
  return l.exponent > 0 ? a.tail : a.head;
}

const VertexId& letter_end(const Quiver& q, const Letter& l) {
  const Arrow& a = q.arrow(l.arrow);
  return l.exponent > 0 ? a.head : a.tail;
}

std::optional<WordIssue> check_composable(const Quiver& q, const Word& w) {
  const auto& ls = w.letters;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (!q.has_arrow(ls[i].arrow)) return WordIssue{i, "unknown arrow '" + ls[i].arrow + "'"};
    if (ls[i].exponent != 1 && ls[i].exponent != -1)
      return WordIssue{i, "exponent must be +1 or -1"};
  }
  // letters[i + 1] is applied just before letters[i]
  for (std::size_t i = 0; i + 1 < ls.size(); ++i) {
    if (letter_end(q, ls[i + 1]) != letter_start(q, ls[i]))
      return WordIssue{i, "letter '" + ls[i].arrow + "' does not continue from '" +
                              ls[i + 1].arrow + "'"};
  }
  return std::nullopt;
}

std::optional<WordIssue> check_closed(const Quiver& q, const Word& w) {
  if (auto issue = check_composable(q, w)) return issue;
  if (w.empty()) return std::nullopt;
  if (letter_end(q, w.letters.front()) != letter_start(q, w.letters.back()))
    return WordIssue{0, "word does not close up"};
  return std::nullopt;
}

VertexId word_basepoint(const Quiver& q, const Word& w) {
  if (w.empty()) throw PreconditionError("empty word has no basepoint");
  if (auto issue = check_closed(q, w)) throw PreconditionError(issue->message);
  return letter_start(q, w.letters.back());
}

std::vector<RelationViolation> validate_relations(const Quiver& q, const RelationSet& r) {
  std::vector<RelationViolation> out;
  for (std::size_t i = 0; i < r.relations.size(); ++i) {
    const Word& w = r.relations[i];
    bool positive = true;
    for (std::size_t j = 0; j < w.letters.size(); ++j) {
      if (w.letters[j].exponent != 1) {
        out.push_back({i, j, "relation letters must be positively oriented"});
        positive = false;
        break;
      }
    }
    if (!positive) continue;
    if (auto issue = check_closed(q, w)) out.push_back({i, issue->letter_index, issue->message});
  }
  return out;
}

GroupSpec GroupSpec::make(GroupFamily family, int n) {
  if (n < 1) throw PreconditionError("group size must be at least 1");
  if (family == GroupFamily::Torus && n != 1) throw PreconditionError("TORUS is GL(1); n must be 1");
  return GroupSpec{family, n};
}

int GroupSpec::dimension() const {
  switch (family) {
    case GroupFamily::GL:
    case GroupFamily::U:
      return n * n;
    case GroupFamily::SL:
    case GroupFamily::SU:
      return n * n - 1;
    case GroupFamily::Torus:
      return 1;
  }
  return 0;
}

int GroupSpec::center_dimension() const {
  switch (family) {
    case GroupFamily::GL:
    case GroupFamily::U:
    case GroupFamily::Torus:
      return 1;
    case GroupFamily::SL:
    case GroupFamily::SU:
      return 0;
  }
  return 0;
}

std::string to_string(GroupFamily f) {
  switch (f) {
    case GroupFamily::GL: return "GL";
    case GroupFamily::SL: return "SL";
    case GroupFamily::U: return "U";
    case GroupFamily::SU: return "SU";
    case GroupFamily::Torus: return "TORUS";
  }
  return "?";
}

GroupFamily parse_group_family(const std::string& name) {
  if (name == "GL") return GroupFamily::GL;
  if (name == "SL") return GroupFamily::SL;
  if (name == "U") return GroupFamily::U;
  if (name == "SU") return GroupFamily::SU;
  if (name == "TORUS") return GroupFamily::Torus;
  throw PreconditionError("unknown group family '" + name + "'");
}

namespace {

// Undirected incidence: for each vertex, the arrows touching it in id order.
std::map<VertexId, std::vector<const Arrow*>> incidence(const Quiver& q) {
  std::map<VertexId, std::vector<const Arrow*>> inc;
  for (const auto& v : q.vertices()) inc[v];
  for (const auto& a : q.arrows()) {
    inc[a.tail].push_back(&a);
    if (!a.is_loop()) inc[a.head].push_back(&a);
  }
  return inc;
}

}  // namespace

SpanningForest spanning_forest(const Quiver& q) {
  auto inc = incidence(q);
  SpanningForest f;
  std::set<VertexId> seen;
  for (const auto& start : q.vertices()) {
    if (seen.count(start)) continue;
    f.roots.push_back(start);
    seen.insert(start);
    f.root_of[start] = start;
    std::deque<VertexId> queue{start};
    while (!queue.empty()) {
      VertexId v = queue.front();
      queue.pop_front();
      f.visit_order.push_back(v);
      for (const Arrow* a : inc[v]) {
        const VertexId& other = a->tail == v ? a->head : a->tail;
        if (seen.count(other)) continue;
        seen.insert(other);
        f.tree_arrows.push_back(a->id);
        f.parent_arrow[other] = a->id;
        f.parent[other] = v;
        f.root_of[other] = start;
        queue.push_back(other);
      }
    }
  }
  return f;
}

namespace {

// Letters walking from v up to its root, in the order they are traversed.
std::vector<Letter> path_to_root(const Quiver& q, const SpanningForest& f, VertexId v) {
  std::vector<Letter> walk;
  while (f.parent.count(v)) {
    const Arrow& a = q.arrow(f.parent_arrow.at(v));
    // leaving v towards its parent: forwards iff v is the tail
    walk.push_back({a.id, a.tail == v ? 1 : -1});
    v = f.parent.at(v);
  }
  return walk;
}

}  // namespace

Word forest_path(const Quiver& q, const SpanningForest& forest, const VertexId& from,
                 const VertexId& to) {
  if (forest.root_of.at(from) != forest.root_of.at(to))
    throw PreconditionError("forest_path between different components");
  auto up = path_to_root(q, forest, from);
  auto down = path_to_root(q, forest, to);
  // drop the shared tail above the lowest common ancestor
  while (!up.empty() && !down.empty() && up.back() == down.back()) {
    up.pop_back();
    down.pop_back();
  }
  // traversal order: up (from -> lca), then down reversed and inverted
  std::vector<Letter> traversal = up;
  for (auto it = down.rbegin(); it != down.rend(); ++it) traversal.push_back({it->arrow, -it->exponent});
  Word w;
  w.letters.assign(traversal.rbegin(), traversal.rend());
  return w;
}

CycleBasis fundamental_cycles(const Quiver& q) {
  CycleBasis basis;
  basis.forest = spanning_forest(q);
  std::set<ArrowId> tree(basis.forest.tree_arrows.begin(), basis.forest.tree_arrows.end());
  for (const auto& a : q.arrows()) {
    if (tree.count(a.id)) continue;
    Word closing = forest_path(q, basis.forest, a.head, a.tail);
    Word cycle;
    cycle.letters.push_back({a.id, 1});
    cycle.letters.insert(cycle.letters.end(), closing.letters.begin(), closing.letters.end());
    basis.chord_arrows.push_back(a.id);
    basis.cycles.push_back(std::move(cycle));
  }
  return basis;
}

std::vector<std::vector<VertexId>> connected_components(const Quiver& q) {
  SpanningForest f = spanning_forest(q);
  std::map<VertexId, std::vector<VertexId>> by_root;
  for (const auto& v : f.visit_order) by_root[f.root_of.at(v)].push_back(v);
  std::vector<std::vector<VertexId>> out;
  for (const auto& r : f.roots) {
    auto comp = by_root[r];
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_connected(const Quiver& q) { return connected_components(q).size() == 1; }

int betti_number(const Quiver& q) {
  return static_cast<int>(q.arrow_count()) - static_cast<int>(q.vertex_count()) +
         static_cast<int>(connected_components(q).size());
}

int euler_characteristic(const Quiver& q) {
  return static_cast<int>(q.vertex_count()) - static_cast<int>(q.arrow_count());
}

std::string to_string(VertexKind k) {
  switch (k) {
    case VertexKind::Source: return "source";
    case VertexKind::Sink: return "sink";
    case VertexKind::Internal: return "internal";
    case VertexKind::Isolated: return "isolated";
  }
  return "?";
}

VertexKind classify_vertex(const Quiver& q, const VertexId& v) {
  if (!q.has_vertex(v)) throw PreconditionError("unknown vertex '" + v + "'");
  bool in = false, out = false;
  for (const auto& a : q.arrows()) {
    if (a.head == v) in = true;
    if (a.tail == v) out = true;
  }
  if (in && out) return VertexKind::Internal;
  if (in) return VertexKind::Sink;
  if (out) return VertexKind::Source;
  return VertexKind::Isolated;
}

std::vector<VertexId> end_vertices(const Quiver& q) {
  std::vector<VertexId> ends;
  for (const auto& v : q.vertices()) {
    auto k = classify_vertex(q, v);
    if (k == VertexKind::Source || k == VertexKind::Sink) ends.push_back(v);
  }
  return ends;
}

bool is_super_cyclic(const Quiver& q) { return end_vertices(q).empty(); }

namespace {

struct Tarjan {
  const std::vector<std::vector<std::size_t>>& succ;
  std::vector<int> index, low;
  std::vector<bool> on_stack;
  std::vector<std::size_t> stack;
  int counter = 0;
  std::vector<std::vector<std::size_t>> sccs;

  explicit Tarjan(const std::vector<std::vector<std::size_t>>& graph)
      : succ(graph), index(graph.size(), -1), low(graph.size(), -1), on_stack(graph.size(), false) {}

  void visit(std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : succ[v]) {
      if (index[w] == -1) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> comp;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp.push_back(w);
      } while (w != v);
      sccs.push_back(std::move(comp));
    }
  }
};

}  // namespace

std::vector<std::vector<VertexId>> strongly_connected_components(const Quiver& q) {
  std::vector<std::vector<std::size_t>> graph(q.vertex_count());
  for (const auto& a : q.arrows()) graph[q.vertex_index(a.tail)].push_back(q.vertex_index(a.head));
  Tarjan t(graph);
  for (std::size_t v = 0; v < graph.size(); ++v)
    if (t.index[v] == -1) t.visit(v);
  std::vector<std::vector<VertexId>> out;
  for (auto& comp : t.sccs) {
    std::vector<VertexId> names;
    for (auto i : comp) names.push_back(q.vertices()[i]);
    std::sort(names.begin(), names.end());
    out.push_back(std::move(names));
  }
  return out;
}

bool is_strongly_connected(const Quiver& q) { return strongly_connected_components(q).size() == 1; }

int dimension_formula(const Quiver& q, const GroupSpec& g) {
  if (!is_connected(q)) throw PreconditionError("dimension formula needs a connected quiver");
  if (g.is_compact()) throw PreconditionError("dimension formula is for complex reductive families");
  if (betti_number(q) == 0) return 0;
  return g.center_dimension() - g.dimension() * euler_characteristic(q);
}

}  // namespace qmod
