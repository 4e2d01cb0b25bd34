#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qmod {

using VertexId = std::string;
using ArrowId = std::string;

struct Arrow {
  ArrowId id;
  VertexId tail;
  VertexId head;

  bool is_loop() const { return tail == head; }
  friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// Finite directed multigraph with string-labelled vertices and arrows.
///
/// Vertices and arrows are kept sorted by id, so two quivers built from the
/// same declarations in a different order compare equal and every traversal
/// below is deterministic. Loops and parallel arrows are allowed.
class Quiver {
 public:
  Quiver(std::vector<VertexId> vertices, std::vector<Arrow> arrows);

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }

  bool has_vertex(const VertexId& v) const;
  bool has_arrow(const ArrowId& a) const;
  // Throws PreconditionError for unknown ids.
  const Arrow& arrow(const ArrowId& a) const;
  std::size_t vertex_index(const VertexId& v) const;

  std::vector<ArrowId> arrow_ids() const;

  friend bool operator==(const Quiver&, const Quiver&) = default;

 private:
  std::vector<VertexId> vertices_;
  std::vector<Arrow> arrows_;
};

/// One letter of a word: an arrow traversed forwards (+1) or backwards (-1).
struct Letter {
  ArrowId arrow;
  int exponent = 1;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A word in the arrows, stored in composition order: letters.front() is
/// applied last and letters.back() first, so a path a_k ... a_1 is stored
/// as {a_k, ..., a_1}.
struct Word {
  std::vector<Letter> letters;

  bool empty() const { return letters.empty(); }
  friend bool operator==(const Word&, const Word&) = default;
};

Word positive_word(const std::vector<ArrowId>& arrows);

// Vertex a letter starts from / ends at when traversed with its exponent.
const VertexId& letter_start(const Quiver& q, const Letter& l);
const VertexId& letter_end(const Quiver& q, const Letter& l);

struct WordIssue {
  std::size_t letter_index;
  std::string message;
};

// First problem that prevents `w` from being a composable word on `q`
// (unknown arrow, bad exponent, or a break between consecutive letters).
std::optional<WordIssue> check_composable(const Quiver& q, const Word& w);
// Like check_composable but also requires the word to close up.
std::optional<WordIssue> check_closed(const Quiver& q, const Word& w);
// Basepoint (start = end vertex) of a closed, non-empty word.
VertexId word_basepoint(const Quiver& q, const Word& w);

struct RelationSet {
  std::vector<Word> relations;

  friend bool operator==(const RelationSet&, const RelationSet&) = default;
};

struct RelationViolation {
  std::size_t relation_index;
  std::size_t letter_index;
  std::string message;
};

/// Each relation must be a positively oriented cycle. Empty result means ok.
std::vector<RelationViolation> validate_relations(const Quiver& q, const RelationSet& r);

enum class GroupFamily { GL, SL, U, SU, Torus };

struct GroupSpec {
  GroupFamily family = GroupFamily::GL;
  int n = 1;

  static GroupSpec make(GroupFamily family, int n);

  bool is_compact() const { return family == GroupFamily::U || family == GroupFamily::SU; }
  bool has_unit_determinant() const { return family == GroupFamily::SL || family == GroupFamily::SU; }
  // Complex dimension of the group, or of the complexification for U/SU.
  int dimension() const;
  int center_dimension() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

std::string to_string(GroupFamily f);
GroupFamily parse_group_family(const std::string& name);

// --- topology -------------------------------------------------------------

std::vector<std::vector<VertexId>> connected_components(const Quiver& q);
bool is_connected(const Quiver& q);

int betti_number(const Quiver& q);
int euler_characteristic(const Quiver& q);

enum class VertexKind { Source, Sink, Internal, Isolated };
std::string to_string(VertexKind k);

VertexKind classify_vertex(const Quiver& q, const VertexId& v);
std::vector<VertexId> end_vertices(const Quiver& q);

bool is_super_cyclic(const Quiver& q);
// Tarjan; components listed in reverse topological order of the condensation.
std::vector<std::vector<VertexId>> strongly_connected_components(const Quiver& q);
bool is_strongly_connected(const Quiver& q);

/// Breadth-first spanning forest. Each component is rooted at its smallest
/// vertex id; the incident arrows of a vertex are scanned in id order.
struct SpanningForest {
  std::vector<VertexId> roots;
  std::vector<ArrowId> tree_arrows;  // discovery order
  // child vertex -> arrow connecting it to its parent
  std::map<VertexId, ArrowId> parent_arrow;
  std::map<VertexId, VertexId> parent;
  std::map<VertexId, VertexId> root_of;
  std::vector<VertexId> visit_order;
};

SpanningForest spanning_forest(const Quiver& q);

// Word following forest arrows from `from` to `to` (same component).
Word forest_path(const Quiver& q, const SpanningForest& forest, const VertexId& from,
                 const VertexId& to);

struct CycleBasis {
  SpanningForest forest;
  std::vector<ArrowId> chord_arrows;  // non-tree arrows, id order
  std::vector<Word> cycles;           // cycles[i] closes chord_arrows[i]
};

/// One cycle per non-tree arrow a: the forest path from h_a to t_a followed
/// by a itself, based at h_a.
CycleBasis fundamental_cycles(const Quiver& q);

/// Complex dimension of the moduli space for a connected quiver; 0 for trees.
int dimension_formula(const Quiver& q, const GroupSpec& g);

}  // namespace qmod
