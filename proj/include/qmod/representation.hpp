#pragma once

#include <map>
#include <set>
#include <vector>

#include "qmod/matgroup.hpp"
#include "qmod/quiver.hpp"
#include "qmod/quiver_ops.hpp"

namespace qmod {

using MarkingMap = std::map<ArrowId, CMatrix>;
using ArrowWeights = std::map<ArrowId, int>;

/// A group-valued marking of every arrow of a quiver.
class Representation {
 public:
  // Validates that every arrow is marked with an n x n group element.
  Representation(Quiver quiver, GroupSpec group, MarkingMap markings,
                 double tol = kTolMembership);

  const Quiver& quiver() const { return quiver_; }
  const GroupSpec& group() const { return group_; }
  const MarkingMap& markings() const { return markings_; }
  const CMatrix& marking(const ArrowId& a) const;

 private:
  Quiver quiver_;
  GroupSpec group_;
  MarkingMap markings_;
};

/// One group element per vertex; multiplication is vertex-wise.
class GaugeElement {
 public:
  GaugeElement(Quiver quiver, GroupSpec group, std::map<VertexId, CMatrix> values,
               double tol = kTolMembership);

  static GaugeElement identity(const Quiver& q, const GroupSpec& g);

  const Quiver& quiver() const { return quiver_; }
  const GroupSpec& group() const { return group_; }
  const std::map<VertexId, CMatrix>& values() const { return values_; }
  const CMatrix& at(const VertexId& v) const;

  GaugeElement inverse() const;
  friend GaugeElement operator*(const GaugeElement& a, const GaugeElement& b);

 private:
  Quiver quiver_;
  GroupSpec group_;
  std::map<VertexId, CMatrix> values_;
};

Representation random_representation(const Quiver& q, const GroupSpec& g, Rng& rng);
GaugeElement random_gauge(const Quiver& q, const GroupSpec& g, Rng& rng);

// g(h_a) f(a) g(t_a)^{-1} on every arrow
Representation gauge_act(const GaugeElement& g, const Representation& f);
MarkingMap gauge_act_markings(const GaugeElement& g, const Quiver& q, const MarkingMap& markings);

/// Product of markings in stored order; inverses for exponent -1 letters.
CMatrix evaluate_word(const Representation& f, const Word& w);

bool satisfies_relations(const Representation& f, const RelationSet& r, double tol = kTolEq);

/// Trace of each closed word. Throws PreconditionError on an open word.
std::vector<Complex> trace_invariants(const Representation& f, const std::vector<Word>& words);

/// Fundamental cycles, the products of each ordered pair sharing a
/// basepoint, and the relation words.
std::vector<Word> invariant_word_menu(const Quiver& q, const RelationSet& r = {});

struct Pushforward {
  Representation representation;
  // Accumulated conjugator per source vertex: a closed word based at v
  // evaluates on the pushforward to C_v * (original value) * C_v^{-1}.
  std::map<VertexId, CMatrix> conjugators;
};

/// Carry f along every collapse in the trace. At each step the current
/// marking f0 of the collapsed arrow acts as a gauge at its tail (identity
/// elsewhere); the collapsed arrow is then marked I and dropped.
Pushforward pushforward_with_conjugators(const Representation& f, const ReductionTrace& trace);
Representation pushforward_collapse(const Representation& f, const ReductionTrace& trace);

/// The gauge element on the final quiver matching g under the pushforward:
/// each merged vertex takes the value g had at the head of the collapsed arrow.
GaugeElement induced_gauge(const GaugeElement& g, const ReductionTrace& trace);

struct TreeNormalForm {
  GaugeElement gauge;
  Representation representation;
};

/// Gauge built along the spanning tree (identity at the root) that sends
/// every tree arrow to the identity. Requires a connected quiver.
TreeNormalForm normal_form_tree_gauge(const Representation& f);

/// psi(g, f)(a) = g(h_a)^{mu_a} f(a) g(t_a)^{-nu_a}. Not a group action
/// unless the group is abelian.
Representation weighted_act(const GaugeElement& g, const Representation& f, const ArrowWeights& mu,
                            const ArrowWeights& nu);

/// Same quiver with `subset` reversed, those arrows marked by the inverse.
Representation reverse_representation(const Representation& f, const std::set<ArrowId>& subset);

/// Markings reinterpreted on an arrow-equivalent quiver (e.g. after a pinch).
Representation transport(const Representation& f, const Quiver& target);

/// Gauge on q1 pulled back along a vertex map q1 -> q2 from a gauge on q2.
GaugeElement pull_back_gauge(const GaugeElement& g2, const Quiver& q1, const VertexMap& map);

}  // namespace qmod
