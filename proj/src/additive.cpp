#include "qmod/additive.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>

#include "qmod/errors.hpp"

namespace qmod {

AdditiveRep::AdditiveRep(Quiver q, int size, MarkingMap m)
    : quiver(std::move(q)), n(size), markings(std::move(m)) {
  if (n < 1) throw PreconditionError("additive rep: size must be positive");
  if (markings.size() != quiver.arrow_count())
    throw PreconditionError("additive rep: every arrow needs exactly one marking");
  for (const auto& [id, mat] : markings) {
    if (!quiver.has_arrow(id)) throw PreconditionError("additive rep: unknown arrow '" + id + "'");
    if (mat.rows() != n || mat.cols() != n) throw PreconditionError("additive rep: matrix size mismatch");
    require_finite(mat, "additive rep");
  }
}

AdditiveRep embed_additive(const Representation& f) {
  if (f.group().is_compact()) throw PreconditionError("embed_additive: group family must be GL or SL");
  return AdditiveRep(f.quiver(), f.group().n, f.markings());
}

Representation to_representation(const AdditiveRep& x, const GroupSpec& group) {
  if (group.n != x.n) throw PreconditionError("to_representation: size mismatch");
  return Representation(x.quiver, group, x.markings);
}

AdditiveRep gauge_act(const GaugeElement& g, const AdditiveRep& x) {
  if (g.group().n != x.n) throw PreconditionError("gauge_act: size mismatch");
  return AdditiveRep(x.quiver, x.n, gauge_act_markings(g, x.quiver, x.markings));
}

GaugeElement witness_gauge(const DegenerationWitness& w, const Quiver& q, int n, double t) {
  std::map<VertexId, CMatrix> values;
  for (const auto& v : q.vertices()) values[v] = v == w.vertex ? CMatrix(t * identity(n)) : identity(n);
  // scalar gauges t I are invertible for every t > 0 even when det underflows the membership tolerance
  return GaugeElement(q, GroupSpec::make(GroupFamily::GL, n), std::move(values),
                      std::numeric_limits<double>::min());
}

DegenerationWitness sink_source_witness(const AdditiveRep& x, const VertexId& v) {
  const VertexKind kind = classify_vertex(x.quiver, v);
  if (kind != VertexKind::Sink && kind != VertexKind::Source)
    throw PreconditionError("witness: vertex '" + v + "' is not a source or sink");
  const bool sink = kind == VertexKind::Sink;

  DegenerationWitness w{v,
                        sink ? DegenerationDirection::SinkToZero : DegenerationDirection::SourceToInfinity,
                        {},
                        {},
                        x,
                        {},
                        false};
  for (const auto& a : x.quiver.arrows()) {
    if ((sink ? a.head : a.tail) != v) continue;
    if (!x.markings.at(a.id).isZero(0.0)) w.zeroed_arrows.push_back(a.id);
    w.limit.markings[a.id] = CMatrix::Zero(x.n, x.n);
  }
  if (w.zeroed_arrows.empty())
    throw PreconditionError("witness: every marking at '" + v + "' is already zero");

  for (double t : {1.0, 0.5, 0.125, 1.0 / 64.0}) {
    const double param = sink ? t : 1.0 / t;
    w.parameters.push_back(param);
    w.samples.push_back(gauge_act(witness_gauge(w, x.quiver, x.n, param), x));
  }
  // A zero marking stays zero under every gauge transformation, while x has
  // a nonzero marking there: the limit is in the closure but not the orbit.
  w.certified_not_closed = true;
  return w;
}

namespace {

// Shortest oriented path (BFS, arrows in id order) from `from` to `to`,
// returned in traversal order.
std::optional<std::vector<ArrowId>> directed_path(const Quiver& q, const VertexId& from, const VertexId& to) {
  std::map<VertexId, ArrowId> via;
  std::set<VertexId> seen{from};
  std::deque<VertexId> queue{from};
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    if (v == to) break;
    for (const auto& a : q.arrows()) {
      if (a.tail != v || seen.count(a.head)) continue;
      seen.insert(a.head);
      via[a.head] = a.id;
      queue.push_back(a.head);
    }
  }
  if (!seen.count(to)) return std::nullopt;
  std::vector<ArrowId> path;
  for (VertexId v = to; v != from;) {
    const ArrowId& id = via.at(v);
    path.push_back(id);
    v = q.arrow(id).tail;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

WeightCheck monotone_weights_force_constant(const Quiver& q, const WeightAssignment& alpha) {
  if (!is_strongly_connected(q)) throw PreconditionError("monotone weights: quiver is not strongly connected");
  for (const auto& v : q.vertices())
    if (!alpha.count(v)) throw PreconditionError("monotone weights: no weight for vertex '" + v + "'");

  // Any arrow whose endpoints differ in weight lies on an oriented cycle, and
  // the weights cannot be non-decreasing all the way around it.
  for (const auto& a : q.arrows()) {
    if (alpha.at(a.head) == alpha.at(a.tail)) continue;
    auto back = directed_path(q, a.head, a.tail);
    std::vector<ArrowId> traversal{a.id};
    traversal.insert(traversal.end(), back->begin(), back->end());
    WeightCheck check;
    check.ok = false;
    Word cycle;
    for (auto it = traversal.rbegin(); it != traversal.rend(); ++it) cycle.letters.push_back({*it, 1});
    check.cycle = std::move(cycle);
    for (const auto& id : traversal) {
      const Arrow& b = q.arrow(id);
      if (alpha.at(b.head) < alpha.at(b.tail)) {
        check.violating_arrow = id;
        break;
      }
    }
    return check;
  }
  return {};
}

std::string to_string(OrbitVerdict v) {
  switch (v) {
    case OrbitVerdict::AllInvertibleOrbitsClosed: return "AllInvertibleOrbitsClosed";
    case OrbitVerdict::EndsObstruct: return "EndsObstruct";
    case OrbitVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

OrbitCertificate closed_orbit_certificate(const Quiver& q) {
  if (!is_connected(q)) throw PreconditionError("certificate: quiver is not connected");
  OrbitCertificate cert;
  cert.ends = end_vertices(q);
  if (!cert.ends.empty()) {
    cert.verdict = OrbitVerdict::EndsObstruct;
    return cert;
  }
  if (!is_strongly_connected(q)) {
    cert.verdict = OrbitVerdict::Inconclusive;
    return cert;
  }
  cert.verdict = OrbitVerdict::AllInvertibleOrbitsClosed;
  if (q.vertex_count() >= 2) {
    WeightAssignment alpha;
    for (const auto& v : q.vertices()) alpha[v] = 0;
    alpha[q.vertices().back()] = 1;
    cert.sample_check = monotone_weights_force_constant(q, alpha);
    cert.sample_weights = std::move(alpha);
  }
  return cert;
}

GaugeElement unimodular_rescale(const GaugeElement& g, const AdditiveRep& x, const AdditiveRep& x_prime,
                                double tol) {
  if (!(tol > 0)) throw PreconditionError("rescale: tolerance must be positive");
  if (!(g.quiver() == x.quiver) || !(x.quiver == x_prime.quiver))
    throw PreconditionError("rescale: quiver mismatch");
  if (x.n != x_prime.n || g.group().n != x.n) throw PreconditionError("rescale: size mismatch");
  for (const auto* rep : {&x, &x_prime})
    for (const auto& [id, m] : rep->markings)
      if (std::abs(m.determinant() - 1.0) > tol)
        throw PreconditionError("rescale: marking of '" + id + "' is not unimodular");
  const AdditiveRep moved = gauge_act(g, x);
  for (const auto& [id, m] : moved.markings)
    if (frobenius_distance(m, x_prime.markings.at(id)) > tol)
      throw PreconditionError("rescale: g does not carry x to x' at arrow '" + id + "'");

  const Complex d = g.values().begin()->second.determinant();
  for (const auto& [v, m] : g.values())
    if (std::abs(m.determinant() - d) > tol * std::max(1.0, std::abs(d)))
      throw PreconditionError("rescale: vertex determinants disagree; g is not rescalable");

  const Complex c = std::pow(d, 1.0 / x.n);
  std::map<VertexId, CMatrix> values;
  for (const auto& [v, m] : g.values()) values[v] = m / c;
  return GaugeElement(g.quiver(), GroupSpec::make(GroupFamily::SL, x.n), std::move(values), 10 * tol);
}

}  // namespace qmod
