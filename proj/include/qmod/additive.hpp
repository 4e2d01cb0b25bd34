#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qmod/representation.hpp"

namespace qmod {

/// Quiver representation by arbitrary n x n matrices (no invertibility).
struct AdditiveRep {
  Quiver quiver;
  int n = 1;
  MarkingMap markings;

  AdditiveRep(Quiver q, int size, MarkingMap m);
};

/// The inclusion of group-valued representations into additive ones.
AdditiveRep embed_additive(const Representation& f);

/// Back to a Representation; throws unless every marking lies in `group`.
Representation to_representation(const AdditiveRep& x, const GroupSpec& group);

/// Gauge action formula applied to an additive representation.
AdditiveRep gauge_act(const GaugeElement& g, const AdditiveRep& x);

enum class DegenerationDirection { SinkToZero, SourceToInfinity };

/// One-parameter subgroup g_v = t I (identity elsewhere) degenerating x at
/// an end vertex v: at a sink as t -> 0, at a source as t -> infinity.
struct DegenerationWitness {
  VertexId vertex;
  DegenerationDirection direction;
  std::vector<double> parameters;
  std::vector<AdditiveRep> samples;
  AdditiveRep limit;
  std::vector<ArrowId> zeroed_arrows;  // nonzero in x, zero in the limit
  bool certified_not_closed = false;
};

DegenerationWitness sink_source_witness(const AdditiveRep& x, const VertexId& v);

// The gauge element realizing the witness at parameter t.
GaugeElement witness_gauge(const DegenerationWitness& w, const Quiver& q, int n, double t);

using WeightAssignment = std::map<VertexId, long long>;

struct WeightCheck {
  bool ok = true;
  // Oriented cycle through a strictly increasing arrow; along it some arrow
  // (violating_arrow) must drop in weight.
  std::optional<Word> cycle;
  std::optional<ArrowId> violating_arrow;
};

/// On a strongly connected quiver, a weight assignment with
/// alpha(h_a) >= alpha(t_a) for all a must be constant. Returns ok for
/// constant alpha and otherwise a cycle exhibiting a violated inequality.
WeightCheck monotone_weights_force_constant(const Quiver& q, const WeightAssignment& alpha);

enum class OrbitVerdict { AllInvertibleOrbitsClosed, EndsObstruct, Inconclusive };
std::string to_string(OrbitVerdict v);

struct OrbitCertificate {
  OrbitVerdict verdict = OrbitVerdict::Inconclusive;
  std::vector<VertexId> ends;
  // For AllInvertibleOrbitsClosed on >= 2 vertices: a non-constant weight
  // assignment and the check refuting its monotonicity.
  std::optional<WeightAssignment> sample_weights;
  std::optional<WeightCheck> sample_check;
};

OrbitCertificate closed_orbit_certificate(const Quiver& q);

/// Given g . x = x' with x, x' unimodular, divide g by a common n-th root of
/// its (equal) vertex determinants to get a unit-determinant gauge with the
/// same action.
GaugeElement unimodular_rescale(const GaugeElement& g, const AdditiveRep& x, const AdditiveRep& x_prime,
                                double tol);

}  // namespace qmod
