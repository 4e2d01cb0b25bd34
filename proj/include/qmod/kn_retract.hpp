#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmod/representation.hpp"

namespace qmod {

/// phi_t(g) = g (g* g)^{-t/2} = k e^{(1-t) p}; phi_0 = id, phi_1 = polar
/// unitary factor. Requires t in [0, 1] and g invertible.
CMatrix phi_t(const CMatrix& g, double t);

struct RetractResult {
  Representation representation;
  std::optional<std::string> notice;
};

/// phi_t on every marking. Compact families come back unchanged with a notice.
RetractResult retract_representation(const Representation& f, double t);

/// Per-vertex moment matrices
///   M_v = sum_{t_a = v} f(a)* f(a) - sum_{h_a = v} f(a) f(a)*
/// and the aggregate sqrt(sum_v ||pi(M_v)||_F^2), where pi drops the trace
/// for unit-determinant families.
struct KNResidual {
  std::map<VertexId, CMatrix> moments;
  double aggregate = 0.0;
};

KNResidual kn_moment(const Representation& f);

// pi(M): the traceless part. Unitary directions pair against traceless u only.
CMatrix moment_projection(const CMatrix& m);

/// sum_a ||f(a)||_F^2
double orbit_norm(const Representation& f);

/// u . f at arrow a: f(a) u(t_a) - u(h_a) f(a).
MarkingMap infinitesimal_action(const Representation& f, const std::map<VertexId, CMatrix>& u);

/// sum_a tr(x1(a)* x2(a)).
Complex hermitian_pairing(const MarkingMap& x1, const MarkingMap& x2);

struct FlowReport {
  int iterations = 0;
  std::vector<double> residual_history;
  std::vector<double> norm_history;
  Representation final_representation;
  bool converged = false;
};

struct FlowOptions {
  double step0 = 0.1;
  int max_iter = 10000;
  double tol = 1e-8;
  int max_backtracks = 60;
};

/// Steepest descent of orbit_norm along Hermitian gauge directions:
/// f <- exp(eps pi(M)) . f with eps halved until the norm drops and doubled
/// after every accepted step. Stops once the residual is at most tol.
FlowReport kn_flow(const Representation& f, const FlowOptions& options);

}  // namespace qmod
