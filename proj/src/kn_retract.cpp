#include "qmod/kn_retract.hpp"

#include <cmath>

#include "qmod/errors.hpp"

namespace qmod {

CMatrix phi_t(const CMatrix& g, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw PreconditionError("phi_t: t must lie in [0, 1]");
  require_finite(g, "phi_t");
  if (std::abs(g.determinant()) <= kTolMembership) throw NumericError("phi_t: singular input");
  if (t == 0.0) return g;
  return g * hermitian_power(g.adjoint() * g, -t / 2.0);
}

RetractResult retract_representation(const Representation& f, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw PreconditionError("retract: t must lie in [0, 1]");
  if (f.group().is_compact())
    return {f, "group is already compact; the retraction is the identity"};
  MarkingMap out;
  for (const auto& [id, m] : f.markings()) out[id] = phi_t(m, t);
  return {Representation(f.quiver(), f.group(), std::move(out), 10 * kTolMembership), std::nullopt};
}

CMatrix moment_projection(const CMatrix& m) {
  const auto n = static_cast<double>(m.rows());
  return m - (m.trace() / n) * identity(static_cast<int>(m.rows()));
}

KNResidual kn_moment(const Representation& f) {
  const int n = f.group().n;
  KNResidual r;
  for (const auto& v : f.quiver().vertices()) r.moments[v] = CMatrix::Zero(n, n);
  for (const auto& a : f.quiver().arrows()) {
    const CMatrix& m = f.marking(a.id);
    r.moments[a.tail] += m.adjoint() * m;
    r.moments[a.head] -= m * m.adjoint();
  }
  double sum = 0.0;
  for (auto& [v, m] : r.moments) {
    m = (m + m.adjoint()) * 0.5;
    sum += moment_projection(m).squaredNorm();
  }
  r.aggregate = std::sqrt(sum);
  return r;
}

double orbit_norm(const Representation& f) {
  double s = 0.0;
  for (const auto& [id, m] : f.markings()) s += m.squaredNorm();
  return s;
}

MarkingMap infinitesimal_action(const Representation& f, const std::map<VertexId, CMatrix>& u) {
  MarkingMap out;
  for (const auto& a : f.quiver().arrows()) {
    const CMatrix& m = f.marking(a.id);
    out[a.id] = m * u.at(a.tail) - u.at(a.head) * m;
  }
  return out;
}

Complex hermitian_pairing(const MarkingMap& x1, const MarkingMap& x2) {
  if (x1.size() != x2.size()) throw PreconditionError("hermitian_pairing: arrow sets differ");
  Complex s = 0.0;
  for (const auto& [id, m] : x1) {
    auto it = x2.find(id);
    if (it == x2.end()) throw PreconditionError("hermitian_pairing: arrow sets differ");
    s += (m.adjoint() * it->second).trace();
  }
  return s;
}

namespace {

Representation descend(const Representation& f, const KNResidual& r, double eps) {
  std::map<VertexId, CMatrix> values;
  for (const auto& [v, m] : r.moments) values[v] = hermitian_exp(eps * moment_projection(m));
  GaugeElement g(f.quiver(), f.group(), std::move(values), 10 * kTolMembership);
  return gauge_act(g, f);
}

}  // namespace

FlowReport kn_flow(const Representation& f, const FlowOptions& options) {
  if (f.group().is_compact()) throw PreconditionError("kn_flow: group family must be GL or SL");
  if (!(options.step0 > 0.0)) throw PreconditionError("kn_flow: step0 must be positive");
  FlowReport report{0, {}, {}, f, false};
  KNResidual r = kn_moment(f);
  double norm = orbit_norm(f);
  double eps = options.step0;
  report.residual_history.push_back(r.aggregate);
  report.norm_history.push_back(norm);

  while (true) {
    if (r.aggregate <= options.tol) {
      report.converged = true;
      break;
    }
    if (report.iterations >= options.max_iter) break;
    bool accepted = false;
    for (int tries = 0; tries <= options.max_backtracks; ++tries) {
      Representation next = descend(report.final_representation, r, eps);
      const double next_norm = orbit_norm(next);
      if (!std::isfinite(next_norm)) throw NumericError("kn_flow: non-finite norm; step size failed");
      if (next_norm < norm) {
        report.final_representation = std::move(next);
        norm = next_norm;
        accepted = true;
        break;
      }
      eps *= 0.5;
    }
    if (!accepted) break;  // no decrease at machine precision
    eps *= 2.0;
    ++report.iterations;
    r = kn_moment(report.final_representation);
    report.residual_history.push_back(r.aggregate);
    report.norm_history.push_back(norm);
  }
  return report;
}

}  // namespace qmod
