#include "qmod/toric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qmod/errors.hpp"

namespace qmod {

namespace {

Integer abs_int(const Integer& x) { return x < 0 ? Integer(-x) : x; }

// Floor division for the Euclidean steps.
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void add_multiple(IntVector& row, const IntVector& other, const Integer& k) {
  for (std::size_t j = 0; j < row.size(); ++j) row[j] += k * other[j];
}

}  // namespace

WeightedToricAction weight_matrix(const Quiver& q, const ArrowWeights& mu, const ArrowWeights& nu) {
  WeightedToricAction w{q, {}, {}, {}};
  for (const auto& a : q.arrows()) {
    auto m = mu.find(a.id);
    auto n = nu.find(a.id);
    if (m == mu.end() || n == nu.end()) throw PreconditionError("weight_matrix: missing weight for arrow '" + a.id + "'");
    for (int x : {m->second, n->second})
      if (x < 0 || x > kMaxToricWeight)
        throw PreconditionError("weight_matrix: weight out of range for arrow '" + a.id + "'");
    w.mu[a.id] = m->second;
    w.nu[a.id] = n->second;
    IntVector row(q.vertex_count(), Integer(0));
    row[q.vertex_index(a.head)] += m->second;
    row[q.vertex_index(a.tail)] -= n->second;
    w.weights.push_back(std::move(row));
  }
  return w;
}

bool weight_matrix_consistent(const WeightedToricAction& w) {
  return weight_matrix(w.quiver, w.mu, w.nu).weights == w.weights;
}

RowEchelon row_echelon(const IntMatrix& a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  RowEchelon r{a, {}, 0, Integer(1)};
  r.transform.assign(rows, IntVector(rows, Integer(0)));
  for (std::size_t i = 0; i < rows; ++i) r.transform[i][i] = 1;

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(r.echelon[i], r.echelon[j]);
    std::swap(r.transform[i], r.transform[j]);
    r.transform_determinant = -r.transform_determinant;
  };

  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
    while (true) {
      // smallest nonzero |entry| in column c at or below pivot_row
      std::size_t best = rows;
      for (std::size_t i = pivot_row; i < rows; ++i) {
        if (r.echelon[i][c] == 0) continue;
        if (best == rows || abs_int(r.echelon[i][c]) < abs_int(r.echelon[best][c])) best = i;
      }
      if (best == rows) break;
      swap_rows(pivot_row, best);
      bool done = true;
      for (std::size_t i = pivot_row + 1; i < rows; ++i) {
        if (r.echelon[i][c] == 0) continue;
        const Integer k = floor_div(r.echelon[i][c], r.echelon[pivot_row][c]);
        add_multiple(r.echelon[i], r.echelon[pivot_row], -k);
        add_multiple(r.transform[i], r.transform[pivot_row], -k);
        if (r.echelon[i][c] != 0) done = false;
      }
      if (done) {
        ++pivot_row;
        break;
      }
    }
  }
  r.rank = pivot_row;
  return r;
}

IntMatrix hermite_normal_form(const IntMatrix& a) {
  RowEchelon r = row_echelon(a);
  IntMatrix h(r.echelon.begin(), r.echelon.begin() + static_cast<std::ptrdiff_t>(r.rank));
  std::size_t col = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    while (h[i][col] == 0) ++col;
    if (h[i][col] < 0)
      for (auto& x : h[i]) x = -x;
    for (std::size_t k = 0; k < i; ++k) {
      const Integer q = floor_div(h[k][col], h[i][col]);
      if (q != 0) add_multiple(h[k], h[i], -q);
    }
  }
  return h;
}

std::vector<Integer> smith_invariants(const IntMatrix& input) {
  IntMatrix a = input;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  std::vector<Integer> diag;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // move the smallest nonzero entry of the remaining block to (t, t)
    auto find_pivot = [&]() -> bool {
      std::size_t bi = rows, bj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (bi == rows || abs_int(a[i][j]) < abs_int(a[bi][bj]))) {
            bi = i;
            bj = j;
          }
      if (bi == rows) return false;
      std::swap(a[t], a[bi]);
      for (auto& row : a) std::swap(row[t], row[bj]);
      return true;
    };
    if (!find_pivot()) break;
    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        add_multiple(a[i], a[t], -floor_div(a[i][t], a[t][t]));
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const Integer k = floor_div(a[t][j], a[t][t]);
        for (std::size_t i = 0; i < rows; ++i) a[i][j] -= k * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) {
        find_pivot();
        continue;
      }
      // divisibility: pivot must divide the rest of the block
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            add_multiple(a[t], a[i], Integer(1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    diag.push_back(abs_int(a[t][t]));
  }
  return diag;
}

IntVector transpose_times(const IntMatrix& b, const IntVector& m) {
  if (b.size() != m.size()) throw PreconditionError("transpose_times: length mismatch");
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  IntVector out(cols, Integer(0));
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) out[j] += b[i][j] * m[i];
  return out;
}

MonomialBasis invariant_monomial_basis(const WeightedToricAction& w) {
  MonomialBasis basis;
  const std::size_t arrows = w.quiver.arrow_count();
  if (arrows == 0) {
    basis.transform_determinant = 1;
    basis.saturated = true;
    return basis;
  }
  RowEchelon r = row_echelon(w.weights);
  basis.rank = r.rank;
  basis.cell_dimension = arrows - r.rank;
  basis.transform_determinant = r.transform_determinant;
  IntMatrix kernel(r.transform.begin() + static_cast<std::ptrdiff_t>(r.rank), r.transform.end());
  basis.vectors = kernel.empty() ? IntMatrix{} : hermite_normal_form(kernel);
  const auto inv = smith_invariants(basis.vectors);
  basis.saturated = inv.size() == basis.vectors.size() &&
                    std::all_of(inv.begin(), inv.end(), [](const Integer& d) { return d == 1; });
  return basis;
}

namespace {

Complex int_power(Complex z, long long e) {
  if (e < 0) {
    z = 1.0 / z;
    e = -e;
  }
  Complex out = 1.0;
  while (e) {
    if (e & 1) out *= z;
    z *= z;
    e >>= 1;
  }
  return out;
}

Complex monomial(const Representation& f, const Quiver& q, const IntVector& m) {
  Complex out = 1.0;
  for (std::size_t i = 0; i < m.size(); ++i)
    out *= int_power(f.marking(q.arrows()[i].id)(0, 0), m[i].convert_to<long long>());
  return out;
}

}  // namespace

bool check_invariance(const WeightedToricAction& w, const IntVector& m, int trials, std::uint64_t seed) {
  const Quiver& q = w.quiver;
  if (m.size() != q.arrow_count()) throw PreconditionError("check_invariance: exponent vector length mismatch");
  const GroupSpec torus = GroupSpec::make(GroupFamily::Torus, 1);
  int max_weight = 1;
  for (const auto& [id, x] : w.mu) max_weight = std::max(max_weight, x);
  for (const auto& [id, x] : w.nu) max_weight = std::max(max_weight, x);
  Integer max_exp = 1;
  for (const auto& x : m) max_exp = std::max(max_exp, abs_int(x));
  // keep |value|^exponent well inside double range
  const double spread = 0.5 / (static_cast<double>(max_weight) * max_exp.convert_to<double>());

  Rng rng(seed);
  std::uniform_real_distribution<double> log_mod(-1.0, 1.0);
  std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
  auto scalar = [&](double scale) {
    CMatrix z(1, 1);
    z(0, 0) = std::polar(std::exp(scale * log_mod(rng)), phase(rng));
    return z;
  };
  for (int t = 0; t < trials; ++t) {
    MarkingMap markings;
    for (const auto& a : q.arrows()) markings[a.id] = scalar(spread);
    std::map<VertexId, CMatrix> values;
    for (const auto& v : q.vertices()) values[v] = scalar(spread);
    Representation f(q, torus, std::move(markings));
    GaugeElement g(q, torus, std::move(values));
    Representation moved = weighted_act(g, f, w.mu, w.nu);
    const Complex before = monomial(f, q, m);
    const Complex after = monomial(moved, q, m);
    if (std::abs(after - before) > 1e-9 * std::abs(before)) return false;
  }
  return true;
}

}  // namespace qmod
