#include "qmod/json_io.hpp"

#include <limits>

#include "qmod/errors.hpp"

namespace qmod::json {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw DecodeError("json: " + msg);
}

}  // namespace

json encode(Complex z) { return json::array({z.real(), z.imag()}); }

json encode(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(encode(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix decode_matrix(const json& j) {
  require(j.is_array() && !j.empty(), "matrix must be a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    require(row.is_array() && static_cast<Eigen::Index>(row.size()) == n, "matrix must be square");
    for (Eigen::Index k = 0; k < n; ++k) {
      const json& e = row[static_cast<std::size_t>(k)];
      require(e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number(),
              "matrix entries must be [re, im] pairs");
      m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  require_finite(m, "json matrix");
  return m;
}

json encode(const GroupSpec& g) { return {{"family", to_string(g.family)}, {"n", g.n}}; }

GroupSpec decode_group(const json& j) {
  require(j.is_object() && j.contains("family") && j.contains("n"), "group needs family and n");
  return GroupSpec::make(parse_group_family(j.at("family").get<std::string>()), j.at("n").get<int>());
}

json encode(const Quiver& q) {
  json arrows = json::array();
  for (const auto& a : q.arrows()) arrows.push_back({{"id", a.id}, {"tail", a.tail}, {"head", a.head}});
  return {{"vertices", q.vertices()}, {"arrows", std::move(arrows)}};
}

json encode(const Word& w) {
  json out = json::array();
  for (const auto& l : w.letters) out.push_back(json::array({l.arrow, l.exponent}));
  return out;
}

Word decode_word(const json& j) {
  require(j.is_array(), "word must be an array");
  Word w;
  for (const auto& l : j) {
    require(l.is_array() && l.size() == 2, "word letters are [arrow, exponent]");
    w.letters.push_back({l[0].get<std::string>(), l[1].get<int>()});
  }
  return w;
}

json encode(const RelationSet& r) {
  json out = json::array();
  for (const auto& w : r.relations) out.push_back(encode(w));
  return out;
}

json encode(const MarkingMap& m) {
  json out = json::object();
  for (const auto& [id, mat] : m) out[id] = encode(mat);
  return out;
}

MarkingMap decode_markings(const json& j) {
  require(j.is_object(), "markings must be an object");
  MarkingMap m;
  for (const auto& [id, mat] : j.items()) m[id] = decode_matrix(mat);
  return m;
}

json encode(const Representation& f) {
  return {{"group", encode(f.group())}, {"markings", encode(f.markings())}};
}

Representation decode_representation(const json& j, const Quiver& q) {
  require(j.is_object() && j.contains("group") && j.contains("markings"),
          "representation needs group and markings");
  return Representation(q, decode_group(j.at("group")), decode_markings(j.at("markings")));
}

json encode(const GaugeElement& g) {
  json values = json::object();
  for (const auto& [v, m] : g.values()) values[v] = encode(m);
  return {{"group", encode(g.group())}, {"values", std::move(values)}};
}

GaugeElement decode_gauge(const json& j, const Quiver& q) {
  require(j.is_object() && j.contains("group") && j.contains("values"), "gauge needs group and values");
  std::map<VertexId, CMatrix> values;
  for (const auto& [v, m] : j.at("values").items()) values[v] = decode_matrix(m);
  return GaugeElement(q, decode_group(j.at("group")), std::move(values));
}

json encode(const AdditiveRep& x) { return {{"n", x.n}, {"markings", encode(x.markings)}}; }

AdditiveRep decode_additive(const json& j, const Quiver& q) {
  require(j.is_object() && j.contains("markings"), "additive representation needs markings");
  int n = 0;
  if (j.contains("n")) n = j.at("n").get<int>();
  else if (j.contains("group")) n = decode_group(j.at("group")).n;
  else require(false, "additive representation needs n or group");
  return AdditiveRep(q, n, decode_markings(j.at("markings")));
}

json encode(const CollapseStep& s) {
  return {{"arrow", s.arrow}, {"tail", s.tail}, {"head", s.head}, {"merged", s.merged}, {"vertex_map", s.vertex_map}};
}

json encode(const ReductionTrace& t) {
  json steps = json::array();
  for (const auto& s : t.steps) steps.push_back(encode(s));
  return {{"version", ReductionTrace::kVersion},
          {"source", encode(t.source)},
          {"steps", std::move(steps)},
          {"final_quiver", encode(t.final_quiver)},
          {"final_relations", encode(t.final_relations)}};
}

json encode(const KNResidual& r) {
  json moments = json::object();
  for (const auto& [v, m] : r.moments) moments[v] = encode(m);
  return {{"moments", std::move(moments)}, {"aggregate", r.aggregate}};
}

json encode(const FlowReport& r) {
  return {{"iterations", r.iterations},
          {"converged", r.converged},
          {"residual_history", r.residual_history},
          {"norm_history", r.norm_history},
          {"final", encode(r.final_representation)}};
}

json encode(const DegenerationWitness& w) {
  json samples = json::array();
  for (std::size_t i = 0; i < w.samples.size(); ++i)
    samples.push_back({{"t", w.parameters[i]}, {"markings", encode(w.samples[i].markings)}});
  return {{"vertex", w.vertex},
          {"direction", w.direction == DegenerationDirection::SinkToZero ? "sink: t -> 0" : "source: t -> inf"},
          {"gauge_rule", "g_v = t I, identity elsewhere"},
          {"samples", std::move(samples)},
          {"limit", encode(w.limit)},
          {"zeroed_arrows", w.zeroed_arrows},
          {"certified_not_closed", w.certified_not_closed}};
}

json encode(const WeightCheck& c) {
  json out = {{"ok", c.ok}};
  if (c.cycle) out["cycle"] = encode(*c.cycle);
  if (c.violating_arrow) out["violating_arrow"] = *c.violating_arrow;
  return out;
}

json encode(const OrbitCertificate& c) {
  json out = {{"verdict", to_string(c.verdict)}, {"ends", c.ends}};
  if (c.sample_weights) out["sample_weights"] = *c.sample_weights;
  if (c.sample_check) out["sample_check"] = encode(*c.sample_check);
  return out;
}

json encode_integer(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return x.convert_to<long long>();
  return x.str();
}

json encode(const MonomialBasis& b) {
  json vectors = json::array();
  for (const auto& v : b.vectors) {
    json row = json::array();
    for (const auto& x : v) row.push_back(encode_integer(x));
    vectors.push_back(std::move(row));
  }
  return {{"vectors", std::move(vectors)},
          {"rank", b.rank},
          {"cell_dimension", b.cell_dimension},
          {"saturated", b.saturated}};
}

}  // namespace qmod::json
