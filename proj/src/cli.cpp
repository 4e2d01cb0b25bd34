#include "qmod/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qmod/additive.hpp"
#include "qmod/dsl.hpp"
#include "qmod/errors.hpp"
#include "qmod/json_io.hpp"
#include "qmod/kn_retract.hpp"
#include "qmod/quiver_ops.hpp"
#include "qmod/toric.hpp"

namespace qmod::cli {

namespace {

using nlohmann::json;
namespace jio = qmod::json;

struct UsageFailure {
  std::string message;
};

struct ParseFailure {
  std::string message;
};

struct Options {
  double tol = kTolEq;
  std::uint64_t seed = 0;
  bool json = false;

  std::string file;
  std::string group = "GL";
  int n = 2;
  std::string arrow;
  std::vector<std::string> vertices;
  std::vector<std::string> arrows;
  std::string rep_file;
  std::string gauge_file;
  std::string x_file;
  std::string x_prime_file;
  std::string vertex;
  double t = 1.0;
  double step = 0.1;
  int max_iter = 10000;
  int trials = 8;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageFailure{"cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

dsl::QuiverDocument load_document(const std::string& path) {
  const std::string text = read_file(path);
  dsl::ParseResult parsed = dsl::parse(text);
  if (!parsed.ok()) {
    std::string msg;
    for (const auto& d : parsed.diagnostics) msg += dsl::format_diagnostic(d, path) + "\n";
    throw ParseFailure{msg};
  }
  return std::move(*parsed.document);
}

json load_json(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseFailure{path + ": " + e.what()};
  }
}

void check_size(int n) {
  if (n > kMaxMatrixSize)
    throw UsageFailure{"matrix size " + std::to_string(n) + " exceeds the supported maximum of " +
                       std::to_string(kMaxMatrixSize)};
}

// Decoding errors from malformed but syntactically valid JSON count as parse failures.
template <class F>
auto decode(const std::string& path, F f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseFailure{path + ": " + e.what()};
  } catch (const jio::DecodeError& e) {
    throw ParseFailure{path + ": " + e.what()};
  }
}

Representation load_representation(const std::string& path, const Quiver& q) {
  json j = load_json(path);
  if (j.contains("group") && j["group"].contains("n") && j["group"]["n"].is_number_integer())
    check_size(j["group"]["n"].get<int>());
  return decode(path, [&] { return jio::decode_representation(j, q); });
}

GaugeElement load_gauge(const std::string& path, const Quiver& q) {
  json j = load_json(path);
  if (j.contains("group") && j["group"].contains("n") && j["group"]["n"].is_number_integer())
    check_size(j["group"]["n"].get<int>());
  return decode(path, [&] { return jio::decode_gauge(j, q); });
}

AdditiveRep load_additive(const std::string& path, const Quiver& q) {
  json j = load_json(path);
  AdditiveRep x = decode(path, [&] { return jio::decode_additive(j, q); });
  check_size(x.n);
  return x;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

std::string join(const std::vector<std::string>& xs) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : " ") + x;
  return s;
}

int cmd_info(const Options& o, std::ostream& out) {
  const auto doc = load_document(o.file);
  const Quiver& q = doc.quiver;
  json j;
  j["vertices"] = q.vertex_count();
  j["arrows"] = q.arrow_count();
  j["components"] = connected_components(q).size();
  j["betti_number"] = betti_number(q);
  j["euler_characteristic"] = euler_characteristic(q);
  json kinds = json::object();
  for (const auto& v : q.vertices()) kinds[v] = to_string(classify_vertex(q, v));
  j["vertex_kinds"] = kinds;
  j["ends"] = end_vertices(q);
  j["super_cyclic"] = is_super_cyclic(q);
  j["strongly_connected"] = is_strongly_connected(q);
  json cycles = json::array();
  for (const auto& w : fundamental_cycles(q).cycles) cycles.push_back(jio::encode(w));
  j["fundamental_cycles"] = cycles;
  const GroupSpec g = GroupSpec::make(parse_group_family(o.group), o.group == "TORUS" ? 1 : o.n);
  j["group"] = jio::encode(g);
  if (is_connected(q) && !g.is_compact()) j["dimension"] = dimension_formula(q, g);
  else j["dimension"] = nullptr;

  if (o.json) {
    emit(out, j);
    return kOk;
  }
  out << "b1: " << j["betti_number"] << "\n";
  out << "euler_characteristic: " << j["euler_characteristic"] << "\n";
  out << "components: " << j["components"] << "\n";
  out << "ends: " << join(end_vertices(q)) << "\n";
  out << "super_cyclic: " << (is_super_cyclic(q) ? "true" : "false") << "\n";
  out << "strongly_connected: " << (is_strongly_connected(q) ? "true" : "false") << "\n";
  out << "dimension " << to_string(g.family) << "(" << g.n << "): ";
  if (j["dimension"].is_null()) out << "n/a\n";
  else out << j["dimension"] << "\n";
  return kOk;
}

int cmd_reduce(const Options& o, std::ostream& out) {
  const auto doc = load_document(o.file);
  ReductionTrace trace = reduce_to_rose(doc.quiver, doc.relations);
  const bool point = trace.final_quiver.arrow_count() == 0;
  if (o.json) {
    json j = {{"rose", jio::encode(trace.final_quiver)},
              {"loops", trace.final_quiver.arrow_count()},
              {"relations", jio::encode(trace.final_relations)},
              {"trace", jio::encode(trace)}};
    if (point) j["message"] = "moduli is a point";
    emit(out, j);
    return kOk;
  }
  out << dsl::print(trace.final_quiver, trace.final_relations, doc.name);
  out << "# loops: " << trace.final_quiver.arrow_count() << ", collapsed: " << trace.steps.size() << "\n";
  if (point) out << "# moduli is a point\n";
  return kOk;
}

int emit_rewrite(const Options& o, std::ostream& out, const dsl::QuiverDocument& doc, const Quiver& q,
                 const RelationSet& r, const VertexMap* map) {
  if (o.json) {
    json j = {{"quiver", jio::encode(q)}, {"relations", jio::encode(r)}};
    if (map) j["vertex_map"] = *map;
    emit(out, j);
  } else {
    out << dsl::print(q, r, doc.name);
  }
  return kOk;
}

int cmd_collapse(const Options& o, std::ostream& out) {
  const auto doc = load_document(o.file);
  CollapseResult c = collapse(doc.quiver, doc.relations, o.arrow);
  return emit_rewrite(o, out, doc, c.quiver, c.relations, &c.step.vertex_map);
}

int cmd_pinch(const Options& o, std::ostream& out) {
  const auto doc = load_document(o.file);
  if (o.vertices.size() != 2) throw UsageFailure{"pinch needs exactly two vertices"};
  PinchResult p = pinch(doc.quiver, o.vertices[0], o.vertices[1]);
  RelationSet r;
  // relations survive a pinch unchanged unless they stop being cycles, which cannot happen
  r = doc.relations;
  return emit_rewrite(o, out, doc, p.quiver, r, &p.vertex_map);
}

int cmd_clip(const Options& o, std::ostream& out) {
  const auto doc = load_document(o.file);
  Quiver q = clip(doc.quiver, o.arrow);
  RelationSet r;
  for (const auto& w : doc.relations.relations) {
    bool uses = false;
    for (const auto& l : w.letters) uses = uses || l.arrow == o.arrow;
    if (!uses) r.relations.push_back(w);
  }
  return emit_rewrite(o, out, doc, q, r, nullptr);
}

int cmd_reverse(const Options& o, std::ostream& out) {
  const auto doc = load_document(o.file);
  std::set<ArrowId> subset(o.arrows.begin(), o.arrows.end());
  Quiver q = reverse_arrows(doc.quiver, subset);
  RelationSet r;
  for (const auto& w : doc.relations.relations) {
    bool uses = false;
    for (const auto& l : w.letters) uses = uses || subset.count(l.arrow);
    if (!uses) r.relations.push_back(w);
  }
  return emit_rewrite(o, out, doc, q, r, nullptr);
}

int cmd_format(const Options& o, std::ostream& out) {
  out << dsl::print(load_document(o.file));
  return kOk;
}

int cmd_sample(const Options& o, std::ostream& out) {
  const auto doc = load_document(o.file);
  check_size(o.n);
  const GroupFamily family = parse_group_family(o.group);
  const GroupSpec g = GroupSpec::make(family, family == GroupFamily::Torus ? 1 : o.n);
  Rng rng(o.seed);
  emit(out, jio::encode(random_representation(doc.quiver, g, rng)));
  return kOk;
}

int cmd_act(const Options& o, std::ostream& out) {
  const auto doc = load_document(o.file);
  Representation f = load_representation(o.rep_file, doc.quiver);
  GaugeElement g = load_gauge(o.gauge_file, doc.quiver);
  emit(out, jio::encode(gauge_act(g, f)));
  return kOk;
}

int cmd_retract(const Options& o, std::ostream& out, std::ostream& err) {
  const auto doc = load_document(o.file);
  Representation f = load_representation(o.rep_file, doc.quiver);
  RetractResult r = retract_representation(f, o.t);
  if (r.notice) err << "notice: " << *r.notice << "\n";
  emit(out, jio::encode(r.representation));
  return kOk;
}

int cmd_kn_residual(const Options& o, std::ostream& out) {
  const auto doc = load_document(o.file);
  Representation f = load_representation(o.rep_file, doc.quiver);
  json j = jio::encode(kn_moment(f));
  j["orbit_norm"] = orbit_norm(f);
  emit(out, j);
  return kOk;
}

int cmd_kn_flow(const Options& o, std::ostream& out) {
  const auto doc = load_document(o.file);
  Representation f = load_representation(o.rep_file, doc.quiver);
  FlowOptions opts;
  opts.step0 = o.step;
  opts.max_iter = o.max_iter;
  opts.tol = o.tol;
  emit(out, jio::encode(kn_flow(f, opts)));
  return kOk;
}

int cmd_witness(const Options& o, std::ostream& out) {
  const auto doc = load_document(o.file);
  AdditiveRep x = load_additive(o.rep_file, doc.quiver);
  emit(out, jio::encode(sink_source_witness(x, o.vertex)));
  return kOk;
}

int cmd_certificate(const Options& o, std::ostream& out) {
  const auto doc = load_document(o.file);
  OrbitCertificate c = closed_orbit_certificate(doc.quiver);
  if (o.json) {
    emit(out, jio::encode(c));
  } else {
    out << to_string(c.verdict);
    if (!c.ends.empty()) out << ": " << join(c.ends);
    out << "\n";
  }
  return kOk;
}

int cmd_rescale(const Options& o, std::ostream& out) {
  const auto doc = load_document(o.file);
  GaugeElement g = load_gauge(o.gauge_file, doc.quiver);
  AdditiveRep x = load_additive(o.x_file, doc.quiver);
  AdditiveRep xp = load_additive(o.x_prime_file, doc.quiver);
  emit(out, jio::encode(unimodular_rescale(g, x, xp, o.tol)));
  return kOk;
}

int cmd_toric(const Options& o, std::ostream& out) {
  const auto doc = load_document(o.file);
  WeightedToricAction w = weight_matrix(doc.quiver, doc.mu(), doc.nu());
  MonomialBasis b = invariant_monomial_basis(w);
  json j = jio::encode(b);
  json rows = json::array();
  for (const auto& row : w.weights) {
    json r = json::array();
    for (const auto& x : row) r.push_back(jio::encode_integer(x));
    rows.push_back(std::move(r));
  }
  j["weight_matrix"] = rows;
  j["arrows"] = doc.quiver.arrow_ids();
  j["vertices"] = doc.quiver.vertices();
  bool all = true;
  for (std::size_t i = 0; i < b.vectors.size(); ++i)
    all = all && check_invariance(w, b.vectors[i], o.trials, o.seed + i);
  j["numeric_check"] = all;
  emit(out, j);
  return kOk;
}

int cmd_check_relations(const Options& o, std::ostream& out) {
  const auto doc = load_document(o.file);
  Representation f = load_representation(o.rep_file, doc.quiver);
  json devs = json::array();
  const CMatrix id = identity(f.group().n);
  for (const auto& w : doc.relations.relations)
    devs.push_back({{"word", dsl::format_word(w)}, {"deviation", frobenius_distance(evaluate_word(f, w), id)}});
  emit(out, {{"satisfied", satisfies_relations(f, doc.relations, o.tol)}, {"relations", devs}});
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Quiver representation moduli toolkit", "qmod"};
  app.require_subcommand(1);
  app.add_option("--tol", o.tol, "Numerical tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "Random seed");
  app.add_flag("--json", o.json, "JSON output for every subcommand");

  auto file_cmd = [&](const char* name, const char* help) {
    CLI::App* c = app.add_subcommand(name, help);
    c->add_option("file", o.file, "Quiver file")->required();
    return c;
  };
  auto* info = file_cmd("info", "Betti number, Euler characteristic, ends, dimension");
  info->add_option("--group", o.group, "GL, SL, U, SU or TORUS");
  info->add_option("--n", o.n, "Matrix size");
  auto* reduce = file_cmd("reduce", "Collapse a spanning tree down to a rose");
  auto* collapse_c = file_cmd("collapse", "Collapse one non-loop arrow");
  collapse_c->add_option("--arrow", o.arrow)->required();
  auto* pinch_c = file_cmd("pinch", "Identify two vertices");
  pinch_c->add_option("--vertices", o.vertices)->required()->expected(2);
  auto* clip_c = file_cmd("clip", "Remove an arrow");
  clip_c->add_option("--arrow", o.arrow)->required();
  auto* reverse_c = file_cmd("reverse", "Reverse a set of arrows");
  reverse_c->add_option("--arrows", o.arrows);
  auto* format = file_cmd("format", "Print the canonical form of a quiver file");
  auto* sample = file_cmd("sample", "Random representation");
  sample->add_option("--group", o.group);
  sample->add_option("--n", o.n);
  auto* act = file_cmd("act", "Gauge action");
  act->add_option("--rep", o.rep_file)->required();
  act->add_option("--gauge", o.gauge_file)->required();
  auto* retract = file_cmd("retract", "Polar retraction phi_t on every marking");
  retract->add_option("--rep", o.rep_file)->required();
  retract->add_option("--t", o.t);
  auto* residual = file_cmd("kn-residual", "Moment matrices and Kempf-Ness residual");
  residual->add_option("--rep", o.rep_file)->required();
  auto* flow = file_cmd("kn-flow", "Norm-minimizing gauge flow");
  flow->add_option("--rep", o.rep_file)->required();
  flow->add_option("--step", o.step);
  flow->add_option("--max-iter", o.max_iter);
  auto* witness = file_cmd("witness", "Degeneration witness at a source or sink");
  witness->add_option("--rep", o.rep_file)->required();
  witness->add_option("--vertex", o.vertex)->required();
  auto* certificate = file_cmd("certificate", "Closed-orbit certificate");
  auto* rescale = file_cmd("rescale", "Rescale a gauge to unit determinant");
  rescale->add_option("--gauge", o.gauge_file)->required();
  rescale->add_option("--x", o.x_file)->required();
  rescale->add_option("--x-prime", o.x_prime_file)->required();
  auto* toric = file_cmd("toric", "Invariant monomial basis of the weighted torus action");
  toric->add_option("--trials", o.trials);
  auto* check = file_cmd("check-relations", "Evaluate relation words");
  check->add_option("--rep", o.rep_file)->required();
  for (auto* c : app.get_subcommands({})) c->fallthrough();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*info) return cmd_info(o, out);
    if (*reduce) return cmd_reduce(o, out);
    if (*collapse_c) return cmd_collapse(o, out);
    if (*pinch_c) return cmd_pinch(o, out);
    if (*clip_c) return cmd_clip(o, out);
    if (*reverse_c) return cmd_reverse(o, out);
    if (*format) return cmd_format(o, out);
    if (*sample) return cmd_sample(o, out);
    if (*act) return cmd_act(o, out);
    if (*retract) return cmd_retract(o, out, err);
    if (*residual) return cmd_kn_residual(o, out);
    if (*flow) return cmd_kn_flow(o, out);
    if (*witness) return cmd_witness(o, out);
    if (*certificate) return cmd_certificate(o, out);
    if (*rescale) return cmd_rescale(o, out);
    if (*toric) return cmd_toric(o, out);
    if (*check) return cmd_check_relations(o, out);
  } catch (const UsageFailure& e) {
    err << "error: " << e.message << "\n";
    return kUsage;
  } catch (const ParseFailure& e) {
    err << e.message;
    if (!e.message.empty() && e.message.back() != '\n') err << "\n";
    return kParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kNumeric;
  }
  return kUsage;
}

}  // namespace qmod::cli
