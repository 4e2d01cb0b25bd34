#include <gtest/gtest.h>

#include "generators.hpp"
#include "qmod/additive.hpp"
#include "qmod/errors.hpp"

using namespace qmod;

namespace {

CMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

const GroupSpec kGL2 = GroupSpec::make(GroupFamily::GL, 2);
const GroupSpec kGL3 = GroupSpec::make(GroupFamily::GL, 3);
const GroupSpec kSL2 = GroupSpec::make(GroupFamily::SL, 2);
const GroupSpec kSL3 = GroupSpec::make(GroupFamily::SL, 3);

Quiver one_arrow() { return Quiver({"v0", "v1"}, {{"a0", "v0", "v1"}}); }
Quiver two_cycle() { return Quiver({"v0", "v1"}, {{"a", "v0", "v1"}, {"b", "v1", "v0"}}); }
Quiver bridge() {
  return Quiver({"p0", "p1", "q0", "q1"}, {{"a", "p0", "p1"},
                                          {"b", "p1", "p0"},
                                          {"c", "q0", "q1"},
                                          {"d", "q1", "q0"},
                                          {"e", "p1", "q0"}});
}

bool is_zero(const CMatrix& m) { return (m.array() == Complex(0.0, 0.0)).all(); }

}  // namespace

TEST(Embed, KeepsMatrices) {
  Rng rng(1);
  Quiver q = gen::random_connected_quiver(rng);
  Representation f = random_representation(q, kGL3, rng);
  AdditiveRep x = embed_additive(f);
  for (const auto& [id, m] : x.markings) {
    EXPECT_EQ(m, f.marking(id));
    EXPECT_NE(std::abs(m.determinant()), 0.0);
  }
  Representation back = to_representation(x, kGL3);
  EXPECT_EQ(gen::max_marking_distance(back, f), 0.0);

  Representation fs = random_representation(q, kSL3, rng);
  for (const auto& [id, m] : embed_additive(fs).markings) EXPECT_LT(std::abs(m.determinant() - 1.0), 1e-10);
}

TEST(Embed, SingularDoesNotRoundTrip) {
  AdditiveRep x(one_arrow(), 2, {{"a0", mat2(1.0, 0.0, 0.0, 0.0)}});
  EXPECT_THROW(to_representation(x, kGL2), PreconditionError);
}

// Any invertible additive representation is in the image of the embedding.
TEST(Embed, InvertibleAdditiveIsInImage) {
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    Quiver q = gen::random_connected_quiver(rng, 5, 8);
    MarkingMap m;
    for (const auto& a : q.arrows()) m[a.id] = complex_gaussian(3, rng);
    AdditiveRep x(q, 3, m);
    Representation f = to_representation(x, kGL3);
    for (const auto& [id, mm] : embed_additive(f).markings) EXPECT_EQ(mm, m.at(id));
  }
}

TEST(Witness, OneArrowSink) {
  AdditiveRep x(one_arrow(), 2, {{"a0", identity(2)}});
  DegenerationWitness w = sink_source_witness(x, "v1");
  EXPECT_EQ(w.direction, DegenerationDirection::SinkToZero);
  EXPECT_TRUE(is_zero(w.limit.markings.at("a0")));
  EXPECT_TRUE(w.certified_not_closed);
  EXPECT_EQ(w.zeroed_arrows, std::vector<ArrowId>{"a0"});
  EXPECT_EQ(w.parameters, (std::vector<double>{1.0, 0.5, 0.125, 1.0 / 64}));
}

TEST(Witness, SourceUsesReciprocals) {
  AdditiveRep x(one_arrow(), 2, {{"a0", identity(2)}});
  DegenerationWitness w = sink_source_witness(x, "v0");
  EXPECT_EQ(w.direction, DegenerationDirection::SourceToInfinity);
  EXPECT_EQ(w.parameters, (std::vector<double>{1.0, 2.0, 8.0, 64.0}));
  EXPECT_TRUE(is_zero(w.limit.markings.at("a0")));
}

TEST(Witness, StarCenterSink) {
  Rng rng(3);
  Quiver star({"c", "s1", "s2", "s3"}, {{"e1", "s1", "c"}, {"e2", "s2", "c"}, {"e3", "s3", "c"}});
  AdditiveRep x = embed_additive(random_representation(star, kGL3, rng));
  DegenerationWitness w = sink_source_witness(x, "c");
  EXPECT_EQ(w.zeroed_arrows, (std::vector<ArrowId>{"e1", "e2", "e3"}));
  for (const auto& id : w.zeroed_arrows) EXPECT_TRUE(is_zero(w.limit.markings.at(id)));
}

TEST(Witness, Errors) {
  Quiver tail({"v0", "v1"}, {{"a0", "v0", "v1"}, {"b", "v1", "v1"}});
  AdditiveRep x(tail, 2, {{"a0", identity(2)}, {"b", identity(2)}});
  EXPECT_THROW(sink_source_witness(x, "v1"), PreconditionError);
  AdditiveRep zero(one_arrow(), 2, {{"a0", CMatrix::Zero(2, 2)}});
  EXPECT_THROW(sink_source_witness(zero, "v1"), PreconditionError);
}

// Soundness: every sample is the explicit gauge transform of x, and the
// limit agrees with x away from the end.
TEST(Witness, SamplesAreInOrbit) {
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    Quiver q = gen::random_quiver_with_ends(rng);
    AdditiveRep x = embed_additive(random_representation(q, kGL2, rng));
    for (const auto& v : end_vertices(q)) {
      DegenerationWitness w = sink_source_witness(x, v);
      for (std::size_t k = 0; k < w.parameters.size(); ++k) {
        AdditiveRep expected = gauge_act(witness_gauge(w, q, 2, w.parameters[k]), x);
        for (const auto& [id, m] : expected.markings)
          EXPECT_LT(frobenius_distance(w.samples[k].markings.at(id), m), 1e-12 * std::max(1.0, m.norm()));
      }
      for (const auto& a : q.arrows()) {
        const bool incident = a.head == v || a.tail == v;
        if (incident) EXPECT_TRUE(is_zero(w.limit.markings.at(a.id)));
        else EXPECT_EQ(w.limit.markings.at(a.id), x.markings.at(a.id));
      }
    }
  }
}

TEST(Witness, ZeroPersists) {
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    Quiver q = gen::random_connected_quiver(rng, 5, 8);
    if (q.arrows().empty()) continue;
    MarkingMap m;
    for (const auto& a : q.arrows()) m[a.id] = complex_gaussian(2, rng);
    const ArrowId zeroed = q.arrows().front().id;
    m[zeroed] = CMatrix::Zero(2, 2);
    AdditiveRep y = gauge_act(random_gauge(q, kGL2, rng), AdditiveRep(q, 2, m));
    EXPECT_TRUE(is_zero(y.markings.at(zeroed)));
  }
}

TEST(Certificate, Examples) {
  EXPECT_EQ(closed_orbit_certificate(Quiver({"v"}, {{"a", "v", "v"}})).verdict,
            OrbitVerdict::AllInvertibleOrbitsClosed);
  Quiver path({"v0", "v1", "v2", "v3"}, {{"a0", "v0", "v1"}, {"a1", "v1", "v2"}, {"a2", "v2", "v3"}});
  OrbitCertificate c = closed_orbit_certificate(path);
  EXPECT_EQ(c.verdict, OrbitVerdict::EndsObstruct);
  EXPECT_EQ(c.ends, (std::vector<VertexId>{"v0", "v3"}));
  EXPECT_EQ(closed_orbit_certificate(bridge()).verdict, OrbitVerdict::Inconclusive);
  EXPECT_THROW(closed_orbit_certificate(Quiver({"u", "v"}, {})), PreconditionError);
}

TEST(Certificate, Coherence) {
  Rng rng(6);
  for (int i = 0; i < 200; ++i) {
    Quiver q = gen::random_connected_quiver(rng, 6, 10);
    if (q.arrow_count() == 0) continue;
    OrbitCertificate c = closed_orbit_certificate(q);
    EXPECT_EQ(c.verdict == OrbitVerdict::EndsObstruct, !is_super_cyclic(q));
    if (c.verdict == OrbitVerdict::AllInvertibleOrbitsClosed) {
      EXPECT_TRUE(is_strongly_connected(q));
      if (q.vertex_count() >= 2) {
        ASSERT_TRUE(c.sample_check.has_value());
        EXPECT_FALSE(c.sample_check->ok);
      }
    }
  }
}

TEST(MonotoneWeights, TwoCycle) {
  EXPECT_TRUE(monotone_weights_force_constant(two_cycle(), {{"v0", 0}, {"v1", 0}}).ok);
  WeightCheck c = monotone_weights_force_constant(two_cycle(), {{"v0", 0}, {"v1", 1}});
  EXPECT_FALSE(c.ok);
  ASSERT_TRUE(c.violating_arrow.has_value());
  EXPECT_EQ(*c.violating_arrow, "b");
  ASSERT_TRUE(c.cycle.has_value());
  EXPECT_FALSE(check_closed(two_cycle(), *c.cycle).has_value());
  EXPECT_THROW(monotone_weights_force_constant(bridge(), {}), PreconditionError);
}

// Oracle: on a strongly connected quiver, alpha is monotone along every
// arrow iff it is constant.
TEST(MonotoneWeights, RandomAssignments) {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    Quiver q = gen::random_strongly_connected_quiver(rng);
    WeightAssignment alpha;
    const bool constant = i % 5 == 0;
    for (const auto& v : q.vertices()) alpha[v] = constant ? 3 : gen::uniform(rng, -2, 2);
    bool is_constant = true, monotone = true;
    for (const auto& v : q.vertices()) is_constant = is_constant && alpha[v] == alpha.begin()->second;
    for (const auto& a : q.arrows()) monotone = monotone && alpha[a.head] >= alpha[a.tail];
    EXPECT_EQ(monotone, is_constant);
    WeightCheck c = monotone_weights_force_constant(q, alpha);
    EXPECT_EQ(c.ok, is_constant);
    if (!c.ok) {
      ASSERT_TRUE(c.violating_arrow && c.cycle);
      const Arrow& bad = q.arrow(*c.violating_arrow);
      EXPECT_LT(alpha[bad.head], alpha[bad.tail]);
      EXPECT_FALSE(check_closed(q, *c.cycle).has_value());
      bool on_cycle = false;
      for (const auto& l : c.cycle->letters) on_cycle = on_cycle || l.arrow == bad.id;
      EXPECT_TRUE(on_cycle);
    }
  }
}

TEST(Rescale, LoopScalar) {
  Quiver loop({"v"}, {{"a", "v", "v"}});
  AdditiveRep x(loop, 2, {{"a", mat2(1.0, 1.0, 0.0, 1.0)}});
  GaugeElement g(loop, kGL2, {{"v", 2.0 * identity(2)}});
  GaugeElement r = unimodular_rescale(g, x, x, kTolEq);
  EXPECT_LT(frobenius_distance(r.at("v"), identity(2)), 1e-15);
  EXPECT_EQ(r.group(), kSL2);
}

TEST(Rescale, TwoCycle) {
  Rng rng(8);
  AdditiveRep x = embed_additive(random_representation(two_cycle(), kSL2, rng));
  GaugeElement g(two_cycle(), kGL2, {{"v0", 2.0 * identity(2)}, {"v1", mat2(0.0, 2.0, -2.0, 0.0)}});
  AdditiveRep xp = gauge_act(g, x);
  GaugeElement r = unimodular_rescale(g, x, xp, kTolEq);
  EXPECT_LT(frobenius_distance(r.at("v1"), mat2(0.0, 1.0, -1.0, 0.0)), 1e-15);
  EXPECT_LT(std::abs(r.at("v1").determinant() - 1.0), 1e-15);
}

TEST(Rescale, DisagreeingDeterminants) {
  Rng rng(9);
  AdditiveRep x = embed_additive(random_representation(two_cycle(), kSL2, rng));
  GaugeElement g(two_cycle(), kGL2, {{"v0", identity(2)}, {"v1", 2.0 * identity(2)}});
  EXPECT_THROW(unimodular_rescale(g, x, gauge_act(g, x), kTolEq), PreconditionError);
  GaugeElement h(two_cycle(), kGL2, {{"v0", 2.0 * identity(2)}, {"v1", 2.0 * identity(2)}});
  AdditiveRep other = embed_additive(random_representation(two_cycle(), kSL2, rng));
  EXPECT_THROW(unimodular_rescale(h, x, other, kTolEq), PreconditionError);
}

TEST(Rescale, Constructed) {
  Rng rng(10);
  for (int i = 0; i < 50; ++i) {
    Quiver q = gen::random_connected_quiver(rng, 5, 8);
    AdditiveRep x = embed_additive(random_representation(q, kSL3, rng));
    const Complex c = complex_gaussian(1, rng)(0, 0) + 1.0;
    std::map<VertexId, CMatrix> values;
    for (const auto& v : q.vertices()) values[v] = c * random_element(kSL3, rng);
    GaugeElement g(q, kGL3, values);
    AdditiveRep xp = gauge_act(g, x);
    GaugeElement r = unimodular_rescale(g, x, xp, kTolEq);
    AdditiveRep yp = gauge_act(r, x);
    for (const auto& v : q.vertices()) EXPECT_LT(std::abs(r.at(v).determinant() - 1.0), 1e-11);
    for (const auto& [id, m] : xp.markings) EXPECT_LT(frobenius_distance(yp.markings.at(id), m), 1e-10 * std::max(1.0, m.norm()));
  }
}
