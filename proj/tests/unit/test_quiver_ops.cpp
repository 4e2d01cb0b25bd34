#include <gtest/gtest.h>

#include "generators.hpp"
#include "qmod/errors.hpp"
#include "qmod/quiver_ops.hpp"

using namespace qmod;

namespace {

Quiver theta() { return Quiver({"v0", "v1"}, {{"a0", "v0", "v1"}, {"a1", "v0", "v1"}, {"a2", "v0", "v1"}}); }
Quiver triangle() {
  return Quiver({"v0", "v1", "v2"}, {{"a0", "v0", "v1"}, {"a1", "v1", "v2"}, {"a2", "v2", "v0"}});
}
Quiver long_loop(int m) {
  std::vector<VertexId> vs;
  std::vector<Arrow> as;
  for (int i = 0; i < m; ++i) {
    vs.push_back("v" + std::to_string(i));
    as.push_back({"a" + std::to_string(i), "v" + std::to_string(i), "v" + std::to_string((i + 1) % m)});
  }
  return Quiver(vs, as);
}

}  // namespace

TEST(Pinch, DisjointLoopsBecomeRose) {
  Quiver q({"u", "v"}, {{"a", "u", "u"}, {"b", "v", "v"}});
  PinchResult p = pinch(q, "v", "u");
  EXPECT_EQ(p.quiver, Quiver({"u"}, {{"a", "u", "u"}, {"b", "u", "u"}}));
  EXPECT_EQ(p.vertex_map.at("v"), "u");
  EXPECT_TRUE(arrows_equivalent(q, p.quiver));
}

TEST(Pinch, OneArrowBecomesLoop) {
  PinchResult p = pinch(Quiver({"v0", "v1"}, {{"a0", "v0", "v1"}}), "v0", "v1");
  EXPECT_EQ(p.quiver, Quiver({"v0"}, {{"a0", "v0", "v0"}}));
}

TEST(Pinch, Errors) {
  EXPECT_THROW(pinch(theta(), "v0", "zz"), PreconditionError);
  EXPECT_THROW(pinch(theta(), "v0", "v0"), PreconditionError);
}

TEST(Clip, Examples) {
  EXPECT_EQ(clip(Quiver({"v"}, {{"a", "v", "v"}}), "a"), Quiver({"v"}, {}));
  EXPECT_EQ(clip(theta(), "a2"), Quiver({"v0", "v1"}, {{"a0", "v0", "v1"}, {"a1", "v0", "v1"}}));
  EXPECT_THROW(clip(theta(), "zz"), PreconditionError);
  EXPECT_FALSE(arrows_equivalent(theta(), clip(theta(), "a1")));
  EXPECT_TRUE(arrows_equivalent(theta(), theta()));
}

TEST(Collapse, TailAbsorbed) {
  Quiver comet({"v0", "v1"}, {{"a0", "v0", "v1"}, {"b", "v1", "v1"}});
  CollapseResult c = collapse(comet, {}, "a0");
  EXPECT_EQ(c.quiver, Quiver({"v0"}, {{"b", "v0", "v0"}}));
  EXPECT_EQ(c.step.tail, "v0");
  EXPECT_EQ(c.step.head, "v1");
  EXPECT_EQ(c.step.merged, "v0");
}

TEST(Collapse, TriangleRelation) {
  RelationSet r{{positive_word({"a2", "a1", "a0"})}};
  CollapseResult c = collapse(triangle(), r, "a0");
  EXPECT_EQ(c.quiver, Quiver({"v0", "v2"}, {{"a1", "v0", "v2"}, {"a2", "v2", "v0"}}));
  ASSERT_EQ(c.relations.relations.size(), 1u);
  EXPECT_EQ(c.relations.relations[0], positive_word({"a2", "a1"}));
  EXPECT_TRUE(validate_relations(c.quiver, c.relations).empty());
}

TEST(Collapse, Errors) {
  EXPECT_THROW(collapse(Quiver({"v"}, {{"a", "v", "v"}}), {}, "a"), PreconditionError);
  EXPECT_THROW(collapse(theta(), {}, "zz"), PreconditionError);
}

TEST(Reduce, LongLoop) {
  ReductionTrace t = reduce_to_rose(long_loop(5), {});
  EXPECT_EQ(t.final_quiver.vertex_count(), 1u);
  EXPECT_EQ(t.final_quiver.arrow_count(), 1u);
  EXPECT_EQ(t.steps.size(), 4u);
}

TEST(Reduce, TreeIsPoint) {
  Quiver tree({"a", "b", "c"}, {{"x", "a", "b"}, {"y", "c", "b"}});
  ReductionTrace t = reduce_to_rose(tree, {});
  EXPECT_EQ(t.final_quiver, Quiver({"a"}, {}));
}

TEST(Reduce, ThetaAndDisconnected) {
  EXPECT_EQ(reduce_to_rose(theta(), {}).final_quiver.arrow_count(), 2u);
  EXPECT_THROW(reduce_to_rose(Quiver({"u", "v"}, {}), {}), PreconditionError);
}

TEST(Reverse, Examples) {
  Quiver one({"v0", "v1"}, {{"a0", "v0", "v1"}});
  EXPECT_EQ(reverse_arrows(one, {"a0"}), Quiver({"v0", "v1"}, {{"a0", "v1", "v0"}}));
  EXPECT_EQ(reverse_arrows(one, {}), one);
  Quiver loop({"v"}, {{"a", "v", "v"}});
  EXPECT_EQ(reverse_arrows(loop, {"a"}), loop);
  EXPECT_THROW(reverse_arrows(one, {"zz"}), PreconditionError);
}

TEST(QuiverOpsProperty, CollapseCounts) {
  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    Quiver q = gen::random_connected_quiver(rng);
    for (const auto& a : q.arrows()) {
      if (a.is_loop()) continue;
      CollapseResult c = collapse(q, {}, a.id);
      EXPECT_EQ(c.quiver.arrow_count() + 1, q.arrow_count());
      EXPECT_EQ(c.quiver.vertex_count() + 1, q.vertex_count());
      EXPECT_EQ(betti_number(c.quiver), betti_number(q));
      break;
    }
  }
}

TEST(QuiverOpsProperty, ReduceGivesBettiLoopsAndReplays) {
  Rng rng(22);
  for (int i = 0; i < 200; ++i) {
    Quiver q = gen::random_connected_quiver(rng);
    ReductionTrace t = reduce_to_rose(q, {});
    EXPECT_EQ(t.final_quiver.vertex_count(), 1u);
    EXPECT_EQ(static_cast<int>(t.final_quiver.arrow_count()), betti_number(q));
    EXPECT_EQ(replay(t), t.final_quiver);
    Quiver current = q;
    for (const auto& s : t.steps) {
      ASSERT_TRUE(current.has_arrow(s.arrow));
      EXPECT_FALSE(current.arrow(s.arrow).is_loop());
      current = collapse(current, {}, s.arrow).quiver;
    }
  }
}

TEST(QuiverOpsProperty, TranslatedRelationsStayClosed) {
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    Quiver q = gen::random_strongly_connected_quiver(rng);
    RelationSet r{fundamental_cycles(q).cycles};
    // Fundamental cycles may use inverse letters; keep the positive ones.
    RelationSet positive;
    for (const auto& w : r.relations) {
      bool pos = true;
      for (const auto& l : w.letters) pos = pos && l.exponent == 1;
      if (pos) positive.relations.push_back(w);
    }
    ReductionTrace t = reduce_to_rose(q, positive);
    EXPECT_TRUE(validate_relations(t.final_quiver, t.final_relations).empty());
  }
}

TEST(QuiverOpsProperty, PinchClipIsCollapse) {
  Rng rng(24);
  for (int i = 0; i < 200; ++i) {
    Quiver q = gen::random_connected_quiver(rng);
    for (const auto& a : q.arrows()) {
      if (a.is_loop()) continue;
      CollapseResult c = collapse(q, {}, a.id);
      PinchResult pc = pinch(clip(q, a.id), a.tail, a.head);
      PinchResult p = pinch(q, a.tail, a.head);
      Quiver cp = clip(p.quiver, a.id);
      EXPECT_EQ(pc.quiver, c.quiver);
      EXPECT_EQ(cp, c.quiver);
      EXPECT_EQ(pc.vertex_map, c.step.vertex_map);
      EXPECT_EQ(p.vertex_map, c.step.vertex_map);
    }
  }
}

TEST(QuiverOpsProperty, ReverseIsInvolution) {
  Rng rng(25);
  for (int i = 0; i < 200; ++i) {
    Quiver q = gen::random_connected_quiver(rng);
    std::set<ArrowId> subset;
    for (const auto& a : q.arrows())
      if (gen::uniform(rng, 0, 1)) subset.insert(a.id);
    EXPECT_EQ(reverse_arrows(reverse_arrows(q, subset), subset), q);
  }
}
