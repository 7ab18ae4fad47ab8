#include "harness.hpp"
#include "oracles.hpp"
#include "trisect/kirby.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace trisect;

namespace {

Curve tpl(int g, int h, long long p, long long q) {
  return Curve::from_template(g, h, p, q);
}

// (g,k)-standard background: alpha on (1,0); beta repeats alpha on the
// first k handles and is (0,1) elsewhere.
HeegaardDiagram standard_background(int g, int k) {
  std::vector<Curve> a, b;
  for (int h = 1; h <= g; ++h) {
    a.push_back(tpl(g, h, 1, 0));
    b.push_back(h <= k ? tpl(g, h, 1, 0) : tpl(g, h, 0, 1));
  }
  return {CutSystem(g, a), CutSystem(g, b)};
}

HeegaardKirbyDiagram unknot() {
  return {standard_background(1, 0), {{tpl(1, 1, 1, 0), std::nullopt}}, 1};
}

IntegerMatrix mul_oracle(const IntegerMatrix &a, const IntegerMatrix &b) {
  IntegerMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k)
        c(i, j) += a(i, k) * b(k, j);
  return c;
}

LinkingMatrix random_symmetric(std::mt19937 &rng, std::size_t n) {
  std::uniform_int_distribution<int> d(-3, 3);
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      m(i, j) = m(j, i) = d(rng);
  return LinkingMatrix(m);
}

} // namespace

TEST(ValidateHk, ZeroFramedUnknot) {
  auto v = validate_hk(unknot());
  EXPECT_TRUE(v.is_verified()) << v.reason;
  auto lm = linking_matrix(unknot());
  ASSERT_TRUE(lm);
  EXPECT_EQ(*lm, LinkingMatrix::zero(1));
}

TEST(ValidateHk, WrongTargetRefuted) {
  auto h = unknot();
  h.m = 0;
  auto v = validate_hk(h);
  EXPECT_TRUE(v.is_refuted());
  EXPECT_TRUE(v.witness.contains("h1"));
}

TEST(ValidateHk, WordOnlyLinkUnknown) {
  // x1 x2 y2 X2 spans two handles, so no slope template applies
  HeegaardKirbyDiagram h(standard_background(2, 0),
                         {{Curve::from_word(SurfaceWord(2, Word{1, 3, 4, -3})), std::nullopt}}, 1);
  auto v = validate_hk(h);
  EXPECT_EQ(v.status, Status::Unknown) << v.reason;
}

TEST(ValidateHk, NonPrimitiveLinkRefuted) {
  // parallel to beta: misses every beta curve
  HeegaardKirbyDiagram h(standard_background(1, 0), {{tpl(1, 1, 0, 1), std::nullopt}}, 1);
  EXPECT_TRUE(validate_hk(h).is_refuted());
}

TEST(ValidateHk, IntegerFramings) {
  auto h = unknot();
  h.link[0].framing = Integer(0);
  EXPECT_TRUE(validate_hk(h).is_verified());
  h.link[0].framing = Integer(1);
  EXPECT_TRUE(validate_hk(h).is_refuted());
}

TEST(HkToTrisection, UnknotGivesThirdStabilization) {
  auto r = hk_to_trisection(unknot());
  ASSERT_TRUE(r.verdict.is_verified()) << r.verdict.reason;
  EXPECT_EQ(*r.trisection.declared, (TrisectionParams{1, 0, 0, 1}));
  EXPECT_EQ(trisection_params(r.trisection).params, (TrisectionParams{1, 0, 0, 1}));
  EXPECT_TRUE(isomorphic(r.trisection, genus_one(GenusOne::Stab3)));
}

TEST(HkToTrisection, EmptyLinkCopiesBeta) {
  for (int g = 1; g <= 3; ++g)
    for (int k = 0; k <= g; ++k) {
      HeegaardKirbyDiagram h(standard_background(g, k), {}, k);
      auto r = hk_to_trisection(h);
      ASSERT_TRUE(r.verdict.is_verified());
      EXPECT_EQ(canonical_form(TrisectionDiagram(r.trisection.beta, r.trisection.beta,
                                                 r.trisection.beta)),
                canonical_form(TrisectionDiagram(r.trisection.gamma, r.trisection.gamma,
                                                 r.trisection.gamma)));
      EXPECT_EQ(trisection_params(r.trisection).params, (TrisectionParams{g, k, g, k}));
    }
}

TEST(HkToTrisection, TunnelUnlinkShape) {
  for (int k = 0; k <= 2; ++k)
    for (int c = 1; c <= 2; ++c) {
      int g = c + k;
      std::vector<FramedComponent> link;
      for (int h = k + 1; h <= g; ++h)
        link.push_back({tpl(g, h, 1, 0), std::nullopt});
      HeegaardKirbyDiagram hk(standard_background(g, k), link, g);
      auto r = hk_to_trisection(hk);
      ASSERT_TRUE(r.verdict.is_verified()) << r.verdict.reason;
      EXPECT_EQ(trisection_params(r.trisection).params, (TrisectionParams{g, k, k, g}));
    }
}

TEST(HkToTrisection, ParamsMatchConstruction) {
  // every template link on standard backgrounds up to genus 4 built from
  // (1,0) curves on the unmatched handles
  for (int g = 1; g <= 4; ++g)
    for (int n = 0; n <= g; ++n)
      for (int mask = 0; mask < (1 << (g - n)); ++mask) {
        std::vector<FramedComponent> link;
        for (int h = n + 1; h <= g; ++h)
          if (mask & (1 << (h - n - 1)))
            link.push_back({tpl(g, h, 1, 0), std::nullopt});
        int c = static_cast<int>(link.size());
        HeegaardKirbyDiagram hk(standard_background(g, n), link, n + c);
        auto r = hk_to_trisection(hk);
        ASSERT_TRUE(r.verdict.is_verified());
        auto p = trisection_params(r.trisection);
        ASSERT_TRUE(p.verdict.is_verified());
        EXPECT_EQ(p.params, (TrisectionParams{g, n, g - c, n + c}));
      }
}

TEST(HkToTrisection, PlantedHeegaardStabilizationGivesTwoCertificate) {
  auto bg = heegaard_stabilize(standard_background(1, 0));
  HeegaardKirbyDiagram hk(bg, {{tpl(2, 1, 1, 0), std::nullopt}}, 1);
  auto r = hk_to_trisection(hk);
  ASSERT_TRUE(r.verdict.is_verified());
  auto cert = find_stabilization_certificate(r.trisection);
  ASSERT_TRUE(cert);
  EXPECT_EQ(cert->index, 2);
}

TEST(TrisectionToHk, Examples) {
  auto t = genus_one(GenusOne::Stab3);
  auto r = trisection_to_hk(t, {{0, 0}});
  ASSERT_TRUE(r.verdict.is_verified());
  EXPECT_EQ(r.hk.c(), 1);
  EXPECT_TRUE(validate_hk(r.hk).is_verified());
  EXPECT_TRUE(r.hk.link[0].curve.same_curve(unknot().link[0].curve));

  EXPECT_THROW(trisection_to_hk(genus_one(GenusOne::S1xS3), {{0, 0}}), Error);
}

TEST(TrisectionToHk, StandardFullPicks) {
  auto t = harness::sum_of({GenusOne::Stab1, GenusOne::CP2, GenusOne::S1xS3});
  auto picks = full_primitive_system(t);
  ASSERT_TRUE(picks);
  auto p = trisection_params(t).params;
  EXPECT_EQ(picks->size(), static_cast<std::size_t>(p.g - p.k2));
}

TEST(FindPrimitivePairs, Examples) {
  auto r = find_primitive_pairs(genus_one(GenusOne::CP2));
  EXPECT_EQ(r.pairs, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}}));
  EXPECT_TRUE(find_primitive_pairs(genus_one(GenusOne::S1xS3)).pairs.empty());
  auto s = apply_slide(harness::sum_of({GenusOne::S1xS3, GenusOne::S1xS3}), Slide{2, 0, 1, 1, {}});
  auto w = find_primitive_pairs(s);
  EXPECT_EQ(w.verdict.status, Status::Unknown);
}

TEST(HkRoundTrip, CatalogWithFullPrimitiveSystems) {
  std::vector<TrisectionDiagram> inputs;
  for (auto a : all_genus_one) {
    inputs.push_back(genus_one(a));
    for (auto b : all_genus_one)
      inputs.push_back(harness::sum_of({a, b}));
  }
  for (const auto &t : inputs) {
    auto picks = full_primitive_system(t);
    ASSERT_TRUE(picks);
    auto hk = trisection_to_hk(t, *picks);
    ASSERT_TRUE(hk.verdict.is_verified());
    auto back = hk_to_trisection(hk.hk);
    ASSERT_TRUE(back.verdict.is_verified());
    EXPECT_EQ(canonical_form(back.trisection), canonical_form(t));
  }
}

TEST(LinkingMatrix, SurgeryH1Examples) {
  EXPECT_EQ(surgery_h1(LinkingMatrix::zero(2)).str(), "Z^2");
  LinkingMatrix hopf{{0, 1}, {1, 0}};
  EXPECT_TRUE(surgery_h1(hopf).is_trivial());
  EXPECT_EQ(oracle::det_cofactor({{0, 1}, {1, 0}}), -1);
  EXPECT_TRUE(surgery_h1(LinkingMatrix{{1}}).is_trivial());
}

TEST(LinkingMatrix, GprcCheck) {
  EXPECT_TRUE(gprc_necessary_check(LinkingMatrix::zero(1)).is_verified());
  EXPECT_TRUE(gprc_necessary_check(LinkingMatrix::zero(3)).is_verified());
  auto v = gprc_necessary_check(LinkingMatrix{{0, 1}, {1, 0}});
  EXPECT_TRUE(v.is_refuted());
  EXPECT_TRUE(v.witness.contains("entry"));
}

TEST(LinkingMatrix, HandleslideExamples) {
  EXPECT_EQ(matrix_handleslide(LinkingMatrix::zero(2), 0, 1), LinkingMatrix::zero(2));
  LinkingMatrix hopf{{0, 1}, {1, 0}};
  auto s = matrix_handleslide(hopf, 0, 1, 1);
  IntegerMatrix e{{1, 1}, {0, 1}};
  EXPECT_EQ(s.matrix(), mul_oracle(mul_oracle(e, hopf.matrix()), e.transpose()));
  EXPECT_EQ(s, (LinkingMatrix{{2, 1}, {1, 0}}));
  EXPECT_EQ(matrix_handleslide(s, 0, 1, -1), hopf);
}

TEST(LinkingMatrix, RandomSlidesPreserveInvariants) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(2, 6)(rng);
    auto m = trial % 4 == 0 ? LinkingMatrix::zero(n) : random_symmetric(rng, n);
    auto h0 = surgery_h1(m);
    auto g0 = gprc_necessary_check(m).status;
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    for (int k = 0; k < 100; ++k) {
      std::size_t i = idx(rng), j = idx(rng);
      if (i == j)
        continue;
      m = matrix_handleslide(m, i, j, k % 2 ? 1 : -1);
      EXPECT_EQ(surgery_h1(m), h0);
      EXPECT_EQ(gprc_necessary_check(m).status, g0);
    }
    EXPECT_EQ(gprc_necessary_check(stabilize_link(m, LinkStabilization::ZeroUnknot)).status, g0);
  }
}

TEST(LinkingMatrix, Stabilizations) {
  EXPECT_EQ(stabilize_link(LinkingMatrix::zero(1), LinkStabilization::ZeroUnknot),
            LinkingMatrix::zero(2));
  EXPECT_EQ(stabilize_link(LinkingMatrix::zero(0), LinkStabilization::HopfPair),
            (LinkingMatrix{{0, 1}, {1, 0}}));
  std::mt19937 rng(4);
  for (int t = 0; t < 10; ++t) {
    auto m = random_symmetric(rng, 3);
    EXPECT_EQ(surgery_h1(stabilize_link(m, LinkStabilization::HopfPair)), surgery_h1(m));
  }
}
