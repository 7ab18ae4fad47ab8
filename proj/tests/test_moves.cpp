#include "harness.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace trisect;
using harness::sum_of;

namespace {

Curve tpl(int g, int h, long long p, long long q) {
  return Curve::from_template(g, h, p, q);
}

CutSystem a_system(int g) {
  std::vector<Curve> cs;
  for (int h = 1; h <= g; ++h)
    cs.push_back(tpl(g, h, 1, 0));
  return CutSystem(g, cs);
}

TrisectionParams params_of(const TrisectionDiagram &t) {
  auto r = trisection_params(t);
  EXPECT_TRUE(r.verdict.is_verified()) << r.verdict.reason;
  return r.params;
}

// every catalog diagram and every sum of catalog diagrams up to genus 2
std::vector<TrisectionDiagram> catalog_inputs() {
  std::vector<TrisectionDiagram> out{genus_zero()};
  for (auto a : all_genus_one) {
    out.push_back(genus_one(a));
    for (auto b : all_genus_one)
      out.push_back(sum_of({a, b}));
  }
  return out;
}

} // namespace

TEST(Handleslide, HomologyArithmetic) {
  auto cs = handleslide(a_system(2), 0, 1);
  EXPECT_EQ(cs[0].homology(), HomologyClass::from(2, {1, 0, 1, 0}));
  EXPECT_EQ(cs[1].homology(), HomologyClass::from(2, {0, 0, 1, 0}));
  EXPECT_FALSE(cs[0].has_template());
  auto back = handleslide(cs, 0, 1, {}, -1);
  EXPECT_EQ(back[0].homology(), a_system(2)[0].homology());
}

TEST(Handleslide, GuideConjugates) {
  auto cs = handleslide(a_system(2), 0, 1, Word{y_gen(1)});
  EXPECT_EQ(cs[0].homology(), HomologyClass::from(2, {1, 0, 1, 0}));
  EXPECT_EQ(cs[0].word().size(), 4u);
}

TEST(Handleslide, BadIndicesThrow) {
  EXPECT_THROW(handleslide(a_system(2), 0, 0), Error);
  EXPECT_THROW(handleslide(a_system(2), 0, 2), Error);
}

TEST(Handleslide, RandomSlidesPreserveSpan) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::size_t> idx(0, 2);
  std::uniform_int_distribution<int> sgn(0, 1);
  CutSystem cs = a_system(3);
  for (int n = 0; n < 20; ++n) {
    std::size_t i = idx(rng), j = idx(rng);
    if (i == j)
      continue;
    cs = handleslide(cs, i, j, {}, sgn(rng) ? 1 : -1);
  }
  EXPECT_TRUE(lagrangian_verdict(cs.classes(), 3).is_verified());
  // same span: stacking both bases gives a rank-3 summand
  auto both = cs.classes();
  auto c0 = a_system(3).classes();
  both.insert(both.end(), c0.begin(), c0.end());
  auto f = oracle::invariant_factors_by_minors(class_matrix(both, 3));
  std::size_t nonzero = 0;
  for (const auto &x : f)
    if (x != 0) {
      EXPECT_EQ(x, 1);
      ++nonzero;
    }
  EXPECT_EQ(nonzero, 3u);
}

TEST(Handleslide, PreservesHeegaardH1) {
  auto t = sum_of({GenusOne::S1xS3, GenusOne::Stab2, GenusOne::CP2});
  std::mt19937 rng(3);
  auto s = harness::scramble(t, rng, 20);
  for (int i = 1; i <= 3; ++i)
    EXPECT_EQ(heegaard_h1(s.pair(i)).str(), heegaard_h1(t.pair(i)).str());
}

TEST(ConnectedSum, Examples) {
  auto fig1r = genus_one(GenusOne::S1xS3);
  EXPECT_TRUE(isomorphic(connected_sum(genus_zero(), fig1r), fig1r));
  EXPECT_EQ(params_of(connected_sum(fig1r, fig1r)), (TrisectionParams{2, 2, 2, 2}));
  auto cp = connected_sum(genus_one(GenusOne::CP2), genus_one(GenusOne::Stab1));
  EXPECT_EQ(params_of(cp), genus_one_params(GenusOne::CP2) + genus_one_params(GenusOne::Stab1));
  EXPECT_EQ(*cp.declared, (TrisectionParams{2, 1, 0, 0}));
}

TEST(ConnectedSum, AssociativeWithIdentity) {
  for (auto a : all_genus_one)
    for (auto b : all_genus_one)
      for (auto c : {GenusOne::CP2, GenusOne::Stab3}) {
        auto A = genus_one(a), B = genus_one(b), C = genus_one(c);
        EXPECT_EQ(canonical_form(connected_sum(connected_sum(A, B), C)),
                  canonical_form(connected_sum(A, connected_sum(B, C))));
        EXPECT_EQ(canonical_form(connected_sum(A, genus_zero())), canonical_form(A));
      }
}

TEST(ConnectedSum, EulerCharacteristicAdditive) {
  for (auto a : all_genus_one)
    for (auto b : all_genus_one) {
      auto pa = params_of(genus_one(a)), pb = params_of(genus_one(b));
      auto ps = params_of(sum_of({a, b}));
      EXPECT_EQ(euler_characteristic(ps),
                euler_characteristic(pa) + euler_characteristic(pb) - 2);
    }
}

TEST(Stabilize, Examples) {
  auto s1 = i_stabilize(genus_zero(), 1);
  EXPECT_TRUE(isomorphic(s1, genus_one(GenusOne::Stab1)));
  EXPECT_EQ(params_of(s1), (TrisectionParams{1, 1, 0, 0}));
  auto t12 = i_stabilize(i_stabilize(genus_zero(), 1), 2);
  auto t21 = i_stabilize(i_stabilize(genus_zero(), 2), 1);
  EXPECT_TRUE(isomorphic(t12, t21));
  EXPECT_EQ(params_of(balanced_stabilize(genus_zero())), (TrisectionParams{3, 1, 1, 1}));
}

TEST(Stabilize, ParameterArithmeticAndCommutation) {
  for (const auto &t : catalog_inputs()) {
    auto p = params_of(t);
    for (int i = 1; i <= 3; ++i) {
      auto q = params_of(i_stabilize(t, i));
      TrisectionParams e = p;
      e.g += 1;
      (i == 1 ? e.k1 : i == 2 ? e.k2 : e.k3) += 1;
      EXPECT_EQ(q, e);
      for (int j = 1; j <= 3; ++j)
        EXPECT_EQ(canonical_form(i_stabilize(i_stabilize(t, i), j)),
                  canonical_form(i_stabilize(i_stabilize(t, j), i)));
    }
  }
}

TEST(Stabilize, Heegaard) {
  HeegaardDiagram d0{CutSystem(0, {}), CutSystem(0, {})};
  auto d1 = heegaard_stabilize(d0);
  auto v = is_standard_pair(d1);
  ASSERT_TRUE(v.is_verified());
  EXPECT_EQ(v.witness["k"], 0);
  HeegaardDiagram std21{CutSystem(2, {tpl(2, 1, 1, 0), tpl(2, 2, 1, 0)}),
                        CutSystem(2, {tpl(2, 1, 1, 0), tpl(2, 2, 0, 1)})};
  auto s = heegaard_stabilize(std21);
  v = is_standard_pair(s);
  ASSERT_TRUE(v.is_verified());
  EXPECT_EQ(v.witness["k"], 1);
  EXPECT_EQ(detect_k(s).k, detect_k(std21).k);
}

TEST(Certificates, Examples) {
  auto c = find_stabilization_certificate(genus_one(GenusOne::Stab1));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->index, 1);
  EXPECT_FALSE(find_stabilization_certificate(genus_one(GenusOne::CP2)));
  auto t = i_stabilize(genus_one(GenusOne::S1xS3), 2);
  c = find_stabilization_certificate(t);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->index, 2);
}

TEST(Certificates, CP2ExhaustiveGenusOneSearchFindsNothing) {
  // Oracle: at genus one a certificate needs a curve common to two systems.
  for (auto d : {GenusOne::CP2, GenusOne::CP2bar}) {
    auto t = genus_one(d);
    bool common = false;
    for (int i = 0; i < 3; ++i)
      common = common || t.system(i)[0].same_curve(t.system((i + 1) % 3)[0]);
    EXPECT_FALSE(common);
    EXPECT_FALSE(find_stabilization_certificate(t));
  }
}

TEST(Destabilize, RoundTripOverCatalog) {
  for (const auto &t : catalog_inputs())
    for (int i = 1; i <= 3; ++i) {
      auto s = i_stabilize(t, i);
      auto cert = find_stabilization_certificate(s);
      ASSERT_TRUE(cert);
      auto out = destabilize_with_summand(s, *cert);
      EXPECT_EQ(out.rest.genus, t.genus);
      EXPECT_EQ(canonical_form(i_stabilize(out.rest, cert->index)), canonical_form(s));
      EXPECT_TRUE(isomorphic(out.summand, genus_one(stabilization_summand(cert->index))));
    }
}

TEST(Destabilize, Examples) {
  auto t = genus_one(GenusOne::Stab2);
  auto c = find_stabilization_certificate(t);
  ASSERT_TRUE(c);
  EXPECT_EQ(destabilize(t, *c).genus, 0);

  auto s = connected_sum(genus_one(GenusOne::S1xS3), genus_one(GenusOne::Stab1));
  c = find_stabilization_certificate(s);
  ASSERT_TRUE(c);
  auto r = destabilize(s, *c);
  EXPECT_TRUE(isomorphic(r, genus_one(GenusOne::S1xS3)));
}

TEST(Destabilize, StaleCertificateThrows) {
  auto s = connected_sum(genus_one(GenusOne::Stab1), genus_one(GenusOne::CP2));
  auto c = find_stabilization_certificate(s);
  ASSERT_TRUE(c);
  auto slid = apply_slide(s, Slide{0, 0, 1, 1, {}});
  EXPECT_THROW(destabilize(slid, *c), Error);
}

TEST(Reducing, Examples) {
  auto s = connected_sum(genus_one(GenusOne::CP2), genus_one(GenusOne::S1xS3));
  auto c = find_reducing_certificate(s);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->group, std::vector<int>{1});
  auto [l, r] = split(s, *c);
  EXPECT_TRUE(isomorphic(l, genus_one(GenusOne::CP2)));
  EXPECT_TRUE(isomorphic(r, genus_one(GenusOne::S1xS3)));
  EXPECT_TRUE(c->delta.homology().is_zero());
  EXPECT_FALSE(find_reducing_certificate(genus_one(GenusOne::CP2)));
}

TEST(Reducing, ScrambledSumRecovered) {
  // slides inside each genus-two summand of a genus-four sum
  auto a = sum_of({GenusOne::S1xS3, GenusOne::CP2});
  auto b = sum_of({GenusOne::Stab1, GenusOne::Stab3});
  std::mt19937 rng(5);
  auto t = connected_sum(harness::scramble(a, rng, 10), harness::scramble(b, rng, 10));
  auto c = find_reducing_certificate(t);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->group, (std::vector<int>{1, 2}));
}

TEST(Reduce, UndoesScramble) {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    auto t = sum_of(harness::random_classified_parts(rng, 3));
    auto s = harness::scramble(t, rng, 20);
    for (int k = 0; k < 3; ++k) {
      auto r = reduce_system(s.system(k), k);
      EXPECT_TRUE(r.templated);
    }
  }
}

TEST(Standardize, Examples) {
  auto t = connected_sum(genus_one(GenusOne::S1xS3), genus_one(GenusOne::Stab1));
  auto r = standardize(t);
  ASSERT_TRUE(r.verdict.is_verified()) << r.verdict.reason;
  EXPECT_EQ(r.summands, (std::vector<std::string>{"S1xS3", "S4-stab1"}));
  EXPECT_EQ(r.params, (TrisectionParams{2, 2, 1, 1}));

  r = standardize(genus_one(GenusOne::CP2));
  ASSERT_TRUE(r.verdict.is_verified());
  EXPECT_EQ(r.summands, std::vector<std::string>{"CP2"});
  EXPECT_EQ(r.manifold, "CP2");

  auto two = connected_sum(genus_one(GenusOne::S1xS3), genus_one(GenusOne::S1xS3));
  auto [nm, v] = classify_genus_one_sum(two);
  EXPECT_TRUE(v.is_verified());
  EXPECT_EQ(nm, "#^2(S1xS3)");
}

TEST(Standardize, OutsideRangeThrows) {
  auto t = sum_of({GenusOne::CP2, GenusOne::CP2});
  EXPECT_THROW(standardize(t), Error);
}

TEST(Standardize, WordOnlyGenusTwoUnknown) {
  // a curve across both handles, with reduction and slide search disabled
  auto t = sum_of({GenusOne::S1xS3, GenusOne::S1xS3});
  auto s = apply_slide(t, Slide{0, 0, 1, 1, {}});
  DecompositionOptions o;
  o.reduction.max_states = 1;
  o.certificates.slide_depth = 0;
  auto d = decompose_genus_one_sum(s, o);
  EXPECT_EQ(d.verdict.status, Status::Unknown);
  EXPECT_TRUE(d.verdict.witness.contains("stuck"));
}

TEST(ClassifiedParams, Constraints) {
  EXPECT_TRUE(check_classified_params({3, 3, 1, 1}).is_verified());
  EXPECT_TRUE(check_classified_params({3, 3, 1, 2}).is_refuted());
  EXPECT_TRUE(check_classified_params({3, 2, 0, 1}).is_verified());
  EXPECT_TRUE(check_classified_params({4, 3, 0, 2}).is_refuted());
  EXPECT_THROW(check_classified_params({3, 1, 1, 1}), Error);
}

TEST(ManifoldName, Shapes) {
  EXPECT_EQ(manifold_name({}), "S4");
  EXPECT_EQ(manifold_name({"S4-stab1", "S4-stab2"}), "S4");
  EXPECT_EQ(manifold_name({"S1xS3"}), "S1xS3");
  EXPECT_EQ(manifold_name({"S1xS3", "S1xS3", "S1xS3", "CP2bar"}), "#^3(S1xS3) # CP2bar");
}
