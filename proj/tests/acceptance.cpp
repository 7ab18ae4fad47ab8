// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include "harness.hpp"
#include "oracles.hpp"
#include "trisect/trisect.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace trisect;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// every verdict produced anywhere in the run, replayed by criterion 9
std::vector<Verdict> produced;

const Verdict &keep(const Verdict &v) {
  produced.push_back(v);
  return v;
}

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> problems;

  void fail(std::string why) {
    pass = false;
    if (problems.size() < 5)
      problems.push_back(std::move(why));
  }
};

int failures = 0;

void report(int n, const char *title, const std::function<Outcome()> &body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception &e) {
    o.fail(std::string("exception: ") + e.what());
  }
  std::printf("criterion %d %s: %s  %s\n", n, o.pass ? "PASS" : "FAIL", title,
              o.detail.c_str());
  for (const auto &p : o.problems)
    std::printf("    %s\n", p.c_str());
  std::fflush(stdout);
  failures += !o.pass;
}

TrisectionParams k_raised(TrisectionParams p, int i) {
  p.g += 1;
  (i == 1 ? p.k1 : i == 2 ? p.k2 : p.k3) += 1;
  return p;
}

// all multisets of catalog summands of size 1..max_g
std::vector<std::vector<GenusOne>> catalog_sums(int max_g) {
  std::vector<std::vector<GenusOne>> out;
  std::vector<GenusOne> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (!cur.empty())
      out.push_back(cur);
    if (static_cast<int>(cur.size()) == max_g)
      return;
    for (std::size_t i = from; i < all_genus_one.size(); ++i) {
      cur.push_back(all_genus_one[i]);
      rec(i);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<std::string> sorted_names(const std::vector<GenusOne> &parts) {
  std::vector<std::string> s;
  for (auto p : parts)
    s.push_back(name(p));
  std::sort(s.begin(), s.end());
  return s;
}

Outcome catalog() {
  Outcome o;
  const std::map<GenusOne, TrisectionParams> caption{
      {GenusOne::CP2, {1, 0, 0, 0}},    {GenusOne::CP2bar, {1, 0, 0, 0}},
      {GenusOne::S1xS3, {1, 1, 1, 1}},  {GenusOne::Stab1, {1, 1, 0, 0}},
      {GenusOne::Stab2, {1, 0, 1, 0}},  {GenusOne::Stab3, {1, 0, 0, 1}}};
  auto t0 = Clock::now();
  for (auto d : all_genus_one) {
    auto t = genus_one(d);
    for (int i = 0; i < 3; ++i)
      if (!keep(lagrangian_verdict(t.system(i).classes(), 1)).is_verified())
        o.fail(name(d) + ": system " + std::to_string(i) + " not a cut system");
    auto p = trisection_params(t);
    keep(p.verdict);
    if (!p.verdict.is_verified() || p.params != caption.at(d))
      o.fail(name(d) + ": params " + p.params.str() + ", want " + caption.at(d).str());
    auto m = classify_genus_one(t);
    keep(m.verdict);
    if (!m.which || *m.which != d)
      o.fail(name(d) + ": classified as something else");
  }
  double s = seconds_since(t0);
  if (s >= 1.0)
    o.fail("took " + std::to_string(s) + " s");
  o.detail = "6 diagrams in " + std::to_string(s) + " s";
  return o;
}

Outcome chi() {
  Outcome o;
  int n = 0;
  for (const auto &parts : catalog_sums(4)) {
    auto t = harness::sum_of(parts);
    auto r = trisection_params(t);
    keep(r.verdict);
    const auto &p = r.params;
    if (!r.verdict.is_verified()) {
      o.fail(p.str() + ": params not verified");
      continue;
    }
    long long want = oracle::handle_count_chi(p.g, p.k1, p.k2, p.k3);
    long long got = euler_characteristic(p);
    // additivity over summands, from the captions
    long long additive = 2;
    for (auto d : parts) {
      auto q = genus_one_params(d);
      additive += oracle::handle_count_chi(q.g, q.k1, q.k2, q.k3) - 2;
    }
    if (got != want || got != additive)
      o.fail(p.str() + ": chi " + std::to_string(got) + ", oracle " + std::to_string(want));
    if ((got == 2) != (p.g == p.k1 + p.k2 + p.k3))
      o.fail(p.str() + ": chi = 2 disagrees with g = k1+k2+k3");
    ++n;
  }
  o.detail = std::to_string(n) + " sums up to genus 4";
  return o;
}

Outcome standardization() {
  Outcome o;
  std::mt19937 rng(20251019);
  int correct = 0, unknown = 0, wrong = 0;
  double worst = 0;
  const int runs = 100;
  for (int r = 0; r < runs; ++r) {
    int g = std::uniform_int_distribution<int>(1, 4)(rng);
    int slides = std::uniform_int_distribution<int>(0, 20)(rng);
    auto parts = harness::random_classified_parts(rng, g);
    auto t = harness::scramble(harness::sum_of(parts), rng, slides);
    auto t0 = Clock::now();
    auto s = standardize(t);
    double sec = seconds_since(t0);
    worst = std::max(worst, sec);
    keep(s.verdict);
    auto want = sorted_names(parts);
    auto got = s.summands;
    std::sort(got.begin(), got.end());
    if (s.verdict.is_verified() && got == want)
      ++correct;
    else if (s.verdict.status == Status::Unknown)
      ++unknown;
    else {
      ++wrong;
      o.fail("run " + std::to_string(r) + ": wrong answer " + s.manifold);
    }
    if (sec >= 10.0)
      o.fail("run " + std::to_string(r) + ": " + std::to_string(sec) + " s");
  }
  if (correct * 100 < 95 * runs)
    o.fail("only " + std::to_string(correct) + " correct");
  o.detail = std::to_string(correct) + "/" + std::to_string(runs) + " correct, " +
             std::to_string(unknown) + " unknown, " + std::to_string(wrong) +
             " wrong, slowest " + std::to_string(worst) + " s";
  return o;
}

Outcome classified_params() {
  Outcome o;
  int n = 0;
  for (int g = 1; g <= 4; ++g)
    for (int k1 = g - 1; k1 <= g; ++k1)
      for (int k2 = 0; k2 <= g; ++k2)
        for (int k3 = 0; k3 <= g; ++k3) {
          TrisectionParams p{g, k1, k2, k3};
          bool allowed = k1 == g ? k2 == k3 : (k3 >= k2 - 1 && k3 <= k2 + 1);
          auto v = keep(check_classified_params(p));
          if (v.is_refuted() == allowed || v.status == Status::Unknown)
            o.fail(p.str() + ": " + std::string(to_string(v.status)));
          ++n;
        }
  // catalog sums in the range realize only allowed parameters
  int realized = 0;
  for (const auto &parts : catalog_sums(4)) {
    auto p = trisection_params(harness::sum_of(parts)).params;
    int r = classified_rotation(p);
    auto q = rotate_params(p, r);
    if (q.k1 < q.g - 1)
      continue;
    if (!keep(check_classified_params(q)).is_verified())
      o.fail("realized " + p.str() + " refuted");
    ++realized;
  }
  o.detail = std::to_string(n) + " parameter tuples, " + std::to_string(realized) +
             " in-range catalog sums";
  return o;
}

Outcome stabilization() {
  Outcome o;
  std::vector<TrisectionDiagram> inputs{genus_zero()};
  for (auto a : all_genus_one) {
    inputs.push_back(genus_one(a));
    for (auto b : all_genus_one)
      inputs.push_back(harness::sum_of({a, b}));
  }
  int checks = 0;
  for (const auto &t : inputs) {
    auto p = trisection_params(t).params;
    for (int i = 1; i <= 3; ++i) {
      auto s = i_stabilize(t, i);
      auto q = trisection_params(s);
      keep(q.verdict);
      if (q.params != k_raised(p, i))
        o.fail(p.str() + " " + std::to_string(i) + "-stabilized to " + q.params.str());
      for (int j = 1; j <= 3; ++j)
        if (canonical_form(i_stabilize(s, j)) != canonical_form(i_stabilize(i_stabilize(t, j), i)))
          o.fail(p.str() + ": stabilizations " + std::to_string(i) + "," + std::to_string(j) +
                 " do not commute");
      auto cert = find_stabilization_certificate(s);
      if (!cert) {
        o.fail(p.str() + ": no certificate after " + std::to_string(i) + "-stabilization");
        continue;
      }
      auto back = destabilize(s, *cert);
      if (canonical_form(i_stabilize(back, cert->index)) != canonical_form(s) ||
          back.genus != t.genus)
        o.fail(p.str() + ": destabilize does not invert " + std::to_string(i) +
               "-stabilization");
      if (cert->index == i && canonical_form(back) != canonical_form(t))
        o.fail(p.str() + ": destabilized diagram differs from the input");
      ++checks;
    }
  }
  o.detail = std::to_string(inputs.size()) + " inputs, " + std::to_string(checks) +
             " stabilize/destabilize round trips";
  return o;
}

Outcome heegaard_kirby() {
  Outcome o;
  int built = 0, trips = 0;
  double worst = 0;
  for (int g = 1; g <= 4; ++g)
    for (int n = 0; n <= g; ++n)
      for (int mask = 0; mask < (1 << (g - n)); ++mask) {
        std::vector<FramedComponent> link;
        for (int h = n + 1; h <= g; ++h)
          if (mask & (1 << (h - n - 1)))
            link.push_back({Curve::from_template(g, h, 1, 0), std::nullopt});
        int c = static_cast<int>(link.size());
        HeegaardKirbyDiagram hk(harness::standard_background(g, n), link, n + c);
        keep(validate_hk(hk));
        auto t0 = Clock::now();
        auto r = hk_to_trisection(hk);
        keep(r.verdict);
        auto p = trisection_params(r.trisection);
        keep(p.verdict);
        worst = std::max(worst, seconds_since(t0));
        TrisectionParams want{g, n, g - c, n + c};
        if (!r.verdict.is_verified() || p.params != want || !r.trisection.declared ||
            *r.trisection.declared != want)
          o.fail("link of " + std::to_string(c) + " on (" + std::to_string(g) + "," +
                 std::to_string(n) + ") gave " + p.params.str() + ", want " + want.str());
        ++built;
      }
  for (const auto &parts : catalog_sums(2)) {
    auto t = harness::sum_of(parts);
    auto t0 = Clock::now();
    auto picks = full_primitive_system(t);
    if (!picks)
      continue;
    auto hk = trisection_to_hk(t, *picks);
    keep(hk.verdict);
    auto back = hk_to_trisection(hk.hk);
    keep(back.verdict);
    double s = seconds_since(t0);
    worst = std::max(worst, s);
    if (!hk.verdict.is_verified() || !back.verdict.is_verified() ||
        canonical_form(back.trisection) != canonical_form(t))
      o.fail(manifold_name(sorted_names(parts)) + ": round trip changed the diagram");
    if (s >= 1.0)
      o.fail(manifold_name(sorted_names(parts)) + ": " + std::to_string(s) + " s");
    ++trips;
  }
  if (trips == 0)
    o.fail("no catalog diagram has a full primitive system");
  o.detail = std::to_string(built) + " constructions, " + std::to_string(trips) +
             " round trips, slowest " + std::to_string(worst) + " s";
  return o;
}

bool all_zero(const LinkingMatrix &m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m(i, j) != 0)
        return false;
  return true;
}

// H1 from the determinantal-divisor oracle, written like AbelianGroup::str
std::vector<Integer> oracle_factors(const LinkingMatrix &m) {
  auto f = oracle::invariant_factors_by_minors(m.matrix());
  std::vector<Integer> out;
  for (const auto &x : f)
    if (x != 1)
      out.push_back(x);
  return out;
}

Outcome linking() {
  Outcome o;
  std::mt19937 rng(7);
  int slides = 0;
  for (int trial = 0; trial < 30; ++trial) {
    auto n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    auto m = trial % 5 == 0 ? LinkingMatrix::zero(n) : harness::random_symmetric(rng, n);
    auto h0 = surgery_h1(m);
    auto f0 = oracle_factors(m);
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    for (int k = 0; k < 100 && n > 1; ++k) {
      std::size_t i = idx(rng), j = idx(rng);
      if (i == j)
        continue;
      m = matrix_handleslide(m, i, j, rng() % 2 ? 1 : -1);
      ++slides;
      if (surgery_h1(m) != h0)
        o.fail("surgery_h1 changed after a slide on size " + std::to_string(n));
    }
    if (n <= 4 && oracle_factors(m) != f0)
      o.fail("oracle invariant factors changed on size " + std::to_string(n));
    auto v = keep(gprc_necessary_check(m));
    if (v.is_verified() != all_zero(m))
      o.fail("gprc check " + std::string(to_string(v.status)) + " on size " +
             std::to_string(n));
    auto hopf = stabilize_link(m, LinkStabilization::HopfPair);
    if (surgery_h1(hopf) != h0)
      o.fail("Hopf-pair stabilization changed surgery_h1");
    auto zero = stabilize_link(m, LinkStabilization::ZeroUnknot);
    if (keep(gprc_necessary_check(zero)).is_verified() != all_zero(m))
      o.fail("0-framed unknot changed the gprc check");
  }
  o.detail = std::to_string(slides) + " random slides over 30 matrices";
  return o;
}

BalancedPresentation random_presentation(std::mt19937 &rng, int n, std::size_t max_len) {
  std::uniform_int_distribution<int> gen(1, n), sgn(0, 1);
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::vector<Word> rels;
  for (int k = 0; k < n; ++k) {
    Word w;
    for (std::size_t s = len(rng); s > 0; --s)
      w.push_back(sgn(rng) ? gen(rng) : -gen(rng));
    rels.push_back(w);
  }
  return {n, rels};
}

ACMove random_move(std::mt19937 &rng, const BalancedPresentation &p) {
  std::uniform_int_distribution<int> kind(0, 4);
  std::uniform_int_distribution<std::size_t> idx(0, static_cast<std::size_t>(p.n) - 1);
  std::uniform_int_distribution<int> gen(1, p.n), sgn(0, 1);
  for (;;) {
    switch (kind(rng)) {
    case 0:
      return ACMove::invert(idx(rng));
    case 1: {
      std::size_t i = idx(rng), j = idx(rng);
      if (i != j)
        return ACMove::multiply(i, j);
      break;
    }
    case 2:
      return ACMove::conjugate(idx(rng), sgn(rng) ? gen(rng) : -gen(rng));
    case 3:
      if (p.n < 5)
        return ACMove::stabilize();
      break;
    default:
      for (std::size_t i = 0; i < p.relators.size(); ++i)
        if (p.n > 1 && destabilizable(p, i))
          return ACMove::destabilize(i);
    }
  }
}

Outcome andrews_curtis() {
  Outcome o;
  for (int n = 1; n <= 10; ++n) {
    auto p = ak_presentation(n);
    // exponent sums of the two relators, read off the words
    auto e1 = exponent_sums(p.relators[0], 2), e2 = exponent_sums(p.relators[1], 2);
    Integer want = oracle::det_cofactor({{e1[0], e1[1]}, {e2[0], e2[1]}});
    if (ab_det(p) != want || want != -1)
      o.fail("ab_det(P" + std::to_string(n) + ") = " + ab_det(p).str());
  }
  std::mt19937 rng(12);
  for (int t = 0; t < 1000; ++t) {
    int n = std::uniform_int_distribution<int>(1, 3)(rng);
    auto p = random_presentation(rng, n, 6);
    Integer d = abs(ab_det(p));
    for (int s = 0; s < 10; ++s) {
      p = apply_ac_move(p, random_move(rng, p));
      if (abs(ab_det(p)) != d) {
        o.fail("|ab_det| changed in sequence " + std::to_string(t));
        break;
      }
    }
  }
  auto p1 = ak_presentation(1);
  auto t0 = Clock::now();
  auto r1 = ac_search(p1, {32, 20, false});
  double s1 = seconds_since(t0);
  keep(r1.verdict(p1));
  if (r1.outcome != ACSearchResult::Outcome::Found) {
    o.fail("P1 not trivialized: " + r1.reason);
  } else {
    auto q = p1;
    for (const auto &m : r1.path)
      q = apply_ac_move(q, m);
    if (canonical_key(q) != canonical_key(BalancedPresentation::trivial(q.n)) ||
        !replay_ac_path(p1, r1.path))
      o.fail("P1 path does not replay to the trivial key");
  }
  if (s1 >= 60.0)
    o.fail("P1 search took " + std::to_string(s1) + " s");
  auto p3 = ak_presentation(3);
  t0 = Clock::now();
  auto r3 = ac_search(p3, {32, 20, false});
  double s3 = seconds_since(t0);
  keep(r3.verdict(p3));
  if (r3.outcome != ACSearchResult::Outcome::Exhausted)
    o.fail("P3 search did not exhaust");
  std::ostringstream d;
  d << "P1 found in " << r1.path.size() << " moves (" << s1 << " s), P3 exhausted after "
    << r3.stats.states << " states (" << s3 << " s)";
  o.detail = d.str();
  return o;
}

Outcome soundness() {
  Outcome o;
  int replayed = 0;
  for (const auto &v : produced) {
    if (v.status == Status::Unknown)
      continue;
    auto r = replay_verdict(v);
    if (!r.ok)
      o.fail(std::string(to_string(v.status)) + " \"" + v.reason + "\": " + r.detail);
    ++replayed;
  }
  o.detail = std::to_string(replayed) + " decided verdicts replayed out of " +
             std::to_string(produced.size());
  return o;
}

} // namespace

int main() {
  report(1, "genus-one catalog", catalog);
  report(2, "chi consistency", chi);
  report(3, "standardization of scrambled sums", standardization);
  report(4, "classified parameter constraints", classified_params);
  report(5, "stabilization algebra", stabilization);
  report(6, "Heegaard-Kirby bridge", heegaard_kirby);
  report(7, "linking-matrix calculus", linking);
  report(8, "Andrews-Curtis", andrews_curtis);
  report(9, "soundness guard", soundness);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
