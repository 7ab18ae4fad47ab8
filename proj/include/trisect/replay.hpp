#pragma once

// Independent re-derivation of verdicts from their witnesses. Each witness
// kind is re-checked from the data it records: recorded steps are re-executed
// and finite checks are recomputed, but no search is run again.

#include "trisect/ac.hpp"
#include "trisect/kirby.hpp"
#include "trisect/moves.hpp"

namespace trisect {

struct ReplayResult {
  bool ok = false;
  Status derived = Status::Unknown;
  std::string detail;
};

namespace detail {

inline std::vector<HomologyClass> classes_from_json(const json &j, int genus) {
  std::vector<HomologyClass> out;
  for (const auto &c : j)
    out.push_back(HomologyClass::from_json(genus, c));
  return out;
}

inline Status rederive(const json &w, std::string &why);

inline Status rederive_tietze(const json &w, std::string &why) {
  auto p = GroupPresentation::from_json(w.at("presentation"));
  std::vector<TietzeStep> steps;
  for (const auto &s : w.at("steps"))
    steps.push_back(TietzeStep::from_json(s));
  std::optional<int> rank;
  try {
    rank = tietze_replay(p, steps);
  } catch (const Error &e) {
    why = std::string("tietze step failed: ") + e.what();
    return Status::Unknown;
  }
  if (!rank || *rank != w.at("rank").get<int>()) {
    why = "tietze steps do not reach the claimed free group";
    return Status::Unknown;
  }
  return Status::Verified;
}

inline AbelianGroup h1_from_witness(const json &w) {
  int g = w.at("genus");
  auto cls = classes_from_json(w.at("classes"), g);
  return cokernel(class_matrix(cls, g));
}

inline Status rederive_heegaard_h1(const json &w, std::string &why) {
  AbelianGroup h1 = h1_from_witness(w);
  if (h1.to_json() != w.at("h1")) {
    why = "recorded H1 differs from the recomputed " + h1.str();
    return Status::Unknown;
  }
  // free homology alone decides nothing
  return h1.is_free() ? Status::Unknown : Status::Refuted;
}

inline Status rederive_detect_k(const json &w, std::string &why) {
  const json &hw = w.at("homology");
  AbelianGroup h1 = h1_from_witness(hw);
  int k = w.at("k");
  if (!h1.is_free() || h1.free_rank != static_cast<std::size_t>(k)) {
    why = "H1 = " + h1.str() + " is not Z^" + std::to_string(k);
    return Status::Unknown;
  }
  return rederive_tietze(w.at("tietze"), why);
}

inline Status rederive_standard_pair(const json &w, Status claimed, std::string &why) {
  int g = w.at("genus");
  std::vector<Curve> a, b;
  for (const auto &s : w.at("alpha"))
    a.push_back(parse_curve(s.get<std::string>(), g));
  for (const auto &s : w.at("beta"))
    b.push_back(parse_curve(s.get<std::string>(), g));
  HeegaardDiagram d(CutSystem(g, a), CutSystem(g, b));
  if (claimed != Status::Verified)
    return is_standard_pair(d).status;
  std::vector<int> sigma = w.at("pairing");
  int k = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      auto n = geometric_intersection(a[i], b[j]);
      bool matched = static_cast<int>(j) == sigma.at(i);
      bool same = a[i].same_curve(b[j]);
      if (!n.exact || (matched && !same && n.value != 1) || (!matched && n.value != 0)) {
        why = "pairing fails at alpha" + std::to_string(i + 1) + ", beta" +
              std::to_string(j + 1);
        return Status::Unknown;
      }
      k += matched && same;
    }
  if (k != w.at("k").get<int>()) {
    why = "pairing gives k = " + std::to_string(k);
    return Status::Unknown;
  }
  return Status::Verified;
}

inline Status rederive_params(const json &w, std::string &why) {
  Status st = Status::Verified;
  auto ks = TrisectionParams::from_json(w.at("params"));
  const json &pairs = w.at("pairs");
  for (int i = 0; i < 3; ++i) {
    const json &pw = pairs.at(static_cast<std::size_t>(i));
    Status s = pw.is_null() ? Status::Unknown : rederive(pw, why);
    if (s == Status::Verified && pw.at("k").get<int>() != ks.k(i + 1)) {
      why = "pair " + std::to_string(i + 1) + " witness has k = " +
            std::to_string(pw.at("k").get<int>());
      return Status::Unknown;
    }
    st = weakest(st, s);
  }
  return st;
}

inline Status rederive_decomposition(const json &w, std::string &why) {
  TrisectionDiagram d = diagram_from_json(w.at("diagram"));
  for (const auto &s : w.at("slides"))
    d = apply_slide(d, Slide::from_json(s));
  std::vector<std::string> names;
  for (const auto &group : handle_components(d)) {
    if (group.size() != 1 || !closed_group(d, group)) {
      why = "slides leave a component of " + std::to_string(group.size()) + " handles";
      return Status::Unknown;
    }
    auto m = classify_genus_one(restrict_to(d, group));
    if (m.verdict.is_refuted())
      return Status::Refuted;
    if (!m.which) {
      why = m.verdict.reason;
      return Status::Unknown;
    }
    names.push_back(name(*m.which));
  }
  if (!w.contains("summands"))
    return Status::Unknown;
  std::vector<std::string> claimed;
  for (const auto &s : w.at("summands"))
    claimed.push_back(s.at("name"));
  std::sort(names.begin(), names.end());
  std::sort(claimed.begin(), claimed.end());
  if (names != claimed || manifold_name(names) != w.at("manifold").get<std::string>()) {
    why = "summands differ from the recomputed " + manifold_name(names);
    return Status::Unknown;
  }
  return Status::Verified;
}

inline Status rederive(const json &w, std::string &why) {
  const std::string kind = w.at("kind");
  if (kind == "lagrangian") {
    int g = w.at("genus");
    return lagrangian_verdict(classes_from_json(w.at("classes"), g), g).status;
  }
  if (kind == "tietze")
    return rederive_tietze(w, why);
  if (kind == "heegaard_h1")
    return rederive_heegaard_h1(w, why);
  if (kind == "detect_k")
    return rederive_detect_k(w, why);
  if (kind == "standard_pair")
    return rederive_standard_pair(w, w.contains("pairing") ? Status::Verified
                                                           : Status::Refuted,
                                  why);
  if (kind == "params")
    return rederive_params(w, why);
  if (kind == "params_mismatch") {
    const json &c = w.at("computed");
    Status s = rederive_params(c, why);
    if (s == Status::Refuted)
      return Status::Unknown;
    auto dec = TrisectionParams::from_json(w.at("declared"));
    auto got = TrisectionParams::from_json(c.at("params"));
    const json &pairs = c.at("pairs");
    for (int i = 1; i <= 3; ++i) {
      // only pairs whose k re-derives count as disagreement
      std::string ignore;
      const json &pw = pairs.at(static_cast<std::size_t>(i - 1));
      if (got.k(i) >= 0 && got.k(i) != dec.k(i) && !pw.is_null() &&
          rederive(pw, ignore) == Status::Verified)
        return Status::Refuted;
    }
    why = "no certified parameter disagrees with the declaration";
    return Status::Unknown;
  }
  if (kind == "genus_one") {
    std::vector<Curve> c;
    for (const auto &s : w.at("slopes"))
      c.push_back(Curve::from_template(1, 1, s.at(0).get<long long>(),
                                       s.at(1).get<long long>()));
    TrisectionDiagram t(CutSystem(1, {c[0]}), CutSystem(1, {c[1]}), CutSystem(1, {c[2]}));
    return classify_genus_one(t).verdict.status;
  }
  if (kind == "decomposition")
    return rederive_decomposition(w, why);
  if (kind == "classified_params") {
    try {
      return check_classified_params(TrisectionParams::from_json(w.at("params"))).status;
    } catch (const Error &e) {
      why = e.what();
      return Status::Unknown;
    }
  }
  if (kind == "hk")
    return validate_hk(hk_from_json(w.at("diagram"))).status;
  if (kind == "hk_to_trisection") {
    auto H = hk_from_json(w.at("hk").at("diagram"));
    Status s = rederive(w.at("hk"), why);
    if (s == Status::Refuted)
      return Status::Unknown; // a conversion never exists for a refuted diagram
    auto t = diagram_from_json(w.at("trisection"));
    auto mine = hk_to_trisection(H).trisection;
    if (canonical_form(t) != canonical_form(mine)) {
      why = "recorded trisection differs from the conversion";
      return Status::Unknown;
    }
    return s;
  }
  if (kind == "primitive_pairs") {
    auto pp = find_primitive_pairs(diagram_from_json(w.at("diagram")));
    if (pp.verdict.witness.at("pairs") != w.at("pairs")) {
      why = "primitive pairs differ";
      return Status::Unknown;
    }
    return pp.verdict.status;
  }
  if (kind == "trisection_to_hk")
    return rederive(w.at("params"), why);
  if (kind == "gprc_check")
    return gprc_necessary_check(LinkingMatrix(matrix_from_json(w.at("matrix")))).status;
  if (kind == "ac_path") {
    auto start = BalancedPresentation::from_json(w.at("start"));
    std::vector<ACMove> moves;
    for (const auto &m : w.at("moves"))
      moves.push_back(ACMove::from_json(m));
    if (!replay_ac_path(start, moves)) {
      why = "moves do not reach the trivial presentation";
      return Status::Unknown;
    }
    return Status::Verified;
  }
  if (kind == "ab_det") {
    Integer det = ab_det(BalancedPresentation::from_json(w.at("start")));
    if (det.str() != w.at("det").get<std::string>()) {
      why = "determinant recomputes to " + det.str();
      return Status::Unknown;
    }
    return abs(det) == 1 ? Status::Unknown : Status::Refuted;
  }
  if (kind == "tietze_partial")
    return Status::Unknown;
  throw Error("unknown witness kind '" + kind + "'");
}

} // namespace detail

/// Re-derives the status a witness supports. A Verified or Refuted claim is
/// upheld only when the re-derived status matches it; Unknown claims always
/// pass; Refuted claims without a witness never do.
inline ReplayResult replay_witness(Status claimed, const json &witness) {
  ReplayResult r;
  if (claimed == Status::Unknown) {
    r.ok = true;
    r.detail = "nothing to replay";
    return r;
  }
  if (!witness.is_object() || !witness.contains("kind")) {
    r.detail = "no concrete witness";
    return r;
  }
  try {
    std::string why;
    r.derived = detail::rederive(witness, why);
    r.ok = r.derived == claimed;
    r.detail = r.ok ? "witness re-derives " + std::string(to_string(claimed))
                    : "witness re-derives " + std::string(to_string(r.derived)) +
                          (why.empty() ? "" : ": " + why);
  } catch (const std::exception &e) {
    r.detail = std::string("malformed witness: ") + e.what();
  }
  return r;
}

inline ReplayResult replay_verdict(const Verdict &v) {
  return replay_witness(v.status, v.witness);
}

} // namespace trisect
