// trisect: command-line front end for the trisection engine.
//
// Every command prints a report in `key: value` lines (or one JSON object
// with --json) and exits with
//   0  verified / success
//   1  refuted
//   2  unknown / search budget exhausted
//   3  usage error
//   4  file I/O error
//   5  syntax error in an input file (line:column in the message)
//   6  input rejected by the engine (e.g. outside the supported range)

#include "trisect/trisect.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace trisect;

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text))
    throw IoError("cannot write " + path);
}

std::string fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

int exit_code(Status s) {
  switch (s) {
  case Status::Verified:
    return 0;
  case Status::Refuted:
    return 1;
  default:
    return 2;
  }
}

struct Report {
  std::string operation;
  std::string input;
  std::string digest;
  Verdict verdict;
  std::vector<std::pair<std::string, json>> fields;
  std::string diagram; // emitted file text, if any
  double elapsed_ms = 0;

  void add(std::string key, json value) { fields.emplace_back(std::move(key), std::move(value)); }

  json to_json() const {
    json j = {{"operation", operation}, {"input", input}, {"digest", digest},
              {"status", std::string(to_string(verdict.status))},
              {"reason", verdict.reason}};
    for (const auto &[k, v] : fields)
      j[k] = v;
    if (!diagram.empty())
      j["diagram"] = diagram;
    j["engine"] = std::string("trisect ") + engine_version;
    j["elapsed_ms"] = elapsed_ms;
    j["witness"] = verdict.witness;
    return j;
  }

  std::string text() const {
    std::ostringstream o;
    o << "operation: " << operation << "\n";
    o << "input: " << input << "\n";
    o << "digest: " << digest << "\n";
    o << "status: " << to_string(verdict.status) << "\n";
    o << "reason: " << verdict.reason << "\n";
    for (const auto &[k, v] : fields)
      o << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    if (!diagram.empty()) {
      o << "diagram: |\n";
      std::istringstream in(diagram);
      for (std::string line; std::getline(in, line);)
        o << "  " << line << "\n";
    }
    o << "engine: trisect " << engine_version << "\n";
    o << "elapsed_ms: " << static_cast<long long>(elapsed_ms) << "\n";
    o << "witness: " << verdict.witness.dump() << "\n";
    return o.str();
  }
};

struct Input {
  std::string path, text;
};

Input load(const std::string &path) { return {path, read_file(path)}; }

// ---------------------------------------------------------------------------
// Commands

Verdict diagram_verdict(const DiagramObject &d) {
  if (auto *t = std::get_if<TrisectionDiagram>(&d))
    return trisection_params(*t).verdict;
  if (auto *h = std::get_if<HeegaardDiagram>(&d))
    return detect_k(*h).verdict;
  return validate_hk(std::get<HeegaardKirbyDiagram>(d));
}

Report cmd_validate(const Input &in) {
  Report r;
  r.operation = "validate";
  auto d = parse_diagram(in.text);
  r.verdict = diagram_verdict(d);
  if (auto *t = std::get_if<TrisectionDiagram>(&d)) {
    r.add("kind", "trisection");
    r.add("genus", t->genus);
    r.add("params", trisection_params(*t).params.str());
  } else if (auto *h = std::get_if<HeegaardDiagram>(&d)) {
    r.add("kind", "heegaard");
    r.add("genus", h->genus);
    r.add("k", detect_k(*h).k);
  } else {
    const auto &hk = std::get<HeegaardKirbyDiagram>(d);
    r.add("kind", "heegaard-kirby");
    r.add("genus", hk.genus);
    r.add("components", hk.c());
    r.add("m", hk.m);
  }
  return r;
}

void add_chi(Report &r, const TrisectionParams &p) {
  long long chi = euler_characteristic(p);
  long long alt = euler_characteristic_alternate(p);
  r.add("chi", chi);
  if (alt != chi)
    r.add("chi_note", "chi counts handles: 2 + g - k1 - k2 - k3 = " + std::to_string(chi) +
                          "; the expression k1 + k2 + k3 - g + 2 = " + std::to_string(alt) +
                          " agrees only when g = k1 + k2 + k3");
}

Report cmd_invariants(const Input &in) {
  Report r;
  r.operation = "invariants";
  auto t = parse_trisection(in.text);
  auto pr = trisection_params(t);
  r.verdict = pr.verdict;
  r.add("genus", t.genus);
  r.add("params", pr.params.str());
  if (pr.params.k1 >= 0 && pr.params.k2 >= 0 && pr.params.k3 >= 0)
    add_chi(r, pr.params);
  auto pi1 = pi1_presentation(t);
  r.add("h1", abelianization(pi1).str());
  auto simp = tietze_simplify(pi1);
  r.add("pi1", simp.verdict.is_verified() ? simp.verdict.reason
                                          : "not simplified: " + simp.verdict.reason);
  return r;
}

Report cmd_classify(const Input &in) {
  Report r;
  r.operation = "classify";
  auto t = parse_trisection(in.text);
  if (t.genus == 1) {
    auto m = classify_genus_one(t);
    r.verdict = m.verdict;
    r.add("name", m.which ? name(*m.which) : "none");
    if (m.which) {
      r.add("params", genus_one_params(*m.which).str());
      r.add("manifold", manifold_name({name(*m.which)}));
    }
    return r;
  }
  try {
    auto s = standardize(t);
    r.verdict = s.verdict;
    r.add("params", s.params.str());
    r.add("manifold", s.manifold.empty() ? "unknown" : s.manifold);
    json names = s.summands;
    r.add("summands", names);
  } catch (const Error &e) {
    r.verdict = Verdict::unknown(e.what());
  }
  return r;
}

// Diagram text goes into the report, or to `out` when given.
void place(Report &r, const std::string &text, const std::string &out) {
  if (out.empty()) {
    r.diagram = text;
    return;
  }
  write_file(out, text);
  r.add("output", out);
}

Report emitted(const std::string &op, TrisectionDiagram t, const std::string &out) {
  Report r;
  r.operation = op;
  r.verdict = trisection_params(t).verdict;
  r.add("params", t.declared ? t.declared->str() : trisection_params(t).params.str());
  std::string text = format_diagram(t);
  place(r, text, out);
  return r;
}

Report cmd_stabilize(const Input &in, const std::string &type, const std::string &out) {
  auto d = parse_diagram(in.text);
  if (type == "heegaard") {
    auto *h = std::get_if<HeegaardDiagram>(&d);
    if (!h)
      throw Error("--type heegaard needs a heegaard file");
    auto s = heegaard_stabilize(*h);
    Report r;
    r.operation = "stabilize";
    auto kd = detect_k(s);
    r.verdict = kd.verdict;
    r.add("k", kd.k);
    std::string text = format_diagram(s);
    place(r, text, out);
    return r;
  }
  auto *t = std::get_if<TrisectionDiagram>(&d);
  if (!t)
    throw Error("--type " + type + " needs a trisection file");
  auto s = type == "balanced" ? balanced_stabilize(*t) : i_stabilize(*t, std::stoi(type));
  return emitted("stabilize", s, out);
}

Report cmd_connect_sum(const Input &a, const Input &b, const std::string &out) {
  return emitted("connect-sum", connected_sum(parse_trisection(a.text), parse_trisection(b.text)),
                 out);
}

int system_index(const std::string &s) {
  if (s == "alpha")
    return 0;
  if (s == "beta")
    return 1;
  if (s == "gamma")
    return 2;
  throw Error("unknown system '" + s + "'");
}

Report cmd_slide(const Input &in, const std::string &sys, std::size_t from, std::size_t over,
                 const std::string &guide, const std::string &sign, const std::string &out) {
  auto d = parse_diagram(in.text);
  int si = system_index(sys);
  if (from < 1 || over < 1)
    throw Error("curve indices start at 1");
  int sg = sign == "-" ? -1 : 1;
  auto slide_in = [&](const CutSystem &cs) {
    Word gw;
    if (!guide.empty())
      gw = parse_surface_word(guide, cs.genus());
    return handleslide(cs, from - 1, over - 1, gw, sg);
  };
  Report r;
  r.operation = "slide";
  std::string text;
  if (auto *t = std::get_if<TrisectionDiagram>(&d)) {
    TrisectionDiagram n = *t;
    n.system(si) = slide_in(t->system(si));
    r.verdict = lagrangian_verdict(n.system(si).classes(), n.genus);
    r.add("curve", n.system(si)[from - 1].str());
    text = format_diagram(n);
  } else if (auto *h = std::get_if<HeegaardDiagram>(&d)) {
    if (si == 2)
      throw Error("a Heegaard diagram has no gamma system");
    HeegaardDiagram n = *h;
    (si == 0 ? n.alpha : n.beta) = slide_in(si == 0 ? h->alpha : h->beta);
    r.verdict = lagrangian_verdict((si == 0 ? n.alpha : n.beta).classes(), n.genus);
    r.add("curve", (si == 0 ? n.alpha : n.beta)[from - 1].str());
    text = format_diagram(n);
  } else {
    throw Error("slide works on trisection and heegaard files");
  }
  place(r, text, out);
  return r;
}

Report cmd_hk_to_tri(const Input &in, const std::string &out) {
  auto H = parse_heegaard_kirby(in.text);
  Report r;
  r.operation = "hk-to-tri";
  Verdict v = validate_hk(H);
  if (v.is_refuted()) {
    r.verdict = v;
    return r;
  }
  auto c = hk_to_trisection(H);
  r.verdict = c.verdict;
  r.add("params", c.trisection.declared->str());
  std::string text = format_diagram(c.trisection);
  place(r, text, out);
  return r;
}

// "1:2,3:1" (gamma:beta, 1-based) or "auto".
std::vector<std::pair<std::size_t, std::size_t>> parse_picks(const std::string &s,
                                                             const TrisectionDiagram &t) {
  if (s == "auto") {
    auto p = full_primitive_system(t);
    if (!p)
      throw Error("no full primitive system: (beta, gamma) is not certified standard");
    return *p;
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw Error("pick '" + item + "' must read GAMMA:BETA");
    long long g = 0, b = 0;
    if (!detail::parse_ll(detail::trim(item.substr(0, colon)), g) ||
        !detail::parse_ll(detail::trim(item.substr(colon + 1)), b) || g < 1 || b < 1)
      throw Error("pick '" + item + "' needs positive indices");
    out.push_back({static_cast<std::size_t>(g - 1), static_cast<std::size_t>(b - 1)});
  }
  return out;
}

Report cmd_tri_to_hk(const Input &in, const std::string &picks, const std::string &out) {
  auto t = parse_trisection(in.text);
  Report r;
  r.operation = "tri-to-hk";
  auto c = trisection_to_hk(t, parse_picks(picks, t));
  r.verdict = c.verdict;
  r.add("components", c.hk.c());
  r.add("m", c.hk.m);
  std::string text = format_diagram(c.hk);
  place(r, text, out);
  return r;
}

Report cmd_gprc(const Input &in) {
  auto m = parse_matrix(in.text);
  Report r;
  r.operation = "gprc-check";
  r.verdict = gprc_necessary_check(m);
  r.add("size", m.size());
  r.add("surgery_h1", surgery_h1(m).str());
  return r;
}

Report cmd_ac_search(const BalancedPresentation &p, ACSearchOptions o) {
  Report r;
  r.operation = "ac-search";
  auto t0 = std::chrono::steady_clock::now();
  auto res = ac_search(p, o);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.verdict = res.verdict(p);
  r.add("presentation", p.str());
  r.add("ab_det", ab_det(p).str());
  r.add("outcome", res.outcome == ACSearchResult::Outcome::Found       ? "found"
                   : res.outcome == ACSearchResult::Outcome::Refuted ? "refuted"
                                                                     : "exhausted");
  r.add("path_length", res.path.size());
  r.add("states", res.stats.states);
  r.add("depth_reached", res.stats.depth_reached);
  r.add("search_seconds", secs);
  return r;
}

Report cmd_catalog(const std::string &which, const std::string &dir) {
  std::array<GenusOne, 3> ds;
  if (which == "figure1")
    ds = figure_balanced();
  else if (which == "figure2")
    ds = figure_stabilizations();
  else
    throw Error("catalog is figure1 or figure2");
  Report r;
  r.operation = "catalog";
  json names = json::array();
  std::string all;
  json witnesses = json::array();
  Status st = Status::Verified;
  for (auto d : ds) {
    auto t = genus_one(d);
    auto v = trisection_params(t).verdict;
    st = weakest(st, v.status);
    witnesses.push_back(v.witness);
    names.push_back(name(d));
    std::string text = "# " + name(d) + "\n" + format_diagram(t);
    if (!dir.empty()) {
      write_file(dir + "/" + name(d) + ".tri", text);
    }
    all += text;
  }
  r.add("diagrams", names);
  if (dir.empty())
    r.diagram = all;
  else
    r.add("output", dir);
  r.verdict = {st, "catalog parameters " + std::string(to_string(st)),
               {{"kind", "catalog"}, {"params", witnesses}}};
  return r;
}

Report cmd_replay(const Input &in) {
  json j;
  try {
    j = json::parse(in.text);
  } catch (const json::parse_error &e) {
    throw ParseError(std::string("bad JSON: ") + e.what(), 1, 1);
  }
  Status claimed = status_from_string(j.value("status", "unknown"));
  const json &w = j.contains("witness") ? j["witness"] : j;
  Report r;
  r.operation = "replay";
  r.add("claimed", std::string(to_string(claimed)));
  ReplayResult rr;
  if (w.is_object() && w.value("kind", "") == "catalog") {
    rr.ok = true;
    for (const auto &pw : w.at("params")) {
      auto one = replay_witness(claimed, pw);
      rr.ok = rr.ok && one.ok;
      rr.detail = one.detail;
    }
  } else {
    rr = replay_witness(claimed, w);
  }
  r.add("derived", std::string(to_string(rr.derived)));
  r.verdict = rr.ok ? Verdict::verified(rr.detail, {{"replayed", claimed != Status::Unknown}})
                    : Verdict::refuted(rr.detail, {{"kind", "replay_failure"},
                                                   {"claimed", std::string(to_string(claimed))}});
  return r;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"trisect: trisection diagrams, Heegaard-Kirby diagrams and "
               "Andrews-Curtis search"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "print the report as one JSON object");

  std::vector<std::string> files;
  std::string file, file_b, out, type, sys = "alpha", guide, sign = "+", picks = "auto",
                                     which, dir;
  std::size_t from = 0, over = 0;
  unsigned jobs = 1;
  int ak = 0;
  ACSearchOptions ac;

  auto *validate = app.add_subcommand("validate", "check diagram files and report parameters");
  validate->add_option("files", files, "diagram files")->required()->check(CLI::ExistingFile);
  validate->add_option("--jobs", jobs, "files checked in parallel")->check(CLI::Range(1u, 64u));

  auto *invariants = app.add_subcommand("invariants", "parameters, chi, H1, pi1");
  invariants->add_option("file", file)->required();

  auto *classify = app.add_subcommand("classify", "name the manifold of a trisection");
  classify->add_option("file", file)->required();

  auto *stabilize = app.add_subcommand("stabilize", "stabilize a trisection");
  stabilize->add_option("file", file)->required();
  stabilize->add_option("--type", type, "1, 2, 3, balanced (trisections) or heegaard")
      ->required()
      ->check(CLI::IsMember({"1", "2", "3", "heegaard", "balanced"}));
  stabilize->add_option("-o", out, "output file");

  auto *csum = app.add_subcommand("connect-sum", "connected sum of two trisections");
  csum->add_option("a", file)->required();
  csum->add_option("b", file_b)->required();
  csum->add_option("-o", out, "output file");

  auto *slide = app.add_subcommand("slide", "slide one curve over another");
  slide->add_option("file", file)->required();
  slide->add_option("--system", sys)->check(CLI::IsMember({"alpha", "beta", "gamma"}));
  slide->add_option("--from", from, "curve to move (1-based)")->required();
  slide->add_option("--over", over, "curve slid over (1-based)")->required();
  slide->add_option("--guide", guide, "arc word, e.g. 'x1 Y2'");
  slide->add_option("--sign", sign)->check(CLI::IsMember({"+", "-"}));
  slide->add_option("-o", out, "output file");

  auto *hk2t = app.add_subcommand("hk-to-tri", "Heegaard-Kirby diagram to trisection");
  hk2t->add_option("file", file)->required();
  hk2t->add_option("-o", out, "output file");

  auto *t2hk = app.add_subcommand("tri-to-hk", "trisection to Heegaard-Kirby diagram");
  t2hk->add_option("file", file)->required();
  t2hk->add_option("--picks", picks, "GAMMA:BETA,... (1-based) or auto");
  t2hk->add_option("-o", out, "output file");

  auto *gprc = app.add_subcommand("gprc-check", "zero-linking-matrix test");
  gprc->add_option("file", file)->required();

  auto *acs = app.add_subcommand("ac-search", "breadth-first Andrews-Curtis search");
  auto *ak_opt = acs->add_option("--ak", ak, "use the presentation P_n")->check(CLI::PositiveNumber);
  acs->add_option("file", file, "presentation file")->excludes(ak_opt);
  acs->add_option("--max-length", ac.max_total_length, "total relator length bound");
  acs->add_option("--max-depth", ac.max_depth, "search depth bound");
  acs->add_option("--max-states", ac.max_states, "distinct states kept");
  acs->add_flag("--stable", ac.stable, "allow stabilization moves");

  auto *catalog = app.add_subcommand("catalog", "emit the standard genus-one diagrams");
  catalog->add_option("which", which)->required()->check(CLI::IsMember({"figure1", "figure2"}));
  catalog->add_option("-o", dir, "directory for NAME.tri files");

  auto *replay = app.add_subcommand("replay", "re-derive a verdict from a --json report");
  replay->add_option("file", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  auto emit = [&](Report &r) {
    if (as_json)
      std::cout << r.to_json().dump(2) << "\n";
    else
      std::cout << r.text();
  };

  try {
    if (*validate) {
      std::vector<Report> reports(files.size());
      std::vector<std::string> errors(files.size());
      std::vector<int> codes(files.size(), 0);
      std::atomic<std::size_t> next{0};
      auto work = [&] {
        for (std::size_t i; (i = next++) < files.size();) {
          try {
            auto t0 = std::chrono::steady_clock::now();
            Input in = load(files[i]);
            reports[i] = cmd_validate(in);
            reports[i].input = in.path;
            reports[i].digest = fnv1a(in.text);
            reports[i].elapsed_ms = std::chrono::duration<double, std::milli>(
                                        std::chrono::steady_clock::now() - t0)
                                        .count();
            codes[i] = exit_code(reports[i].verdict.status);
          } catch (const IoError &e) {
            errors[i] = e.what();
            codes[i] = 4;
          } catch (const ParseError &e) {
            errors[i] = files[i] + ":" + e.what();
            codes[i] = 5;
          } catch (const std::exception &e) {
            errors[i] = files[i] + ": " + e.what();
            codes[i] = 6;
          }
        }
      };
      std::vector<std::thread> pool;
      for (unsigned k = 1; k < std::min<std::size_t>(jobs, files.size()); ++k)
        pool.emplace_back(work);
      work();
      for (auto &th : pool)
        th.join();
      int rc = 0;
      for (std::size_t i = 0; i < files.size(); ++i) {
        if (!errors[i].empty())
          std::cerr << "error: " << errors[i] << "\n";
        else
          emit(reports[i]);
        rc = std::max(rc, codes[i]);
      }
      return rc;
    }

    auto t0 = std::chrono::steady_clock::now();
    Report r;
    std::string digest_src;
    auto in = [&](const std::string &p) {
      Input i = load(p);
      digest_src += i.text;
      return i;
    };
    if (*invariants)
      r = cmd_invariants(in(file));
    else if (*classify)
      r = cmd_classify(in(file));
    else if (*stabilize)
      r = cmd_stabilize(in(file), type, out);
    else if (*csum) {
      auto a = in(file);
      r = cmd_connect_sum(a, in(file_b), out);
      file += " " + file_b;
    } else if (*slide)
      r = cmd_slide(in(file), sys, from, over, guide, sign, out);
    else if (*hk2t)
      r = cmd_hk_to_tri(in(file), out);
    else if (*t2hk)
      r = cmd_tri_to_hk(in(file), picks, out);
    else if (*gprc)
      r = cmd_gprc(in(file));
    else if (*acs) {
      BalancedPresentation p;
      if (ak > 0) {
        p = ak_presentation(ak);
        file = "P_" + std::to_string(ak);
        digest_src = format_presentation(p);
      } else if (!file.empty())
        p = parse_presentation(in(file).text);
      else
        throw CLI::RequiredError("--ak or a presentation file");
      r = cmd_ac_search(p, ac);
    } else if (*catalog) {
      r = cmd_catalog(which, dir);
      file = which;
      digest_src = which;
    } else if (*replay)
      r = cmd_replay(in(file));
    r.input = file;
    r.digest = fnv1a(digest_src);
    r.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    emit(r);
    return exit_code(r.verdict.status);
  } catch (const CLI::Error &e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 3;
  } catch (const IoError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const ParseError &e) {
    std::cerr << "error: " << file << ":" << e.what() << "\n";
    return 5;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 6;
  }
}
