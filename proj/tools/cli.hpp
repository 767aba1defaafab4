#pragma once

// Command-line front end. run() is kept separate from main() so the tests can
// drive it with captured streams.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "u1braid/braid.hpp"
#include "u1braid/embed.hpp"
#include "u1braid/expandgen.hpp"
#include "u1braid/formlat.hpp"
#include "u1braid/goeritz.hpp"
#include "u1braid/pretzel.hpp"
#include "u1braid/serialize.hpp"

namespace u1braid::cli {

enum ExitCode : int { ok = 0, usage = 1, input_error = 2, internal_error = 3 };

inline braid::AltBraidWord read_word(const std::string& text) {
  auto w = braid::alt_canonical(braid::parse_braid_word(text));
  if (!w) throw InputError("not an alternating 3-braid word: " + text);
  return *w;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline IntMatrix read_goeritz_file(const std::string& path) { return goeritz::goeritz_input(read_json_file(path)); }

inline std::string crossing_text(const braid::CrossingRef& c) {
  std::ostringstream s;
  s << (c.letter_index % 2 == 0 ? "sigma1" : "sigma2") << " block " << c.letter_index / 2 + 1 << ", crossing "
    << c.strand_slot + 1 << " (letter " << c.letter_index << ", slot " << c.strand_slot << ")";
  return s.str();
}

inline void print_report(std::ostream& out, const embed::PipelineReport& r) {
  if (r.word) out << "word " << braid::to_text(*r.word) << "\n";
  out << "determinant " << r.determinant << "  signature " << r.sigma << "  n " << r.n << "\n";
  out << "stage " << embed::to_string(r.stage) << "  verdict " << r.verdict() << "\n";
  for (std::size_t k = 0; k < r.witnesses.size(); ++k) {
    const auto& w = r.witnesses[k];
    out << "witness " << k + 1 << (w.mirrored ? " (mirror diagram " + braid::to_text(*w.diagram) + ")" : "") << "\n";
    out << "  " << w.matrix << "\n";
    if (w.crossing) out << "  crossing " << crossing_text(*w.crossing) << "\n";
    out << "  verified " << (w.verified ? "yes" : "no") << "\n";
  }
}

// Exactly one of the listed sources must be present.
inline void require_one_source(std::initializer_list<bool> given) {
  int n = 0;
  for (bool g : given) n += g;
  if (n != 1) throw InputError("give exactly one input source");
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Unknotting number one for alternating 3-braid knots"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  std::size_t workers = 1;
  app.add_option("--out", out_path, "write the JSON report to this file");
  app.add_option("--workers", workers, "worker threads for searches")->check(CLI::PositiveNumber);

  std::string word_text, matrix_path;
  Int sigma = 0, bound = 12, unknot_d = 0;
  std::size_t rank = 0, r_max = 5, n_max = 8;
  bool no_cm = false;

  auto* inv = app.add_subcommand("invariants", "determinant, signature and s-invariant of a word");
  inv->add_option("word", word_text)->required();
  auto* goe = app.add_subcommand("goeritz", "Goeritz form of a word");
  goe->add_option("word", word_text)->required();
  auto* u1 = app.add_subcommand("u1", "run the unknotting-number-one pipeline");
  u1->add_option("word", word_text);
  u1->add_option("--matrix", matrix_path, "Goeritz matrix JSON file");
  auto* u1_sigma = u1->add_option("--sigma", sigma, "signature for --matrix input (0 or 2)");
  u1->add_flag("--no-change-making", no_cm, "drop the change-making condition");
  auto* en = app.add_subcommand("enumerate", "check every alternating 3-braid knot up to a crossing bound");
  en->add_option("--bound", bound, "maximum of sum(a_i + b_i)")->check(CLI::Range(2, 30));
  en->add_flag("--no-change-making", no_cm, "drop the change-making condition");
  auto* dt = app.add_subcommand("dtable", "correction-term table");
  dt->add_option("word", word_text);
  dt->add_option("--matrix", matrix_path, "negative-definite form JSON file");
  dt->add_option("--unknot", unknot_d, "half-integral surgery on the unknot with this D");
  auto* sy = app.add_subcommand("symmetry", "correction-term symmetry test");
  sy->add_option("word", word_text);
  sy->add_option("--matrix", matrix_path, "Goeritz matrix JSON file");
  auto* sy_sigma = sy->add_option("--sigma", sigma, "signature for --matrix input");
  auto* em = app.add_subcommand("embed", "embeddings of a form into -Z^N");
  em->add_option("--matrix", matrix_path, "form JSON file")->required();
  em->add_option("--rank", rank, "N")->required();
  auto* b0 = app.add_subcommand("b0", "generate B_0 and check the structure lemmas");
  b0->add_option("--rmax", r_max, "largest r")->check(CLI::Range(2, 7));
  auto* pz = app.add_subcommand("pretzel-check", "sharpness obstruction for the 8_20 plumbing");
  pz->add_option("--nmax", n_max, "largest lattice rank")->check(CLI::Range(6, 10));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? ok : usage;
  }

  json doc;
  try {
    const embed::PipelineOptions opt{!no_cm, workers};
    if (*inv) {
      const auto w = read_word(word_text);
      const auto rec = goeritz::invariants(w);
      out << "word " << braid::to_text(w) << "\ndeterminant " << rec.determinant << "  signature " << rec.signature
          << "  s " << rec.s_invariant << "  n " << rec.n << "\n";
      doc = {{"word", w}, {"invariants", rec}};
    } else if (*goe) {
      const auto w = read_word(word_text);
      const auto g = goeritz::goeritz_3braid(w);
      out << "word " << braid::to_text(w) << "\n" << g.matrix << "\ndeterminant " << goeritz::determinant(g) << "\n";
      json regions = json::array();
      for (const auto& crossings : g.region_map) regions.push_back(crossings);
      doc = {{"word", w}, {"goeritz", g.matrix}, {"determinant", goeritz::determinant(g)},
             {"region_map", regions}, {"cycle_edges", g.cycle_edges}};
    } else if (*u1) {
      require_one_source({!word_text.empty(), !matrix_path.empty()});
      embed::PipelineReport rep;
      if (!matrix_path.empty()) {
        if (!*u1_sigma) throw InputError("--matrix needs --sigma");
        rep = embed::u1_pipeline_matrix(read_goeritz_file(matrix_path), sigma, opt);
      } else {
        rep = embed::u1_pipeline(read_word(word_text), opt);
      }
      print_report(out, rep);
      doc = rep;
    } else if (*en) {
      const auto rows = embed::enumerate_main(bound, opt);
      json jrows = json::array();
      std::size_t disagreements = 0;
      for (const auto& r : rows) {
        const std::string verdict = r.report ? r.report->verdict() : "unknot";
        disagreements += !r.agrees();
        out << braid::to_text(r.word) << "  det " << r.invariants.determinant << "  sigma " << r.invariants.signature
            << "  " << verdict << "  family " << (r.family_crossings.empty() ? "no" : "yes")
            << (r.agrees() ? "" : "  DISAGREE") << "\n";
        json row = {{"word", r.word}, {"invariants", r.invariants}, {"verdict", verdict},
                    {"family_crossings", r.family_crossings}, {"agrees", r.agrees()}};
        if (r.report) row["stage"] = embed::to_string(r.report->stage);
        jrows.push_back(std::move(row));
      }
      out << rows.size() << " words, " << disagreements << " disagreements\n";
      doc = {{"bound", bound}, {"change_making", !no_cm}, {"rows", jrows}, {"disagreements", disagreements}};
    } else if (*dt) {
      require_one_source({!word_text.empty(), !matrix_path.empty(), unknot_d != 0});
      formlat::DTable t;
      if (unknot_d != 0) {
        t = formlat::d_table_halfint_unknot(unknot_d);
      } else {
        const IntMatrix m = matrix_path.empty() ? goeritz::goeritz_3braid(read_word(word_text)).matrix
                                                : read_goeritz_file(matrix_path);
        t = formlat::d_table_sharp(m);
      }
      for (Int i = 0; i < t.modulus; ++i) out << i << "  " << rational_text(t.at(i)) << "\n";
      doc = t;
    } else if (*sy) {
      require_one_source({!word_text.empty(), !matrix_path.empty()});
      IntMatrix g;
      bool mirrored = false;
      if (!matrix_path.empty()) {
        if (!*sy_sigma) throw InputError("--matrix needs --sigma");
        g = read_goeritz_file(matrix_path);
      } else {
        auto w = read_word(word_text);
        sigma = goeritz::invariants(w).signature;
        if (sigma < 0) {
          w = goeritz::mirror_word(w);
          sigma = -sigma;
          mirrored = true;
        }
        g = goeritz::goeritz_3braid(w).matrix;
      }
      if (sigma % 2 != 0) throw InputError("signature must be even");
      const int eps = (sigma / 2) % 2 == 0 ? 1 : -1;
      formlat::DTable t = formlat::d_table_sharp(g);
      if (eps < 0) t = t.negated();
      const auto units = formlat::os_symmetry_units(t, t.modulus);
      out << "D " << t.modulus << "  epsilon " << eps << (mirrored ? "  (mirror)" : "") << "\n"
          << "symmetry " << (units.empty() ? "fails: obstructed" : "holds") << "\n";
      doc = {{"D", t.modulus}, {"sigma", sigma}, {"epsilon", eps}, {"mirrored", mirrored},
             {"units", units}, {"passes", !units.empty()}, {"table", t}};
    } else if (*em) {
      const auto classes = embed::embed_form(read_goeritz_file(matrix_path), rank);
      out << classes.size() << " classes\n";
      for (const auto& a : classes) out << a << "\n";
      doc = {{"rank", rank}, {"count", classes.size()}, {"classes", classes}};
    } else if (*b0) {
      expandgen::GenerationStats stats;
      const auto members = expandgen::generate_B0(r_max, &stats);
      json jm = json::array();
      std::size_t bad = 0;
      for (const auto& b : members) {
        json row = b;
        row["column_multiset_check"] = expandgen::column_multiset_check(b);
        bad += !expandgen::column_multiset_check(b);
        if (b.vivj() == 0) {
          const auto s = expandgen::vivj_structure_check(b);
          row["structure"] = {{"k", s.k}, {"l", s.l}, {"block", s.block}, {"reachable_type1", s.reachable_type1}};
        }
        jm.push_back(std::move(row));
      }
      const auto claim = expandgen::claim_report(r_max);
      out << members.size() << " members of B_0 with r <= " << r_max << ", " << claim.orthogonal
          << " with <v_i, v_j> = 0\n"
          << "column multisets " << (bad == 0 ? "ok" : "FAIL") << "\n"
          << "completions of orthogonal members: " << claim.completions_without_cm << " without change-making, "
          << claim.completions_with_cm << " with it\n"
          << "claim " << (claim.holds() ? "holds" : "FAILS") << "\n";
      doc = {{"r_max", r_max},
             {"members", jm},
             {"claim",
              {{"holds", claim.holds()},
               {"orthogonal", claim.orthogonal},
               {"completions_without_change_making", claim.completions_without_cm},
               {"completions_with_change_making", claim.completions_with_cm},
               {"control_completions", claim.control_completions}}}};
    } else if (*pz) {
      const auto rep = pretzel::pretzel_check(n_max);
      out << "det M = " << rep.determinant << "\n";
      json emb = json::object(), a1 = json::array(), a2 = json::array();
      for (const auto& [n, c] : rep.embedding_classes) {
        out << "N " << n << ": " << c << " embedding classes\n";
        emb[std::to_string(n)] = c;
      }
      auto rows = [&](const char* name, const std::vector<pretzel::CoverageRow>& v, json& j) {
        for (const auto& r : v) {
          out << name << " N " << r.n << ": reaches " << r.reached << " of " << r.classes << " classes\n";
          j.push_back({{"n", r.n}, {"classes", r.classes}, {"reached", r.reached}, {"missed", r.missed}});
        }
      };
      rows("A1", rep.a1, a1);
      rows("A2", rep.a2, a2);
      doc = {{"determinant", rep.determinant}, {"embedding_classes", emb}, {"a1", a1}, {"a2", a2}};
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return input_error;
  } catch (const TheoremViolation& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return internal_error;
  }

  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) {
      err << "error: cannot write " << out_path << "\n";
      return input_error;
    }
    f << doc.dump(2) << "\n";
  }
  return ok;
}

}  // namespace u1braid::cli
