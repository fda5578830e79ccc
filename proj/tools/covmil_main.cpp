#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "covmil/brunnian.hpp"
#include "covmil/cover.hpp"
#include "covmil/diagram.hpp"
#include "covmil/errors.hpp"
#include "covmil/milnor.hpp"
#include "covmil/sampling.hpp"
#include "covmil/tangle.hpp"
#include "covmil/verify.hpp"

namespace {

using namespace covmil;

Index parse_index_arg(const std::string& s) {
  Index I;
  if (s.find(',') != std::string::npos) {
    std::istringstream is(s);
    std::string part;
    while (std::getline(is, part, ',')) I.seq.push_back(std::stoi(part));
  } else {
    for (char c : s) {
      if (c < '1' || c > '9') fail(Errc::bad_config, "bad index digit in '" + s + "'");
      I.seq.push_back(c - '0');
    }
  }
  if (I.seq.size() < 2) fail(Errc::bad_config, "index needs length >= 2");
  return I;
}

TangleWord load_input(const std::string& corpus_name, const std::string& input_file) {
  if (!corpus_name.empty() && !input_file.empty())
    fail(Errc::bad_config, "choose either --corpus or --input");
  if (!corpus_name.empty()) return corpus_entry(corpus_name).word;
  if (input_file.empty()) fail(Errc::bad_config, "need --corpus or --input");
  std::ifstream in(input_file);
  if (!in) fail(Errc::bad_config, "cannot read " + input_file);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_tangle(ss.str());
}

void write_word(const TangleWord& w, const std::string& out) {
  if (out.empty()) {
    std::cout << to_text(w);
    return;
  }
  std::ofstream f(out);
  if (!f) fail(Errc::bad_config, "cannot write " + out);
  f << to_text(w);
  std::cout << "wrote " << out << "\n";
}

struct Common {
  std::string corpus, input, format = "table";
  uint32_t p = 0;
  int q = 6;
  bool mirror = false;
};

void add_common(CLI::App* cmd, Common& c, bool with_pq = true) {
  cmd->add_option("--corpus", c.corpus, "built-in corpus entry name");
  cmd->add_option("--input", c.input, "tangle word file");
  cmd->add_option("--format", c.format, "table|json|csv")->check(CLI::IsMember({"table", "json", "csv"}));
  if (with_pq) {
    cmd->add_option("--p", c.p, "coefficient modulus, 0 or a prime");
    cmd->add_option("--q", c.q, "truncation degree");
    cmd->add_flag("--mirror", c.mirror, "report values in the mirror convention");
  }
}

std::string input_name(const Common& c) { return c.corpus.empty() ? c.input : c.corpus; }

int run_mu(const Common& c, const std::string& idx) {
  Index I = parse_index_arg(idx);
  TangleWord w = load_input(c.corpus, c.input);
  if (c.q < I.length()) fail(Errc::bad_config, "q must be at least the index length; raise --q");
  MarkedLink m = insert_axis(w);
  for (int i : I.seq)
    if (i < 1 || i > m.diagram.ncomps)
      fail(Errc::bad_config, "index entry out of range for this link");
  MilnorEngine eng(m.diagram, Modulus(c.p), c.q);
  MuResult r = eng.mu_bar(I);
  if (c.mirror) r = r.negated(Modulus(c.p));
  if (c.format == "json") {
    std::cout << "{\"input\":\"" << input_name(c) << "\",\"I\":\"" << I.to_string()
              << "\",\"p\":" << c.p << ",\"q\":" << c.q << ",\"mu\":" << r.mu.to_string()
              << ",\"delta\":" << r.delta.to_string() << ",\"mubar\":" << r.mubar.to_string()
              << "}\n";
  } else if (c.format == "csv") {
    std::cout << "input,I,p,q,mu,delta,mubar\n"
              << input_name(c) << "," << I.to_string() << "," << c.p << "," << c.q << ","
              << r.mu.to_string() << "," << r.delta.to_string() << "," << r.mubar.to_string()
              << "\n";
  } else {
    std::cout << "mu(" << I.to_string() << ")    = " << r.mu.to_string() << "\n"
              << "Delta(" << I.to_string() << ") = " << r.delta.to_string() << "\n"
              << "mubar(" << I.to_string() << ") = " << r.mubar.to_string() << "\n";
  }
  return 0;
}

int run_mset(const Common& c, const std::string& idx) {
  Index I = parse_index_arg(idx);
  TangleWord w = load_input(c.corpus, c.input);
  int q = std::max(c.q, I.length());
  MSet m = m_set(w, I, Modulus(c.p), q);
  if (c.mirror) {
    for (auto& [sel, r] : m.entries) r = r.negated(Modulus(c.p));
  }
  if (c.format == "json") {
    std::cout << mset_to_json(input_name(c), I, Modulus(c.p), q, m) << "\n";
  } else if (c.format == "csv") {
    std::cout << "eps,mu,delta,mubar\n";
    for (const auto& [sel, r] : m.entries)
      std::cout << sel.to_string() << "," << r.mu.to_string() << "," << r.delta.to_string() << ","
                << r.mubar.to_string() << "\n";
  } else {
    std::cout << "M(" << I.to_string() << ") over " << input_name(c) << ":\n";
    for (const auto& [sel, r] : m.entries)
      std::cout << "  eps=" << sel.to_string() << "  mubar=" << r.mubar.to_string()
                << "  (mu=" << r.mu.to_string() << ", delta=" << r.delta.to_string() << ")\n";
  }
  return 0;
}

int run_cover(const Common& c, const std::string& eps_arg) {
  TangleWord w = load_input(c.corpus, c.input);
  CoverModel cm = double_cover(w);
  if (!eps_arg.empty()) {
    std::vector<int> e;
    for (char ch : eps_arg) e.push_back(ch - '0');
    PDiagram d = covering_link(cm, LiftSelection(e));
    std::cout << pd_to_json(d) << "\n";
    return 0;
  }
  if (c.format == "json") {
    std::cout << "{\"input\":\"" << input_name(c) << "\",\"components\":" << cm.n
              << ",\"doubled_events\":" << cm.doubled.events.size() << "}\n";
  } else {
    std::cout << "double branched cover of " << input_name(c) << ": " << cm.n
              << " components, each with lifts 0/1\n";
    std::cout << "doubled word has " << cm.doubled.events.size() << " events, width "
              << cm.doubled.width << "\n";
  }
  return 0;
}

int run_verify(const Common& c, const std::string& idx, bool sweep, const std::string& gen,
               int n, int samples, unsigned seed) {
  if (sweep) {
    if (gen != "milnor") fail(Errc::bad_config, "only --gen milnor sweeps are available");
    std::mt19937 rng(seed);
    int failures = 0, indeterminate = 0;
    for (int s = 0; s < samples; ++s) {
      TangleWord w = random_band_sum(rng, n + 1, 3);
      // random admissible index: axis strictly inside
      std::vector<int> others(n);
      std::iota(others.begin(), others.end(), 1);
      std::shuffle(others.begin(), others.end(), rng);
      int k = 2 + static_cast<int>(rng() % (n - 1));
      std::vector<int> iseq(others.begin(), others.end());
      iseq.insert(iseq.begin() + (k - 1), n + 1);
      VerifyReport rep = verify_mod2(w, Index(iseq), n + 2);
      std::cout << "sample " << s << " I=" << rep.I.to_string() << " lhs=" << rep.lhs_mod2
                << " rhs=" << rep.rhs_mod2 << " "
                << (rep.verdict == Verdict::Pass
                        ? "pass"
                        : rep.verdict == Verdict::Fail ? "FAIL" : "indeterminate")
                << "\n";
      if (rep.verdict == Verdict::Fail) ++failures;
      if (rep.verdict == Verdict::Indeterminate) ++indeterminate;
    }
    std::cout << samples << " samples, " << failures << " failures, " << indeterminate
              << " indeterminate\n";
    return failures == 0 && indeterminate == 0 ? 0 : 1;
  }
  if (idx.empty()) fail(Errc::bad_config, "verify needs --I or --sweep");
  Index I = parse_index_arg(idx);
  TangleWord w = load_input(c.corpus, c.input);
  VerifyReport rep = verify_mod2(w, I, std::max(c.q, I.length()));
  std::cout << (c.format == "json" ? rep.to_json() + "\n" : rep.to_table());
  return rep.verdict == Verdict::Pass ? 0 : 1;
}

int run_discriminator(const Common& c) {
  DiscriminatorReport rep = homotopy_discriminator();
  if (c.format == "json") {
    std::cout << "{\"ordinary_match\":" << (rep.ordinary_match ? "true" : "false")
              << ",\"msets_differ\":" << (rep.msets_differ ? "true" : "false") << ",\"pass\":"
              << (rep.pass() ? "true" : "false") << "}\n";
  } else {
    std::cout << "ordinary invariants match: " << (rep.ordinary_match ? "yes" : "NO") << "\n";
    std::cout << "covering M-sets differ:   " << (rep.msets_differ ? "yes" : "NO") << "\n";
    for (const std::string& m : rep.mismatches) std::cout << "  " << m << "\n";
  }
  return rep.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Milnor invariants of links and their double branched covering links"};
  app.require_subcommand(1);

  Common c_mu, c_mset, c_cover, c_verify, c_disc;
  std::string idx_mu, idx_mset, idx_verify, eps_arg;
  bool sweep = false;
  std::string gen_kind = "milnor";
  int sweep_n = 2, sweep_samples = 10;
  unsigned seed = 1;

  CLI::App* mu_cmd = app.add_subcommand("mu", "mu, Delta and mubar of the closure with axis");
  add_common(mu_cmd, c_mu);
  mu_cmd->add_option("--I", idx_mu, "index sequence, e.g. 132 or 1,3,2")->required();

  CLI::App* mset_cmd = app.add_subcommand("mset", "covering Milnor invariant set");
  add_common(mset_cmd, c_mset);
  mset_cmd->add_option("--I", idx_mset, "index over the non-axis components")->required();

  CLI::App* cover_cmd = app.add_subcommand("cover", "double branched cover model");
  add_common(cover_cmd, c_cover, false);
  cover_cmd->add_option("--eps", eps_arg, "lift selection, e.g. 01: print that covering diagram");

  CLI::App* verify_cmd = app.add_subcommand("verify", "mod-2 congruence checks");
  add_common(verify_cmd, c_verify);
  verify_cmd->add_option("--I", idx_verify, "admissible index with the axis inside");
  verify_cmd->add_flag("--sweep", sweep, "run seeded random sweeps");
  verify_cmd->add_option("--gen", gen_kind, "sweep generator (milnor)");
  verify_cmd->add_option("--n", sweep_n, "non-axis component count for sweeps");
  verify_cmd->add_option("--samples", sweep_samples, "sweep sample count");
  verify_cmd->add_option("--seed", seed, "sweep seed");

  CLI::App* disc_cmd = app.add_subcommand("discriminator", "companion-pair discriminator report");
  add_common(disc_cmd, c_disc, false);

  CLI::App* gen_cmd = app.add_subcommand("gen", "generate tangle words");
  gen_cmd->require_subcommand(1);
  std::string gen_index, gen_out, band_a, band_b;
  int gen_sign = 1, gen_n = 3;
  CLI::App* gen_milnor = gen_cmd->add_subcommand("milnor", "Milnor link word from an o-index");
  gen_milnor->add_option("--index", gen_index, "o-index, e.g. 1,3,2")->required();
  gen_milnor->add_option("--sign", gen_sign, "+1 or -1 (mirror)");
  gen_milnor->add_option("-o,--out", gen_out, "output file");
  CLI::App* gen_band = gen_cmd->add_subcommand("bandsum", "band sum of two words");
  gen_band->add_option("a", band_a, "first word file")->required();
  gen_band->add_option("b", band_b, "second word file")->required();
  gen_band->add_option("-o,--out", gen_out, "output file");
  CLI::App* gen_triv = gen_cmd->add_subcommand("trivial", "trivial word");
  gen_triv->add_option("--n", gen_n, "component count (without the axis)");
  gen_triv->add_option("-o,--out", gen_out, "output file");

  CLI::App* corpus_cmd = app.add_subcommand("corpus", "corpus operations");
  corpus_cmd->require_subcommand(1);
  corpus_cmd->add_subcommand("list", "list built-in corpus entries");
  std::string dump_dir = "data";
  CLI::App* corpus_dump = corpus_cmd->add_subcommand("dump", "write corpus words as .tw files");
  corpus_dump->add_option("--dir", dump_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (mu_cmd->parsed()) return run_mu(c_mu, idx_mu);
    if (mset_cmd->parsed()) return run_mset(c_mset, idx_mset);
    if (cover_cmd->parsed()) return run_cover(c_cover, eps_arg);
    if (verify_cmd->parsed())
      return run_verify(c_verify, idx_verify, sweep, gen_kind, sweep_n, sweep_samples, seed);
    if (disc_cmd->parsed()) return run_discriminator(c_disc);
    if (gen_cmd->parsed()) {
      if (gen_milnor->parsed()) {
        MilnorLinkSpec spec;
        spec.index = parse_index_arg(gen_index).seq;
        spec.sign = gen_sign;
        write_word(milnor_link(spec), gen_out);
        return 0;
      }
      if (gen_band->parsed()) {
        TangleWord a = load_input("", band_a), b = load_input("", band_b);
        write_word(band_sum(a, b), gen_out);
        return 0;
      }
      if (gen_triv->parsed()) {
        write_word(trivial_word(gen_n), gen_out);
        return 0;
      }
    }
    if (corpus_cmd->parsed()) {
      if (corpus_dump->parsed()) {
        for (const CorpusEntry& e : corpus()) {
          std::ofstream f(dump_dir + "/" + e.name + ".tw");
          if (!f) fail(Errc::bad_config, "cannot write into " + dump_dir);
          f << to_text(e.word);
          std::cout << "wrote " << dump_dir << "/" << e.name << ".tw\n";
        }
        return 0;
      }
      for (const CorpusEntry& e : corpus())
        std::cout << e.name << "  (" << e.word.component_count() << " components + axis, "
                  << e.word.events.size() << " events)\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
