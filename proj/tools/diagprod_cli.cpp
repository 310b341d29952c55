#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "diagprod/almostrep.hpp"
#include "diagprod/characters.hpp"
#include "diagprod/growth.hpp"
#include "diagprod/limits.hpp"
#include "diagprod/marked.hpp"
#include "json.hpp"

using namespace diagprod;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "diagprod 0.1.0 (config schema 1)";

// exit codes: 0 ok, 1 config error, 2 resource cap, 3 assertion failure
struct AssertionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file " + path);
    out << content;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot move output into place: " + path);
}

DiagSpec spec_from(const std::string& base, const std::string& d_rule,
                   const std::string& r_rule, int levels, bool promise) {
  const SeqRule d = SeqRule::parse(d_rule);
  if (base == "classical") return DiagSpec::classical(d, levels);
  if (base == "lamplighter")
    return DiagSpec::lamplighter(d, SeqRule::parse(r_rule), levels, promise);
  throw std::invalid_argument("unknown base '" + base + "'");
}

BaseElement element_from(const DiagSpec& spec, const std::string& word_text) {
  return tail_map(from_word(spec, parse_word(word_text, spec.gen_labels())));
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact toolkit for diagonal products of alternating groups,"
               " their character theory, and Hilbert-Schmidt stability"
               " experiments"};
  app.set_config("--config", "", "Config file (TOML)");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // shared options (defaults match the library)
  std::string base = "classical", d_rule = "list:5,7,9", r_rule = "const:1";
  std::string out_path, word = "t", family = "standard";
  int levels = 3, radius = 4, level = 1, horizon = 5, n = 5;
  int n_lo = 7, n_hi = 13, N = 10000, trials = 100, k = 3;
  int nmax = 3, level_horizon = 3;
  unsigned long seed = 1;
  double eps = 0.05, eps_zero = 1e-9, eps_near = 0.05, tol = 1e-8;
  bool promise = false, assert_mode = false, sym = false;
  std::string rep_kind = "standard", sigma_text = "3", levels_text = "7,9,11",
              chars_text, f_text = "1,2,3", kind = "all";
  std::size_t budget = 10'000'000;

  auto add_spec_opts = [&](CLI::App* cmd) {
    cmd->add_option("--base", base, "Base group: classical | lamplighter");
    cmd->add_option("--d", d_rule,
                    "d sequence rule: list:5,7,9 | arith:a,b | primes-geq:p | tower:b");
    cmd->add_option("--r", r_rule, "r sequence rule (lamplighter)");
    cmd->add_option("--levels", levels, "materialized desk levels");
    cmd->add_flag("--admissible", promise,
                  "declare Bradford condition (a) for the infinite family");
  };

  bool patterns = false;
  auto* c_ball = app.add_subcommand("ball", "Cayley ball growth CSV");
  add_spec_opts(c_ball);
  c_ball->add_option("--radius", radius);
  c_ball->add_option("--budget", budget);
  c_ball->add_flag("--patterns", patterns,
                   "emit the relation pattern (BFS automaton) as JSON");
  c_ball->add_option("-o,--output", out_path);

  auto* c_chab = app.add_subcommand("chabauty", "embedding-radius curve");
  add_spec_opts(c_chab);
  c_chab->add_option("--horizon", horizon, "max radius tested per level");
  c_chab->add_option("-o,--output", out_path);

  auto* c_table = app.add_subcommand("chartable", "Sym/Alt character table CSV");
  c_table->add_option("--n", n)->required();
  c_table->add_flag("--sym", sym, "Sym(n) table instead of Alt(n)");
  c_table->add_option("-o,--output", out_path);

  auto* c_bound = app.add_subcommand("charbound", "max nontrivial |phi| scan");
  c_bound->add_option("--n-lo", n_lo);
  c_bound->add_option("--n-hi", n_hi);
  c_bound->add_option("-o,--output", out_path);

  auto* c_null = app.add_subcommand("null", "classify_null report");
  add_spec_opts(c_null);
  c_null->add_option("--family", family, "trivial | standard | balanced");
  c_null->add_option("--g", word, "base element as a word, e.g. 't' or 's t'");
  c_null->add_option("--N", N, "horizon");
  c_null->add_option("--eps-zero", eps_zero);
  c_null->add_flag("--assert", assert_mode,
                   "exit 3 unless the verdict is decisive");
  c_null->add_option("-o,--output", out_path);

  auto* c_lim = app.add_subcommand("limitprod", "signed limit-product experiment");
  c_lim->add_option("--sigma", sigma_text, "cycle type, e.g. '3' or '3,3'");
  c_lim->add_option("--levels", levels_text, "n_i list, e.g. '7,9,11'");
  c_lim->add_option("--chars", chars_text,
                    "semicolon-separated partitions, e.g. '6,1;8,1;10,1'");
  c_lim->add_option("--seed", seed, "random character assignment seed");
  c_lim->add_option("-o,--output", out_path);

  auto* c_acc = app.add_subcommand("accscan", "accumulation scan");
  c_acc->add_option("--sigma", sigma_text);
  c_acc->add_option("--n-lo", n_lo);
  c_acc->add_option("--n-hi", n_hi);
  c_acc->add_option("--eps-near", eps_near);
  c_acc->add_option("-o,--output", out_path);

  auto* c_stab = app.add_subcommand("stability", "perturb/correct Monte Carlo");
  c_stab->add_option("--group", n, "Alt(n) degree")->default_val(5);
  c_stab->add_option("--rep", rep_kind, "standard | permutation");
  c_stab->add_option("--eps", eps);
  c_stab->add_option("--trials", trials);
  c_stab->add_option("--seed", seed);
  c_stab->add_option("--radius", radius, "defect ball radius (closure used for correction)");
  c_stab->add_option("--tol", tol);
  std::string dump_reps;
  c_stab->add_option("--dump-reps", dump_reps,
                     "write the last corrected generators as JSON matrices");
  c_stab->add_flag("--assert", assert_mode,
                   "exit 3 unless >= 95% of trials converge within 3 eps");
  c_stab->add_option("-o,--output", out_path);

  auto* c_growth = app.add_subcommand("growth", "growth curves with certificates");
  add_spec_opts(c_growth);
  c_growth->add_option("--kind", kind, "map | lef | rf | sr | all");
  c_growth->add_option("--radius", radius, "map_lower witness radius budget");
  c_growth->add_option("--nmax", nmax, "max ball radius for lef/rf");
  c_growth->add_option("--level-horizon", level_horizon);
  c_growth->add_option("--budget", budget);
  c_growth->add_option("-o,--output", out_path);

  int generate_levels = 0;
  auto* c_wn = app.add_subcommand("wn", "single-coordinate kernel witness search");
  add_spec_opts(c_wn);
  c_wn->add_option("--level", level)->required();
  c_wn->add_option("--radius", radius)->required();
  c_wn->add_option("--budget", budget);
  c_wn->add_option("--generate", generate_levels,
                   "generate an admissible lamplighter (d, r) family of this "
                   "many levels instead of --d/--r");
  c_wn->add_flag("--assert", assert_mode, "exit 3 when no witness is found");
  c_wn->add_option("-o,--output", out_path);

  std::string pik_word = "s s s t s' s' s' t s s s t' s' s' s' t'";
  int pik_k = 1;
  bool pik_widen = false;
  auto* c_pik = app.add_subcommand("pik", "approximating endomorphism pi_k");
  add_spec_opts(c_pik);
  c_pik->add_option("--word", pik_word, "element of the kernel-side subgroup as a word");
  c_pik->add_option("--k", pik_k)->required();
  c_pik->add_flag("--widen", pik_widen, "allow finitary tails (A(Z) base)");
  c_pik->add_option("-o,--output", out_path);

  auto* c_bekka = app.add_subcommand("bekka", "commutator support windows");
  c_bekka->add_option("--k", k)->required();
  c_bekka->add_option("-o,--output", out_path);

  auto* c_params = app.add_subcommand("params", "admissible (d, r) generation");
  c_params->add_option("--f", f_text, "growth targets, e.g. '1,2,3,4'");
  c_params->add_option("--levels", levels);
  c_params->add_option("-o,--output", out_path);

  for (auto* sc : app.get_subcommands([](const CLI::App*) { return true; }))
    sc->set_config("--config", "", "Config file (TOML)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (c_ball->parsed()) {
      const auto spec = spec_from(base, d_rule, r_rule, levels, promise);
      DiagMarking m(spec);
      const auto b = ball(m, radius, true, budget);
      if (patterns) {
        json j{{"radius", b.table.radius},
               {"alphabet", b.table.alphabet},
               {"level_sizes", b.table.level_sizes},
               {"word_length", b.table.word_length},
               {"delta", b.table.delta}};
        write_output(out_path, j.dump(2) + "\n");
      } else {
        write_output(out_path, ball_growth_csv(b.table));
      }
    } else if (c_chab->parsed()) {
      const auto spec = spec_from(base, d_rule, r_rule, levels, promise);
      std::ostringstream csv;
      csv << "m,d,embedding_radius\n";
      for (int m = 1; m <= spec.levels(); ++m) {
        PermMarking lm({spec.gen_image(m, 0), spec.gen_image(m, 1)},
                       spec.gen_labels());
        int r = 0;
        if (spec.base() == BaseKind::ClassicalAZ)
          r = local_embedding_radius(AZMarking{}, lm, horizon);
        else
          r = local_embedding_radius(LampMarking{}, lm, horizon);
        csv << m << ',' << spec.d_at(m) << ',' << r << '\n';
      }
      write_output(out_path, csv.str());
    } else if (c_table->parsed()) {
      write_output(out_path, sym ? sym_table_csv(n) : alt_table_csv(n));
    } else if (c_bound->parsed()) {
      std::ostringstream csv;
      csv << "n,class,max_abs,witness\n";
      for (int m = n_lo; m <= n_hi; ++m)
        for (const auto& c : alt_classes(m)) {
          const auto mx = max_nontrivial_value(m, c);
          csv << m << ",\"" << partition_key(c.type)
              << (c.splits ? (c.half ? "B" : "A") : "") << "\"," << mx.abs_value
              << ',' << mx.witness_name << '\n';
        }
      write_output(out_path, csv.str());
    } else if (c_null->parsed()) {
      const auto spec = spec_from(base, d_rule, r_rule, levels, promise);
      const CharFamily fam = family == "trivial"    ? CharFamily::trivial()
                             : family == "balanced" ? CharFamily::balanced()
                                                    : CharFamily::standard();
      const auto g = element_from(spec, word);
      const auto v = classify_null(spec, g, fam, N, eps_zero);
      json j{{"element", base_to_string(g)},
             {"family", fam.name()},
             {"verdict", v.kind_name()},
             {"horizon", v.horizon},
             {"p_N", v.p_N},
             {"p_N_variant", v.p_N_variant},
             {"lower_bound", v.lower_bound},
             {"certificate", json::parse(v.certificate)}};
      write_output(out_path, j.dump(2) + "\n");
      if (assert_mode && v.kind == NullVerdict::Kind::Undetermined)
        throw AssertionFailure("verdict undetermined at horizon");
    } else if (c_lim->parsed()) {
      Partition sigma;
      for (int x : parse_ints(sigma_text)) sigma.push_back(x);
      const auto ns = parse_ints(levels_text);
      LimitProduct lp;
      if (!chars_text.empty()) {
        std::vector<Partition> chars;
        std::istringstream in(chars_text);
        std::string tok;
        while (std::getline(in, tok, ';')) {
          Partition p;
          for (int x : parse_ints(tok)) p.push_back(x);
          chars.push_back(std::move(p));
        }
        lp = limit_product_signed(sigma, ns, chars);
      } else {
        lp = limit_product_random(sigma, ns, seed);
      }
      std::ostringstream csv;
      csv << "k,n,char,re_p_k,im_p_k,abs_p_k\n";
      for (size_t i = 0; i < lp.partial.size(); ++i)
        csv << i + 1 << ',' << ns[i] << ',' << lp.char_names[i] << ','
            << lp.partial[i].real() << ',' << lp.partial[i].imag() << ','
            << std::abs(lp.partial[i]) << '\n';
      write_output(out_path, csv.str());
    } else if (c_acc->parsed()) {
      Partition sigma;
      for (int x : parse_ints(sigma_text)) sigma.push_back(x);
      std::ostringstream csv;
      csv << "n,char,re,im,abs,near_one,dist_to_one\n";
      for (const auto& e : accumulation_scan(sigma, n_lo, n_hi, eps_near))
        csv << e.n << ',' << e.char_name << ',' << e.value.real() << ','
            << e.value.imag() << ',' << std::abs(e.value) << ','
            << (e.near_one ? 1 : 0) << ',' << e.dist_to_one << '\n';
      write_output(out_path, csv.str());
    } else if (c_stab->parsed()) {
      PermMarking m({neumann_alpha(n), neumann_beta(n, 1)}, {"a", "b"});
      RepDomain dom(m, 40, budget);
      if (!dom.closed()) throw std::invalid_argument("group does not close");
      RepDomain ball_r(m, radius, budget);
      const AlmostRep rep =
          rep_kind == "permutation" ? permutation_rep(m) : standard_rep(m);
      std::mt19937_64 master(seed);
      std::ostringstream csv;
      csv << "trial,seed,defect_before,converged,iterations,final_defect,"
             "max_gen_distance\n";
      int recovered = 0;
      for (int t = 0; t < trials; ++t) {
        const unsigned long ts = master();
        const auto phi = perturb(rep, eps, ts);
        const double before = defect(phi, ball_r);
        const auto rec = correct(phi, dom, tol, 200);
        double dist = 0;
        for (size_t i = 0; i < rep.gens.size(); ++i)
          dist = std::max(dist, d_hs(rec.rep.gens[i], rep.gens[i]));
        const bool ok = rec.converged && dist <= 3 * eps;
        recovered += ok;
        csv << t << ',' << ts << ',' << before << ',' << rec.converged << ','
            << rec.iterations << ',' << rec.final_defect << ',' << dist << '\n';
      }
      write_output(out_path, csv.str());
      if (!dump_reps.empty() && trials > 0) {
        const auto phi = perturb(rep, eps, seed);
        const auto rec = correct(phi, dom, tol, 200);
        json mats = json::array();
        for (const auto& g : rec.rep.gens) {
          json entries = json::array();
          for (int i = 0; i < g.rows(); ++i)
            for (int j = 0; j < g.cols(); ++j) {
              entries.push_back(g(i, j).real());
              entries.push_back(g(i, j).imag());
            }
          mats.push_back(json{{"dim", g.rows()}, {"entries", entries}});
        }
        write_output(dump_reps, mats.dump(2) + "\n");
      }
      std::cerr << "recovered " << recovered << "/" << trials << "\n";
      if (assert_mode && recovered * 100 < 95 * trials)
        throw AssertionFailure("recovery rate below 95%");
    } else if (c_growth->parsed()) {
      const auto spec = spec_from(base, d_rule, r_rule, levels, promise);
      std::ostringstream out;
      GrowthCurve map_c, lef_c;
      if (kind == "map" || kind == "sr" || kind == "all") {
        map_c = map_lower(spec, spec.levels(), radius, budget);
        if (!verify_map_lower(spec, map_c))
          throw std::runtime_error("map_lower certificate verification failed");
        if (kind != "sr") out << "# MAP_lower\n" << map_c.to_csv();
      }
      if (kind == "lef" || kind == "sr" || kind == "all") {
        lef_c = lef_upper(spec, nmax, level_horizon);
        if (!verify_lef_upper(spec, lef_c))
          throw std::runtime_error("lef_upper certificate verification failed");
        if (kind != "sr") out << "# LEF_upper\n" << lef_c.to_csv();
      }
      if (kind == "rf" || kind == "all") {
        const auto rf = rf_upper(spec, nmax, level_horizon, budget);
        if (!verify_rf_upper(spec, rf, budget))
          throw std::runtime_error("rf_upper certificate verification failed");
        out << "# RF_upper\n" << rf.to_csv();
      }
      GrowthCurve sr;
      if (kind == "sr" || kind == "all") {
        sr = sr_lower(map_c, lef_c);
        if (!verify_sr_lower(sr, map_c, lef_c))
          throw std::runtime_error("sr_lower certificate verification failed");
        out << "# SR_lower\n" << sr.to_csv();
      }
      write_output(out_path, out.str());
      if (!out_path.empty()) {
        json certs = json::object();
        for (const auto* curve : {&map_c, &lef_c, &sr})
          for (const auto& p : curve->points)
            if (!p.certificate.empty())
              certs[curve->kind + ":" + std::to_string(p.n)] =
                  json::parse(p.certificate);
        write_output(out_path + ".certs.json", certs.dump(2) + "\n");
      }
    } else if (c_wn->parsed()) {
      DiagSpec spec = spec_from(base, d_rule, r_rule, levels, promise);
      if (generate_levels > 0) {
        std::vector<long> f(generate_levels);
        for (int i = 0; i < generate_levels; ++i) f[i] = i + 1;
        const auto ap = admissible_params(f, generate_levels);
        spec = DiagSpec::lamplighter(SeqRule::list(ap.d), SeqRule::list(ap.r),
                                     std::min(levels, generate_levels), true);
      }
      const auto w = find_wn(spec, level, radius, budget);
      json j;
      if (w) {
        j = json{{"found", true},
                 {"level", w->level},
                 {"word", word_to_string(w->word, spec.gen_labels())},
                 {"length", w->length},
                 {"verified_through", w->verified_through},
                 {"continuation_certified", w->continuation_certified},
                 {"reverified", verify_witness(spec, *w)}};
      } else {
        j = json{{"found", false}, {"radius", radius}};
      }
      write_output(out_path, j.dump(2) + "\n");
      if (assert_mode && !w) throw AssertionFailure("no witness found");
    } else if (c_pik->parsed()) {
      const auto spec = spec_from(base, d_rule, r_rule, levels, promise);
      const auto a = from_word(spec, parse_word(pik_word, spec.gen_labels()));
      const auto out = pi_k(spec, a, pik_k, pik_widen);
      json j{{"input", json::parse(diag_to_json(spec, a))},
             {"k", pik_k},
             {"output", json::parse(diag_to_json(spec, out))}};
      write_output(out_path, j.dump(2) + "\n");
    } else if (c_bekka->parsed()) {
      const auto x = bekka_witness(k);
      const auto y = shift_commutator(x);
      json j{{"k", k},
             {"x", x.to_cycle_string()},
             {"commutator_support", y.support()},
             {"window_lo", 2L * k * k},
             {"window_hi", 2L * k * k + 2 * k + 2}};
      write_output(out_path, j.dump(2) + "\n");
    } else if (c_params->parsed()) {
      std::vector<long> f;
      for (int x : parse_ints(f_text)) f.push_back(x);
      const auto ap = admissible_params(f, levels);
      check_admissible(ap.d, ap.r, f);
      write_output(out_path, json{{"d", ap.d}, {"r", ap.r}}.dump(2) + "\n");
    }
  } catch (const AssertionFailure& e) {
    std::cerr << "assertion failed: " << e.what() << "\n";
    return 3;
  } catch (const BallBudgetExceeded& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 2;
  } catch (const std::overflow_error& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
