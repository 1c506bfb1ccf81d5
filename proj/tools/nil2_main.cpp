#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>

#include "nil2/catalog.hpp"
#include "nil2/paper_suite.hpp"
#include "nil2/report.hpp"

using namespace nil2;

namespace {

using Clock = std::chrono::steady_clock;

// exit codes: 0 ok, 1 expected-verdict mismatch, 2 usage, 3 cap exceeded,
// 4 internal check failure
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;
constexpr int kExitInternal = 4;

struct Options {
  bool json = false;
  bool full_report = false;
  bool allow_even = false;
  std::string variety = "bpn";
  u64 cap = 1000000;
  u32 seed = 0;
  u32 override_n = 0;
  std::string expect;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read file " + path);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

void print_lints(const std::vector<std::string>& lints) {
  for (const auto& l : lints) std::cerr << "warning: " << l << "\n";
}

// group argument: a catalog reference, an inline presentation, or @file
NamedPresentation resolve_group(const std::string& arg, const Options& opt) {
  std::vector<std::string> lints;
  if (!arg.empty() && arg[0] == '@') {
    auto np = parse_presentation(slurp(arg.substr(1)), opt.allow_even, &lints);
    print_lints(lints);
    return np;
  }
  if (arg.rfind("group", 0) == 0) {
    auto np = parse_presentation(arg, opt.allow_even, &lints);
    print_lints(lints);
    return np;
  }
  if (is_catalog_ref(arg)) {
    NamedPresentation np = catalog_lookup(arg);
    if (np.pres.v.p == 2 && !opt.allow_even)
      throw std::invalid_argument("even p requires --allow-even: " + arg);
    return np;
  }
  throw std::invalid_argument(
      "not a catalog reference, inline presentation or @file: " + arg);
}

std::ostream& human(const Options& opt) { return opt.json ? std::cerr : std::cout; }

void emit(const Options& opt, ReportBuilder& rb, Clock::time_point t0) {
  if (!opt.json) return;
  double ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  std::cout << rb.finish(ms).dump(2) << "\n";
}

int check_expect(const Options& opt, bool verdict) {
  if (opt.expect.empty()) return 0;
  bool want = opt.expect == "true" || opt.expect == "1";
  return verdict == want ? 0 : kExitFalse;
}

int cmd_classify(const Options& opt, const std::string& garg) {
  auto t0 = Clock::now();
  NamedPresentation np = resolve_group(garg, opt);
  GroupPtr g = FpGroup::build(np.pres);
  if (opt.override_n) {
    g = embed_in_variety(g, opt.override_n).K;
    np.pres = g->pres;
  }
  ReportBuilder rb("classify", opt.cap, opt.seed);
  rb.add_input(np, *g);

  bool verdict;
  if (g->variety().p == 2) {
    auto rep = even_amalgam_condition(g, opt.cap);
    bool weak = even_weak_base_condition(g, opt.cap);
    verdict = rep.ok;
    rb.add_verdict("even_amalgam_condition", rep.ok);
    rb.add_verdict("even_weak_base_condition", weak);
    rb.add_certificate(even_report_json(rep));
    human(opt) << np.name << ": even amalgam condition "
               << (rep.ok ? "holds" : "fails") << ", weak-base condition "
               << (weak ? "holds" : "fails") << "\n";
  } else {
    VarietyKind kind = opt.variety == "n2" ? VarietyKind::N2 : VarietyKind::Bpn;
    auto rep = is_absolutely_closed(g, kind, opt.full_report, opt.cap);
    auto base = is_amalgamation_base(g, opt.cap);
    verdict = rep.closed;
    rb.add_verdict("absolutely_closed", rep.closed,
                   opt.variety == "n2" ? "variety: all class-2 groups"
                                        : "variety: exponent p^n");
    rb.add_verdict("amalgamation_base", base.is_base);
    rb.add_certificate(closure_report_json(*g, rep, opt.full_report));
    rb.add_certificate(base_report_json(*g, base));
    human(opt) << np.name << " (order " << order_string(*g) << "): "
               << (rep.closed ? "absolutely closed" : "NOT absolutely closed")
               << " in " << (kind == VarietyKind::N2 ? "N2" : "B_{p^n}") << "; "
               << (base.is_base ? "an amalgamation base" : "not an amalgamation base")
               << "\n";
  }
  ReportBuilder* prb = &rb;
  emit(opt, *prb, t0);
  return check_expect(opt, verdict);
}

int cmd_dominion(const Options& opt, const std::string& garg,
                 const std::string& sub, bool run_oracle) {
  auto t0 = Clock::now();
  NamedPresentation np = resolve_group(garg, opt);
  GroupPtr g = FpGroup::build(np.pres);
  std::vector<Elt> gens;
  for (const auto& w : parse_words(sub, np.pres)) gens.push_back(g->eval(w));
  Subgroup h = subgroup(g, gens);

  ReportBuilder rb("dominion", opt.cap, opt.seed);
  rb.add_input(np, *g);
  auto dres = dominion(g, h);
  bool strict = dres.d.order_exp > h.order_exp;
  rb.add_verdict("dominion_strictly_larger", strict,
                 "subgroup order exponent " + std::to_string(h.order_exp) +
                     ", dominion " + std::to_string(dres.d.order_exp));
  rb.add_certificate(dominion_json(*g, dres));
  if (run_oracle) {
    try {
      Subgroup o = dominion_oracle(g, h, opt.cap);
      rb.add_verdict("oracle_agrees", sub_equal(dres.d, o));
    } catch (const cap_exceeded&) {
      rb.note_skipped("dominion_oracle");
    }
  }
  human(opt) << "dominion of <" << sub << "> in " << np.name << ": order 3^"
             << dres.d.order_exp << " vs subgroup 3^" << h.order_exp << " ("
             << (strict ? "strictly larger" : "trivial") << ", "
             << dres.certificates.size() << " certificate brackets)\n";
  emit(opt, rb, t0);
  return check_expect(opt, strict);
}

int cmd_coproduct(const Options& opt, const std::string& aarg,
                  const std::string& carg) {
  auto t0 = Clock::now();
  NamedPresentation na = resolve_group(aarg, opt), nc = resolve_group(carg, opt);
  GroupPtr A = FpGroup::build(na.pres), C = FpGroup::build(nc.pres);
  auto cop = coproduct(A, C);
  ReportBuilder rb("coproduct", opt.cap, opt.seed);
  rb.add_input(na, *A);
  rb.add_input(nc, *C);
  rb.add_verdict("order_exp", std::to_string(cop.M->order_exp));
  rb.add_verdict("injections_injective", true);
  Json tensor = Json::array();
  for (u32 e : cop.tensor.exps) tensor.push_back(e);
  rb.add_certificate(Json{{"tensor_exponents", tensor}});
  human(opt) << na.name << " + " << nc.name << ": order " << order_string(*cop.M)
             << ", cross-commutator of order exponent " << cop.tensor.order_exp()
             << "\n";
  emit(opt, rb, t0);
  return 0;
}

int cmd_amalgam_check(const Options& opt, const std::string& aarg,
                      const std::string& carg, const std::string& barg,
                      const std::string& map_a, const std::string& map_c) {
  auto t0 = Clock::now();
  NamedPresentation na = resolve_group(aarg, opt), nc = resolve_group(carg, opt),
                    nb = resolve_group(barg, opt);
  GroupPtr A = FpGroup::build(na.pres), C = FpGroup::build(nc.pres),
           B = FpGroup::build(nb.pres);
  std::vector<Elt> ia, ic;
  for (const auto& w : parse_words(map_a, na.pres)) ia.push_back(A->eval(w));
  for (const auto& w : parse_words(map_c, nc.pres)) ic.push_back(C->eval(w));
  Amalgam am = make_amalgam(hom(B, A, ia), hom(B, C, ic));
  auto weak = is_weakly_embeddable(am, opt.cap);
  auto strong = is_strongly_embeddable(am, opt.cap);
  bool maier = maier_strong_check(am, opt.cap);

  ReportBuilder rb("amalgam-check", opt.cap, opt.seed);
  rb.add_input(na, *A);
  rb.add_input(nc, *C);
  rb.add_input(nb, *B);
  rb.add_verdict("weakly_embeddable", weak.ok);
  rb.add_verdict("strongly_embeddable", strong.ok);
  rb.add_verdict("maier_strong_check", maier);
  rb.add_certificate(Json{{"weak", embed_check_json(weak)},
                          {"strong", embed_check_json(strong)}});
  if (maier != strong.ok) {
    human(opt) << "internal check failure: maier disagrees with the coproduct\n";
    return kExitInternal;
  }
  human(opt) << "amalgam (" << na.name << ", " << nc.name << "; " << nb.name
             << "): " << (weak.ok ? "weakly embeddable" : "NOT weakly embeddable")
             << ", " << (strong.ok ? "strongly embeddable" : "NOT strongly embeddable")
             << "\n";
  emit(opt, rb, t0);
  return check_expect(opt, strong.ok);
}

int cmd_witness(const Options& opt, const std::string& garg, bool base_mode,
                const std::string& xw, const std::string& yw, u32 iidx) {
  auto t0 = Clock::now();
  NamedPresentation np = resolve_group(garg, opt);
  GroupPtr g = FpGroup::build(np.pres);
  if (opt.override_n) {
    g = embed_in_variety(g, opt.override_n).K;
    np.pres = g->pres;
  }
  ReportBuilder rb("witness", opt.cap, opt.seed);
  rb.add_input(np, *g);

  if (base_mode) {
    auto ce = witness_not_base(g, opt.cap);
    rb.add_verdict("is_base", !ce.has_value());
    if (ce) {
      rb.add_certificate(Json{{"reason", ce->reason},
                              {"embeddability", embed_check_json(ce->failure)}});
      human(opt) << np.name << ": counterexample amalgam built (" << ce->reason
                 << ")\n";
    } else {
      human(opt) << np.name << ": is a base, no counterexample exists\n";
    }
    emit(opt, rb, t0);
    return check_expect(opt, !ce.has_value());
  }

  std::optional<WitnessExtension> w;
  if (!xw.empty() || !yw.empty()) {
    if (xw.empty() || yw.empty() || iidx == 0)
      throw std::invalid_argument("witness: need --x, --y and --i together");
    Elt x = g->eval(parse_words(xw, np.pres).at(0));
    Elt y = g->eval(parse_words(yw, np.pres).at(0));
    auto res = witness_not_closed(g, x.a, y.a, iidx, opt.cap);
    if (std::holds_alternative<ConditionsHold>(res)) {
      rb.add_verdict("conditions_hold", true);
      human(opt) << np.name << ": conditions hold at the requested triple\n";
      emit(opt, rb, t0);
      return check_expect(opt, true);
    }
    w = std::get<WitnessExtension>(std::move(res));
  } else {
    w = witness_not_closed_any(
        g, opt.variety == "n2" ? VarietyKind::N2 : VarietyKind::Bpn, opt.cap);
  }
  rb.add_verdict("absolutely_closed", !w.has_value());
  if (w) {
    rb.set_trace(witness_json(*w));
    human(opt) << np.name << ": witness extension of order exponent "
               << w->K->order_exp << " with dominion element outside the image\n";
  } else {
    human(opt) << np.name << ": absolutely closed, no witness exists\n";
  }
  emit(opt, rb, t0);
  return check_expect(opt, !w.has_value());
}

int cmd_catalog(const Options& opt) {
  auto t0 = Clock::now();
  ReportBuilder rb("catalog", opt.cap, opt.seed);
  for (const auto& e : catalog_entries()) {
    rb.add_verdict(e.signature, e.description);
    human(opt) << e.signature << "  " << e.description << "\n";
  }
  emit(opt, rb, t0);
  return 0;
}

int cmd_paper_suite(const Options& opt) {
  auto t0 = Clock::now();
  SuiteResult res = run_paper_suite(opt.cap, opt.seed, &human(opt));
  ReportBuilder rb("paper-suite", opt.cap, opt.seed);
  for (const auto& c : res.criteria) {
    rb.add_verdict("criterion " + std::to_string(c.index) + ": " + c.name,
                   c.passed, c.detail);
  }
  emit(opt, rb, t0);
  return res.all_passed() ? 0 : kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact amalgamation-base computations for class-2 groups of "
               "prime-power exponent"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  Options opt;
  app.add_flag("--json", opt.json, "write a JSON report to stdout");
  app.add_flag("--full-report", opt.full_report,
               "evaluate every condition, not just the first hit");
  app.add_flag("--allow-even", opt.allow_even, "accept p = 2 presentations");
  app.add_option("--variety", opt.variety, "n2 | bpn")->check(CLI::IsMember({"n2", "bpn"}));
  app.add_option("--cap", opt.cap, "enumeration cap (default 10^6)");
  app.add_option("--seed", opt.seed, "seed for randomized orderings");
  app.add_option("--n", opt.override_n, "re-present the group in exponent p^n");
  app.add_option("--expect", opt.expect, "exit 1 unless the verdict matches");

  std::string garg, carg, barg, sub, map_a, map_c, xw, yw;
  u32 iidx = 0;
  bool run_oracle = false, base_mode = false;

  auto* classify = app.add_subcommand("classify", "closure and base verdicts");
  classify->add_option("group", garg, "catalog ref, inline presentation or @file")
      ->required();

  auto* dom = app.add_subcommand("dominion", "dominion of a generated subgroup");
  dom->add_option("group", garg)->required();
  dom->add_option("--sub", sub, "comma-separated generator words")->required();
  dom->add_flag("--oracle", run_oracle, "cross-check with the amalgam oracle");

  auto* cop = app.add_subcommand("coproduct", "free coproduct of two groups");
  cop->add_option("left", garg)->required();
  cop->add_option("right", carg)->required();

  auto* amc = app.add_subcommand("amalgam-check", "embeddability of an amalgam");
  amc->add_option("left", garg)->required();
  amc->add_option("right", carg)->required();
  amc->add_option("--core", barg)->required();
  amc->add_option("--map-a", map_a, "images of the core generators in the left side")
      ->required();
  amc->add_option("--map-c", map_c, "images of the core generators in the right side")
      ->required();

  auto* wit = app.add_subcommand("witness", "witness extensions and counterexamples");
  wit->add_option("group", garg)->required();
  wit->add_flag("--base", base_mode, "build a base counterexample instead");
  wit->add_option("--x", xw, "first element (word)");
  wit->add_option("--y", yw, "second element (word)");
  wit->add_option("--i", iidx, "power index");

  auto* cat = app.add_subcommand("catalog", "list built-in groups");
  auto* suite = app.add_subcommand("paper-suite", "run the regression battery");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(classify)) return cmd_classify(opt, garg);
    if (app.got_subcommand(dom)) return cmd_dominion(opt, garg, sub, run_oracle);
    if (app.got_subcommand(cop)) return cmd_coproduct(opt, garg, carg);
    if (app.got_subcommand(amc))
      return cmd_amalgam_check(opt, garg, carg, barg, map_a, map_c);
    if (app.got_subcommand(wit)) return cmd_witness(opt, garg, base_mode, xw, yw, iidx);
    if (app.got_subcommand(cat)) return cmd_catalog(opt);
    if (app.got_subcommand(suite)) return cmd_paper_suite(opt);
  } catch (const cap_exceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const check_failed& e) {
    std::cerr << "internal check failure: " << e.what() << "\n";
    return kExitInternal;
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
