// multirank command-line frontend.
#include "multirank/charzero.hpp"
#include "multirank/error.hpp"
#include "multirank/io.hpp"
#include "multirank/ranks.hpp"
#include "multirank/verify.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace multirank;

namespace {

enum Exit { kOk = 0, kHardFailure = 1, kBudget = 2, kInput = 3 };

struct Options {
  std::string tensor;
  std::string tensor2;
  std::string poly;
  unsigned l_max = 8;
  unsigned r_max = 4;
  std::int64_t L = 0;
  double sigma = 0.4;
  double budget_bits = 34.0;
  double scan_bits = kScanBits;
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::string out;
  std::string format = "json";
  std::string grid = "small";
  std::string primes = "auto";
  bool timing = false;
  // generators
  unsigned m = 0, n = 1, d = 3, e = 1;
  std::uint32_t p = 2;
  bool integer = false;
  std::int64_t bound = 3;
};

void emit(const Options& o, const Json& j) {
  if (o.out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    write_json_file(o.out, j);
  }
}

MultilinearForm field_tensor(const std::string& path) {
  AnyTensor t = parse_tensor_file(path);
  if (auto* f = std::get_if<MultilinearForm>(&t)) return *f;
  throw InputError(path + ": expected a tensor over a finite field (use `charzero` for integer tensors)");
}

IntMultilinearForm int_tensor(const std::string& path) {
  AnyTensor t = parse_tensor_file(path);
  if (auto* f = std::get_if<IntMultilinearForm>(&t)) return *f;
  throw InputError(path + ": expected an integer tensor (\"field\": \"Z\")");
}

int cmd_rank(const Options& o) {
  const MultilinearForm f = field_tensor(o.tensor);
  const Budget budget{o.budget_bits};
  const ExactLogRank ark = ark_exact(f, 1, budget);
  const GrkEstimate grk = grk_estimate(f, o.l_max, budget);
  const PrkResult prk = prk_exact_small(f, o.r_max, budget);
  if (o.format == "csv") {
    std::ostringstream out;
    out << "tensor,l,count,dim\n";
    for (std::size_t i = 0; i < grk.profile.entries.size(); ++i) {
      out << o.tensor << ',' << grk.profile.entries[i].first << ',' << to_string(grk.profile.entries[i].second)
          << ',' << Json(grk.per_level_dim[i]).dump() << '\n';
    }
    std::cout << out.str();
    return kOk;
  }
  Json j;
  j["field"] = field_to_json(f.field().spec());
  j["d"] = f.d();
  j["n"] = f.n();
  j["ark"] = to_json(ark);
  j["grk"] = to_json(grk);
  j["prk"] = to_json(prk, f.field_ptr(), f.d(), f.n());
  emit(o, j);
  return kOk;
}

int cmd_poly(const Options& o) {
  AnyPoly any = parse_poly_file(o.poly);
  auto* f = std::get_if<HomogeneousForm>(&any);
  if (!f) throw InputError(o.poly + ": expected a polynomial over a finite field");
  const Budget budget{o.budget_bits};
  Json j;
  j["field"] = field_to_json(f->field().spec());
  j["n"] = f->n();
  j["d"] = f->d();
  j["str"] = to_json(str_exact_small(*f, budget));
  j["brk"] = to_json(brk_estimate(*f, o.l_max, budget));
  emit(o, j);
  return kOk;
}

int cmd_count(const Options& o) {
  const Budget budget{o.budget_bits};
  AnyTensor t = parse_tensor_file(o.tensor);
  std::ostringstream out;
  if (auto* g = std::get_if<IntMultilinearForm>(&t)) {
    if (o.L < 1) throw InputError("integer tensors need --L");
    const BigInt c = count_box(*g, BoxSpec{o.L, false, o.L}, budget);
    if (o.format == "csv") {
      out << "L,count\n" << o.L << ',' << to_string(c) << '\n';
    } else {
      out << Json{{"L", o.L}, {"count", to_string(c)}}.dump() << '\n';
    }
  } else {
    const auto& f = std::get<MultilinearForm>(t);
    if (o.format == "csv") out << "l,count\n";
    for (unsigned l = 1; l <= o.l_max; ++l) {
      const BigInt c = count_sf(f, l, budget);
      if (o.format == "csv") {
        out << l << ',' << to_string(c) << '\n';
      } else {
        out << Json{{"l", l}, {"count", to_string(c)}}.dump() << '\n';
      }
    }
  }
  std::cout << out.str();
  return kOk;
}

int cmd_verify(const Options& o, const std::string& suite) {
  CampaignOptions opts;
  opts.grid = o.grid;
  opts.seed = o.seed;
  opts.budget = Budget{o.budget_bits};
  if (!o.out.empty()) opts.counterexample_dir = o.out;
  const VerifyReport r = run_campaign(suite, opts);
  std::cout << r.to_json(o.timing).dump(2) << '\n';
  return r.pass() ? kOk : kHardFailure;
}

std::vector<std::uint32_t> parse_primes(const std::string& s) {
  std::vector<std::uint32_t> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<std::uint32_t>(v));
    } catch (const std::exception&) {
      throw InputError("--primes: not a number: \"" + item + "\"");
    }
  }
  if (out.empty()) throw InputError("--primes: empty list");
  return out;
}

int cmd_scan(const Options& o) {
  const IntMultilinearForm g = int_tensor(o.tensor);
  const auto primes = o.primes == "auto" ? auto_primes(g.n(), g.d(), o.scan_bits) : parse_primes(o.primes);
  const PrimeScan scan = liminf_ark_scan(g, primes, Budget{o.budget_bits});
  std::ostringstream out;
  for (std::size_t i = 0; i < scan.primes.size(); ++i) {
    Json j;
    j["p"] = scan.primes[i];
    j["ark"] = to_json(scan.ark[i]);
    j["running_min"] = scan.running_min[i];
    out << j.dump() << '\n';
  }
  Json tail;
  tail["grk_estimate_Q"] = scan.grk_estimate_q ? Json(*scan.grk_estimate_q) : Json(nullptr);
  out << tail.dump() << '\n';
  std::cout << out.str();
  return kOk;
}

int cmd_lift(const Options& o) {
  const IntMultilinearForm g = int_tensor(o.tensor);
  if (o.L < 2) throw InputError("--L must be >= 2");
  const LiftReport rep = lift_search(g, o.L, o.sigma, true, Budget{o.budget_bits});
  Json j;
  j["L"] = rep.L;
  j["sigma"] = rep.sigma;
  j["height"] = rep.height;
  j["height_constant"] = to_string(rep.height_constant);
  j["threshold_reached"] = rep.threshold_reached;
  j["count"] = rep.points.size();
  j["points"] = rep.points;
  bool all_exact = true;
  for (bool e : rep.exact) all_exact = all_exact && e;
  j["all_exact"] = all_exact;
  j["dimension_statistic"] = rep.dimension_statistic;
  emit(o, j);
  return all_exact ? kOk : kHardFailure;
}

int cmd_gen(const Options& o, const std::string& what) {
  if (what == "diagonal") {
    if (o.integer) {
      emit(o, tensor_to_json(int_diagonal(o.m, o.n, o.d)));
    } else {
      emit(o, tensor_to_json(diagonal(o.m, o.n, o.d, Field::make(o.p, o.e))));
    }
  } else if (what == "random") {
    if (!o.seed_given) throw InputError("gen random needs --seed");
    if (o.integer) {
      emit(o, tensor_to_json(random_int_form(o.d, o.n, o.bound, o.seed)));
    } else {
      emit(o, tensor_to_json(random_form(Field::make(o.p, o.e), o.d, o.n, o.seed)));
    }
  } else if (what == "direct-sum") {
    emit(o, tensor_to_json(direct_sum(field_tensor(o.tensor), field_tensor(o.tensor2))));
  } else if (what == "weil-restrict") {
    const MultilinearForm f = field_tensor(o.tensor);
    if (f.field().e() % o.e != 0) throw InputError("--e must divide the extension degree of the tensor's field");
    const FieldEmbedding emb(Field::make(f.field().p(), o.e), f.field_ptr());
    emit(o, tensor_to_json(weil_restrict(f, emb)));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank invariants of multilinear forms and homogeneous polynomials"};
  app.require_subcommand(1);
  Options o;

  auto budget = [&](CLI::App* sub) {
    sub->add_option("--budget-bits", o.budget_bits, "Enumeration gate, log2 of the item count")->capture_default_str();
  };

  auto* rank = app.add_subcommand("rank", "ark, grk estimate and partition rank of a tensor");
  rank->add_option("--tensor", o.tensor, "Tensor file")->required();
  rank->add_option("--lmax", o.l_max, "Highest extension level for grk")->capture_default_str();
  rank->add_option("--rmax", o.r_max, "Deepest partition-rank search")->capture_default_str();
  rank->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  rank->add_option("--out", o.out, "Write the report here instead of stdout");
  budget(rank);

  auto* poly = app.add_subcommand("poly", "Strength and Birch rank of a homogeneous form");
  poly->add_option("--poly", o.poly, "Polynomial file")->required();
  poly->add_option("--lmax", o.l_max, "Highest extension level for Brk")->capture_default_str();
  poly->add_option("--out", o.out);
  budget(poly);

  auto* count = app.add_subcommand("count", "Point counts |S_F| per level (or N_L for integer tensors)");
  count->add_option("--tensor", o.tensor, "Tensor file")->required();
  count->add_option("--lmax", o.l_max)->capture_default_str();
  count->add_option("--L", o.L, "Modulus for integer tensors");
  count->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  budget(count);

  auto* verify = app.add_subcommand("verify", "Run a property campaign");
  verify->require_subcommand(1);
  verify->add_option("--grid", o.grid)->check(CLI::IsMember({"small", "full"}))->capture_default_str();
  verify->add_option("--seed", o.seed)->capture_default_str();
  verify->add_option("--out", o.out, "Directory for counterexample files");
  verify->add_flag("--timing", o.timing, "Include elapsed time in the report");
  budget(verify);
  for (const auto& s : suite_names()) verify->add_subcommand(s, "Suite " + s)->fallthrough();

  auto* charzero = app.add_subcommand("charzero", "Characteristic-zero pipeline");
  charzero->require_subcommand(1);
  charzero->fallthrough();
  auto* scan = charzero->add_subcommand("scan", "ark of F mod p over a list of primes");
  scan->add_option("--tensor", o.tensor)->required();
  scan->add_option("--primes", o.primes, "auto or a comma-separated list")->capture_default_str();
  scan->add_option("--scan-bits", o.scan_bits, "Gate used to choose the automatic primes")->capture_default_str();
  budget(scan);
  auto* lift = charzero->add_subcommand("lift", "Small-height integer points by the mod-L sieve");
  lift->add_option("--tensor", o.tensor)->required();
  lift->add_option("--L", o.L)->required();
  lift->add_option("--sigma", o.sigma)->capture_default_str();
  lift->add_option("--out", o.out);
  budget(lift);

  auto* gen = app.add_subcommand("gen", "Tensor generators");
  gen->require_subcommand(1);
  auto field_opts = [&](CLI::App* sub) {
    sub->add_option("--p", o.p, "Characteristic")->capture_default_str();
    sub->add_option("--e", o.e, "Extension degree")->capture_default_str();
    sub->add_flag("--int", o.integer, "Integer tensor");
    sub->add_option("--n", o.n)->capture_default_str();
    sub->add_option("--d", o.d)->capture_default_str();
    sub->add_option("--out", o.out);
  };
  auto* gdiag = gen->add_subcommand("diagonal", "sum_{i<m} x_{1,i} ... x_{d,i}");
  field_opts(gdiag);
  gdiag->add_option("--m", o.m)->required();
  auto* grand = gen->add_subcommand("random", "i.i.d. uniform coefficients");
  field_opts(grand);
  grand->add_option("--seed", o.seed)->required()->each([&](const std::string&) { o.seed_given = true; });
  grand->add_option("--bound", o.bound, "Coefficient bound for --int")->capture_default_str();
  auto* gsum = gen->add_subcommand("direct-sum", "Block-diagonal sum of two tensors");
  gsum->add_option("--tensor", o.tensor)->required();
  gsum->add_option("--tensor2", o.tensor2)->required();
  gsum->add_option("--out", o.out);
  auto* gweil = gen->add_subcommand("weil-restrict", "Restriction of scalars to the subfield of degree --e");
  gweil->add_option("--tensor", o.tensor)->required();
  gweil->add_option("--e", o.e, "Extension degree of the subfield over F_p")->capture_default_str();
  gweil->add_option("--out", o.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*rank) return cmd_rank(o);
    if (*poly) return cmd_poly(o);
    if (*count) return cmd_count(o);
    if (*verify) return cmd_verify(o, verify->get_subcommands().front()->get_name());
    if (*scan) return cmd_scan(o);
    if (*lift) return cmd_lift(o);
    if (*gen) return cmd_gen(o, gen->get_subcommands().front()->get_name());
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n"
              << "hint: lower --lmax/--rmax, use a smaller tensor, or raise --budget-bits\n";
    return kBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  return kInput;
}
