#include "multirank/verify.hpp"

#include "multirank/charzero.hpp"
#include "multirank/error.hpp"
#include "multirank/ranks.hpp"

#include <chrono>
#include <cmath>

namespace multirank {

namespace {

Json instance_json(const std::string& suite, Json params, Json form, const char* kind) {
  Json j;
  j["suite"] = suite;
  j["params"] = std::move(params);
  j[kind] = std::move(form);
  return j;
}

void fail(VerifyReport& r, const Json& instance, std::string relation, Json observed) {
  r.failures.push_back(VerifyFailure{instance, std::move(relation), std::move(observed)});
}

void advise(VerifyReport& r, const Json& instance, std::string relation, Json observed) {
  r.advisories.push_back(VerifyFailure{instance, std::move(relation), std::move(observed)});
}

void bump(Json& summary, const char* key, std::int64_t by = 1) {
  if (!summary.contains(key)) summary[key] = 0;
  summary[key] = summary[key].get<std::int64_t>() + by;
}

Json failure_to_json(const VerifyFailure& f) {
  Json j;
  j["instance"] = f.instance;
  j["relation"] = f.relation;
  j["observed"] = f.observed;
  return j;
}

VerifyFailure failure_from_json(const Json& j) {
  return VerifyFailure{j.at("instance"), j.at("relation").get<std::string>(), j.at("observed")};
}

std::string big(const BigInt& v) { return to_string(v); }

}  // namespace

void VerifyReport::merge(const VerifyReport& other) {
  cases += other.cases;
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  advisories.insert(advisories.end(), other.advisories.begin(), other.advisories.end());
  for (auto it = other.summary.begin(); it != other.summary.end(); ++it) {
    if (!summary.contains(it.key())) {
      summary[it.key()] = it.value();
    } else if (it.value().is_number_integer() && summary[it.key()].is_number_integer()) {
      summary[it.key()] = summary[it.key()].get<std::int64_t>() + it.value().get<std::int64_t>();
    } else if (it.value().is_boolean() && summary[it.key()].is_boolean()) {
      summary[it.key()] = summary[it.key()].get<bool>() && it.value().get<bool>();
    }
  }
  elapsed_seconds += other.elapsed_seconds;
}

Json VerifyReport::to_json(bool with_elapsed) const {
  Json j;
  j["suite"] = suite;
  j["grid"] = grid;
  j["cases"] = cases;
  j["pass"] = pass();
  Json f = Json::array();
  for (const auto& x : failures) f.push_back(failure_to_json(x));
  j["failures"] = std::move(f);
  Json a = Json::array();
  for (const auto& x : advisories) a.push_back(failure_to_json(x));
  j["advisories"] = std::move(a);
  j["summary"] = summary;
  if (with_elapsed) j["elapsed_seconds"] = elapsed_seconds;
  return j;
}

VerifyReport VerifyReport::from_json(const Json& j) {
  VerifyReport r;
  try {
    r.suite = j.at("suite").get<std::string>();
    r.grid = j.at("grid");
    r.cases = j.at("cases").get<std::uint64_t>();
    for (const auto& x : j.at("failures")) r.failures.push_back(failure_from_json(x));
    for (const auto& x : j.at("advisories")) r.advisories.push_back(failure_from_json(x));
    r.summary = j.at("summary");
    if (j.contains("elapsed_seconds")) r.elapsed_seconds = j.at("elapsed_seconds").get<double>();
  } catch (const Json::exception& e) {
    throw InputError(std::string("verify report: ") + e.what());
  }
  return r;
}

VerifyReport verify_scaling_charp(const MultilinearForm& f, unsigned a, unsigned b) {
  VerifyReport r;
  r.suite = "scale-charp";
  r.cases = 1;
  const Json inst = instance_json(r.suite, Json{{"a", a}, {"b", b}}, tensor_to_json(f), "tensor");
  const auto hist = fiber_histogram(f, a, b);
  const std::uint64_t n0 = hist[0];
  std::uint64_t total = 0, worst = 0;
  for (auto v : hist) {
    total += v;
    worst = std::max(worst, v);
  }
  if (worst > n0) fail(r, inst, "N^y <= N^0", Json{{"N0", n0}, {"max_fiber", worst}});
  const BigInt index = big_pow(f.field().q(), std::uint64_t{f.n()} * b * (f.d() - 1));
  if (BigInt(total) > index * n0) {
    fail(r, inst, "N <= [H:H_0]^(d-1) N^0", Json{{"N", total}, {"index", big(index)}, {"N0", n0}});
  }
  r.summary["fibers"] = hist.size();
  return r;
}

VerifyReport verify_eval_fibers(const MultilinearForm& f, unsigned r_max, Budget budget) {
  VerifyReport r;
  r.suite = "eval-fibers";
  r.cases = 1;
  const Json inst = instance_json(r.suite, Json{{"R_max", r_max}}, tensor_to_json(f), "tensor");
  const BigInt s = count_sf(f, 1, budget);
  std::vector<BigInt> nr{BigInt(1)};
  for (unsigned R = 1; R <= r_max; ++R) nr.push_back(count_nr(f, R, budget));
  if (nr[1] != s) fail(r, inst, "N_1 = |S_F(F_q)|", Json{{"N_1", big(nr[1])}, {"S", big(s)}});
  for (unsigned R = 2; R <= r_max; ++R) {
    if (nr[R] > s * nr[R - 1]) {
      fail(r, inst, "N_R <= |S_F| N_(R-1)", Json{{"R", R}, {"N_R", big(nr[R])}, {"bound", big(s * nr[R - 1])}});
    }
    const BigInt pw = boost::multiprecision::pow(s, R);
    if (nr[R] > pw) fail(r, inst, "N_R <= |S_F|^R", Json{{"R", R}, {"N_R", big(nr[R])}, {"bound", big(pw)}});
  }
  return r;
}

VerifyReport verify_scaling_char0(const IntMultilinearForm& g, std::int64_t R, std::int64_t L, Budget budget) {
  VerifyReport r;
  r.suite = "scale-char0";
  r.cases = 1;
  const Json inst = instance_json(r.suite, Json{{"R", R}, {"L", L}}, tensor_to_json(g), "tensor");
  const BigInt n = count_box(g, BoxSpec{L * R, false, 0}, budget);
  const BigInt z = count_box(g, BoxSpec{R, true, 0}, budget);
  const BigInt bound = big_pow(L, std::uint64_t{g.n()} * (g.d() - 1)) * z;
  if (n > bound) fail(r, inst, "N_LR <= L^(n(d-1)) Z_R", Json{{"N", big(n)}, {"Z", big(z)}, {"bound", big(bound)}});
  return r;
}

VerifyReport verify_lift_threshold(const IntMultilinearForm& g, std::int64_t L, double sigma, Budget budget) {
  VerifyReport r;
  r.suite = "lift";
  r.cases = 1;
  const Json inst = instance_json(r.suite, Json{{"L", L}, {"sigma", sigma}}, tensor_to_json(g), "tensor");
  const LiftReport rep = lift_search(g, L, sigma, false, budget);
  std::int64_t off = 0;
  Json first_off;
  for (std::size_t i = 0; i < rep.points.size(); ++i) {
    if (rep.exact[i]) continue;
    if (off++ == 0) first_off = rep.points[i];
  }
  r.summary["points"] = static_cast<std::int64_t>(rep.points.size());
  if (rep.threshold_reached) {
    r.summary["certified_cases"] = 1;
    r.summary["certified_points"] = static_cast<std::int64_t>(rep.points.size());
    if (off > 0) {
      fail(r, inst, "G(x) = 0 mod L and ||x|| < L^sigma imply G(x) = 0",
           Json{{"non_integral_points", off}, {"example", first_off}});
    }
  } else {
    r.summary["threshold_not_reached"] = 1;
    r.summary["uncertified_non_integral_points"] = off;
    if (off > 0) {
      advise(r, inst, "threshold not reached; mod-L solution is not an integer solution",
             Json{{"non_integral_points", off},
                  {"example", first_off},
                  {"C (h-1)^(d-1)", big(rep.height_constant * big_pow(rep.height - 1, g.d() - 1))}});
    }
  }
  return r;
}

VerifyReport verify_rank_chain(const MultilinearForm& f, const RankChainOptions& opts) {
  VerifyReport r;
  r.suite = "rank-chain";
  r.cases = 1;
  const Json inst = instance_json(r.suite, Json{{"l_max", opts.l_max}}, tensor_to_json(f), "tensor");
  const unsigned d = f.d();
  const ExactLogRank ark = ark_exact(f, 1, opts.budget);
  std::optional<unsigned> grk = opts.known_grk;
  unsigned grk_upper = 0;
  if (!grk) {
    const GrkEstimate est = grk_estimate(f, opts.l_max, opts.budget);
    grk = est.stabilized;
    grk_upper = est.upper;
    if (!grk) bump(r.summary, "grk_not_stabilized");
  }
  if (grk) {
    if (!ark.at_most(static_cast<double>((d - 1) * *grk))) {
      fail(r, inst, "ark <= (d-1) grk", Json{{"ark", to_json(ark)}, {"grk", *grk}});
    }
    const double cm = *grk * (1.0 - std::log(d - 1.0) / std::log(static_cast<double>(f.field().q())));
    if (ark.value() < cm - 1e-9) advise(r, inst, "ark >= grk (1 - log_q(d-1))", Json{{"ark", ark.value()}, {"bound", cm}});
  } else if (!ark.at_most(static_cast<double>((d - 1) * grk_upper))) {
    advise(r, inst, "ark <= (d-1) grk (interval upper end)", Json{{"ark", ark.value()}, {"grk_upper", grk_upper}});
  }
  const PrkResult prk = prk_exact_small(f, opts.r_max, opts.budget);
  if (grk && prk.exact && *grk > prk.upper) {
    advise(r, inst, "grk <= prk", Json{{"grk", *grk}, {"prk", prk.upper}});
  }
  if (opts.extension_prk) {
    const PrkResult prk2 = prk_exact_small(lift_to_level(f, 2), opts.r_max, opts.budget);
    if (prk.exact && prk2.exact) {
      bump(r.summary, "extension_prk_checked");
      if (prk.upper > 2 * prk2.upper) {
        fail(r, inst, "prk(F) <= 2 prk(F over F_(q^2))", Json{{"prk", prk.upper}, {"prk_ext", prk2.upper}});
      }
    } else {
      bump(r.summary, "extension_prk_inexact");
    }
  }
  return r;
}

VerifyReport verify_direct_sum(const MultilinearForm& f, const MultilinearForm& g, Budget budget) {
  VerifyReport r;
  r.suite = "rank-chain";
  r.cases = 1;
  Json pair;
  pair["left"] = tensor_to_json(f);
  pair["right"] = tensor_to_json(g);
  const Json inst = instance_json(r.suite, Json{{"check", "direct-sum"}}, pair, "pair");
  const BigInt cs = count_sf(direct_sum(f, g), 1, budget);
  const BigInt cf = count_sf(f, 1, budget);
  const BigInt cg = count_sf(g, 1, budget);
  if (cs != cf * cg) {
    fail(r, inst, "|S_(F+G)| = |S_F| |S_G|", Json{{"sum", big(cs)}, {"F", big(cf)}, {"G", big(cg)}});
  }
  return r;
}

VerifyReport verify_polar_sandwich(const HomogeneousForm& f, unsigned brk_levels, Budget budget) {
  VerifyReport r;
  r.suite = "polar";
  r.cases = 1;
  const Json inst = instance_json(r.suite, Json{{"brk_levels", brk_levels}}, poly_to_json(f), "poly");
  const unsigned d = f.d();
  const StrResult str = str_exact_small(f, budget);
  const MultilinearForm polar = polarize(f);
  const PrkResult prk = prk_exact_small(polar, d + 2, budget);
  unsigned binom = 1;
  for (unsigned i = 0; i < d / 2; ++i) binom = binom * (d - i) / (i + 1);
  if (!str.exact || !prk.exact) {
    bump(r.summary, "inexact");
    if (str.lower > prk.upper) fail(r, inst, "str <= prk(polar)", Json{{"str_lower", str.lower}, {"prk_upper", prk.upper}});
  } else {
    if (str.upper > prk.upper) fail(r, inst, "str <= prk(polar)", Json{{"str", str.upper}, {"prk", prk.upper}});
    if (prk.upper > binom * str.upper) {
      fail(r, inst, "prk(polar) <= binom(d, d/2) str", Json{{"str", str.upper}, {"prk", prk.upper}, {"binom", binom}});
    }
  }
  const BrkEstimate brk = brk_estimate(f, brk_levels, budget);
  if (brk.stabilized) {
    if (*brk.stabilized > 2 * str.upper) {
      fail(r, inst, "Brk <= 2 str", Json{{"brk", *brk.stabilized}, {"str", str.upper}});
    }
  } else {
    bump(r.summary, "brk_not_stabilized");
    if (brk.lower > 2 * str.upper) {
      advise(r, inst, "Brk <= 2 str (interval)", Json{{"brk_lower", brk.lower}, {"str", str.upper}});
    }
  }
  return r;
}

VerifyReport verify_weil(const MultilinearForm& f, const FieldPtr& subfield, unsigned grk_levels, Budget budget) {
  VerifyReport r;
  r.suite = "weil";
  r.cases = 1;
  const Json inst =
      instance_json(r.suite, Json{{"subfield", field_to_json(subfield->spec())}}, tensor_to_json(f), "tensor");
  const FieldEmbedding emb(subfield, f.field_ptr());
  const unsigned l = emb.degree();
  const MultilinearForm fk = weil_restrict(f, emb);
  const ExactLogRank big_ark = ark_exact(f, 1, budget);
  const ExactLogRank small_ark = ark_exact(fk, 1, budget);
  if (big_ark.count != small_ark.count) {
    fail(r, inst, "|S_(F_K)(K)| = |S_F(L)|", Json{{"restricted", big(small_ark.count)}, {"original", big(big_ark.count)}});
  }
  // ark(F_K) = l ark(F): both equal l n(d-1) - log_q(count) once the counts agree.
  if (small_ark.ambient != l * big_ark.ambient || big_pow(small_ark.base, l) != BigInt(big_ark.base)) {
    fail(r, inst, "ark(F_K) = l ark(F)", Json{{"restricted", to_json(small_ark)}, {"original", to_json(big_ark)}});
  }
  if (grk_levels > 0) {
    const GrkEstimate gk = grk_estimate(fk, grk_levels, budget);
    const GrkEstimate gl = grk_estimate(f, grk_levels, budget);
    if (gk.stabilized && gl.stabilized) {
      bump(r.summary, "grk_compared");
      if (*gk.stabilized != l * *gl.stabilized) {
        advise(r, inst, "grk(F_K) = l grk(F)", Json{{"restricted", *gk.stabilized}, {"original", *gl.stabilized}});
      }
    }
  }
  return r;
}

MultilinearForm minimize_counterexample(const MultilinearForm& f,
                                        const std::function<bool(const MultilinearForm&)>& fails) {
  MultilinearForm cur = f;
  for (std::size_t i = 0; i < cur.size(); ++i) {
    if (cur.coeffs()[i] == 0) continue;
    MultilinearForm trial = cur;
    trial.coeffs()[i] = 0;
    if (fails(trial)) cur = std::move(trial);
  }
  return cur;
}

IntMultilinearForm minimize_counterexample(const IntMultilinearForm& f,
                                           const std::function<bool(const IntMultilinearForm&)>& fails) {
  IntMultilinearForm cur = f;
  for (std::size_t i = 0; i < cur.size(); ++i) {
    if (cur.coeffs()[i] == 0) continue;
    IntMultilinearForm trial = cur;
    trial.coeffs()[i] = 0;
    if (fails(trial)) cur = std::move(trial);
  }
  return cur;
}

HomogeneousForm minimize_counterexample(const HomogeneousForm& f,
                                        const std::function<bool(const HomogeneousForm&)>& fails) {
  HomogeneousForm cur = f;
  const auto monos = f.monomials();
  for (const auto& [e, c] : monos) {
    HomogeneousForm trial = cur;
    trial.set(e, 0);
    if (fails(trial)) cur = std::move(trial);
  }
  return cur;
}

}  // namespace multirank
