#include "kernels.hpp"
#include "multirank/error.hpp"
#include "multirank/ranks.hpp"

#include <cmath>
#include <map>

namespace multirank {

namespace {

struct Candidate {
  unsigned degree;
  HomogeneousForm g;
};

std::vector<Candidate> candidates(const FieldPtr& field, unsigned n, unsigned d, double budget_bits) {
  std::vector<Candidate> out;
  const std::uint32_t q = field->q();
  double size = 0;
  for (unsigned k = 1; k <= d / 2; ++k) size += std::pow(static_cast<double>(q), monomial_basis(n, k).size());
  check_budget("strength factor space", std::log2(size), std::min(budget_bits, 22.0));
  for (unsigned k = 1; k <= d / 2; ++k) {
    const auto basis = monomial_basis(n, k);
    detail::ProjectiveSpace proj(q, static_cast<unsigned>(basis.size()));
    std::vector<Elem> c(basis.size());
    for (std::uint64_t a = 0; a < proj.count(); ++a) {
      proj.decode(a, c.data());
      HomogeneousForm g(field, n, k);
      for (std::size_t j = 0; j < basis.size(); ++j) g.set(basis[j], c[j]);
      out.push_back(Candidate{k, std::move(g)});
    }
  }
  return out;
}

// h_i with f = sum g_i h_i, if the g's admit one.
std::optional<std::vector<StrTerm>> try_factors(const HomogeneousForm& f, const std::vector<const Candidate*>& gs,
                                                const std::map<Exponent, std::size_t>& row_of) {
  const Field& field = f.field();
  const unsigned n = f.n(), d = f.d();
  std::vector<std::vector<Exponent>> cofactor_basis;
  std::size_t cols = 0;
  for (const auto* c : gs) {
    cofactor_basis.push_back(monomial_basis(n, d - c->degree));
    cols += cofactor_basis.back().size();
  }
  Matrix a(row_of.size(), cols);
  std::size_t col = 0;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    for (const auto& m : cofactor_basis[i]) {
      for (const auto& [e, c] : gs[i]->g.monomials()) {
        Exponent sum(n);
        for (unsigned j = 0; j < n; ++j) sum[j] = e[j] + m[j];
        Elem& cell = a.at(row_of.at(sum), col);
        cell = field.add(cell, c);
      }
      ++col;
    }
  }
  std::vector<Elem> b(row_of.size(), 0);
  for (const auto& [e, c] : f.monomials()) b[row_of.at(e)] = c;
  auto x = solve(field, a, b);
  if (!x) return std::nullopt;
  std::vector<StrTerm> terms;
  col = 0;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    HomogeneousForm h(f.field_ptr(), n, d - gs[i]->degree);
    for (const auto& m : cofactor_basis[i]) h.set(m, (*x)[col++]);
    terms.push_back(StrTerm{gs[i]->g, std::move(h)});
  }
  return terms;
}

double log2_binomial(std::uint64_t n, unsigned k) {
  return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) / std::log(2.0);
}

}  // namespace

bool certificate_sums_to(const std::vector<StrTerm>& terms, const HomogeneousForm& f) {
  HomogeneousForm sum(f.field_ptr(), f.n(), f.d());
  for (const auto& t : terms) {
    if (t.g.d() < 1 || t.g.d() >= f.d() || t.g.d() + t.h.d() != f.d()) return false;
    sum = sum + t.g * t.h;
  }
  return sum == f;
}

StrResult str_exact_small(const HomogeneousForm& f, Budget budget) {
  if (f.d() < 2) throw DomainError("strength needs degree >= 2");
  StrResult res;
  if (f.is_zero()) {
    res.exact = true;
    res.certificate = std::vector<StrTerm>{};
    return res;
  }
  const unsigned n = f.n(), d = f.d();
  // f = sum_j x_j h_j, x_j the first variable of each monomial.
  std::map<unsigned, HomogeneousForm> by_var;
  for (const auto& [e, c] : f.monomials()) {
    unsigned j = 0;
    while (e[j] == 0) ++j;
    Exponent rest = e;
    --rest[j];
    auto it = by_var.try_emplace(j, f.field_ptr(), n, d - 1).first;
    it->second.set(rest, c);
  }
  std::vector<StrTerm> trivial;
  for (auto& [j, h] : by_var) {
    HomogeneousForm g(f.field_ptr(), n, 1);
    Exponent e(n, 0);
    e[j] = 1;
    g.set(e, 1);
    trivial.push_back(StrTerm{std::move(g), h});
  }
  res.lower = 1;
  res.upper = static_cast<unsigned>(trivial.size());
  res.certificate = std::move(trivial);
  if (res.upper == 1) {
    res.exact = true;
    return res;
  }
  std::map<Exponent, std::size_t> row_of;
  for (const auto& e : monomial_basis(n, d)) row_of.emplace(e, row_of.size());
  const auto cands = candidates(f.field_ptr(), n, d, budget.bits);
  for (unsigned s = 1; s < res.upper; ++s) {
    if (log2_binomial(cands.size(), s) > budget.bits) return res;
    std::vector<std::size_t> pick(s);
    for (unsigned i = 0; i < s; ++i) pick[i] = i;
    for (;;) {
      std::vector<const Candidate*> gs;
      for (auto i : pick) gs.push_back(&cands[i]);
      if (auto terms = try_factors(f, gs, row_of)) {
        if (!certificate_sums_to(*terms, f)) throw Error("strength certificate failed to re-sum");
        res.lower = res.upper = s;
        res.exact = true;
        res.certificate = std::move(*terms);
        return res;
      }
      int i = static_cast<int>(s) - 1;
      while (i >= 0 && pick[i] == cands.size() - s + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (unsigned k = i + 1; k < s; ++k) pick[k] = pick[k - 1] + 1;
    }
    res.lower = s + 1;
  }
  res.exact = true;
  res.lower = res.upper;
  return res;
}

}  // namespace multirank
