#include "kernels.hpp"
#include "multirank/error.hpp"
#include "multirank/ranks.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <set>

namespace multirank {

namespace {

std::uint64_t upow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::vector<unsigned> complement(const std::vector<unsigned>& slots, unsigned d) {
  std::vector<unsigned> rest;
  for (unsigned s = 0; s < d; ++s)
    if (std::find(slots.begin(), slots.end(), s) == slots.end()) rest.push_back(s);
  return rest;
}

// flat position of f -> position in the flattening along `slots`.
std::vector<std::size_t> flatten_map(unsigned d, unsigned n, const std::vector<unsigned>& slots) {
  const std::vector<unsigned> rest = complement(slots, d);
  const std::size_t cols = upow(n, static_cast<unsigned>(rest.size()));
  const std::size_t total = upow(n, d);
  std::vector<std::size_t> map(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    auto idx = multi_index(flat, n, d);
    std::size_t row = 0, col = 0;
    for (unsigned s : slots) row = row * n + idx[s];
    for (unsigned s : rest) col = col * n + idx[s];
    map[flat] = row * cols + col;
  }
  return map;
}

struct Layout {
  std::vector<unsigned> slots;
  std::size_t rows;
  std::size_t cols;
  std::vector<std::size_t> map;
};

std::vector<Layout> layouts(unsigned d, unsigned n) {
  std::vector<Layout> out;
  for (auto& slots : partitions(d)) {
    Layout l;
    l.rows = upow(n, static_cast<unsigned>(slots.size()));
    l.cols = upow(n, d - static_cast<unsigned>(slots.size()));
    l.map = flatten_map(d, n, slots);
    l.slots = std::move(slots);
    out.push_back(std::move(l));
  }
  return out;
}

std::vector<PrkTerm> factor(const Field& field, const Matrix& m, const std::vector<unsigned>& slots) {
  RowEchelon ech = row_reduce(field, m);
  std::vector<PrkTerm> terms;
  for (std::size_t j = 0; j < ech.pivots.size(); ++j) {
    PrkTerm t;
    t.slots = slots;
    t.left.resize(m.rows);
    for (std::size_t r = 0; r < m.rows; ++r) t.left[r] = m.at(r, ech.pivots[j]);
    t.right.assign(ech.r.data.begin() + j * m.cols, ech.r.data.begin() + (j + 1) * m.cols);
    terms.push_back(std::move(t));
  }
  return terms;
}

// Index of a layout along which `coeffs` has rank <= 1, or -1.
int rank_one_layout(const Field& field, std::span<const Elem> coeffs, const std::vector<Layout>& ls,
                    std::vector<Elem>& buf) {
  for (std::size_t k = 0; k < ls.size(); ++k) {
    const auto& l = ls[k];
    buf.resize(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) buf[l.map[i]] = coeffs[i];
    if (rank_at_most_one(field, buf, l.rows, l.cols)) return static_cast<int>(k);
  }
  return -1;
}

// Distinct nonzero rank-one tensors, with the first (partition, u, v) producing each.
struct TermTable {
  std::vector<PrkTerm> terms;
  std::vector<Elem> dense;  // terms.size() * n^d
  std::size_t stride = 0;
};

TermTable build_terms(const FieldPtr& field, unsigned d, unsigned n, double budget_bits) {
  const Field& F = *field;
  const std::uint64_t q = F.q();
  double log_total = 0;
  {
    const long double pairs = static_cast<long double>(rank_one_pair_count(q, d, n));
    log_total = std::log2(static_cast<double>(pairs) * static_cast<double>(upow(n, d)));
  }
  check_budget("rank-one term table", log_total, std::min(budget_bits, 28.0));
  TermTable table;
  table.stride = upow(n, d);
  std::set<std::vector<Elem>> seen;
  std::vector<Elem> u, v, dense(table.stride);
  for (const auto& slots : partitions(d)) {
    const auto rest = complement(slots, d);
    const unsigned rows_dim = static_cast<unsigned>(upow(n, static_cast<unsigned>(slots.size())));
    const unsigned cols_dim = static_cast<unsigned>(upow(n, static_cast<unsigned>(rest.size())));
    const auto map = flatten_map(d, n, slots);
    detail::ProjectiveSpace proj(static_cast<std::uint32_t>(q), rows_dim);
    u.resize(rows_dim);
    v.resize(cols_dim);
    const std::uint64_t vcount = upow(q, cols_dim);
    for (std::uint64_t a = 0; a < proj.count(); ++a) {
      proj.decode(a, u.data());
      for (std::uint64_t b = 1; b < vcount; ++b) {
        std::uint64_t x = b;
        for (unsigned j = cols_dim; j-- > 0;) {
          v[j] = static_cast<Elem>(x % q);
          x /= q;
        }
        for (std::size_t flat = 0; flat < table.stride; ++flat) {
          const std::size_t pos = map[flat];
          dense[flat] = F.mul(u[pos / cols_dim], v[pos % cols_dim]);
        }
        if (!seen.insert(dense).second) continue;
        table.terms.push_back(PrkTerm{slots, u, v});
        table.dense.insert(table.dense.end(), dense.begin(), dense.end());
      }
    }
  }
  return table;
}

double log2_binomial(std::uint64_t n, unsigned k) {
  if (k > n) return -std::numeric_limits<double>::infinity();
  return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) / std::log(2.0);
}

// Depth-first search for `depth` strictly increasing term indices after `first`
// whose removal leaves a residual of rank <= 1 along some partition.
class DeepeningSearch {
 public:
  DeepeningSearch(const Field& field, const TermTable& table, const std::vector<Layout>& ls)
      : field_(&field), table_(&table), ls_(&ls) {}

  bool run(std::vector<Elem>& residual, std::size_t start, unsigned remaining, std::vector<std::size_t>& chosen) {
    if (remaining == 0) {
      last_layout_ = rank_one_layout(*field_, residual, *ls_, buf_);
      return last_layout_ >= 0;
    }
    const std::size_t stride = table_->stride;
    const std::size_t count = table_->terms.size();
    for (std::size_t t = start; t + remaining <= count; ++t) {
      const Elem* term = table_->dense.data() + t * stride;
      for (std::size_t i = 0; i < stride; ++i) residual[i] = field_->sub(residual[i], term[i]);
      chosen.push_back(t);
      if (run(residual, t + 1, remaining - 1, chosen)) return true;
      chosen.pop_back();
      for (std::size_t i = 0; i < stride; ++i) residual[i] = field_->add(residual[i], term[i]);
    }
    return false;
  }

  int last_layout() const { return last_layout_; }

 private:
  const Field* field_;
  const TermTable* table_;
  const std::vector<Layout>* ls_;
  std::vector<Elem> buf_;
  int last_layout_ = -1;
};

struct Found {
  std::vector<std::size_t> chosen;
  std::vector<Elem> residual;
  int layout;
};

// Lexicographically least combination of r-1 terms leaving a rank <= 1 residual.
std::optional<Found> search_depth(const MultilinearForm& f, const TermTable& table, const std::vector<Layout>& ls,
                                  unsigned r) {
  const std::size_t count = table.terms.size();
  const unsigned inner = r - 2;
  std::atomic<std::int64_t> best{std::numeric_limits<std::int64_t>::max()};
  std::map<std::size_t, Found> found;
  std::mutex mu;
  const Field& field = f.field();
  const std::vector<Elem> base(f.coeffs().begin(), f.coeffs().end());
  int threads = parallel::max_threads();
#pragma omp parallel num_threads(threads)
  {
    DeepeningSearch search(field, table, ls);
    std::vector<Elem> residual(base.size());
    std::vector<std::size_t> chosen;
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(count); ++t) {
      if (t > best.load()) continue;
      if (static_cast<std::size_t>(t) + 1 + inner > count) continue;
      const Elem* term = table.dense.data() + t * table.stride;
      for (std::size_t i = 0; i < residual.size(); ++i) residual[i] = field.sub(base[i], term[i]);
      chosen.assign(1, static_cast<std::size_t>(t));
      if (search.run(residual, static_cast<std::size_t>(t) + 1, inner, chosen)) {
        std::lock_guard lock(mu);
        found[static_cast<std::size_t>(t)] = Found{chosen, residual, search.last_layout()};
        std::int64_t cur = best.load();
        while (t < cur && !best.compare_exchange_weak(cur, t)) {
        }
      }
    }
  }
  if (found.empty()) return std::nullopt;
  return found.begin()->second;
}

}  // namespace

std::vector<std::vector<unsigned>> partitions(unsigned d) {
  std::vector<std::vector<unsigned>> out;
  for (unsigned mask = 1; mask + 1 < (1u << d); mask += 2) {
    std::vector<unsigned> slots;
    for (unsigned s = 0; s < d; ++s)
      if (mask >> s & 1u) slots.push_back(s);
    out.push_back(std::move(slots));
  }
  return out;
}

Matrix flattening(const MultilinearForm& f, const std::vector<unsigned>& slots) {
  const unsigned d = f.d(), n = f.n();
  const auto map = flatten_map(d, n, slots);
  Matrix m(upow(n, static_cast<unsigned>(slots.size())), upow(n, d - static_cast<unsigned>(slots.size())));
  for (std::size_t flat = 0; flat < f.size(); ++flat) m.data[map[flat]] = f.coeffs()[flat];
  return m;
}

MultilinearForm expand(const PrkTerm& term, const FieldPtr& field, unsigned d, unsigned n) {
  const auto map = flatten_map(d, n, term.slots);
  const std::size_t cols = term.right.size();
  if (term.left.size() != upow(n, static_cast<unsigned>(term.slots.size())) ||
      cols != upow(n, d - static_cast<unsigned>(term.slots.size()))) {
    throw DomainError("partition-rank term has factors of the wrong size");
  }
  MultilinearForm out(field, d, n);
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    const std::size_t pos = map[flat];
    out.coeffs()[flat] = field->mul(term.left[pos / cols], term.right[pos % cols]);
  }
  return out;
}

bool certificate_sums_to(const std::vector<PrkTerm>& terms, const MultilinearForm& f) {
  MultilinearForm sum(f.field_ptr(), f.d(), f.n());
  for (const auto& t : terms) {
    if (t.slots.empty() || t.slots.front() != 0 || t.slots.size() >= f.d()) return false;
    const auto e = expand(t, f.field_ptr(), f.d(), f.n());
    if (e.is_zero()) return false;
    if (!rank_at_most_one(f.field(), flattening(e, t.slots).data, upow(f.n(), static_cast<unsigned>(t.slots.size())),
                          upow(f.n(), f.d() - static_cast<unsigned>(t.slots.size())))) {
      return false;
    }
    for (std::size_t i = 0; i < sum.size(); ++i) sum.coeffs()[i] = f.field().add(sum.coeffs()[i], e.coeffs()[i]);
  }
  return sum == f;
}

std::uint64_t rank_one_pair_count(std::uint64_t q, unsigned d, unsigned n) {
  std::uint64_t total = 0;
  for (const auto& slots : partitions(d)) {
    const std::uint64_t rows = upow(n, static_cast<unsigned>(slots.size()));
    const std::uint64_t cols = upow(n, d - static_cast<unsigned>(slots.size()));
    const std::uint64_t proj = (upow(q, static_cast<unsigned>(rows)) - 1) / (q - 1);
    total += proj * (upow(q, static_cast<unsigned>(cols)) - 1);
  }
  return total;
}

std::size_t rank_one_distinct_count(const FieldPtr& field, unsigned d, unsigned n) {
  return build_terms(field, d, n, 28.0).terms.size();
}

PrkResult prk_bounds(const MultilinearForm& f, Budget budget) {
  PrkResult res;
  if (f.is_zero()) {
    res.exact = true;
    res.certificate = std::vector<PrkTerm>{};
    return res;
  }
  res.lower = 1;
  try {
    res.lower = std::max(1u, ark_exact(f, 1, budget).ceil());
  } catch (const BudgetError&) {
  }
  unsigned best = std::numeric_limits<unsigned>::max();
  for (const auto& slots : partitions(f.d())) {
    Matrix m = flattening(f, slots);
    const unsigned r = rank(f.field(), m);
    if (r < best) {
      best = r;
      res.certificate = factor(f.field(), m, slots);
    }
  }
  res.upper = best;
  res.exact = res.lower == res.upper;
  return res;
}

PrkResult prk_exact_small(const MultilinearForm& f, unsigned r_max, Budget budget) {
  PrkResult res = prk_bounds(f, budget);
  if (res.exact) return res;
  const unsigned d = f.d(), n = f.n();
  const auto ls = layouts(d, n);
  std::optional<TermTable> table;
  for (unsigned r = std::max(res.lower, 2u); r < res.upper; ++r) {
    if (r > r_max) return res;
    if (!table) {
      try {
        table = build_terms(f.field_ptr(), d, n, budget.bits);
      } catch (const BudgetError&) {
        return res;
      }
    }
    const double work = log2_binomial(table->terms.size(), r - 1);
    if (work > budget.bits) return res;
    if (auto hit = search_depth(f, *table, ls, r)) {
      std::vector<PrkTerm> cert;
      for (auto t : hit->chosen) cert.push_back(table->terms[t]);
      const Layout& l = ls[static_cast<std::size_t>(hit->layout)];
      Matrix m(l.rows, l.cols);
      for (std::size_t i = 0; i < hit->residual.size(); ++i) m.data[l.map[i]] = hit->residual[i];
      for (auto& t : factor(f.field(), m, l.slots)) cert.push_back(std::move(t));
      if (!certificate_sums_to(cert, f)) throw Error("partition-rank certificate failed to re-sum");
      res.upper = static_cast<unsigned>(cert.size());
      res.lower = res.upper;
      res.exact = true;
      res.certificate = std::move(cert);
      return res;
    }
    res.lower = r + 1;
  }
  res.lower = res.upper;
  res.exact = true;
  return res;
}

}  // namespace multirank
