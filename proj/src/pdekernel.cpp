#include "gh/pdekernel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "gh/kernels.hpp"
#include "gh/provenance.hpp"
#include "gh/rng.hpp"

namespace gh {

namespace {

void check_exponent(const Exponent& e, std::size_t k, const char* what) {
  if (e.size() != k) throw std::invalid_argument(std::string(what) + " has the wrong number of variables");
  for (int v : e)
    if (v < 0) throw std::invalid_argument(std::string(what) + " has a negative entry");
}

bool dominates(const Exponent& g, const Exponent& a) {
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i] < a[i]) return false;
  return true;
}

// prod gamma_i! / (gamma_i - alpha_i)!, for gamma >= alpha.
Integer falling(const Exponent& gamma, const Exponent& alpha) {
  Integer r = 1;
  for (std::size_t i = 0; i < gamma.size(); ++i)
    for (int t = 0; t < alpha[i]; ++t) r *= gamma[i] - t;
  return r;
}

// prod (gamma_i - alpha_i)!, for gamma >= alpha.
Integer factorial_of_difference(const Exponent& gamma, const Exponent& alpha) {
  Integer r = 1;
  for (std::size_t i = 0; i < gamma.size(); ++i) r *= factorial(static_cast<unsigned long>(gamma[i] - alpha[i]));
  return r;
}

Exponent shifted(const Exponent& gamma, const Exponent& alpha, const Exponent& beta) {
  Exponent s(gamma.size());
  for (std::size_t i = 0; i < gamma.size(); ++i) s[i] = gamma[i] - alpha[i] + beta[i];
  return s;
}

Rational ratio(const Integer& a, const Integer& b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

SparseVector to_sparse(const std::map<std::size_t, Rational>& acc) {
  SparseVector v;
  for (const auto& [i, c] : acc)
    if (c != 0) v.emplace_back(i, c);
  return v;
}

}  // namespace

DiffOp::DiffOp(std::size_t k, std::vector<DiffTerm> terms) : k_(k) {
  if (k == 0) throw std::invalid_argument("operator needs at least one variable");
  std::map<std::pair<Exponent, Exponent>, Rational> merged;
  for (auto& t : terms) {
    check_exponent(t.alpha, k, "derivative index");
    check_exponent(t.beta, k, "monomial index");
    merged[{t.alpha, t.beta}] += t.c;
  }
  for (auto& [key, c] : merged)
    if (c != 0) terms_.push_back({key.first, key.second, c});
}

int DiffOp::order() const {
  int n = 0;
  for (const auto& t : terms_) n = std::max(n, *std::max_element(t.alpha.begin(), t.alpha.end()));
  return n + 1;
}

int DiffOp::coefficient_degree() const {
  int m = 0;
  for (const auto& t : terms_) m = std::max(m, total_degree(t.beta) - total_degree(t.alpha));
  return m;
}

bool DiffOp::is_reduced() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const DiffTerm& t) { return dominates(t.alpha, t.beta); });
}

nlohmann::json DiffOp::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : terms_) terms.push_back({{"dx", t.alpha}, {"x", t.beta}, {"c", gh::to_string(t.c)}});
  return {{"k", k_}, {"terms", terms}};
}

DiffOp DiffOp::from_json(const nlohmann::json& j) {
  const auto k = j.at("k").get<std::size_t>();
  std::vector<DiffTerm> terms;
  for (const auto& t : j.at("terms")) {
    const auto& c = t.at("c");
    terms.push_back({t.at("dx").get<Exponent>(), t.at("x").get<Exponent>(),
                     c.is_string() ? parse_rational(c.get<std::string>()) : Rational(c.get<long>())});
  }
  return DiffOp(k, std::move(terms));
}

MultiPoly apply(const DiffOp& d, const MultiPoly& p) {
  if (p.nvars() != d.k()) throw std::invalid_argument("operator and polynomial disagree on the variable count");
  MultiPoly out(d.k());
  for (const auto& t : d.terms())
    for (const auto& [gamma, a] : p.terms())
      if (dominates(gamma, t.alpha)) out.add_term(shifted(gamma, t.alpha, t.beta), a * t.c * Rational(falling(gamma, t.alpha)));
  return out;
}

DiffOp compose_derivative(const Exponent& gamma, const DiffOp& d) {
  check_exponent(gamma, d.k(), "composition index");
  std::vector<DiffTerm> out;
  for (const auto& t : d.terms()) {
    // Enumerate delta <= min(gamma, beta).
    Exponent delta(d.k(), 0);
    while (true) {
      Integer coef = 1;
      Exponent a(d.k()), b(d.k());
      for (std::size_t i = 0; i < d.k(); ++i) {
        coef *= binomial(gamma[i], delta[i]);
        for (int s = 0; s < delta[i]; ++s) coef *= t.beta[i] - s;
        a[i] = t.alpha[i] + gamma[i] - delta[i];
        b[i] = t.beta[i] - delta[i];
      }
      out.push_back({a, b, t.c * Rational(coef)});
      std::size_t i = 0;
      for (; i < d.k(); ++i) {
        if (delta[i] < std::min(gamma[i], t.beta[i])) {
          ++delta[i];
          break;
        }
        delta[i] = 0;
      }
      if (i == d.k()) break;
    }
  }
  return DiffOp(d.k(), std::move(out));
}

Reduction reduce_operator(const DiffOp& d) {
  if (d.is_zero()) throw std::invalid_argument("cannot reduce the zero operator");
  Exponent gamma(d.k(), 0);
  for (const auto& t : d.terms())
    for (std::size_t i = 0; i < d.k(); ++i) gamma[i] = std::max(gamma[i], t.beta[i] - t.alpha[i]);
  DiffOp reduced = compose_derivative(gamma, d);
  if (reduced.is_zero()) throw std::logic_error("reduction produced the zero operator");
  return {std::move(reduced), std::move(gamma)};
}

std::size_t MonomialIndex::Hash::operator()(const Exponent& e) const {
  std::size_t h = 1469598103934665603ULL;
  for (int v : e) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ULL;
  return h;
}

MonomialIndex::MonomialIndex(std::size_t nvars, int max_degree) : monomials_(monomials_up_to(nvars, max_degree)) {
  index_.reserve(monomials_.size());
  for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], i);
}

std::size_t MonomialIndex::prefix(int m) const {
  if (m < 0) return 0;
  const std::size_t k = monomials_.empty() ? 0 : monomials_[0].size();
  return std::min(monomials_.size(), static_cast<std::size_t>(binomial(m + static_cast<long>(k), static_cast<long>(k)).get_ui()));
}

std::size_t MonomialIndex::index(const Exponent& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) throw std::out_of_range("monomial outside the indexed range");
  return it->second;
}

SparseVector apply_to_monomial(const DiffOp& d, const Exponent& gamma, const MonomialIndex& target) {
  std::map<std::size_t, Rational> acc;
  for (const auto& t : d.terms())
    if (dominates(gamma, t.alpha)) acc[target.index(shifted(gamma, t.alpha, t.beta))] += t.c * Rational(falling(gamma, t.alpha));
  return to_sparse(acc);
}

std::size_t kernel_dim(const DiffOp& d, int m) {
  if (m < 0) throw std::invalid_argument("m must be non-negative");
  const MonomialIndex target(d.k(), m + d.coefficient_degree());
  const std::size_t cols = target.prefix(m);
  EchelonBasis basis;
  for (std::size_t c = 0; c < cols; ++c) basis.insert(apply_to_monomial(d, target.at(c), target));
  return cols - basis.rank();
}

std::size_t kernel_dim_permuted(const DiffOp& d, int m, std::uint64_t seed) {
  if (m < 0) throw std::invalid_argument("m must be non-negative");
  const MonomialIndex target(d.k(), m + d.coefficient_degree());
  const std::size_t cols = target.prefix(m);
  RngStream rng(seed);
  std::vector<std::size_t> col_order(cols), row_label(target.size());
  std::iota(col_order.begin(), col_order.end(), std::size_t{0});
  std::iota(row_label.begin(), row_label.end(), std::size_t{0});
  std::shuffle(col_order.begin(), col_order.end(), rng.engine());
  std::shuffle(row_label.begin(), row_label.end(), rng.engine());
  EchelonBasis basis;
  for (std::size_t c : col_order) {
    std::map<std::size_t, Rational> acc;
    for (auto& [i, v] : apply_to_monomial(d, target.at(c), target)) acc[row_label[i]] = v;
    basis.insert(to_sparse(acc));
  }
  return cols - basis.rank();
}

std::vector<std::size_t> kernel_dims(const DiffOp& d, int m_max) {
  if (m_max < 0) throw std::invalid_argument("m must be non-negative");
  const MonomialIndex target(d.k(), m_max + d.coefficient_degree());
  std::vector<std::size_t> dims;
  EchelonBasis basis;
  std::size_t c = 0;
  for (int m = 0; m <= m_max; ++m) {
    const std::size_t cols = target.prefix(m);
    for (; c < cols; ++c) basis.insert(apply_to_monomial(d, target.at(c), target));
    dims.push_back(cols - basis.rank());
  }
  return dims;
}

std::vector<std::size_t> kernel_dims_serial(const DiffOp& d, const std::vector<int>& ms) {
  std::vector<std::size_t> out;
  for (int m : ms) out.push_back(kernel_dim(d, m));
  return out;
}

std::vector<std::size_t> kernel_dims_parallel(const DiffOp& d, const std::vector<int>& ms) {
  std::vector<std::size_t> out(ms.size());
  const auto n = static_cast<std::ptrdiff_t>(ms.size());
#pragma omp parallel for schedule(dynamic) num_threads(kernels::thread_count())
  for (std::ptrdiff_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = kernel_dim(d, ms[static_cast<std::size_t>(i)]);
  return out;
}

ExactMatrix assemble_matrix(const DiffOp& d, int m) {
  const MonomialIndex target(d.k(), m + d.coefficient_degree());
  const std::size_t cols = target.prefix(m);
  ExactMatrix a(target.size(), cols);
  for (std::size_t c = 0; c < cols; ++c)
    for (auto& [r, v] : apply_to_monomial(d, target.at(c), target)) a(r, c) = v;
  return a;
}

namespace {

void require_reduced(const DiffOp& d) {
  if (!d.is_reduced()) throw std::invalid_argument("mu-matrix needs a reduced operator (alpha >= beta in every term)");
}

SparseVector mu_column(const DiffOp& reduced, const Exponent& gamma, const MonomialIndex& index) {
  std::map<std::size_t, Rational> acc;
  for (const auto& t : reduced.terms())
    if (dominates(gamma, t.alpha))
      acc[index.index(shifted(gamma, t.alpha, t.beta))] += t.c / Rational(factorial_of_difference(gamma, t.alpha));
  return to_sparse(acc);
}

}  // namespace

ExactMatrix mu_matrix(const DiffOp& reduced, int m) {
  require_reduced(reduced);
  const MonomialIndex index(reduced.k(), m);
  ExactMatrix mu(index.size(), index.size());
  for (std::size_t c = 0; c < index.size(); ++c)
    for (auto& [r, v] : mu_column(reduced, index.at(c), index)) mu(r, c) = v;
  return mu;
}

std::size_t mu_kernel_dim(const DiffOp& reduced, int m) {
  require_reduced(reduced);
  const MonomialIndex index(reduced.k(), m);
  EchelonBasis basis;
  for (std::size_t c = 0; c < index.size(); ++c) basis.insert(mu_column(reduced, index.at(c), index));
  return index.size() - basis.rank();
}

KernelReport growth_fit(const DiffOp& d, const std::vector<int>& m_list) {
  if (m_list.size() < 5) throw std::invalid_argument("growth fit needs at least five values of m");
  if (!std::is_sorted(m_list.begin(), m_list.end()) ||
      std::adjacent_find(m_list.begin(), m_list.end()) != m_list.end() || m_list.front() < 0)
    throw std::invalid_argument("m values must be non-negative and strictly increasing");
  KernelReport report;
  report.digest = hex_digest(d.to_json().dump());
  report.k = d.k();
  const auto dims = kernel_dims(d, m_list.back());
  std::vector<double> xs, ys;
  for (int m : m_list) {
    const std::size_t dim = dims[static_cast<std::size_t>(m)];
    report.rows.push_back({m, dim_P(m, static_cast<int>(d.k())), dim});
    if (m >= 1 && dim >= 1) {
      xs.push_back(std::log(static_cast<double>(m)));
      ys.push_back(std::log(static_cast<double>(dim)));
    }
  }
  report.fitted = xs.size();
  report.threshold = static_cast<double>(d.k()) - 1.0 + 0.25;
  if (xs.size() >= 2) {
    report.fit = least_squares(xs, ys);
    report.violation = report.fit.slope > report.threshold;
  }
  return report;
}

BlockRanks block_ranks(const DiffOp& reduced, int m_prime) {
  require_reduced(reduced);
  if (m_prime < 1) throw std::invalid_argument("m' must be positive");
  const std::size_t k = reduced.k();
  const int n = reduced.order();
  const int m = 2 * n * m_prime;
  const MonomialIndex index(k, m);
  BlockRanks out;

  auto box = [&](const std::vector<int>& lo, int width) {
    std::vector<Exponent> pts;
    Exponent e = lo;
    while (true) {
      pts.push_back(e);
      std::size_t i = 0;
      for (; i < k; ++i) {
        if (e[i] < lo[i] + width - 1) {
          ++e[i];
          break;
        }
        e[i] = lo[i];
      }
      if (i == k) break;
    }
    return pts;
  };

  std::vector<int> j(k, 1);
  while (true) {
    if (std::accumulate(j.begin(), j.end(), 0) <= m_prime) {
      std::vector<int> row_lo(k), col_lo(k);
      for (std::size_t i = 0; i < k; ++i) {
        row_lo[i] = 2 * (j[i] - 1) * n;
        col_lo[i] = 2 * j[i] * n - n;
      }
      const auto rows = box(row_lo, 2 * n);
      const auto cols = box(col_lo, n);
      std::map<Exponent, std::size_t> row_pos;
      for (std::size_t r = 0; r < rows.size(); ++r) row_pos[rows[r]] = r;
      ExactMatrix block(rows.size(), cols.size());
      for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto& t : reduced.terms())
          if (dominates(cols[c], t.alpha)) {
            auto it = row_pos.find(shifted(cols[c], t.alpha, t.beta));
            if (it == row_pos.end()) throw std::logic_error("block column leaves its row block");
            block(it->second, c) += t.c / Rational(factorial_of_difference(cols[c], t.alpha));
          }
      const std::size_t r = rank(block);
      ++out.blocks;
      out.rank_sum += r;
      if (r > 0) ++out.nonzero;
    }
    std::size_t i = 0;
    for (; i < k; ++i) {
      ++j[i];
      if (std::accumulate(j.begin(), j.end(), 0) <= m_prime) break;
      j[i] = 1;
    }
    if (i == k) break;
  }
  out.mu_rank = index.size() - mu_kernel_dim(reduced, m);
  return out;
}

DensityBoundReport density_bound_check(const DiffOp& d, const std::vector<int>& m_prime_list) {
  if (d.is_zero()) throw std::invalid_argument("density bound needs a nonzero operator");
  DensityBoundReport report;
  const Reduction red = reduce_operator(d);
  const int n = red.op.order();
  report.n_order = n;
  report.gamma = red.gamma;
  const auto k = static_cast<long>(d.k());
  int max_m = 0;
  for (int mp : m_prime_list) {
    if (mp < 1) throw std::invalid_argument("m' must be positive");
    max_m = std::max(max_m, 2 * n * mp);
  }
  const auto dims = kernel_dims(d, max_m);
  Integer two_n_pow = 1;
  for (long i = 0; i < k; ++i) two_n_pow *= 2 * n;
  report.all_limit_hold = report.all_block_hold = report.trend_non_increasing = true;
  for (int mp : m_prime_list) {
    DensityBoundRow row;
    row.m_prime = mp;
    row.m = 2 * n * mp;
    row.dim_p = dim_P(row.m, static_cast<int>(k));
    row.dim_ker = dims[static_cast<std::size_t>(row.m)];
    row.dim_ker_reduced = mu_kernel_dim(red.op, row.m);
    row.density = ratio(Integer(static_cast<unsigned long>(row.dim_ker)), row.dim_p);
    row.limit_bound = 1 - Rational(Integer(1), two_n_pow);
    row.limit_holds = row.density <= row.limit_bound;
    row.blocks = block_ranks(red.op, mp);
    row.block_bound = 1 - ratio(Integer(static_cast<unsigned long>(row.blocks.rank_sum)), row.dim_p);
    row.block_holds = row.density <= row.block_bound;
    report.all_limit_hold = report.all_limit_hold && row.limit_holds;
    report.all_block_hold = report.all_block_hold && row.block_holds;
    if (!report.rows.empty() && row.density > report.rows.back().density) report.trend_non_increasing = false;
    report.rows.push_back(std::move(row));
  }
  return report;
}

DiffOp random_operator(const RandomOpConfig& cfg, std::uint64_t seed) {
  if (cfg.k == 0 || cfg.max_terms < 1 || cfg.max_order < 0 || cfg.max_beta_degree < 0)
    throw std::invalid_argument("invalid random operator configuration");
  RngStream rng(seed);
  auto& eng = rng.engine();
  std::uniform_int_distribution<int> nterms(1, cfg.max_terms), order(0, cfg.max_order),
      degree(0, cfg.max_beta_degree), coef(1, 6), var(0, static_cast<int>(cfg.k) - 1);
  while (true) {
    std::vector<DiffTerm> terms;
    const int count = nterms(eng);
    for (int t = 0; t < count; ++t) {
      DiffTerm term{Exponent(cfg.k), Exponent(cfg.k, 0), 0};
      for (auto& a : term.alpha) a = order(eng);
      const int deg = degree(eng);
      for (int s = 0; s < deg; ++s) ++term.beta[static_cast<std::size_t>(var(eng))];
      const int c = coef(eng);
      term.c = c <= 3 ? -c : c - 3;
      terms.push_back(std::move(term));
    }
    DiffOp op(cfg.k, std::move(terms));
    if (!op.is_zero()) return op;
  }
}

}  // namespace gh
