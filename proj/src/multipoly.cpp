#include "gh/multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace gh {

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool GrevlexLess::operator()(const Exponent& a, const Exponent& b) const {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

namespace {

void monomials_of_degree(std::size_t nvars, int degree, Exponent& cur, std::size_t pos,
                         std::vector<Exponent>& out) {
  if (pos + 1 == nvars) {
    cur[pos] = degree;
    out.push_back(cur);
    return;
  }
  for (int v = degree; v >= 0; --v) {
    cur[pos] = v;
    monomials_of_degree(nvars, degree - v, cur, pos + 1, out);
  }
}

}  // namespace

std::vector<Exponent> monomials_up_to(std::size_t nvars, int max_degree) {
  std::vector<Exponent> out;
  if (nvars == 0) throw std::invalid_argument("nvars must be positive");
  Exponent cur(nvars, 0);
  for (int d = 0; d <= max_degree; ++d) {
    const auto start = out.size();
    monomials_of_degree(nvars, d, cur, 0, out);
    std::sort(out.begin() + static_cast<std::ptrdiff_t>(start), out.end(), GrevlexLess{});
  }
  return out;
}

MultiPoly::MultiPoly(std::size_t nvars) : nvars_(nvars) {
  if (nvars == 0) throw std::invalid_argument("MultiPoly needs at least one variable");
}

MultiPoly MultiPoly::constant(std::size_t nvars, const Rational& c) {
  MultiPoly p(nvars);
  p.add_term(Exponent(nvars, 0), c);
  return p;
}

MultiPoly MultiPoly::monomial(Exponent e, const Rational& c) {
  MultiPoly p(e.size());
  p.add_term(e, c);
  return p;
}

MultiPoly MultiPoly::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw std::out_of_range("variable index out of range");
  Exponent e(nvars, 0);
  e[i] = 1;
  return monomial(std::move(e));
}

int MultiPoly::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
  return d;
}

Rational MultiPoly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const Exponent& e, const Rational& c) {
  if (e.size() != nvars_) throw std::invalid_argument("exponent length does not match nvars");
  for (int v : e)
    if (v < 0) throw std::invalid_argument("negative exponent");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void MultiPoly::check_same(const MultiPoly& q) const {
  if (q.nvars_ != nvars_) throw std::invalid_argument("nvars mismatch");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& q) {
  check_same(q);
  for (const auto& [e, c] : q.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& q) {
  check_same(q);
  for (const auto& [e, c] : q.terms_) add_term(e, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& p, const MultiPoly& q) {
  p.check_same(q);
  MultiPoly out(p.nvars_);
  Exponent e(p.nvars_);
  for (const auto& [ea, ca] : p.terms_) {
    for (const auto& [eb, cb] : q.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& q) { return *this = *this * q; }

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = constant(nvars_, 1);
  MultiPoly base = *this;
  while (e) {
    if (e & 1u) result *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return result;
}

MultiPoly MultiPoly::permuted(const std::vector<std::size_t>& perm) const {
  if (perm.size() != nvars_) throw std::invalid_argument("permutation length mismatch");
  MultiPoly out(nvars_);
  Exponent f(nvars_);
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < nvars_; ++i) f[perm[i]] = e[i];
    out.add_term(f, c);
  }
  return out;
}

double MultiPoly::evaluate(std::span<const double> x) const {
  if (x.size() != nvars_) throw std::invalid_argument("point dimension mismatch");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double t = c.get_d();
    for (std::size_t i = 0; i < nvars_; ++i)
      for (int r = 0; r < e[i]; ++r) t *= x[i];
    sum += t;
  }
  return sum;
}

Rational MultiPoly::evaluate(std::span<const Rational> x) const {
  if (x.size() != nvars_) throw std::invalid_argument("point dimension mismatch");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (int r = 0; r < e[i]; ++r) t *= x[i];
    sum += t;
  }
  return sum;
}

MultiPoly scale(const MultiPoly& p, const Rational& c) { return p * c; }

MultiPoly differentiate(const MultiPoly& p, const Exponent& alpha) {
  if (alpha.size() != p.nvars()) throw std::invalid_argument("multi-index length mismatch");
  for (int a : alpha)
    if (a < 0) throw std::invalid_argument("negative derivative order");
  MultiPoly out(p.nvars());
  Exponent f(p.nvars());
  for (const auto& [e, c] : p.terms()) {
    Rational coef = c;
    bool dead = false;
    for (std::size_t i = 0; i < e.size() && !dead; ++i) {
      if (e[i] < alpha[i]) {
        dead = true;
        break;
      }
      for (int r = 0; r < alpha[i]; ++r) coef *= e[i] - r;
      f[i] = e[i] - alpha[i];
    }
    if (!dead) out.add_term(f, coef);
  }
  return out;
}

bool is_symmetric(const MultiPoly& p) {
  const std::size_t n = p.nvars();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::swap(perm[i], perm[i + 1]);
    if (!(p.permuted(perm) == p)) return false;
  }
  return true;
}

SymmetricPoly::SymmetricPoly(MultiPoly p) : poly_(std::move(p)) {
  if (!is_symmetric(poly_)) throw std::invalid_argument("polynomial is not symmetric");
}

SymmetricPoly monomial_symmetric(const Partition& lambda, std::size_t k) {
  const Partition padded = lambda.resized(k);
  Exponent e(k);
  for (std::size_t i = 0; i < k; ++i) e[i] = padded.parts()[i] / 2;
  // Distinct permutations of the exponent vector, enumerated from sorted order.
  std::sort(e.begin(), e.end());
  MultiPoly p(k);
  do {
    p.add_term(e, 1);
  } while (std::next_permutation(e.begin(), e.end()));
  return SymmetricPoly(std::move(p));
}

MultiPoly elementary_symmetric(std::size_t j, std::size_t k) {
  MultiPoly p(k);
  if (j > k) return p;
  std::vector<int> e(k, 0);
  std::fill(e.end() - static_cast<std::ptrdiff_t>(j), e.end(), 1);
  do {
    p.add_term(e, 1);
  } while (std::next_permutation(e.begin(), e.end()));
  return p;
}

SymmetricPoly sigma_to_y(const MultiPoly& p) {
  const std::size_t k = p.nvars();
  std::vector<MultiPoly> e;
  for (std::size_t j = 1; j <= k; ++j) e.push_back(elementary_symmetric(j, k));
  MultiPoly out(k);
  for (const auto& [expo, c] : p.terms()) {
    MultiPoly term = MultiPoly::constant(k, c);
    for (std::size_t j = 0; j < k; ++j)
      if (expo[j]) term *= e[j].pow(static_cast<unsigned>(expo[j]));
    out += term;
  }
  return SymmetricPoly(std::move(out));
}

Integer dim_P(int m, int k) {
  if (m < 0) return 0;
  return binomial(m + k, k);
}

Integer dim_Ps(int m, int k) {
  if (m < 0) return 0;
  return count_types(k, 2 * m);
}

std::map<Partition, Rational> monomial_symmetric_coordinates(const MultiPoly& p) {
  if (!is_symmetric(p)) throw std::invalid_argument("polynomial is not symmetric");
  std::map<Partition, Rational> out;
  for (const auto& [e, c] : p.terms()) {
    // The orbit representative is the exponent sorted non-increasingly.
    if (!std::is_sorted(e.begin(), e.end(), std::greater<>())) continue;
    std::vector<int> parts(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) parts[i] = 2 * e[i];
    out.emplace(Partition(std::move(parts)), c);
  }
  return out;
}

nlohmann::json to_json(const MultiPoly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back({{"e", e}, {"c", to_string(c)}});
  return {{"nvars", p.nvars()}, {"terms", terms}};
}

MultiPoly poly_from_json(const nlohmann::json& j) {
  MultiPoly p(j.at("nvars").get<std::size_t>());
  for (const auto& t : j.at("terms"))
    p.add_term(t.at("e").get<Exponent>(), parse_rational(t.at("c").get<std::string>()));
  return p;
}

}  // namespace gh
