#include "gh/rational.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace gh {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!is_integer_literal(s))
    throw std::invalid_argument("malformed integer: '" + std::string(s) + "'");
  if (s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  const auto slash = text.find('/');
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = 1;
  if (slash != std::string_view::npos) {
    den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer factorial(unsigned long n) {
  static std::mutex mutex;
  static std::vector<Integer> memo{Integer(1)};
  std::lock_guard lock(mutex);
  while (memo.size() <= n) memo.push_back(memo.back() * static_cast<unsigned long>(memo.size()));
  return memo[n];
}

Integer binomial(long n, long r) {
  if (r < 0 || n < 0 || r > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return out;
}

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("exact_rational: non-finite value");
  Rational q(x);  // mpq_set_d is exact
  q.canonicalize();
  return q;
}

}  // namespace gh
