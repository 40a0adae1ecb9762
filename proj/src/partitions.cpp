#include "gh/partitions.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace gh {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0 || parts_[i] % 2 != 0)
      throw std::invalid_argument("partition parts must be even and non-negative");
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw std::invalid_argument("partition parts must be non-increasing");
    weight_ += parts_[i];
  }
}

Partition Partition::resized(std::size_t len) const {
  std::vector<int> out(len, 0);
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i < len) {
      out[i] = parts_[i];
    } else if (parts_[i] != 0) {
      throw std::invalid_argument("cannot trim nonzero part from " + to_string());
    }
  }
  return Partition(std::move(out));
}

std::string Partition::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(parts_[i]);
  }
  return s + ")";
}

Partition Partition::parse(std::string_view text) {
  if (text.size() < 2 || text.front() != '(' || text.back() != ')')
    throw std::invalid_argument("partition must look like (a,b,...)");
  text = text.substr(1, text.size() - 2);
  std::vector<int> parts;
  while (!text.empty()) {
    auto comma = text.find(',');
    auto tok = text.substr(0, comma);
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw std::invalid_argument("bad partition part '" + std::string(tok) + "'");
    parts.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return Partition(std::move(parts));
}

std::strong_ordering Partition::operator<=>(const Partition& other) const {
  if (auto c = weight_ <=> other.weight_; c != 0) return c;
  return parts_ <=> other.parts_;
}

std::ostream& operator<<(std::ostream& os, const Partition& p) { return os << p.to_string(); }

TypePredicate TypePredicate::always() {
  return {"all", [](const Partition&) { return true; }};
}

TypePredicate TypePredicate::second_part_at_most(int bound) {
  return {"lambda2_le:" + std::to_string(bound),
          [bound](const Partition& p) { return p.part(2) <= bound; }};
}

TypePredicate TypePredicate::second_part_at_least(int bound) {
  return {"lambda2_ge:" + std::to_string(bound),
          [bound](const Partition& p) { return p.part(2) >= bound; }};
}

TypePredicate TypePredicate::at_most_parts(int j) {
  if (j < 0) throw std::invalid_argument("tail_zero index must be non-negative");
  return {"tail_zero:" + std::to_string(j),
          [j](const Partition& p) { return p.part(static_cast<std::size_t>(j) + 1) == 0; }};
}

TypePredicate TypePredicate::parse(std::string_view text) {
  if (text == "all") return always();
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("unknown predicate '" + std::string(text) + "'");
  const auto name = text.substr(0, colon);
  const auto arg = text.substr(colon + 1);
  int value = 0;
  auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), value);
  if (ec != std::errc() || ptr != arg.data() + arg.size())
    throw std::invalid_argument("bad predicate parameter '" + std::string(arg) + "'");
  if (name == "lambda2_le") return second_part_at_most(value);
  if (name == "lambda2_ge") return second_part_at_least(value);
  if (name == "tail_zero") return at_most_parts(value);
  throw std::invalid_argument("unknown predicate '" + std::string(text) + "'");
}

namespace {

void check_args(int k, int max_weight) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (max_weight < 0 || max_weight % 2 != 0)
    throw std::invalid_argument("max_weight must be even and non-negative");
}

// Fills parts[pos..] with a non-increasing even tail summing to `remaining`,
// each part at most `cap`, appending complete partitions lexicographically
// increasing.
void fill(std::vector<int>& parts, std::size_t pos, int remaining, int cap,
          std::vector<Partition>& out) {
  if (pos == parts.size()) {
    if (remaining == 0) out.emplace_back(parts);
    return;
  }
  const int slots = static_cast<int>(parts.size() - pos);
  // The leading part must be large enough for the rest to fit under it.
  const int lo = ((remaining + slots - 1) / slots + 1) / 2 * 2;
  const int hi = std::min(cap, remaining);
  for (int v = lo; v <= hi; v += 2) {
    parts[pos] = v;
    fill(parts, pos + 1, remaining - v, v, out);
  }
  parts[pos] = 0;
}

}  // namespace

std::vector<Partition> enumerate_types_of_weight(int k, int weight) {
  check_args(k, weight);
  std::vector<Partition> out;
  std::vector<int> parts(static_cast<std::size_t>(k), 0);
  fill(parts, 0, weight, weight, out);
  return out;
}

std::vector<Partition> enumerate_types(int k, int max_weight) {
  check_args(k, max_weight);
  std::vector<Partition> out;
  for (int w = 0; w <= max_weight; w += 2) {
    auto layer = enumerate_types_of_weight(k, w);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

Integer types_of_weight(int k, int half_weight) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (half_weight < 0) return 0;
  // p(j, parts <= i) by the usual recurrence over allowed part sizes 1..k
  // (conjugation turns "at most k parts" into "parts of size at most k").
  std::vector<Integer> ways(static_cast<std::size_t>(half_weight) + 1, 0);
  ways[0] = 1;
  for (int size = 1; size <= k; ++size)
    for (int j = size; j <= half_weight; ++j) ways[j] += ways[j - size];
  return ways[half_weight];
}

Integer count_types(int k, int max_weight) {
  check_args(k, max_weight);
  const int m = max_weight / 2;
  std::vector<Integer> ways(static_cast<std::size_t>(m) + 1, 0);
  ways[0] = 1;
  for (int size = 1; size <= k; ++size)
    for (int j = size; j <= m; ++j) ways[j] += ways[j - size];
  Integer total = 0;
  for (const auto& w : ways) total += w;
  return total;
}

CountBounds restricted_partition_bounds(int k, int half_weight) {
  const Rational inv_kfact(Integer(1), factorial(static_cast<unsigned long>(k)));
  const long m = half_weight;
  CountBounds b;
  b.lower = inv_kfact * Rational(binomial(m + k - 1, k - 1));
  b.upper = inv_kfact * Rational(binomial(m + static_cast<long>(k) * (k + 1) / 2 - 1, k - 1));
  b.lower.canonicalize();
  b.upper.canonicalize();
  return b;
}

Rational density(const TypePredicate& pred, int k, int max_weight) {
  const auto types = enumerate_types(k, max_weight);
  long hits = 0;
  for (const auto& t : types)
    if (pred(t)) ++hits;
  Rational q(hits, static_cast<long>(types.size()));
  q.canonicalize();
  return q;
}

}  // namespace gh
