#include "doctest.h"

#include <cmath>
#include <numbers>

#include "gh/transforms.hpp"

using namespace gh;

namespace {

bool within(const MultiplierEstimate& e, double value, double sigmas) {
  return std::abs(e.mean - value) <= sigmas * e.error;
}

}  // namespace

TEST_CASE("operator tags") {
  CHECK(OperatorTag::parse("cos").kind == OperatorTag::Kind::cosine);
  CHECK(OperatorTag::parse("alpha:2.5").alpha == 2.5);
  CHECK(OperatorTag::parse("radon:1").p == 1);
  CHECK(OperatorTag::parse("alpha:0.5").name() == "alpha:0.5");
  CHECK_THROWS_AS(OperatorTag::parse("alpha:-1"), std::invalid_argument);
  CHECK_THROWS_AS(OperatorTag::parse("radon:0"), std::invalid_argument);
  CHECK_THROWS_AS(OperatorTag::parse("sine"), std::invalid_argument);
  CHECK_THROWS_AS(OperatorTag::parse("alpha:1x"), std::invalid_argument);
}

TEST_CASE("verdicts") {
  CHECK(classify({0.1, 0.1}) == Verdict::vanishing);
  CHECK(classify({-0.3, 0.1}) == Verdict::vanishing);
  CHECK(classify({0.5, 0.1}) == Verdict::surviving);
  CHECK(classify({0.4, 0.1}) == Verdict::inconclusive);
  CHECK(classify({1.0, 0.0}) == Verdict::surviving);
  CHECK(classify({0.0, 0.0}) == Verdict::vanishing);
}

TEST_CASE("cosine transform on the circle") {
  MomentOracle o = MomentOracle::monte_carlo(2, 1, 1'000'000, 101);
  const MultiplierTable t = cosine_spectrum(o, 6);
  CHECK(within(t.at(Partition({0})), 2 / std::numbers::pi, 3));
  CHECK(within(t.at(Partition({2})), 2 / (3 * std::numbers::pi), 3));
  CHECK(within(t.at(Partition({4})), -2 / (15 * std::numbers::pi), 3));
}

TEST_CASE("alpha = 0 averages") {
  MomentOracle o = MomentOracle::monte_carlo(5, 2, 200'000, 102);
  const MultiplierTable t = alpha_cosine_spectrum(o, 8, 0.0);
  CHECK(t.entries.front().mean == doctest::Approx(1.0));
  for (std::size_t i = 1; i < t.entries.size(); ++i) CHECK(classify(t.entries[i].estimate()) == Verdict::vanishing);
}

TEST_CASE("alpha = 2 has finite rank on Gr_2(R^5)") {
  // |cos|^2 = y1 y2 = m_(2,2), so only types with lambda_1 <= 2 can survive.
  MomentOracle o = MomentOracle::monte_carlo(5, 2, 1'000'000, 103);
  const MultiplierTable t = alpha_cosine_spectrum(o, 8, 2.0);
  for (const auto& e : t.entries) {
    CAPTURE(e.lambda);
    CHECK(classify(e.estimate()) == (e.lambda.part(1) <= 2 ? Verdict::surviving : Verdict::vanishing));
  }
  CHECK(classify(t.at(Partition({4, 4})).estimate()) == Verdict::vanishing);
}

TEST_CASE("alpha = 3 image on Gr_2(R^5) is lambda_2 <= 4") {
  MomentOracle o = MomentOracle::monte_carlo(5, 2, 1'000'000, 103);
  const MultiplierTable t = alpha_cosine_spectrum(o, 12, 3.0);
  CHECK(check_pattern(t, TypePredicate::second_part_at_least(6)).ok());
}

TEST_CASE("cosine kills (4,4) on Gr_2(R^4)") {
  MomentOracle o = MomentOracle::monte_carlo(4, 2, 1'000'000, 104);
  const MultiplierTable t = cosine_spectrum(o, 8);
  CHECK(within(t.at(Partition({4, 4})), 0.0, 3));
}

TEST_CASE("Radon adjoint on Gr_2(R^4) -> Gr_1") {
  MomentOracle o = MomentOracle::monte_carlo(4, 2, 400'000, 105);
  const JacobiFamily f = build_family(4, o);
  const MultiplierTable t = radon_adjoint_spectrum(f, 1, 40'000, 16, 106);
  CHECK(t.at(Partition({0, 0})).mean == doctest::Approx(1.0));
  CHECK(within(t.at(Partition({2, 2})), 0.0, 3));
  CHECK(classify(t.at(Partition({2, 0})).estimate()) == Verdict::surviving);
}

TEST_CASE("table JSON round-trip and determinism") {
  const MultiplierTable a = compute_spectrum(OperatorTag::cosine(), 4, 2, 4, 20'000, 9);
  const MultiplierTable b = compute_spectrum(OperatorTag::cosine(), 4, 2, 4, 20'000, 9);
  CHECK(a.to_json().dump() == b.to_json().dump());
  const MultiplierTable c = MultiplierTable::from_json(a.to_json());
  CHECK(c.to_json().dump() == a.to_json().dump());
}

TEST_CASE("pattern check and densities") {
  const auto low = TypePredicate::second_part_at_most(2);
  const MultiplierTable t = synthetic_table(2, 20, low);
  const PatternCheck pc = check_pattern(t, low);
  CHECK(pc.ok());
  CHECK(pc.matched == t.entries.size());
  CHECK(check_pattern(t, TypePredicate::second_part_at_least(4)).mismatched == t.entries.size());
  const auto rows = support_density(t);
  CHECK(rows.back().density == Rational(4, 9));
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i - 1].density <= rows[i].density);

  const MultiplierTable ones = synthetic_table(2, 20, {"none", [](const Partition&) { return false; }});
  CHECK(support_density(ones).back().density == 1);

  const MultiplierTable image = synthetic_table(2, 200, TypePredicate::second_part_at_least(4));
  const auto r = support_density(image);
  CHECK(r.back().density < Rational(1, 10));
}

TEST_CASE("escalation stops once the table is conclusive") {
  int used = -1;
  const MultiplierTable t = spectrum_with_escalation(OperatorTag::cosine(), 2, 1, 4, 100'000, 5, 2, &used);
  CHECK(used == 0);
  CHECK(t.samples == 100'000);
}
