#include "doctest.h"

#include "gh/grassmann.hpp"
#include "gh/kernels.hpp"
#include "gh/stats.hpp"
#include "gh/zonal.hpp"

using namespace gh;

namespace {

struct Threads {
  explicit Threads(int n) { kernels::set_thread_count(n); }
  ~Threads() { kernels::set_thread_count(0); }
};

}  // namespace

TEST_CASE("symmetric basis matches exact polynomials") {
  const auto types = enumerate_types(3, 10);
  const kernels::SymmetricBasis basis(types, 3);
  const double y[3] = {0.3, 0.7, 0.11};
  std::vector<double> out(types.size());
  basis.evaluate(y, out.data());
  for (std::size_t i = 0; i < types.size(); ++i) {
    const SymmetricPoly p = monomial_symmetric(types[i], 3);
    CHECK(out[i] == doctest::Approx(p.evaluate(std::span<const double>(y, 3))));
    const double ones[3] = {1, 1, 1};
    CHECK(basis.value_at_ones(i) == p.evaluate(std::span<const double>(ones, 3)));
  }
}

TEST_CASE("serial and parallel kernels are bit-identical for any thread count") {
  const Subspace base = Subspace::canonical(5, 2);
  const auto serial = kernels::draw_cosines_serial(5, 2, base.frame(), 5000, 17, 8);
  const kernels::SymmetricBasis basis(enumerate_types(2, 8), 2);
  const std::vector<kernels::WeightFn> fns{[](const double* y, int) { return y[0] + y[1]; }};
  const auto m_serial = kernels::accumulate_moments_serial(serial, basis, fns);
  const Eigen::MatrixXd c = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(basis.size()),
                                                      static_cast<Eigen::Index>(basis.size()));
  const auto r_serial = kernels::radon_norms_serial(5, 2, 1, base.frame(), basis, c, 300, 4, 23, 8);
  for (int threads : {1, 2, 3, 8}) {
    Threads t(threads);
    CAPTURE(threads);
    const auto par = kernels::draw_cosines_parallel(5, 2, base.frame(), 5000, 17, 8);
    CHECK(par.y == serial.y);
    CHECK(par.batch_offsets == serial.batch_offsets);
    const auto m_par = kernels::accumulate_moments_parallel(par, basis, fns);
    CHECK(m_par.gram == m_serial.gram);
    CHECK(m_par.cross == m_serial.cross);
    CHECK(m_par.mass == m_serial.mass);
    const auto r_par = kernels::radon_norms_parallel(5, 2, 1, base.frame(), basis, c, 300, 4, 23, 8);
    CHECK(r_par.sum == r_serial.sum);
    CHECK(r_par.sum_sq == r_serial.sum_sq);
  }
}

TEST_CASE("batch offsets") {
  const auto off = kernels::batch_offsets(10, 4);
  REQUIRE(off.size() == 5);
  CHECK(off.front() == 0);
  CHECK(off.back() == 10);
  for (std::size_t i = 1; i < off.size(); ++i) CHECK(off[i] - off[i - 1] >= 2);
}

TEST_CASE("statistics helpers") {
  const std::vector<double> xs{1, 2, 3, 4};
  const Estimate e = mean_and_stderr(xs);
  CHECK(e.mean == doctest::Approx(2.5));
  CHECK(e.error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  const std::vector<double> sums{1, 2, 3}, masses{1, 1, 1};
  CHECK(batch_estimate(sums, masses).mean == doctest::Approx(2.0));
  CHECK(batch_estimate(std::vector<double>{4}, std::vector<double>{2}).error == 0.0);
  const std::vector<double> x{1, 2, 3, 4, 5}, y{3, 5, 7, 9, 11};
  CHECK(least_squares(x, y).slope == doctest::Approx(2.0));
  CHECK(kolmogorov_survival(0.0) == doctest::Approx(1.0));
  CHECK(kolmogorov_survival(3.0) < 1e-6);
  RngStream rng(3);
  std::vector<double> u(2000);
  for (auto& v : u) v = rng.uniform();
  CHECK(ks_one_sample(u, [](double t) { return std::clamp(t, 0.0, 1.0); }).p_value > 0.01);
  std::vector<double> shifted(u);
  for (auto& v : shifted) v += 0.2;
  CHECK(ks_two_sample(u, shifted).p_value < 1e-6);
}
