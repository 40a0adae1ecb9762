// gh: command-line front end for the Grassmannian harmonic-analysis library.

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "acceptance.hpp"
#include "gh/determinants.hpp"
#include "gh/errors.hpp"
#include "gh/grassmann.hpp"
#include "gh/kernels.hpp"
#include "gh/partitions.hpp"
#include "gh/pdekernel.hpp"
#include "gh/provenance.hpp"
#include "gh/rng.hpp"
#include "gh/transforms.hpp"
#include "gh/zonal.hpp"

namespace {

using nlohmann::json;

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kInconclusive = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string shortest(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << j.dump(2) << '\n';
}

std::vector<gh::Rational> parse_list(const std::string& text) {
  std::vector<gh::Rational> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) out.push_back(gh::parse_rational(item));
  return out;
}

struct Options {
  int k = 2, n = 4, max_weight = 12, count = 1, m_max = 20;
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 0;
  double eps = 0.5;
  std::string pred = "lambda2_le:2", op = "cos", out, table, op_file, report, x, y, method = "mc", density_csv;
  bool mu_check = false, density_bound = false, verify = false;
  int det_k = 0, det_n = 1, nodes = 64;
  std::string suite = "exact";
};

int partitions_count(const Options& o) {
  gh::count_types(o.k, o.max_weight);  // validates the arguments before any output
  std::cout << "2m,count\n";
  for (int w = 0; w <= o.max_weight; w += 2) std::cout << w << ',' << gh::count_types(o.k, w).get_str() << '\n';
  return kOk;
}

int partitions_density(const Options& o) {
  const auto pred = gh::TypePredicate::parse(o.pred);
  gh::count_types(o.k, o.max_weight);
  std::cout << "2m,count,density_num,density_den\n";
  for (int w = 0; w <= o.max_weight; w += 2) {
    const gh::Rational d = gh::density(pred, o.k, w);
    std::cout << w << ',' << gh::count_types(o.k, w).get_str() << ',' << d.get_num().get_str() << ','
              << d.get_den().get_str() << '\n';
  }
  return kOk;
}

int grassmann_sample(const Options& o) {
  gh::RngStream rng(o.seed);
  json frames = json::array();
  for (int c = 0; c < o.count; ++c) {
    const gh::Subspace e = gh::haar_sample(o.n, o.k, rng);
    json rows = json::array();
    for (Eigen::Index r = 0; r < e.frame().rows(); ++r) {
      json row = json::array();
      for (Eigen::Index j = 0; j < e.frame().cols(); ++j) row.push_back(e.frame()(r, j));
      rows.push_back(row);
    }
    frames.push_back(rows);
  }
  const json config{{"command", "grassmann sample"}, {"n", o.n}, {"k", o.k}, {"count", o.count}, {"seed", o.seed}};
  const json doc{{"frames", frames}, {"provenance", gh::provenance(config)}};
  if (o.out.empty())
    std::cout << doc.dump(2) << '\n';
  else
    write_json(o.out, doc);
  return kOk;
}

int grassmann_flow(const Options& o) {
  gh::RngStream rng(o.seed);
  const gh::Subspace e0 = gh::Subspace::canonical(o.n, o.k);
  const int kappa = std::min(o.k, o.n - o.k);
  std::cout << "sample";
  for (int j = 1; j <= kappa; ++j) std::cout << ",y" << j;
  for (int j = 1; j <= kappa; ++j) std::cout << ",y" << j << "_flowed";
  std::cout << ",abs_cos,eta\n";
  for (int c = 0; c < o.count; ++c) {
    const gh::Subspace e = gh::haar_sample(o.n, o.k, rng);
    const gh::Subspace g = gh::rescaling_flow(e0, o.eps, e);
    std::cout << c;
    for (double y : gh::principal_cosines(e, e0).y) std::cout << ',' << shortest(y);
    for (double y : gh::principal_cosines(g, e0).y) std::cout << ',' << shortest(y);
    std::cout << ',' << shortest(gh::abs_cosine(e, e0)) << ',' << shortest(gh::jacobian_factor(e0, o.eps, e)) << '\n';
  }
  return kOk;
}

int zonal_build(const Options& o) {
  if (o.out.empty()) throw UsageError("--out is required");
  gh::MomentOracle oracle = o.method == "quadrature" ? gh::MomentOracle::quadrature_kappa1(o.n, o.k, o.nodes)
                                                     : gh::MomentOracle::monte_carlo(o.n, o.k, o.samples, o.seed);
  const gh::JacobiFamily family = gh::build_family(o.max_weight, oracle);
  json config{{"command", "zonal build"}, {"n", o.n},           {"k", o.k},
              {"max_weight", o.max_weight}, {"method", o.method}, {"seed", o.seed}};
  if (o.method == "quadrature")
    config["nodes"] = o.nodes;
  else
    config["samples"] = o.samples;
  json doc = family.to_json();
  doc["provenance"] = gh::provenance(config);
  write_json(o.out, doc);
  return kOk;
}

int transform_spectrum(const Options& o) {
  if (o.out.empty()) throw UsageError("--out is required");
  const gh::OperatorTag op = gh::OperatorTag::parse(o.op);
  const gh::MultiplierTable t = gh::compute_spectrum(op, o.n, o.k, o.max_weight, o.samples, o.seed);
  const json config{{"command", "transform spectrum"}, {"op", op.name()},   {"n", o.n},
                    {"k", o.k},                        {"max_weight", o.max_weight}, {"samples", o.samples},
                    {"seed", o.seed}};
  json doc = t.to_json();
  doc["provenance"] = gh::provenance(config);
  write_json(o.out, doc);
  std::size_t inconclusive = 0;
  for (const auto& e : t.entries)
    if (gh::classify(e.estimate()) == gh::Verdict::inconclusive) ++inconclusive;
  if (inconclusive) {
    std::cerr << inconclusive << " multipliers are inconclusive at 3/5 sigma; re-run with --samples "
              << 4 * o.samples << '\n';
    return kInconclusive;
  }
  return kOk;
}

int transform_classify(const Options& o) {
  const std::string text = read_file(o.table);
  const gh::MultiplierTable t = gh::MultiplierTable::from_json(json::parse(text));
  const auto vanishes = gh::TypePredicate::parse(o.pred);
  std::cout << "type,mean,stderr,sigmas,verdict,predicted\n";
  for (const auto& e : t.entries) {
    std::cout << '"' << e.lambda.to_string() << "\"," << shortest(e.mean) << ',' << shortest(e.error) << ','
              << shortest(e.estimate().sigmas()) << ',' << gh::to_string(gh::classify(e.estimate())) << ','
              << (vanishes(e.lambda) ? "vanishing" : "surviving") << '\n';
  }
  if (!o.density_csv.empty()) {
    std::ofstream out(o.density_csv, std::ios::binary);
    if (!out) throw UsageError("cannot write " + o.density_csv);
    out << "2m,surviving,total,density_num,density_den\n";
    for (const auto& r : gh::support_density(t))
      out << r.max_weight << ',' << r.surviving << ',' << r.total << ',' << r.density.get_num().get_str() << ','
          << r.density.get_den().get_str() << '\n';
  }
  const gh::PatternCheck pc = gh::check_pattern(t, vanishes);
  std::cerr << pc.matched << " matched, " << pc.mismatched << " mismatched, " << pc.inconclusive
            << " inconclusive against " << vanishes.name << '\n';
  if (pc.mismatched) return kFailed;
  if (pc.inconclusive) {
    std::cerr << "re-run transform spectrum with more samples\n";
    return kInconclusive;
  }
  return kOk;
}

int pde_kernel_dims(const Options& o) {
  const std::string text = read_file(o.op_file);
  const gh::DiffOp d = gh::DiffOp::from_json(json::parse(text));
  std::vector<int> ms;
  for (int m = 0; m <= o.m_max; ++m) ms.push_back(m);
  const auto dims = gh::kernel_dims_parallel(d, ms);
  std::cout << "m,dimP,dimKer,density_num,density_den\n";
  json rows = json::array();
  for (std::size_t i = 0; i < ms.size(); ++i) {
    const gh::Integer dim_p = gh::dim_P(ms[i], static_cast<int>(d.k()));
    gh::Rational q(gh::Integer(static_cast<unsigned long>(dims[i])), dim_p);
    q.canonicalize();
    std::cout << ms[i] << ',' << dim_p.get_str() << ',' << dims[i] << ',' << q.get_num().get_str() << ','
              << q.get_den().get_str() << '\n';
  }
  json config{{"command", "pde kernel-dims"}, {"m_max", o.m_max}, {"mu_check", o.mu_check},
              {"density_bound", o.density_bound}};
  json report{{"operator", d.to_json()}, {"digest", gh::hex_digest(text)}};
  bool ok = true;
  std::vector<int> fit_ms;
  for (int m = std::max(1, o.m_max / 3); m <= o.m_max; ++m) fit_ms.push_back(m);
  if (fit_ms.size() >= 5) {
    const gh::KernelReport kr = gh::growth_fit(d, fit_ms);
    report["fit"] = {{"slope", kr.fit.slope},        {"slope_stderr", kr.fit.slope_stderr},
                     {"intercept", kr.fit.intercept}, {"rows_fitted", kr.fitted},
                     {"threshold", kr.threshold},     {"violation", kr.violation}};
    ok = ok && !kr.violation;
  }
  if (o.mu_check) {
    const gh::Reduction red = gh::reduce_operator(d);
    json checks = json::array();
    for (int m = 0; m <= o.m_max; ++m) {
      const std::size_t direct = gh::kernel_dim(red.op, m), mu = gh::mu_kernel_dim(red.op, m);
      checks.push_back({{"m", m}, {"kernel_reduced", direct}, {"mu_kernel", mu}});
      ok = ok && direct == mu;
    }
    report["mu_check"] = {{"gamma", red.gamma}, {"reduced", red.op.to_json()}, {"rows", checks}};
  }
  if (o.density_bound) {
    const int n = gh::reduce_operator(d).op.order();
    std::vector<int> mps;
    for (int mp = 1; 2 * n * mp <= o.m_max; ++mp) mps.push_back(mp);
    const gh::DensityBoundReport r = gh::density_bound_check(d, mps);
    json rows_json = json::array();
    for (const auto& row : r.rows)
      rows_json.push_back({{"m_prime", row.m_prime},
                           {"m", row.m},
                           {"dim_ker", row.dim_ker},
                           {"dim_ker_reduced", row.dim_ker_reduced},
                           {"density", gh::to_string(row.density)},
                           {"limit_bound", gh::to_string(row.limit_bound)},
                           {"block_bound", gh::to_string(row.block_bound)},
                           {"blocks", row.blocks.blocks},
                           {"nonzero_blocks", row.blocks.nonzero},
                           {"block_rank_sum", row.blocks.rank_sum}});
    report["density_bound"] = {{"N", r.n_order},
                               {"rows", rows_json},
                               {"limit_holds", r.all_limit_hold},
                               {"block_holds", r.all_block_hold}};
    ok = ok && r.all_limit_hold && r.all_block_hold;
  }
  report["provenance"] = gh::provenance(config, text);
  write_json(o.report.empty() ? "kernel-report.json" : o.report, report);
  return ok ? kOk : kFailed;
}

int det_factorial(const Options& o) {
  const gh::Rational formula = gh::factorial_det_formula(o.det_k, o.det_n);
  std::cout << gh::to_string(formula) << '\n';
  if (o.verify && gh::exact_det(gh::factorial_matrix(o.det_k, o.det_n)) != formula) {
    std::cerr << "elimination disagrees with the product formula\n";
    return kFailed;
  }
  return kOk;
}

int det_cauchy(const Options& o) {
  const auto x = parse_list(o.x), y = parse_list(o.y);
  const gh::Rational det = gh::cauchy_det(x, y);
  std::cout << gh::to_string(det) << '\n';
  if (o.verify && gh::exact_det(gh::cauchy_matrix(x, y)) != det) {
    std::cerr << "elimination disagrees with the Cauchy product\n";
    return kFailed;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic analysis on real Grassmannians"};
  app.require_subcommand(1);
  Options o;
  int threads = 0;
  if (const char* env = std::getenv("GH_THREADS")) threads = std::atoi(env);
  app.add_option("--threads", threads, "OpenMP threads (default: GH_THREADS or all cores)")->check(CLI::NonNegativeNumber);

  std::function<int()> action;
  auto on = [&](CLI::App* sub, std::function<int()> f) { sub->callback([&action, f] { action = f; }); };

  auto* part = app.add_subcommand("partitions", "O(n)-type counts and densities")->require_subcommand(1);
  auto* pcount = part->add_subcommand("count", "cumulative type counts");
  auto* pdens = part->add_subcommand("density", "density of a predicate");
  for (auto* s : {pcount, pdens}) {
    s->add_option("--k", o.k, "rank kappa")->required()->check(CLI::PositiveNumber);
    s->add_option("--max-weight", o.max_weight, "even maximal weight")->required()->check(CLI::NonNegativeNumber);
  }
  pdens->add_option("--pred", o.pred, "lambda2_le:B | lambda2_ge:B | tail_zero:J | all")->required();
  on(pcount, [&] { return partitions_count(o); });
  on(pdens, [&] { return partitions_density(o); });

  auto* gr = app.add_subcommand("grassmann", "Haar samples and the rescaling flow")->require_subcommand(1);
  auto* gsample = gr->add_subcommand("sample", "orthonormal frames of Haar subspaces");
  auto* gflow = gr->add_subcommand("flow", "principal cosines and eta under g_eps");
  for (auto* s : {gsample, gflow}) {
    s->add_option("--n", o.n)->required()->check(CLI::PositiveNumber);
    s->add_option("--k", o.k)->required()->check(CLI::PositiveNumber);
    s->add_option("--count", o.count)->check(CLI::PositiveNumber);
    s->add_option("--seed", o.seed)->required();
  }
  gsample->add_option("--out", o.out, "JSON output (stdout if omitted)");
  gflow->add_option("--eps", o.eps)->required();
  on(gsample, [&] { return grassmann_sample(o); });
  on(gflow, [&] { return grassmann_flow(o); });

  auto* zonal = app.add_subcommand("zonal", "zonal harmonics")->require_subcommand(1);
  auto* zbuild = zonal->add_subcommand("build", "generalized Jacobi family");
  zbuild->add_option("--n", o.n)->required()->check(CLI::PositiveNumber);
  zbuild->add_option("--k", o.k)->required()->check(CLI::PositiveNumber);
  zbuild->add_option("--max-weight", o.max_weight)->required()->check(CLI::NonNegativeNumber);
  zbuild->add_option("--samples", o.samples)->check(CLI::PositiveNumber);
  zbuild->add_option("--seed", o.seed);
  zbuild->add_option("--method", o.method, "mc or quadrature (kappa = 1)")->check(CLI::IsMember({"mc", "quadrature"}));
  zbuild->add_option("--nodes", o.nodes, "quadrature nodes")->check(CLI::PositiveNumber);
  zbuild->add_option("--out", o.out)->required();
  on(zbuild, [&] {
    if (o.method == "mc" && zbuild->count("--seed") == 0) throw UsageError("--seed is required for --method mc");
    return zonal_build(o);
  });

  auto* tr = app.add_subcommand("transform", "multiplier spectra")->require_subcommand(1);
  auto* tspec = tr->add_subcommand("spectrum", "estimate multipliers");
  tspec->add_option("--op", o.op, "cos | alpha:A | radon:P")->required();
  tspec->add_option("--n", o.n)->required()->check(CLI::PositiveNumber);
  tspec->add_option("--k", o.k)->required()->check(CLI::PositiveNumber);
  tspec->add_option("--max-weight", o.max_weight)->required()->check(CLI::NonNegativeNumber);
  tspec->add_option("--samples", o.samples)->check(CLI::PositiveNumber);
  tspec->add_option("--seed", o.seed)->required();
  tspec->add_option("--out", o.out)->required();
  auto* tcls = tr->add_subcommand("classify", "vanishing/surviving verdicts against a predicted vanishing set");
  tcls->add_option("--table", o.table)->required();
  tcls->add_option("--pred", o.pred, "predicate naming the types predicted to vanish")->required();
  tcls->add_option("--density-csv", o.density_csv, "also write exact surviving densities");
  on(tspec, [&] { return transform_spectrum(o); });
  on(tcls, [&] { return transform_classify(o); });

  auto* pde = app.add_subcommand("pde", "kernels of polynomial-coefficient operators")->require_subcommand(1);
  auto* kd = pde->add_subcommand("kernel-dims", "exact dim Ker D on P_m");
  kd->add_option("--op", o.op_file, "operator JSON")->required();
  kd->add_option("--m-max", o.m_max)->required()->check(CLI::NonNegativeNumber);
  kd->add_flag("--mu-check", o.mu_check, "compare the mu-matrix kernel with the reduced operator");
  kd->add_flag("--density-bound", o.density_bound, "block-rank density bounds at m = 2Nm'");
  kd->add_option("--report", o.report, "JSON report path (default kernel-report.json)");
  on(kd, [&] { return pde_kernel_dims(o); });

  auto* det = app.add_subcommand("det", "exact determinants")->require_subcommand(1);
  auto* dfact = det->add_subcommand("factorial", "det[1/(k+i+j)!]");
  dfact->add_option("--k", o.det_k)->required()->check(CLI::NonNegativeNumber);
  dfact->add_option("--n", o.det_n)->required()->check(CLI::NonNegativeNumber);
  auto* dcau = det->add_subcommand("cauchy", "det[1/(x_i - y_j)]");
  dcau->add_option("--x", o.x, "comma-separated rationals")->required();
  dcau->add_option("--y", o.y, "comma-separated rationals")->required();
  for (auto* s : {dfact, dcau}) s->add_flag("--verify", o.verify, "cross-check by elimination");
  on(dfact, [&] { return det_factorial(o); });
  on(dcau, [&] { return det_cauchy(o); });

  auto* accept = app.add_subcommand("accept", "run the acceptance criteria");
  accept->add_option("--suite", o.suite)->check(CLI::IsMember({"exact", "all"}));
  on(accept, [&] { return gh::acceptance::run_suite(o.suite, std::cout); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  gh::kernels::set_thread_count(threads);
  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << '\n';
    return kUsage;
  } catch (const gh::StatisticalGuardError& e) {
    std::cerr << "inconclusive: " << e.what() << '\n';
    return kInconclusive;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
}
