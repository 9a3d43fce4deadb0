#include <chrono>
#include <cstdio>
#include <exception>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphtest/calibrate.hpp"
#include "graphtest/dataset.hpp"
#include "graphtest/io.hpp"
#include "graphtest/rng.hpp"
#include "graphtest/simgen.hpp"
#include "graphtest/svg.hpp"

namespace gt = graphtest;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

char parse_delimiter(const std::string& s) {
  if (s == "tab" || s == "\\t") return '\t';
  if (s == "comma") return ',';
  if (s == "space") return ' ';
  if (s.size() != 1) throw UsageError("--delimiter must be a single character, 'comma' or 'tab'");
  return s[0];
}

std::vector<double> parse_list(const std::string& s, const char* flag) {
  std::vector<double> out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    char* end = nullptr;
    const double v = std::strtod(cur.c_str(), &end);
    if (!end || *end != '\0') throw UsageError(std::string(flag) + ": bad number '" + cur + "'");
    out.push_back(v);
    cur.clear();
  };
  for (char c : s) {
    if (c == ',') {
      flush();
    } else {
      cur.push_back(c);
    }
  }
  flush();
  if (out.empty()) throw UsageError(std::string(flag) + ": empty list");
  return out;
}

// Test tokens: <test>[:<dissim>[:<calibration>]], e.g. nn:rho2 or shp:lin:exact.
// Calibration defaults to exact for the distribution-free shp/nbp tests and
// permutation otherwise.
std::vector<gt::TestVariant> parse_tests(const std::string& list, std::size_t k) {
  std::vector<gt::TestVariant> out;
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    std::vector<std::string> parts;
    std::string cur;
    for (char c : token) {
      if (c == ':') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    parts.push_back(cur);
    if (parts.size() > 3) throw UsageError("--tests: bad token '" + token + "'");
    gt::TestVariant tv;
    const auto kind = gt::test_kind_from_string(parts[0]);
    if (!kind) throw UsageError("--tests: unknown test '" + parts[0] + "'");
    tv.test = *kind;
    tv.k = k;
    tv.dissim = gt::DissimSpec{gt::KernelFamily::euclid_scaled, false};
    if (parts.size() >= 2) {
      const auto dis = gt::dissim_from_string(parts[1]);
      if (!dis) throw UsageError("--tests: unknown dissimilarity '" + parts[1] + "'");
      tv.dissim = *dis;
    }
    const bool dist_free = tv.test == gt::TestKind::shp_run || tv.test == gt::TestKind::nbp;
    tv.method = dist_free ? gt::CalibrationMethod::exact_null : gt::CalibrationMethod::permutation;
    if (parts.size() == 3) {
      if (parts[2] == "perm") {
        tv.method = gt::CalibrationMethod::permutation;
      } else if (parts[2] == "exact") {
        if (!dist_free) throw UsageError("--tests: exact calibration needs shp or nbp");
        tv.method = gt::CalibrationMethod::exact_null;
      } else {
        throw UsageError("--tests: unknown calibration '" + parts[2] + "'");
      }
    }
    out.push_back(tv);
    token.clear();
  };
  for (char c : list) {
    if (c == ',') {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  if (out.empty()) throw UsageError("--tests: empty list");
  return out;
}

int cmd_test(const std::string& data_path, const std::string& kernel, const std::string& madd,
             const std::string& test, std::size_t k, double alpha, std::uint64_t perms,
             std::uint64_t seed, const std::string& calibration, const std::string& delimiter,
             std::size_t label_column) {
  const auto kind = gt::test_kind_from_string(test);
  if (!kind) throw UsageError("unknown --test '" + test + "'");
  const auto fam = gt::kernel_from_string(kernel);
  if (!fam) throw UsageError("unknown --kernel '" + kernel + "'");
  const bool use_madd = madd == "on";
  const bool dist_free = *kind == gt::TestKind::shp_run || *kind == gt::TestKind::nbp;
  if (calibration == "exact" && !dist_free) {
    throw UsageError("--calibration exact needs a distribution-free test (shp or nbp)");
  }

  const gt::Dataset ds = gt::load_delimited(data_path, parse_delimiter(delimiter), label_column);
  const gt::SquareMatrix dm =
      gt::dissimilarity_matrix(ds.pooled, gt::DissimSpec{*fam, use_madd});

  gt::TestOptions opt;
  opt.kind = *kind;
  opt.k = k;
  gt::PermutationPlan plan;
  plan.B = perms;
  plan.seed = seed;
  plan.alpha = alpha;
  const auto method = calibration == "exact" ? gt::CalibrationMethod::exact_null
                                             : gt::CalibrationMethod::permutation;
  const gt::TestReport rep = gt::run_test(dm, opt, ds.labels, plan, method);

  json j;
  j["test"] = test;
  j["kernel"] = kernel;
  j["madd"] = use_madd;
  j["statistic"] = std::string(gt::to_string(rep.stat.name));
  j["value"] = rep.stat.value;
  j["side"] = rep.stat.side == gt::Side::reject_large ? "reject_large" : "reject_small";
  j["p"] = rep.p_value;
  j["reject"] = rep.reject;
  j["alpha"] = rep.alpha;
  j["method"] = rep.method == gt::CalibrationMethod::permutation ? "permutation" : "exact_null";
  j["B"] = rep.B_used;
  j["seed"] = seed;
  j["m"] = ds.labels.m;
  j["n"] = ds.labels.n;
  j["d"] = ds.pooled.dim;
  std::cout << j.dump() << "\n";
  std::cout << "two-sample test '" << test << "' on " << data_path << " (m=" << ds.labels.m
            << ", n=" << ds.labels.n << ", d=" << ds.pooled.dim << ")\n";
  std::cout << "dissimilarity: " << gt::to_string(gt::DissimSpec{*fam, use_madd})
            << "; statistic " << gt::to_string(rep.stat.name) << " = "
            << gt::format_g17(rep.stat.value) << "; p = " << gt::format_g17(rep.p_value)
            << (rep.method == gt::CalibrationMethod::permutation
                    ? " (permutation, B=" + std::to_string(rep.B_used) + ")"
                    : " (exact null)")
            << "\n";
  std::cout << (rep.reject ? "reject" : "fail to reject") << " H0 at alpha="
            << gt::format_g17(alpha) << "\n";
  return kExitOk;
}

int cmd_power(const std::string& scenario, const std::string& d_grid, const std::string& g_grid,
              std::size_t m, std::size_t n, std::size_t reps, const std::string& tests,
              std::size_t k, double alpha, std::uint64_t perms, std::uint64_t seed,
              std::size_t fixed_d, double fixed_gamma, bool null_mode, const std::string& out_dir,
              const std::string& plot, const std::string& timing) {
  const auto id = gt::scenario_from_string(scenario);
  if (!id) throw UsageError("unknown --scenario '" + scenario + "'");
  if (d_grid.empty() == g_grid.empty()) {
    throw UsageError("exactly one of --d-grid / --gamma-grid is required");
  }
  gt::PowerGrid grid;
  gt::Scenario sc;
  sc.id = *id;
  sc.null_mode = null_mode;
  sc.gamma = fixed_gamma;
  sc.dim = fixed_d;
  if (!d_grid.empty()) {
    grid.kind = gt::GridKind::dimension;
    grid.values = parse_list(d_grid, "--d-grid");
  } else {
    grid.kind = gt::GridKind::gamma;
    grid.values = parse_list(g_grid, "--gamma-grid");
  }

  const auto variants = parse_tests(tests, k);
  gt::PermutationPlan plan;
  plan.B = perms;
  plan.seed = seed;
  plan.alpha = alpha;

  const gt::PowerTable table =
      gt::power_study(sc, m, n, grid, variants, plan, reps, timing == "on");

  std::filesystem::create_directories(out_dir);
  const auto csv_path = std::filesystem::path(out_dir) / "power.csv";
  gt::atomic_write_file(csv_path, gt::power_table_csv(table));
  std::cout << "wrote " << csv_path.string() << " (" << table.rows.size() << " rows)\n";

  if (plot == "on") {
    // One SVG per test family; one curve per dissimilarity.
    std::map<std::string, std::map<std::string, gt::SvgSeries>> families;
    for (const gt::PowerRow& r : table.rows) {
      auto& series = families[r.test][r.kernel];
      series.label = r.kernel;
      const double x = grid.kind == gt::GridKind::dimension ? static_cast<double>(r.d) : r.gamma;
      series.points.emplace_back(x, r.power);
    }
    for (const auto& [family, by_kernel] : families) {
      std::vector<gt::SvgSeries> series;
      for (const auto& [_, s] : by_kernel) series.push_back(s);
      const std::string x_label = grid.kind == gt::GridKind::dimension ? "dimension d" : "gamma";
      const std::string title = "power of " + family + " tests, scenario " + scenario;
      const auto svg_path = std::filesystem::path(out_dir) / ("power_" + family + ".svg");
      gt::atomic_write_file(
          svg_path,
          gt::render_power_svg(title, x_label, grid.kind == gt::GridKind::dimension, series));
      std::cout << "wrote " << svg_path.string() << "\n";
    }
  }
  return kExitOk;
}

int cmd_bench(const std::string& ms, const std::string& ns, const std::string& ds,
              std::size_t trials, const std::string& tests, std::size_t k, double alpha,
              std::uint64_t perms, std::uint64_t seed, const std::string& out_file) {
  const auto mlist = parse_list(ms, "--m");
  const auto nlist = parse_list(ns, "--n");
  const auto dlist = parse_list(ds, "--d");
  if (mlist.size() != nlist.size()) throw UsageError("--m and --n lists must pair up");
  if (trials < 1) throw UsageError("--trials >= 1 required");
  const auto variants = parse_tests(tests, k);

  std::vector<gt::BenchRow> rows;
  for (std::size_t s = 0; s < mlist.size(); ++s) {
    const auto m = static_cast<std::size_t>(mlist[s]);
    const auto n = static_cast<std::size_t>(nlist[s]);
    for (double dv : dlist) {
      const auto d = static_cast<std::size_t>(dv);
      gt::Scenario sc;
      sc.id = gt::ScenarioId::ex3;
      sc.dim = d;
      sc.gamma = 1.0;
      sc.null_mode = true;  // both samples N(0, I): timing-only workload
      for (const gt::TestVariant& tv : variants) {
        double total = 0.0;
        for (std::size_t t = 0; t < trials; ++t) {
          const std::uint64_t rep_seed = gt::derive_seed(seed, s * 1000003 + d * 1009 + t);
          const gt::LabeledSample sample = gt::generate(sc, m, n, rep_seed);
          const auto t0 = std::chrono::steady_clock::now();
          const gt::SquareMatrix dm = gt::dissimilarity_matrix(sample.pooled, tv.dissim);
          gt::TestOptions opt;
          opt.kind = tv.test;
          opt.k = tv.k;
          gt::PermutationPlan plan;
          plan.B = perms;
          plan.seed = rep_seed;
          plan.alpha = alpha;
          (void)gt::run_test(dm, opt, sample.labels, plan, tv.method);
          total += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
        gt::BenchRow row;
        row.test = std::string(gt::to_string(tv.test));
        row.kernel = gt::to_string(tv.dissim);
        row.m = m;
        row.n = n;
        row.d = d;
        row.trials = trials;
        row.mean_seconds = total / static_cast<double>(trials);
        rows.push_back(std::move(row));
      }
    }
  }
  const std::string csv = gt::bench_csv(rows);
  if (out_file.empty()) {
    std::cout << csv;
  } else {
    gt::atomic_write_file(out_file, csv);
    std::cout << "wrote " << out_file << " (" << rows.size() << " rows)\n";
  }
  return kExitOk;
}

int cmd_subsample(const std::string& data_path, std::size_t size, std::uint64_t seed,
                  const std::string& out_path, const std::string& delimiter,
                  std::size_t label_column) {
  const char delim = parse_delimiter(delimiter);
  const gt::Dataset ds = gt::load_delimited(data_path, delim, label_column);
  gt::SubsampleSpec spec;
  spec.total_size = size;
  spec.seed = seed;
  const gt::Dataset sub = gt::subsample(ds, spec);
  gt::save_delimited(sub, out_path, delim);
  std::cout << "wrote " << out_path << " (m=" << sub.labels.m << ", n=" << sub.labels.n << ")\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph-based two-sample tests with MADD dissimilarities"};
  app.require_subcommand(1);

  // ---- test ----
  auto* t = app.add_subcommand("test", "run one test on a delimited data file");
  std::string t_data, t_kernel = "euclid", t_madd = "off", t_test, t_cal = "perm";
  std::string t_delim = ",";
  std::size_t t_k = 3, t_label_col = 0;
  double t_alpha = 0.05;
  std::uint64_t t_perms = 1000, t_seed = 0;
  t->add_option("--data", t_data, "input file (one observation per row)")->required();
  t->add_option("--kernel", t_kernel)->check(CLI::IsMember({"euclid", "lin", "log", "exp"}));
  t->add_option("--madd", t_madd, "use the MADD dissimilarity over the base kernel")
      ->check(CLI::IsMember({"on", "off"}));
  t->add_option("--test", t_test)->required()
      ->check(CLI::IsMember({"nn", "mst", "shp", "nbp", "cf-nn", "cf-mst"}));
  t->add_option("--k", t_k, "neighbor count for nn / cf-nn");
  t->add_option("--alpha", t_alpha)->check(CLI::Range(1e-9, 1.0 - 1e-9));
  t->add_option("--perms", t_perms, "permutation count B");
  t->add_option("--seed", t_seed);
  t->add_option("--calibration", t_cal)->check(CLI::IsMember({"perm", "exact"}));
  t->add_option("--delimiter", t_delim);
  t->add_option("--label-column", t_label_col);

  // ---- power ----
  auto* p = app.add_subcommand("power", "Monte Carlo power study over a d or gamma grid");
  std::string p_scenario, p_dgrid, p_ggrid, p_tests = "nn,mst,shp,nbp,cf-nn,cf-mst";
  std::string p_out, p_plot = "off", p_timing = "on";
  std::size_t p_m = 20, p_n = 20, p_reps = 500, p_k = 3, p_d = 2;
  double p_alpha = 0.05, p_gamma = 1.0;
  std::uint64_t p_perms = 1000, p_seed = 0;
  bool p_null = false;
  p->add_option("--scenario", p_scenario)->required()
      ->check(CLI::IsMember({"ex1", "ex2", "ex3", "ex4", "ex5", "ex6", "ex7"}));
  p->add_option("--d-grid", p_dgrid, "comma-separated dimensions");
  p->add_option("--gamma-grid", p_ggrid, "comma-separated gamma values (ex3)");
  p->add_option("--m", p_m);
  p->add_option("--n", p_n);
  p->add_option("--reps", p_reps);
  p->add_option("--tests", p_tests, "comma list of <test>[:<dissim>[:<calibration>]]");
  p->add_option("--k", p_k);
  p->add_option("--alpha", p_alpha)->check(CLI::Range(1e-9, 1.0 - 1e-9));
  p->add_option("--perms", p_perms);
  p->add_option("--seed", p_seed);
  p->add_option("--d", p_d, "fixed dimension for gamma grids");
  p->add_option("--gamma", p_gamma, "fixed gamma for d grids");
  p->add_flag("--null", p_null, "draw both samples from F (level simulation)");
  p->add_option("--out", p_out, "output directory")->required();
  p->add_option("--plot", p_plot)->check(CLI::IsMember({"on", "off"}));
  p->add_option("--timing", p_timing, "write wall seconds (off for byte-stable reruns)")
      ->check(CLI::IsMember({"on", "off"}));

  // ---- bench ----
  auto* b = app.add_subcommand("bench", "average end-to-end run times per (test, kernel, size)");
  std::string b_m = "20", b_n = "20", b_d = "200,500,1000";
  std::string b_tests = "nn:euclid,nn:rho0,mst:euclid,mst:rho0", b_out;
  std::size_t b_trials = 100, b_k = 3;
  double b_alpha = 0.05;
  std::uint64_t b_perms = 1000, b_seed = 0;
  b->add_option("--m", b_m, "comma list, paired with --n");
  b->add_option("--n", b_n);
  b->add_option("--d", b_d, "comma list of dimensions");
  b->add_option("--trials", b_trials);
  b->add_option("--tests", b_tests);
  b->add_option("--k", b_k);
  b->add_option("--alpha", b_alpha);
  b->add_option("--perms", b_perms);
  b->add_option("--seed", b_seed);
  b->add_option("--out", b_out, "output CSV file (stdout when omitted)");

  // ---- subsample ----
  auto* s = app.add_subcommand("subsample", "proportional random subsample of a data file");
  std::string s_data, s_out, s_delim = ",";
  std::size_t s_size = 0, s_label_col = 0;
  std::uint64_t s_seed = 0;
  s->add_option("--data", s_data)->required();
  s->add_option("--size", s_size, "total subsample size")->required();
  s->add_option("--seed", s_seed);
  s->add_option("--out", s_out)->required();
  s->add_option("--delimiter", s_delim);
  s->add_option("--label-column", s_label_col);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      return app.exit(e);
    }
    std::cerr << e.what() << "\n\n" << app.help() << "\n";
    return kExitUsage;
  }

  try {
    if (t->parsed()) {
      return cmd_test(t_data, t_kernel, t_madd, t_test, t_k, t_alpha, t_perms, t_seed, t_cal,
                      t_delim, t_label_col);
    }
    if (p->parsed()) {
      return cmd_power(p_scenario, p_dgrid, p_ggrid, p_m, p_n, p_reps, p_tests, p_k, p_alpha,
                       p_perms, p_seed, p_d, p_gamma, p_null, p_out, p_plot, p_timing);
    }
    if (b->parsed()) {
      return cmd_bench(b_m, b_n, b_d, b_trials, b_tests, b_k, b_alpha, b_perms, b_seed, b_out);
    }
    if (s->parsed()) {
      return cmd_subsample(s_data, s_size, s_seed, s_out, s_delim, s_label_col);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n\n" << app.help() << "\n";
    return kExitUsage;
  } catch (const gt::data_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n\n" << app.help() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
