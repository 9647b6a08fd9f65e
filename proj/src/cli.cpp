#include "biharm/cli.hpp"

#include "biharm/cases.hpp"
#include "biharm/parallel.hpp"
#include "biharm/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace biharm {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_number(std::string_view s, const char* what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
    throw UsageError(std::string("bad ") + what + ": '" + std::string(s) + "'");
  return v;
}

// "re,im" or "re"
cplx parse_point(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) return {parse_number(s, "point"), 0.0};
  return {parse_number(std::string_view(s).substr(0, comma), "point"),
          parse_number(std::string_view(s).substr(comma + 1), "point")};
}

// "RxA"
std::pair<int, int> parse_grid(const std::string& s) {
  const auto x = s.find('x');
  if (x == std::string::npos) throw UsageError("grid must look like RxA, got '" + s + "'");
  const double r = parse_number(std::string_view(s).substr(0, x), "grid");
  const double a = parse_number(std::string_view(s).substr(x + 1), "grid");
  if (r < 1 || a < 1 || r != std::floor(r) || a != std::floor(a))
    throw UsageError("grid dimensions must be positive integers, got '" + s + "'");
  return {static_cast<int>(r), static_cast<int>(a)};
}

// Writes to cfg.out if set, else to `fallback`.
template <typename Fn>
void with_output(const RunConfig& cfg, std::ostream& fallback, Fn&& fn) {
  if (cfg.out.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream file(cfg.out);
  if (!file) throw UsageError("cannot open output file: " + cfg.out);
  fn(file);
  file.flush();
  if (!file) throw UsageError("write failed: " + cfg.out);
}

std::string num(double x) { return std::isfinite(x) ? format_double(x) : (std::isnan(x) ? "nan" : "inf"); }

}  // namespace

ProblemSpec resolve_problem(const std::string& problem) {
  if (is_builtin_case(problem)) return builtin_case(problem);
  std::ifstream in(problem);
  if (!in) throw UsageError("cannot open problem file: " + problem);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("problem file is not valid JSON: " + std::string(e.what()));
  }
  if (!doc.is_object()) throw UsageError("problem file must hold a JSON object");
  auto field = [&](const char* key) -> std::string {
    if (!doc.contains(key) || !doc[key].is_string())
      throw UsageError(std::string("problem file: missing string field '") + key + "'");
    return doc[key].get<std::string>();
  };
  const std::string name = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : problem;
  return make_problem(name, field("f_star"), field("phi"), field("g"));
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const ProblemSpec spec = resolve_problem(cfg.problem);
  const int R = cfg.grid_radial;
  const int A = cfg.grid_angular;
  std::vector<cplx> zs;
  zs.reserve(static_cast<std::size_t>(R) * A);
  for (int i = 0; i < R; ++i)
    for (int j = 0; j < A; ++j)
      zs.push_back(std::polar(static_cast<double>(i + 1) / (R + 1), 2.0 * std::numbers::pi * j / A));

  std::vector<cplx> vals(zs.size());
  std::vector<char> failed(zs.size(), 0);
  parallel_for(zs.size(), [&](std::size_t k) {
    try {
      vals[k] = evaluate_solution(spec, zs[k], cfg.quad);
    } catch (const NoConvergence&) {
      failed[k] = 1;
      vals[k] = {std::nan(""), std::nan("")};
    }
  });
  const bool any_failed = std::any_of(failed.begin(), failed.end(), [](char c) { return c != 0; });

  with_output(cfg, out, [&](std::ostream& os) {
    if (cfg.format == OutputFormat::json) {
      nlohmann::json rows = nlohmann::json::array();
      for (std::size_t k = 0; k < zs.size(); ++k) {
        nlohmann::json row{{"re_z", zs[k].real()}, {"im_z", zs[k].imag()}};
        if (failed[k]) {
          row["re_f"] = nullptr;
          row["im_f"] = nullptr;
          row["abs_f"] = nullptr;
        } else {
          row["re_f"] = vals[k].real();
          row["im_f"] = vals[k].imag();
          row["abs_f"] = std::abs(vals[k]);
        }
        if (any_failed) row["status"] = failed[k] ? "no_convergence" : "ok";
        rows.push_back(std::move(row));
      }
      os << nlohmann::json{{"problem", spec.name}, {"rows", std::move(rows)}}.dump(2) << '\n';
      return;
    }
    os << "re_z,im_z,re_f,im_f,abs_f" << (any_failed ? ",status" : "") << '\n';
    for (std::size_t k = 0; k < zs.size(); ++k) {
      os << num(zs[k].real()) << ',' << num(zs[k].imag()) << ',' << num(vals[k].real()) << ','
         << num(vals[k].imag()) << ',' << num(std::abs(vals[k]));
      if (any_failed) os << ',' << (failed[k] ? "no_convergence" : "ok");
      os << '\n';
    }
  });
  return any_failed ? kExitNoConvergence : kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!is_suite(cfg.suite)) throw UsageError("unknown suite: " + cfg.suite);
  SuiteOptions opt;
  opt.quad = cfg.quad;
  opt.seed = cfg.seed;
  opt.q = cfg.q;
  opt.norms = cfg.norms;
  opt.ratio_tol = 10.0 * cfg.quad.adapt_tol;
  const Report report = run_suite(cfg.suite, opt);
  with_output(cfg, out, [&](std::ostream& os) {
    if (cfg.format == OutputFormat::json) write_json(report, os);
    else write_csv(report, os);
  });
  err << "verify " << cfg.suite << ": " << report.rows.size() << " rows, " << report.count(RowStatus::pass)
      << " passed, " << report.count(RowStatus::fail) << " failed, " << report.count(RowStatus::flagged)
      << " flagged\n";
  return report.ok() ? kExitOk : kExitAssertion;
}

int cmd_kernels(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const Point z(cfg.z);
  const Point w(cfg.w);
  if (!z.interior()) throw UsageError("--z must lie in the open disk");
  struct Entry {
    std::string name;
    cplx value;
  };
  std::vector<Entry> entries;
  const cplx zv = z;
  const cplx wv = w;
  entries.push_back({"poisson", poisson_kernel(zv, cfg.t)});
  const auto pg = poisson_kernel_gradient(zv, cfg.t);
  entries.push_back({"poisson_dz", pg.dz});
  entries.push_back({"poisson_dzb", pg.dzb});
  entries.push_back({"conjugate", conjugate_kernel(zv, cfg.t)});
  const auto cg = conjugate_kernel_gradient(zv, cfg.t);
  entries.push_back({"conjugate_dz", cg.dz});
  entries.push_back({"conjugate_dzb", cg.dzb});
  entries.push_back({"green", green_biharmonic(zv, wv)});
  if (zv != wv) {
    const auto gg = green_gradient(zv, wv);
    entries.push_back({"green_dz", gg.dz});
    entries.push_back({"green_dzb", gg.dzb});
  }
  entries.push_back({"hyperbolic_density", hyperbolic_density(zv)});

  with_output(cfg, out, [&](std::ostream& os) {
    if (cfg.format == OutputFormat::json) {
      nlohmann::json doc{{"z", {zv.real(), zv.imag()}}, {"w", {wv.real(), wv.imag()}}, {"t", cfg.t}};
      for (const auto& e : entries) doc["values"][e.name] = {e.value.real(), e.value.imag()};
      os << doc.dump(2) << '\n';
      return;
    }
    os << "kernel,re,im\n";
    for (const auto& e : entries) os << e.name << ',' << num(e.value.real()) << ',' << num(e.value.imag()) << '\n';
  });
  return kExitOk;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  using clock = std::chrono::steady_clock;
  const ProblemSpec spec = resolve_problem(cfg.problem);
  Rng rng(cfg.seed);
  std::vector<cplx> pts(100);
  for (auto& z : pts) z = rng.in_disk(0.9);

  struct Row {
    std::string op;
    int n_r;
    int n_theta;
    double median_ns;
    double p95_ns;
  };
  std::vector<Row> rows;
  auto stats = [](std::vector<double> ns) {
    std::sort(ns.begin(), ns.end());
    const double median = ns.size() % 2 ? ns[ns.size() / 2] : 0.5 * (ns[ns.size() / 2 - 1] + ns[ns.size() / 2]);
    const auto idx = static_cast<std::size_t>(std::ceil(0.95 * ns.size())) - 1;
    return std::pair{median, ns[std::min(idx, ns.size() - 1)]};
  };
  volatile double sink = 0.0;
  for (int n_r : {32, 64, 128, 256}) {
    QuadConfig q = cfg.quad;
    q.n_r = n_r;
    for (const char* op : {"green_potential", "evaluate_solution"}) {
      std::vector<double> ns;
      ns.reserve(pts.size());
      for (cplx z : pts) {
        const auto start = clock::now();
        const cplx v = std::string_view(op) == "green_potential" ? green_potential(spec.g, z, q)
                                                                 : evaluate_solution(spec, z, q);
        const auto stop = clock::now();
        sink = sink + v.real();
        ns.push_back(std::chrono::duration<double, std::nano>(stop - start).count());
      }
      const auto [median, p95] = stats(std::move(ns));
      rows.push_back({op, n_r, q.n_theta, median, p95});
    }
  }

  with_output(cfg, out, [&](std::ostream& os) {
    if (cfg.format == OutputFormat::json) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : rows)
        arr.push_back({{"op", r.op}, {"n_r", r.n_r}, {"n_theta", r.n_theta}, {"median_ns", r.median_ns},
                       {"p95_ns", r.p95_ns}});
      os << nlohmann::json{{"problem", spec.name}, {"rows", std::move(arr)}}.dump(2) << '\n';
      return;
    }
    os << "op,n_r,n_theta,median_ns,p95_ns\n";
    for (const auto& r : rows)
      os << r.op << ',' << r.n_r << ',' << r.n_theta << ',' << std::llround(r.median_ns) << ','
         << std::llround(r.p95_ns) << '\n';
  });
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Biharmonic Dirichlet problem on the unit disk: solver and verification suites", "biharm"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string grid;
  std::string format = "csv";
  std::string z_text;
  std::string w_text;
  std::optional<double> norm_phi1;
  std::optional<double> norm_g;

  auto add_quad = [&](CLI::App* sub) {
    sub->add_option("--n-theta", cfg.quad.n_theta, "boundary nodes (power of two)");
    sub->add_option("--n-r", cfg.quad.n_r, "radial Gauss-Legendre nodes");
    sub->add_option("--adapt-tol", cfg.quad.adapt_tol, "relative tolerance of adaptive boundary rule");
    sub->add_option("--n-theta-max", cfg.quad.n_theta_max, "cap for adaptive doubling");
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };

  auto* solve = app.add_subcommand("solve", "evaluate the solution on a polar grid");
  solve->add_option("--problem", cfg.problem, "built-in case or JSON problem file");
  solve->add_option("--grid", grid, "RxA radii by angles (default 16x64)");
  add_quad(solve);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", cfg.suite, "thm1 | thm2 | thm3 | cor | kernels | lemmas")->required();
  verify->add_option("--seed", cfg.seed, "seed for randomized sweeps");
  verify->add_option("--q", cfg.q, "thm2: exponent q (1 or >= 2)");
  verify->add_option("--norm-phi1", norm_phi1, "exact sup norm of phi_1 (overrides the estimate)");
  verify->add_option("--norm-g", norm_g, "exact sup norm of g (overrides the estimate)");
  verify->add_option("--problem", cfg.problem, "ignored by the suites; accepted for uniformity");
  add_quad(verify);

  auto* kernels = app.add_subcommand("kernels", "print kernel values at a point");
  kernels->add_option("--z", z_text, "interior point re,im (default 0.5,0)");
  kernels->add_option("--w", w_text, "second point re,im for the Green function (default 0,0)");
  kernels->add_option("--t", cfg.t, "boundary angle for Poisson-type kernels");
  add_quad(kernels);

  auto* bench = app.add_subcommand("bench", "time green_potential and evaluate_solution");
  bench->add_option("--problem", cfg.problem, "built-in case or JSON problem file");
  bench->add_option("--seed", cfg.seed, "seed for the sample points");
  add_quad(bench);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    cfg.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
    cfg.norms.phi1 = norm_phi1;
    cfg.norms.g = norm_g;
    if ((norm_phi1 && *norm_phi1 < 0) || (norm_g && *norm_g < 0)) throw UsageError("norm overrides must be >= 0");
    if (!grid.empty()) std::tie(cfg.grid_radial, cfg.grid_angular) = parse_grid(grid);
    if (!z_text.empty()) cfg.z = parse_point(z_text);
    if (!w_text.empty()) cfg.w = parse_point(w_text);
    cfg.quad.validate();

    if (*solve) return cmd_solve(cfg, out, err);
    if (*verify) return cmd_verify(cfg, out, err);
    if (*kernels) return cmd_kernels(cfg, out, err);
    if (*bench) return cmd_bench(cfg, out, err);
    return kExitUsage;
  } catch (const NoConvergence& e) {
    err << "error: " << e.what() << '\n';
    return kExitNoConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("biharm");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace biharm
