// motionlab command-line front end.
//
// Exit codes: 0 success, 1 a check failed, 2 usage error, 3 domain error
// (the error kind is printed on stderr).

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "motionlab/motionlab.hpp"

using namespace motionlab;

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("MOTIONLAB_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      fail(ErrorKind::InvalidArgument, "MOTIONLAB_SEED is not an unsigned integer");
    }
  }
  return 42;
}

/// Parses `a+bi`, `a-bi`, `a`, `bi`, `-i`.
Point parse_lambda(std::string s) {
  std::string t;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  }
  const auto num = [&](const std::string& part) -> double {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != part.size()) throw CLI::ValidationError("lambda", "cannot parse \"" + s + "\"");
    return v;
  };
  if (t.empty()) throw CLI::ValidationError("lambda", "empty value");
  if (t.back() != 'i') return {num(t), 0.0};
  t.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = t.size(); i-- > 1;) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, num(t)};
  return {num(t.substr(0, split)), num(t.substr(split))};
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError("list", "not a number: \"" + item + "\"");
    }
  }
  return out;
}

std::vector<std::vector<int>> parse_addresses(const std::string& s) {
  std::vector<std::vector<int>> out;
  std::stringstream ss(s);
  std::string addr;
  while (std::getline(ss, addr, ';')) {
    std::vector<int> a;
    for (double v : parse_list(addr)) a.push_back(static_cast<int>(v));
    out.push_back(std::move(a));
  }
  return out;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text(path, text);
  }
}

template <class Fn>
decltype(auto) with_motion(const AnyMotion& motion, Fn&& fn) {
  return std::visit(std::forward<Fn>(fn), motion);
}

/// N×N mesh over [−0.95, 0.95]² clipped to |λ| ≤ 0.95.
std::vector<Point> square_grid(int n) {
  std::vector<Point> out;
  for (int iy = 0; iy < n; ++iy) {
    for (int ix = 0; ix < n; ++ix) {
      const double x = n == 1 ? 0.0 : -0.95 + 1.9 * ix / (n - 1);
      const double y = n == 1 ? 0.0 : -0.95 + 1.9 * iy / (n - 1);
      if (std::hypot(x, y) <= 0.95) out.emplace_back(x, y);
    }
  }
  return out;
}

std::string sweep_csv_rows(const std::string& param, const std::vector<double>& values,
                           const std::function<std::vector<double>(double)>& bound) {
  std::ostringstream os;
  const auto first = bound(values.empty() ? 0.0 : values.front());
  os << "param,value,bound" << (first.size() > 1 ? ",bound_upper" : "") << "\n";
  for (double v : values) {
    os << param << "," << fmt17(v);
    for (double b : bound(v)) os << "," << fmt17(b);
    os << "\n";
  }
  return os.str();
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"motionlab: holomorphic motions of self-similar sets, dimension estimates and distortion bounds"};
  app.require_subcommand(1);
  int exit_code = 0;

  // simdim -------------------------------------------------------------------
  auto* simdim = app.add_subcommand("simdim", "similarity dimension of a list of ratios");
  std::string ratios_arg;
  double c_arg = 1.0;
  simdim->add_option("--ratios", ratios_arg, "comma-separated contraction ratios in (0,1)")->required();
  simdim->add_option("--c", c_arg, "right-hand side of sum r^s = c");
  simdim->callback([&] {
    const auto r = parse_list(ratios_arg);
    std::cout << shortest(similarity_dimension(r, c_arg)) << "\n";
  });

  // motion -------------------------------------------------------------------
  auto* motion = app.add_subcommand("motion", "build, evaluate and render motions");
  motion->require_subcommand(1);
  std::string config_path, out_path, lambda_arg = "0", method_arg = "chaos";
  int grid_n = 0, depth_arg = 6;
  std::size_t points_arg = 100000;
  std::uint64_t seed_arg = 0;
  unsigned jobs_arg = default_jobs();

  auto* mbuild = motion->add_subcommand("build", "build a motion and write its config with centers");
  mbuild->add_option("--config", config_path)->required();
  mbuild->add_option("--out", out_path)->required();
  mbuild->callback([&] {
    const auto cfg = read_config(config_path);
    const auto m = build_motion(cfg);
    write_text(out_path, config_to_string(materialize(cfg, m)));
  });

  auto* mdim = motion->add_subcommand("dim", "closed-form dimension at lambda or on a grid");
  mdim->add_option("--config", config_path)->required();
  auto* mdim_lambda = mdim->add_option("--lambda", lambda_arg, "a+bi");
  auto* mdim_grid = mdim->add_option("--grid", grid_n, "N for an NxN mesh clipped to |lambda| <= 0.95");
  mdim_lambda->excludes(mdim_grid);
  mdim->add_option("--jobs", jobs_arg);
  mdim->add_option("--out", out_path, "grid CSV output (default stdout)");
  mdim->callback([&] {
    const auto m = build_motion(read_config(config_path));
    if (grid_n > 0) {
      const auto grid = square_grid(grid_n);
      const auto dims = parallel_map<double>(grid.size(), jobs_arg, [&](std::size_t i) {
        return with_motion(m, [&](const auto& mm) { return dimension_at(mm, grid[i]); });
      });
      std::string csv = "re,im,dim_theory\n";
      for (std::size_t i = 0; i < grid.size(); ++i) {
        csv += fmt17(grid[i].real()) + "," + fmt17(grid[i].imag()) + "," + fmt17(dims[i]) + "\n";
      }
      emit(csv, out_path);
    } else {
      const Point l = parse_lambda(lambda_arg);
      std::cout << shortest(with_motion(m, [&](const auto& mm) { return dimension_at(mm, l); })) << "\n";
    }
  });

  auto* mrender = motion->add_subcommand("render", "render f_lambda of the limit set to a cloud CSV");
  mrender->add_option("--config", config_path)->required();
  mrender->add_option("--lambda", lambda_arg);
  mrender->add_option("--method", method_arg)->check(CLI::IsMember({"chaos", "det"}));
  mrender->add_option("--points", points_arg);
  mrender->add_option("--depth", depth_arg);
  auto* render_seed = mrender->add_option("--seed", seed_arg);
  mrender->add_option("--out", out_path)->required();
  mrender->callback([&] {
    const auto m = build_motion(read_config(config_path));
    const Point l = parse_lambda(lambda_arg);
    const std::uint64_t seed = render_seed->count() ? seed_arg : default_seed();
    RenderMethod method = method_arg == "det" ? RenderMethod{Deterministic{depth_arg}} : RenderMethod{ChaosGame{points_arg, seed}};
    const auto cloud = with_motion(m, [&](const auto& mm) { return render_motion(mm, l, method); });
    write_cloud(out_path, cloud);
  });

  // dim estimate -------------------------------------------------------------
  auto* dim = app.add_subcommand("dim", "dimension estimators");
  dim->require_subcommand(1);
  auto* estimate = dim->add_subcommand("estimate", "box-counting (and packing) estimate of a cloud");
  std::string cloud_path, counts_out;
  int kmin = 0, kmax = 40;
  bool use_auto = false, use_packing = false, as_csv = false;
  double saturation = kSaturationExponent;
  estimate->add_option("--cloud", cloud_path)->required();
  auto* kmin_opt = estimate->add_option("--kmin", kmin);
  auto* kmax_opt = estimate->add_option("--kmax", kmax);
  auto* auto_opt = estimate->add_flag("--auto", use_auto, "auto window (default)");
  auto_opt->excludes(kmin_opt)->excludes(kmax_opt);
  estimate->add_flag("--packing", use_packing, "also run the greedy packing estimator");
  estimate->add_option("--saturation", saturation, "auto-window saturation exponent");
  estimate->add_option("--counts-out", counts_out, "write the box counts CSV here");
  estimate->add_flag("--csv", as_csv, "emit a CSV row instead of a key-value block");
  estimate->callback([&] {
    const auto cloud = read_cloud(cloud_path);
    const bool manual = kmin_opt->count() || kmax_opt->count();
    const WindowSpec window = manual ? WindowSpec::range(kmin, kmax) : WindowSpec::autodetect(saturation);
    EstimatorConfig cfg{manual ? kmin : 0, manual ? kmax : 40, window, use_packing};
    const auto counts = dyadic_box_counts(cloud, cfg.k_min, cfg.k_max);
    if (!counts_out.empty()) write_text(counts_out, counts_to_csv(counts));
    const auto sample = estimate_cloud(cloud, cfg);
    if (as_csv) {
      std::cout << "estimator," << kEstimateCsvHeader << "\n" << "box," << estimate_csv_row(sample.box) << "\n";
      if (sample.packing) std::cout << "packing," << estimate_csv_row(*sample.packing) << "\n";
    } else {
      std::cout << estimate_block(sample.box, "box.");
      if (sample.packing) std::cout << estimate_block(*sample.packing, "packing.");
    }
  });

  // bounds -------------------------------------------------------------------
  auto* bounds = app.add_subcommand("bounds", "closed-form quasiconformal distortion bounds");
  bounds->require_subcommand(1);
  double k_arg = 0.0, dim_arg = 1.0, area_arg = 0.0, delta_arg = 1.0;
  std::string case_arg = "general", sweep_param = "k";
  int sweep_n = 0;
  const auto add_sweep = [&](CLI::App* sub) {
    sub->add_option("--sweep", sweep_n, "emit a CSV sweep with this many points");
    sub->add_option("--out", out_path, "sweep CSV output (default stdout)");
  };
  const auto k_sweep = [&] { return linspace(0.0, 0.95, sweep_n); };

  auto* bdim = bounds->add_subcommand("dim", "range of dim F(A) under a k-quasiconformal F");
  bdim->add_option("--dim", dim_arg)->required();
  bdim->add_option("--k", k_arg);
  add_sweep(bdim);
  bdim->callback([&] {
    if (sweep_n > 0) {
      emit(sweep_csv_rows("k", k_sweep(), [&](double k) {
             const auto iv = dim_distortion_interval(dim_arg, k);
             return std::vector<double>{iv.lo, iv.hi};
           }),
           out_path);
      return;
    }
    const auto iv = dim_distortion_interval(dim_arg, k_arg);
    std::cout << "K=" << shortest(k_to_K(k_arg)) << "\nlo=" << shortest(iv.lo) << "\nhi=" << shortest(iv.hi) << "\n";
  });

  auto* barea = bounds->add_subcommand("area", "area distortion bound");
  barea->add_option("--area", area_arg)->required();
  barea->add_option("--k", k_arg);
  barea->add_option("--case", case_arg)->check(CLI::IsMember({"on", "off", "general"}));
  add_sweep(barea);
  barea->callback([&] {
    const AreaCase which = case_arg == "on" ? AreaCase::ConformalOnA : case_arg == "off" ? AreaCase::ConformalOffA : AreaCase::General;
    if (sweep_n > 0) {
      emit(sweep_csv_rows("k", k_sweep(), [&](double k) { return std::vector<double>{area_distortion_bound(area_arg, k, which)}; }),
           out_path);
      return;
    }
    std::cout << "bound=" << shortest(area_distortion_bound(area_arg, k_arg, which)) << "\n"
              << "note=" << kAreaNormalizationNote << "\n";
  });

  auto* bsmirnov = bounds->add_subcommand("smirnov", "dimension bound 1 + k^2 for k-quasicircles");
  bsmirnov->add_option("--k", k_arg);
  add_sweep(bsmirnov);
  bsmirnov->callback([&] {
    if (sweep_n > 0) {
      emit(sweep_csv_rows("k", k_sweep(), [](double k) { return std::vector<double>{smirnov_quasicircle_bound(k)}; }), out_path);
      return;
    }
    std::cout << shortest(smirnov_quasicircle_bound(k_arg)) << "\n";
  });

  auto* bqs = bounds->add_subcommand("qs", "quasisymmetric distortion spectrum");
  bqs->add_option("--delta", delta_arg);
  bqs->add_option("--k", k_arg);
  bqs->add_option("--sweep-param", sweep_param)->check(CLI::IsMember({"k", "delta"}));
  add_sweep(bqs);
  bqs->callback([&] {
    if (sweep_n > 0) {
      const bool over_k = sweep_param == "k";
      const auto values = over_k ? k_sweep() : linspace(1.0 / sweep_n, 1.0, sweep_n);
      emit(sweep_csv_rows(sweep_param, values, [&](double v) {
             const auto q = over_k ? quasisymmetric_spectrum(delta_arg, v) : quasisymmetric_spectrum(v, k_arg);
             return std::vector<double>{q.lower, q.upper};
           }),
           out_path);
      return;
    }
    const auto q = quasisymmetric_spectrum(delta_arg, k_arg);
    std::cout << "Δ=" << shortest(q.lower) << "\nΔ*=" << shortest(q.upper) << "\nclamped=" << (q.clamped ? "true" : "false")
              << "\n";
  });

  // verify -------------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "property checks on a motion");
  std::string check_name, csv_out, sweep_out, mode_arg = "sub", kgrid_arg = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
  std::string addresses_arg = "0;1";
  std::vector<std::string> lambdas_arg;
  std::size_t pairs_arg = 100, samples_arg = 64, grid_points = 50;
  double tol_arg = -1.0, radius_arg = 0.2, rho_arg = 0.9, grid_radius = 0.5, tightening = 1.0;
  bool packing_check = false;
  verify->add_option("check", check_name, "mean-value | harnack | sandwich | diameter | qsh | estimator")
      ->required()
      ->check(CLI::IsMember({"mean-value", "harnack", "sandwich", "diameter", "qsh", "estimator"}));
  verify->add_option("--config", config_path)->required();
  verify->add_option("--csv-out", csv_out, "report CSV (default: printed after the text report)");
  verify->add_option("--tol", tol_arg, "tolerance / slack (check-specific default)");
  verify->add_option("--mode", mode_arg, "mean-value: sub (log dim), super or harmonic (1/dim)")
      ->check(CLI::IsMember({"sub", "super", "harmonic"}));
  verify->add_option("--grid", grid_points, "mean-value/diameter grid size");
  verify->add_option("--radius", radius_arg, "mean-value circle radius");
  verify->add_option("--pairs", pairs_arg, "harnack: random pairs");
  auto* verify_seed = verify->add_option("--seed", seed_arg);
  verify->add_option("--kgrid", kgrid_arg, "sandwich: comma-separated k values");
  verify->add_option("--addresses", addresses_arg, "diameter: ';'-separated addresses, e.g. \"0;1\"");
  verify->add_option("--rho", rho_arg, "diameter: Harnack disk radius");
  verify->add_option("--grid-radius", grid_radius, "diameter: lambda grid radius (< rho)");
  verify->add_option("--tightening", tightening, "diameter: interval exponent (1 = the inequality)");
  verify->add_option("--samples", samples_arg, "qsh: circle samples");
  verify->add_option("--lambda", lambdas_arg, "estimator: lambda values (repeatable)");
  verify->add_option("--points", points_arg, "estimator: chaos-game points");
  verify->add_flag("--packing", packing_check, "estimator: also run the packing estimator");
  verify->add_option("--sweep-out", sweep_out, "estimator: per-lambda CSV");
  verify->add_option("--jobs", jobs_arg);
  verify->callback([&] {
    const auto m = build_motion(read_config(config_path));
    const std::uint64_t seed = verify_seed->count() ? seed_arg : default_seed();
    const auto tol = [&](double dflt) { return tol_arg >= 0.0 ? tol_arg : dflt; };
    const auto reciprocal = [&](Point l) { return with_motion(m, [&](const auto& mm) { return 1.0 / dimension_at(mm, l); }); };
    std::optional<CheckReport> report;
    if (check_name == "mean-value") {
      const auto grid = disk_grid(grid_points, 0.95 - radius_arg);
      if (mode_arg == "sub") {
        const Evaluator logdim = [&](Point l) { return std::log(1.0 / reciprocal(l)); };
        report = check_mean_value_grid(logdim, grid, radius_arg, kCircleSamples, tol(1e-9), MeanMode::Sub);
      } else {
        report = check_mean_value_grid(reciprocal, grid, radius_arg, kCircleSamples, tol(1e-9),
                                       mode_arg == "super" ? MeanMode::Super : MeanMode::Harmonic);
      }
    } else if (check_name == "harnack") {
      report = check_harnack_pairs(reciprocal, pairs_arg, seed, 0.9, tol(1e-9));
    } else if (check_name == "sandwich") {
      const auto ks = parse_list(kgrid_arg);
      report = with_motion(m, [&](const auto& mm) { return check_distortion_sandwich(mm, ks, tol(1e-9)); });
    } else if (check_name == "diameter") {
      const auto* am = std::get_if<AstalaMotion>(&m);
      if (!am) fail(ErrorKind::InvalidArgument, "diameter check needs an astala motion");
      const auto addrs = parse_addresses(addresses_arg);
      const auto grid = disk_grid(grid_points, grid_radius);
      report = check_diameter_harnack(*am, addrs, grid, rho_arg, tightening, tol(1e-12));
    } else if (check_name == "qsh") {
      report = with_motion(m, [&](const auto& mm) { return run_qsh_experiment(mm, samples_arg, tol(1e-12)); });
    } else {
      std::vector<Point> ls;
      for (const auto& s : lambdas_arg) ls.push_back(parse_lambda(s));
      if (ls.empty()) ls = {{0.0, 0.0}, {0.5, 0.0}, {-0.5, 0.0}};
      EstimatorConfig cfg;
      cfg.packing = packing_check;
      const auto result = with_motion(m, [&](const auto& mm) {
        return check_estimator_vs_theory(mm, ls, ChaosGame{points_arg, seed}, cfg, tol(0.07), jobs_arg);
      });
      if (!sweep_out.empty()) write_text(sweep_out, result.sweep_csv());
      report = result.report;
    }
    std::cout << report->text();
    if (csv_out.empty()) {
      std::cout << "\n" << report->csv();
    } else {
      write_text(csv_out, report->csv());
    }
    if (!report->passed) exit_code = kExitCheckFailed;
  });

  // plot ---------------------------------------------------------------------
  auto* plot = app.add_subcommand("plot", "scatter plot of a cloud CSV as SVG");
  int size_arg = 800;
  plot->add_option("--cloud", cloud_path)->required();
  plot->add_option("--out", out_path)->required();
  plot->add_option("--size", size_arg);
  plot->callback([&] { write_text(out_path, cloud_to_svg(read_cloud(cloud_path), size_arg)); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return exit_code;
}
