#include "nlse/app/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "json.hpp"
#include "nlse/integrator.hpp"
#include "nlse/snapshot.hpp"
#include "nlse/specmat.hpp"
#include "nlse/stability.hpp"

namespace nlse::app {

std::string sig4(double v) {
  if (v == 0.0 || !std::isfinite(v)) return format_double(v);
  int exponent = static_cast<int>(std::floor(std::log10(std::abs(v))));
  char buf[64];
  auto render = [&](int e) {
    const int decimals = 3 - e;
    if (decimals < 0) {
      std::snprintf(buf, sizeof buf, "%.4g", v);
    } else {
      std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    }
  };
  render(exponent);
  if (std::abs(std::strtod(buf, nullptr)) >= std::pow(10.0, exponent + 1)) render(exponent + 1);
  return buf;
}

namespace {

using json = nlohmann::json;

std::string pct(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", value);
  return buf;
}

std::string grid_text(const GridSpec& g) {
  std::string s;
  for (int axis = 0; axis < g.dim(); ++axis) {
    if (axis > 0) s += 'x';
    s += std::to_string(g.n(axis));
  }
  return s + ", h = " + format_double(g.h());
}

// "-" means the given stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path == "-") {
      os_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw IoError("cannot open " + path + " for writing");
    os_ = file_.get();
  }
  std::ostream& operator*() { return *os_; }
  void close(const std::string& path) {
    os_->flush();
    if (!*os_) throw IoError("write to " + path + " failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_ = nullptr;
};

void write_json(const std::string& path, const json& doc, std::ostream& out) {
  Sink sink(path, out);
  *sink << doc.dump(2) << '\n';
  sink.close(path);
}

struct Problem {
  Preset preset;
  SchemeOrder scheme;
  BoundaryKind boundary;
};

Problem resolve(const RunConfig& config) {
  Problem p{build_problem(config), SchemeOrder::kCd2, BoundaryKind::kDirichlet};
  p.scheme = resolved_scheme(config, p.preset);
  p.boundary = resolved_boundary(config, p.preset);
  return p;
}

json report_json(const StabilityReport& r, const Problem& p) {
  return {{"problem", p.preset.name},
          {"scheme", std::string(to_string(r.scheme))},
          {"boundary", std::string(to_string(p.boundary))},
          {"dim", r.dim},
          {"h", r.h},
          {"a", r.a},
          {"k_lin", r.k_lin},
          {"k_linz", r.k_linz},
          {"binding", r.binding_description()},
          {"binding_magnitude", r.binding.magnitude},
          {"suggested_k_min", 0.8 * r.k_linz},
          {"suggested_k_max", 0.9 * r.k_linz}};
}

double resolve_k(const RunConfig& config, const Problem& p) {
  if (config.k && config.k_fraction) throw ConfigError("give either k or k_fraction, not both");
  if (config.k) return *config.k;
  if (config.k_fraction) {
    const auto r = bound_for_state(p.preset.psi0, p.preset.params, p.scheme, p.boundary);
    return *config.k_fraction * r.k_linz;
  }
  throw ConfigError("simulate needs a time-step (k or k_fraction)");
}

}  // namespace

int cmd_bound(const RunConfig& config, std::ostream& out) {
  const Problem p = resolve(config);
  const StabilityReport r = bound_for_state(p.preset.psi0, p.preset.params, p.scheme, p.boundary);
  out << "problem       " << p.preset.name << '\n'
      << "scheme        " << to_string(r.scheme) << '\n'
      << "boundary      " << to_string(p.boundary) << '\n'
      << "grid          " << grid_text(p.preset.psi0.grid()) << '\n'
      << "k_lin         " << sig4(r.k_lin) << '\n'
      << "k_linz        " << sig4(r.k_linz) << '\n'
      << "binding       " << r.binding_description() << '\n'
      << "suggested k   " << sig4(0.8 * r.k_linz) << " to " << sig4(0.9 * r.k_linz)
      << " (10-20% below k_linz)\n";
  if (config.json) write_json(*config.json, report_json(r, p), out);
  return kExitOk;
}

int cmd_simulate(const RunConfig& config, std::ostream& out) {
  const Problem p = resolve(config);
  StepConfig step;
  step.k = resolve_k(config, p);
  step.t_end = config.t_end;
  step.scheme = p.scheme;
  step.boundary = p.boundary;
  step.monitor_every = config.monitor_every;
  try {
    step.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const RunResult run = integrate(p.preset.psi0, step, p.preset.params);
  {
    Sink sink(config.out, out);
    write_run_csv(*sink, run.record);
    sink.close(config.out);
  }
  if (config.snapshot) {
    try {
      write_snapshot_file(*config.snapshot, run.field);
    } catch (const std::exception& e) {
      throw IoError(e.what());
    }
  }
  return run.record.diverged ? kExitDiverged : kExitOk;
}

int cmd_threshold(const RunConfig& config, std::ostream& out) {
  if (!(config.t_end > 0.0)) {
    throw ConfigError("threshold needs t_end > 0: stability cannot be classified without stepping");
  }
  const Problem p = resolve(config);
  const StabilityReport r = bound_for_state(p.preset.psi0, p.preset.params, p.scheme, p.boundary);
  ThresholdOptions opt;
  opt.scheme = p.scheme;
  opt.boundary = p.boundary;
  opt.t_end = config.t_end;
  opt.digits = config.digits;
  opt.k_start = r.k_linz;
  opt.k_lo = config.k_lo;
  opt.k_hi = config.k_hi;
  ThresholdResult t;
  try {
    t = find_threshold(p.preset.psi0, p.preset.params, opt);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const double diff_lin = (t.k_num - r.k_lin) / r.k_lin * 100.0;
  const double diff_linz = (t.k_num - r.k_linz) / r.k_linz * 100.0;
  out << "scheme  k_lin      k_linz     k_num      diff_lin_%  diff_linz_%\n";
  char line[160];
  std::snprintf(line, sizeof line, "%-7s %-10s %-10s %-10s %-11s %s\n",
                std::string(to_string(p.scheme)).c_str(), sig4(r.k_lin).c_str(),
                sig4(r.k_linz).c_str(), sig4(t.k_num).c_str(), pct(diff_lin).c_str(),
                pct(diff_linz).c_str());
  out << line << "probes  " << t.probes.size() << '\n';
  if (config.json) {
    json doc = report_json(r, p);
    doc["k_num"] = t.k_num;
    doc["diff_lin_pct"] = diff_lin;
    doc["diff_linz_pct"] = diff_linz;
    doc["t_end"] = config.t_end;
    json probes = json::array();
    for (const auto& probe : t.probes) probes.push_back({{"k", probe.k}, {"stable", probe.stable}});
    doc["probes"] = probes;
    write_json(*config.json, doc, out);
  }
  return kExitOk;
}

int cmd_spectrum(const RunConfig& config, std::ostream& out) {
  const int dim = config.spectrum_dim;
  const std::size_t n = config.spectrum_n;
  if (dim < 1 || dim > 3) throw ConfigError("spectrum dimension must be 1, 2 or 3");
  if (n < 5) throw ConfigError("spectrum grid needs at least 5 points per axis");
  const GridSpec g = GridSpec::centered(dim, n, 1.0);
  if (g.size() > kMaxDensePoints) throw ConfigError("spectrum grid too large for a dense matrix");
  SchemeOrder scheme = SchemeOrder::kCd2;
  BoundaryKind boundary = BoundaryKind::kDirichlet;
  try {
    if (config.scheme) scheme = parse_scheme(*config.scheme);
    if (config.boundary) boundary = parse_boundary_kind(*config.boundary);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const std::vector<double> L(g.size(), 0.0);
  const std::size_t nb = classify_points(g).boundary.size();
  const std::vector<double> zeros(nb, 0.0);
  const SchemeMatrix A = build_A(scheme, boundary, g, L, zeros, zeros);
  const SchemeMatrix M = boundary == BoundaryKind::kPeriodic ? A : extract_interior(A);

  Sink sink(config.out, out);
  *sink << "center,radius\n";
  for (const auto& d : gershgorin_disks(M.values)) {
    *sink << format_double(d.center) << ',' << format_double(d.radius) << '\n';
  }
  *sink << "# gershgorin_bound " << format_double(gershgorin_bound(M.values)) << '\n'
        << "# spectral_radius " << format_double(max_abs_eig(M.values)) << '\n';
  sink.close(config.out);
  if (config.dump) {
    Sink dump(*config.dump, out);
    write_coordinate(*dump, M);
    dump.close(*config.dump);
  }
  return kExitOk;
}

int cmd_region(const RunConfig& config, std::ostream& out) {
  if (config.order < 1 || config.order > 4) throw ConfigError("region order must be 1 to 4");
  if (config.resolution < 2) throw ConfigError("region resolution must be at least 2");
  if (!(config.re_max > config.re_min) || !(config.im_max > config.im_min)) {
    throw ConfigError("region window is empty");
  }
  Sink sink(config.out, out);
  *sink << "re,im,abs_r\n";
  const double steps = static_cast<double>(config.resolution - 1);
  for (std::size_t i = 0; i < config.resolution; ++i) {
    const double im = config.im_min + (config.im_max - config.im_min) * static_cast<double>(i) / steps;
    for (std::size_t j = 0; j < config.resolution; ++j) {
      const double re =
          config.re_min + (config.re_max - config.re_min) * static_cast<double>(j) / steps;
      const double r = std::abs(amplification({re, im}, config.order));
      *sink << format_double(re) << ',' << format_double(im) << ',' << format_double(r) << '\n';
    }
  }
  sink.close(config.out);
  return kExitOk;
}

VerifyTables VerifyTables::published() {
  VerifyTables t;
  for (int dim = 1; dim <= 3; ++dim) {
    for (SchemeOrder s : {SchemeOrder::kCd2, SchemeOrder::kShoc4}) {
      t.disks[{dim, s}] = reference_disk_table(dim, s);
      const auto g = g_table(dim, s);
      t.g[{dim, s}] = std::vector<Twelfths>(g.begin(), g.end());
    }
  }
  return t;
}

int cmd_verify(std::ostream& out, const VerifyTables& tables) {
  int failures = 0;
  int checks = 0;
  auto report = [&](const std::string& name, bool ok, const std::string& detail) {
    ++checks;
    if (!ok) ++failures;
    out << (ok ? "PASS  " : "FAIL  ") << name;
    if (!detail.empty()) out << "  (" << detail << ')';
    out << '\n';
  };
  auto label = [](int dim, SchemeOrder s) {
    return std::to_string(dim) + "d " + std::string(to_string(s));
  };

  const std::size_t sizes[] = {0, 10, 7, 7};
  for (SchemeOrder s : {SchemeOrder::kCd2, SchemeOrder::kShoc4}) {
    for (int dim = 1; dim <= 3; ++dim) {
      const GridSpec g = GridSpec::centered(dim, sizes[dim], 1.0);
      const std::vector<double> L(g.size(), 0.0);
      const std::vector<double> zeros(classify_points(g).boundary.size(), 0.0);
      const SchemeMatrix interior =
          extract_interior(build_A(s, BoundaryKind::kDirichlet, g, L, zeros, zeros));
      const auto forms = unique_forms(interior, L);
      const auto it = tables.disks.find({dim, s});
      const bool ok = it != tables.disks.end() && forms == it->second;
      report("disks " + label(dim, s), ok,
             std::to_string(forms.size()) + " unique forms");
    }
  }

  for (SchemeOrder s : {SchemeOrder::kCd2, SchemeOrder::kShoc4}) {
    const std::size_t n = 64;
    const GridSpec g = GridSpec::centered(1, n, 1.0);
    const std::vector<double> L(n, 0.0);
    const std::vector<double> none;
    const SchemeMatrix A = build_A(s, BoundaryKind::kPeriodic, g, L, none, none);
    std::vector<double> column(n);
    for (std::size_t r = 0; r < n; ++r) column[r] = A.values(static_cast<Eigen::Index>(r), 0);
    double max_abs = 0.0;
    for (const auto& e : circulant_eigs(column)) max_abs = std::max(max_abs, std::abs(e));
    const double expected = s == SchemeOrder::kCd2 ? 4.0 : 16.0 / 3.0;
    const double dense = max_abs_eig(A.values);
    const bool ok = std::abs(max_abs - expected) < 1e-10 && std::abs(dense - expected) < 1e-9;
    report("circulant max " + std::string(to_string(s)) + " n=64", ok,
           "max|lambda| = " + format_double(max_abs));
  }

  for (SchemeOrder s : {SchemeOrder::kCd2, SchemeOrder::kShoc4}) {
    for (int dim = 1; dim <= 3; ++dim) {
      const auto forms_it = tables.disks.find({dim, s});
      const auto g_it = tables.g.find({dim, s});
      bool ok = forms_it != tables.disks.end() && g_it != tables.g.end();
      std::string detail;
      if (ok) {
        const std::set<Twelfths> table(g_it->second.begin(), g_it->second.end());
        ok = table == g_from_forms(forms_it->second);
        int largest = 0;
        for (const auto& t : table) largest = std::max(largest, std::abs(t.num));
        const double implied = largest > 0 ? kRk4ImagLimit * 12.0 / largest : 0.0;
        const double linear = linear_bound(s, dim, 1.0, 1.0);
        ok = ok && std::abs(implied - linear) < 1e-12 * linear;
        detail = "max |G| = " + std::to_string(largest) + "/12";
      }
      report("g-table " + label(dim, s), ok, detail);
    }
  }

  out << (failures == 0 ? "all " + std::to_string(checks) + " checks passed"
                        : std::to_string(failures) + " of " + std::to_string(checks) +
                              " checks failed")
      << '\n';
  return failures == 0 ? kExitOk : kExitVerifyFailed;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explicit RK4 integration and time-step stability bounds for the NLSE", "nlse"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> preset, scheme, bc, out_path, json_path, snapshot, dump;
  std::optional<double> k, k_fraction, t_end, half_width, k_lo, k_hi;
  std::optional<int> digits, dim, order;
  std::optional<std::size_t> n, resolution;

  auto add_problem = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON configuration file");
    sub->add_option("--preset", preset, "soliton1d, vortexpair2d or gaussian3d");
    sub->add_option("--half-width", half_width, "preset domain half-width");
    sub->add_option("--scheme", scheme, "cd2 or shoc4");
    sub->add_option("--bc", bc, "dirichlet, msd, l0 or periodic");
    sub->add_option("--json", json_path, "also write a JSON report");
  };

  auto* bound = app.add_subcommand("bound", "Linear and linearized time-step bounds");
  add_problem(bound);

  auto* simulate = app.add_subcommand("simulate", "Integrate and report max|Psi|^2 and mass");
  add_problem(simulate);
  simulate->add_option("--k", k, "time-step");
  simulate->add_option("--k-fraction", k_fraction, "time-step as a fraction of k_linz");
  simulate->add_option("--tend", t_end, "end time");
  simulate->add_option("--out", out_path, "CSV output, - for stdout");
  simulate->add_option("--snapshot", snapshot, "write the final field here");

  auto* threshold = app.add_subcommand("threshold", "Search for the largest stable time-step");
  add_problem(threshold);
  threshold->add_option("--tend", t_end, "end time of each probe");
  threshold->add_option("--digits", digits, "significant figures of k_num");
  threshold->add_option("--k-lo", k_lo, "time-step expected to be stable");
  threshold->add_option("--k-hi", k_hi, "time-step expected to be unstable");

  auto* spectrum = app.add_subcommand("spectrum", "Gershgorin disks and spectral radius of A'");
  spectrum->add_option("--config", config_path, "JSON configuration file");
  spectrum->add_option("--dim", dim, "dimension");
  spectrum->add_option("--n", n, "points per axis");
  spectrum->add_option("--scheme", scheme, "cd2 or shoc4");
  spectrum->add_option("--bc", bc, "dirichlet, msd, l0 or periodic");
  spectrum->add_option("--out", out_path, "CSV output, - for stdout");
  spectrum->add_option("--dump", dump, "coordinate-format matrix dump");

  auto* verify = app.add_subcommand("verify", "Reproduce the disk, circulant and G tables");

  auto* region = app.add_subcommand("region", "Sample |R(p)| over the complex plane");
  region->add_option("--config", config_path, "JSON configuration file");
  region->add_option("--order", order, "Runge-Kutta order, 1 to 4");
  region->add_option("--resolution", resolution, "samples per axis");
  region->add_option("--out", out_path, "CSV output, - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "nlse: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (verify->parsed()) return cmd_verify(out);

    RunConfig config = config_path.empty() ? RunConfig{} : load_config_file(config_path);
    if (preset) config.preset = preset;
    if (half_width) config.half_width = half_width;
    if (scheme) config.scheme = scheme;
    if (bc) config.boundary = bc;
    if (json_path) config.json = json_path;
    if (k) config.k = k;
    if (k_fraction) config.k_fraction = k_fraction;
    if (t_end) config.t_end = *t_end;
    if (out_path) config.out = *out_path;
    if (snapshot) config.snapshot = snapshot;
    if (digits) config.digits = *digits;
    if (k_lo) config.k_lo = k_lo;
    if (k_hi) config.k_hi = k_hi;
    if (dim) config.spectrum_dim = *dim;
    if (n) config.spectrum_n = *n;
    if (dump) config.dump = dump;
    if (order) config.order = *order;
    if (resolution) config.resolution = *resolution;

    if (bound->parsed()) return cmd_bound(config, out);
    if (simulate->parsed()) return cmd_simulate(config, out);
    if (threshold->parsed()) return cmd_threshold(config, out);
    if (spectrum->parsed()) return cmd_spectrum(config, out);
    return cmd_region(config, out);
  } catch (const IoError& e) {
    err << "nlse: " << e.what() << '\n';
    return kExitIo;
  } catch (const ThresholdSearchError& e) {
    err << "nlse: " << e.what() << '\n';
    return kExitSearchFailed;
  } catch (const ConfigError& e) {
    err << "nlse: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "nlse: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::runtime_error& e) {
    err << "nlse: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace nlse::app
