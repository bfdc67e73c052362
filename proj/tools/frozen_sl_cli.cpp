// Command-line front end: forward, inverse, roundtrip and isospectral runs on
// JSON inputs. Exit codes: 0 ok, 2 usage/schema, 3 numerical failure,
// 4 spectrum not realizable.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "frozen_sl.hpp"
#include "frozen_sl/json_io.hpp"

namespace fs = std::filesystem;
using namespace frozen_sl;
using io::json;

namespace {

constexpr const char* kVersion = "1.0.0";

enum Exit { kOk = 0, kUsage = 2, kNumerical = 3, kNotRealizable = 4 };

struct Options {
  std::string config_path, potential_path, spectrum_path, p_dir;
  std::string out = ".";
  std::string k_spec;
  int n = 20;
  int n_explicit = 0;
  int modes = 0;
  int m = 128;
  double tol_root = 1e-13;
  double tol_deg = 1e-6;
  bool sweep = false;
  bool parallel = false;
  bool verify = false;
  double rho_min = 0.0;
  double rho_max = -1.0;
  int rho_samples = 400;
};

SpectrumOptions spectrum_options(const Options& o) {
  SpectrumOptions s;
  s.tol_root = o.tol_root;
  s.parallel = o.parallel;
  s.verify = o.verify;
  return s;
}

InverseOptions inverse_options(const Options& o, int n_available) {
  InverseOptions s;
  s.n_explicit = o.n_explicit > 0 ? o.n_explicit : n_available;
  s.n_modes = o.modes;
  s.m = o.m;
  s.deg_tol = o.tol_deg;
  return s;
}

json resolved_options(const Options& o) {
  return {{"n", o.n},           {"n_explicit", o.n_explicit}, {"modes", o.modes},
          {"m", o.m},           {"tol_root", o.tol_root},     {"tol_deg", o.tol_deg},
          {"K", o.k_spec},      {"sweep", o.sweep},           {"parallel", o.parallel},
          {"verify", o.verify}, {"rho_min", o.rho_min},       {"rho_max", o.rho_max},
          {"rho_samples", o.rho_samples}};
}

// Samples on the midpoints of (0, a), resampled to m points.
Block read_block(const std::string& path, const ProblemConfig& cfg, int m) {
  const json j = io::read_file(path);
  const double a = cfg.a();
  Block out(m);
  if (j.value("type", "") == "grid") {
    const auto v = io::parse_complex_array(io::member(j, "values", path), path);
    require(!v.empty(), path + ": no samples");
    for (int i = 0; i < m; ++i) out[i] = interpolate_block(v, a / double(v.size()), (i + 0.5) * a / m);
    return out;
  }
  const Potential p = io::parse_potential(j, 1);
  for (int i = 0; i < m; ++i) out[i] = p((i + 0.5) * a / m);
  return out;
}

FrozenK parse_K(const std::string& spec, const ProblemConfig& cfg, int m) {
  if (spec == "identity") return FrozenK::identity();
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon), arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "scalar") {
    const auto comma = arg.find(',');
    try {
      const double re = std::stod(arg.substr(0, comma));
      const double im = comma == std::string::npos ? 0.0 : std::stod(arg.substr(comma + 1));
      return FrozenK::scalar({re, im});
    } catch (const std::logic_error&) {
      fail(ErrorKind::InvalidInput, "--K scalar expects scalar:re[,im]");
    }
  }
  if (kind == "const") return FrozenK::constant(read_block(arg, cfg, m));
  if (kind == "matrix") {
    const json j = io::read_file(arg);
    const json& rows = io::member(j, "values", arg);
    require(rows.is_array() && int(rows.size()) == m, "--K matrix must be " + std::to_string(m) + " x " + std::to_string(m));
    Eigen::MatrixXcd M(m, m);
    for (int r = 0; r < m; ++r) {
      const auto row = io::parse_complex_array(rows[r], "matrix row");
      require(int(row.size()) == m, "--K matrix must be square");
      for (int c = 0; c < m; ++c) M(r, c) = row[c];
    }
    return FrozenK::matrix(std::move(M));
  }
  fail(ErrorKind::InvalidInput, "--K must be identity, scalar:re[,im], const:path or matrix:path");
}

void write_manifest(const Options& o, const std::string& command, const json& inputs,
                    std::chrono::steady_clock::time_point start) {
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const json manifest = {{"command", command},
                         {"inputs", inputs},
                         {"options", resolved_options(o)},
                         {"versions", {{"frozen_sl", kVersion}, {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                                                                              std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                                                              std::to_string(EIGEN_MINOR_VERSION)}}},
                         {"wall_time_seconds", wall}};
  io::write_file((fs::path(o.out) / "manifest.json").string(), manifest);
}

Potential load_potential(const std::string& path, const ProblemConfig& cfg) {
  return io::parse_potential(io::read_file(path), cfg.k());
}

Spectrum load_spectrum(const std::string& path, const ProblemConfig& cfg) {
  return io::parse_spectrum(io::read_file(path), cfg);
}

void require_K_if_degenerate(const Options& o, const ProblemConfig& cfg) {
  if (is_degenerate(cfg) && o.k_spec.empty())
    fail(ErrorKind::InvalidInput, "configuration " + describe(cfg) + " is degenerate: --K is required");
}

InverseResult run_inverse(const Spectrum& spec, const Options& o) {
  const ProblemConfig& cfg = spec.config();
  const InverseOptions opts = inverse_options(o, int(spec.size()));
  if (!is_degenerate(cfg)) return algorithm_4_1_report(spec, opts);
  return algorithm_4_3_report(spec, parse_K(o.k_spec, cfg, opts.m), opts);
}

json inverse_report(const InverseResult& r, const Spectrum& spec) {
  json j = {{"config", io::config_to_json(spec.config())},
            {"case", std::string(classify_case(spec.config()).name())},
            {"degenerate", is_degenerate(spec.config())},
            {"sign_normalization", r.sign},
            {"sign_probe_lambda", -ReconstructedDelta::probe_radius() * ReconstructedDelta::probe_radius()},
            {"n_explicit", r.n_explicit},
            {"n_modes", r.n_modes},
            {"residuals_l2_plausible", spectrum_residuals(spec).l2_plausible}};
  if (r.degeneration) {
    j["degeneration"] = {{"indices", r.degeneration->indices},
                         {"deviations", r.degeneration->deviations},
                         {"max_deviation", r.degeneration->max_deviation},
                         {"residual_W", r.degeneration_residual_W}};
  }
  return j;
}

int cmd_forward(const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  const ProblemConfig cfg = io::parse_config(io::read_file(o.config_path));
  const Potential q = load_potential(o.potential_path, cfg);
  require(o.n >= 1, "--n must be >= 1");
  const CharacteristicFunction delta(kernel_of(q, cfg), cfg);
  const SpectrumReport report = compute_spectrum_report(delta, o.n, spectrum_options(o));

  json out = io::spectrum_to_json(report.spectrum);
  const ResidualReport res = spectrum_residuals(report.spectrum);
  out["l2_plausible"] = res.l2_plausible;
  json roots = json::array();
  for (const RootInfo& r : report.roots)
    roots.push_back({{"index", r.index},
                     {"iterations", r.iterations},
                     {"fallback", r.fallback},
                     {"multiplicity", r.multiplicity},
                     {"residual", r.residual}});
  out["roots"] = roots;
  out["notes"] = report.notes;
  if (report.verified_count) out["verified_count"] = *report.verified_count;
  fs::create_directories(o.out);
  io::write_file((fs::path(o.out) / "spectrum.json").string(), out);

  const double rho_max = o.rho_max > o.rho_min ? o.rho_max : asymptotic_rho(o.n, cfg) + 1.0;
  std::ofstream csv(fs::path(o.out) / "delta-samples.csv");
  csv << "rho,re_delta,im_delta\n";
  char line[128];
  const int samples = std::max(2, o.rho_samples);
  for (int i = 0; i < samples; ++i) {
    const double rho = o.rho_min + (rho_max - o.rho_min) * i / (samples - 1);
    const cplx d = delta(rho * rho);
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", rho, d.real(), d.imag());
    csv << line;
  }
  write_manifest(o, "forward", {{"config", o.config_path}, {"potential", o.potential_path}}, start);
  return kOk;
}

int cmd_inverse(const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  const ProblemConfig cfg = io::parse_config(io::read_file(o.config_path));
  const Spectrum spec = load_spectrum(o.spectrum_path, cfg);
  require_K_if_degenerate(o, cfg);
  const InverseResult r = run_inverse(spec, o);
  fs::create_directories(o.out);
  io::write_file((fs::path(o.out) / "potential.json").string(), io::potential_to_json(r.q));
  io::write_file((fs::path(o.out) / "report.json").string(), inverse_report(r, spec));
  write_manifest(o, "inverse", {{"config", o.config_path}, {"spectrum", o.spectrum_path}}, start);
  return kOk;
}

int cmd_roundtrip(const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  const ProblemConfig cfg = io::parse_config(io::read_file(o.config_path));
  const Potential q = load_potential(o.potential_path, cfg);
  require_K_if_degenerate(o, cfg);
  const std::vector<int> ns = o.sweep ? std::vector<int>{20, 40, 80} : std::vector<int>{o.n};
  const int m = q.is_grid() ? q.grid().grid.m : o.m;
  Options oo = o;
  oo.m = m;

  json runs = json::array();
  std::vector<double> errors;
  for (int n : ns) {
    const CharacteristicFunction delta(kernel_of(q, cfg), cfg);
    const SpectrumReport fwd = compute_spectrum_report(delta, n, spectrum_options(o));
    double max_root_residual = 0.0;
    for (const RootInfo& r : fwd.roots) max_root_residual = std::max(max_root_residual, r.residual);
    oo.n_explicit = o.n_explicit > 0 ? std::min(o.n_explicit, n) : n;
    const InverseResult inv = run_inverse(fwd.spectrum, oo);
    const BlockGrid grid(cfg.k(), m);
    const double err = relative_l2_error(inv.q, q, grid);
    errors.push_back(err);
    json run = {{"n", n},
                {"relative_l2_error", err},
                {"max_root_residual", max_root_residual},
                {"sign_normalization", inv.sign},
                {"n_modes", inv.n_modes}};
    if (inv.degeneration) run["degeneration_max_deviation"] = inv.degeneration->max_deviation;
    runs.push_back(run);
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < errors.size(); ++i) decreasing = decreasing && errors[i] < errors[i - 1];
  const json report = {{"config", io::config_to_json(cfg)}, {"runs", runs}, {"strictly_decreasing", decreasing}};
  fs::create_directories(o.out);
  io::write_file((fs::path(o.out) / "report.json").string(), report);
  write_manifest(o, "roundtrip", {{"config", o.config_path}, {"potential", o.potential_path}}, start);
  return kOk;
}

int cmd_isospectral(const Options& o) {
  const auto start = std::chrono::steady_clock::now();
  const ProblemConfig cfg = io::parse_config(io::read_file(o.config_path));
  if (!is_degenerate(cfg))
    fail(ErrorKind::InvalidInput, "configuration " + describe(cfg) + " is non-degenerate; no iso-spectral family");
  const Spectrum spec = load_spectrum(o.spectrum_path, cfg);

  std::vector<fs::path> files;
  if (!fs::is_directory(o.p_dir)) fail(ErrorKind::InvalidInput, "p-dir " + o.p_dir + " is not a directory");
  for (const auto& e : fs::directory_iterator(o.p_dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());

  InverseOptions opts = inverse_options(o, int(spec.size()));
  std::vector<Block> ps;
  for (const auto& f : files) ps.push_back(read_block(f.string(), cfg, opts.m));
  const auto family = isospectral_family(spec, ps, opts);

  fs::create_directories(o.out);
  std::vector<Spectrum> spectra;
  json names = json::array();
  for (std::size_t i = 0; i < family.size(); ++i) {
    const std::string name = "potential-" + files[i].stem().string() + ".json";
    io::write_file((fs::path(o.out) / name).string(), io::potential_to_json(family[i]));
    names.push_back(name);
    spectra.push_back(compute_spectrum(family[i], cfg, o.n, spectrum_options(o)));
  }
  json matrix = json::array();
  double worst = 0.0;
  for (std::size_t i = 0; i < spectra.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < spectra.size(); ++j) {
      double d = 0.0;
      for (std::size_t n = 0; n < spectra[i].size(); ++n) d = std::max(d, std::abs(spectra[i][n] - spectra[j][n]));
      row.push_back(d);
      worst = std::max(worst, d);
    }
    matrix.push_back(row);
  }
  io::write_file((fs::path(o.out) / "distances.json").string(),
                 {{"potentials", names}, {"max_pairwise_deviation", matrix}, {"max_deviation", worst}, {"n", o.n}});
  write_manifest(o, "isospectral", {{"config", o.config_path}, {"spectrum", o.spectrum_path}, {"p_dir", o.p_dir}},
                 start);
  return kOk;
}

void add_common(CLI::App* app, Options& o) {
  app->add_option("--out", o.out, "Output directory")->capture_default_str();
  app->add_option("--tol-root", o.tol_root, "Newton step tolerance (relative, in rho)")->capture_default_str();
  app->add_option("--tol-deg", o.tol_deg, "Tolerance on forced eigenvalues in degenerate cases")->capture_default_str();
  app->add_option("--modes", o.modes, "Number of W modes to extract (0: max(n_explicit - 10, n_explicit / 2))");
  app->add_option("--n-explicit", o.n_explicit, "Eigenvalues used explicitly in the product (0: all)");
  app->add_option("--m", o.m, "Samples per block of reconstructed potentials")->capture_default_str();
  app->add_option("--K", o.k_spec, "Restriction operator: identity | scalar:re[,im] | const:path | matrix:path");
  app->add_flag("--parallel", o.parallel, "Run eigenvalue searches concurrently");
  app->add_flag("--verify", o.verify, "Count zeros on a contour around the computed range");
  app->add_option("--n", o.n, "Number of eigenvalues")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Forward and inverse spectral problems with a frozen argument"};
  app.require_subcommand(1);
  Options o;

  auto* fwd = app.add_subcommand("forward", "Spectrum of a potential");
  fwd->add_option("config", o.config_path, "config.json")->required();
  fwd->add_option("potential", o.potential_path, "potential.json")->required();
  fwd->add_option("--rho-min", o.rho_min, "Start of the Delta sample range");
  fwd->add_option("--rho-max", o.rho_max, "End of the Delta sample range (default: last seed + 1)");
  fwd->add_option("--rho-samples", o.rho_samples, "Number of Delta samples")->capture_default_str();
  add_common(fwd, o);

  auto* inv = app.add_subcommand("inverse", "Potential from a spectrum");
  inv->add_option("config", o.config_path, "config.json")->required();
  inv->add_option("spectrum", o.spectrum_path, "spectrum.json")->required();
  add_common(inv, o);

  auto* rt = app.add_subcommand("roundtrip", "Forward then inverse, with the L2 error");
  rt->add_option("config", o.config_path, "config.json")->required();
  rt->add_option("potential", o.potential_path, "potential.json")->required();
  rt->add_flag("--sweep", o.sweep, "Run n = 20, 40, 80");
  add_common(rt, o);

  auto* iso = app.add_subcommand("isospectral", "Iso-spectral family from restriction functions p");
  iso->add_option("config", o.config_path, "config.json")->required();
  iso->add_option("spectrum", o.spectrum_path, "spectrum.json")->required();
  iso->add_option("p-dir", o.p_dir, "Directory of p files (*.json)")->required();
  add_common(iso, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*fwd) return cmd_forward(o);
    if (*inv) return cmd_inverse(o);
    if (*rt) return cmd_roundtrip(o);
    return cmd_isospectral(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::InvalidInput: return kUsage;
      case ErrorKind::Numerical: return kNumerical;
      case ErrorKind::NotRealizable: return kNotRealizable;
    }
  } catch (const io::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
  return kNumerical;
}
