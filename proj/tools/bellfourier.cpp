// Command-line front end: simulate, correlate, fourier, theorem, chsh, model.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bellfourier/args.hpp"
#include "bellfourier/bellfourier.hpp"
#include "bellfourier/builtins.hpp"

namespace bf = bellfourier;
namespace io = bellfourier::io;

namespace {

enum ExitCode : int { kOk = 0, kArgumentError = 2, kModelError = 3, kIoError = 4 };

struct Options {
  std::string grid;
  std::uint64_t n_runs = 100000;
  std::optional<std::uint64_t> seed;
  int window = 64;
  int resolution = 4096;
  std::string model_file;
  std::string target;
  std::string out = "-";
  std::string format = "table";
  std::string report_format = "doc";
  std::string reconstruction;
  int points = 2048;
  std::string angles;
  std::size_t atoms = 1024;
  double threshold = 1e-3;
};

void emit(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
  } else {
    io::write_file(path, content);
  }
}

std::string render(const io::Table& table, const io::json& doc, const std::string& format) {
  return format == "doc" ? doc.dump(2) + "\n" : io::format_table(table);
}

io::json table_document(const io::Table& t) {
  io::json rows = io::json::array();
  for (const auto& r : t.rows) {
    io::json row;
    for (std::size_t i = 0; i < t.header.size(); ++i) row[t.header[i]] = r[i];
    rows.push_back(row);
  }
  return {{"rows", rows}};
}

bf::LhvModel resolve_model(const Options& o) {
  if (!o.model_file.empty()) return io::load_model(o.model_file);
  if (!o.target.empty()) {
    if (auto m = bf::builtins::model(o.target, o.atoms)) return *m;
    throw std::invalid_argument("unknown model target \"" + o.target +
                                "\" (expected aspect, square or constant)");
  }
  throw std::invalid_argument("a model is required: pass --model FILE or --target NAME");
}

int cmd_simulate(const Options& o) {
  if (!o.seed) throw std::invalid_argument("--seed is required for simulate");
  if (o.n_runs < 1) throw std::invalid_argument("--n-runs must be at least 1");
  const auto grid = bf::args::parse_grid(o.grid.empty() ? "0:0" : o.grid);
  io::Table t{{"alpha", "beta", "estimate", "standard_error", "n_runs", "exact"}, {}};
  for (double a : grid.alphas) {
    for (double b : grid.betas) {
      const auto m = bf::estimate_correlation(a, b, o.n_runs, *o.seed);
      t.rows.push_back({a, b, m.estimate, m.standard_error, static_cast<double>(m.n_runs),
                        bf::singlet_correlation(a, b)});
    }
  }
  auto doc = table_document(t);
  doc["seed"] = *o.seed;
  emit(o.out, render(t, doc, o.format));
  return kOk;
}

int cmd_correlate(const Options& o) {
  const auto model = resolve_model(o);
  const auto grid = bf::args::parse_grid(o.grid.empty() ? "u64:0" : o.grid);
  io::Table t{{"alpha", "beta", "c_hv", "c_q", "difference"}, {}};
  double gap = 0.0;
  for (double a : grid.alphas) {
    for (double b : grid.betas) {
      const double hv = bf::lhv_correlation_exact(model, a, b);
      const double q = bf::singlet_correlation(a, b);
      gap = std::max(gap, std::abs(hv - q));
      t.rows.push_back({a, b, hv, q, hv - q});
    }
  }
  auto doc = table_document(t);
  doc["sup_norm_gap"] = gap;
  doc["model"] = model.description();
  emit(o.out, render(t, doc, o.format));
  std::cerr << "sup-norm gap |C_hv - C_q| over grid: " << io::rounded(gap) << "\n";
  return kOk;
}

int cmd_fourier(const Options& o) {
  if (o.window < 0) throw std::invalid_argument("--fourier-window must be non-negative");
  if (!o.model_file.empty()) {
    const auto model = io::load_model(o.model_file);
    const auto m = bf::moment_matrix(model, o.window);
    emit(o.out, render(io::spectrum_table(m.entries),
                       io::spectrum_document(m.entries, "model: " + model.description()), o.format));
    return kOk;
  }
  const std::string name = o.target.empty() ? "quantum" : o.target;
  if (auto c = bf::builtins::correlation(name)) {
    const auto s = bf::coefficients_2d(*c, o.window, o.resolution);
    emit(o.out, render(io::spectrum_table(s), io::spectrum_document(s, c->description), o.format));
    try {
      const auto schmidt = bf::schmidt_spectrum(s, o.threshold);
      std::cerr << "Schmidt weights above " << o.threshold << ": " << schmidt.above_threshold << "\n";
    } catch (const bf::NonStationaryError& e) {
      std::cerr << e.what() << "\n";
    }
    return kOk;
  }
  if (auto spec = bf::builtins::spec(name)) {
    const auto s = bf::coefficients_simple(*spec, o.window);
    emit(o.out, render(io::spectrum_table(s), io::spectrum_document(s, "spec: " + name), o.format));
    if (o.points < 1) throw std::invalid_argument("--points must be positive");
    io::Table rec{{"theta", "F", "F_N"}, {}};
    for (int j = 0; j < o.points; ++j) {
      const double theta = (j + 0.5) * bf::pi / o.points;
      rec.rows.push_back({theta, static_cast<double>(bf::sign_of(bf::eval_simple(*spec, theta))),
                          bf::partial_sum(s, theta)});
    }
    std::string rec_path = o.reconstruction;
    if (rec_path.empty() && o.out != "-") rec_path = o.out + ".reconstruction.csv";
    if (!rec_path.empty()) io::write_file(rec_path, io::format_table(rec));
    return kOk;
  }
  throw std::invalid_argument("unknown fourier target \"" + name +
                              "\" (expected quantum, aspect, fig2, square or constant)");
}

int cmd_theorem(const Options& o) {
  if (o.window < 2) throw std::invalid_argument("--fourier-window must be at least 2");
  const auto model = resolve_model(o);
  const auto r = bf::incompatibility_report(model, o.window);
  if (o.report_format == "table") {
    io::Table t{{"n", "m", "value_re", "value_im", "target_re", "target_im"}, {}};
    for (const auto& w : r.witnesses) {
      t.rows.push_back({static_cast<double>(w.n), static_cast<double>(w.m), w.value.real(),
                        w.value.imag(), w.target.real(), w.target.imag()});
    }
    emit(o.out, io::format_table(t));
  } else {
    emit(o.out, io::report_document(r).dump(2) + "\n");
  }
  std::cerr << "verdict: " << r.verdict << " (residual " << io::rounded(r.residual_inf) << ")\n";
  return kOk;
}

int cmd_chsh(const Options& o) {
  bf::ChshSettings s;
  if (!o.angles.empty()) {
    const auto a = bf::args::parse_angle_list(o.angles);
    if (a.size() != 4) throw std::invalid_argument("--angles needs exactly four angles a,a',b,b'");
    s = {a[0], a[1], a[2], a[3]};
  }
  std::cout << "quantum |S| = " << io::rounded(bf::chsh_score(bf::quantum_correlation(), s)) << "\n";
  if (!o.model_file.empty() || !o.target.empty()) {
    const auto model = resolve_model(o);
    std::cout << "model |S| = " << io::rounded(bf::chsh_score(bf::lhv_correlation(model), s))
              << "\n";
  }
  return kOk;
}

int cmd_model(const Options& o) {
  const auto model = resolve_model(o);
  emit(o.out, io::model_to_json(model).dump(2) + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum vs local hidden-variable correlations: simulation, spectra, incompatibility"};
  app.require_subcommand(1);
  Options o;

  auto add_out = [&](CLI::App* c) {
    c->add_option("--out", o.out, "Output file ('-' for stdout)");
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"table", "doc"}));
  };
  auto add_model = [&](CLI::App* c) {
    c->add_option("--model", o.model_file, "Model file (JSON)");
    c->add_option("--target", o.target, "Built-in model: aspect, square, constant");
    c->add_option("--atoms", o.atoms, "Atom count for the built-in aspect model")
        ->check(CLI::PositiveNumber);
  };

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of the singlet correlation");
  simulate->add_option("--grid", o.grid, "Settings grid ALPHAS:BETAS, e.g. 0:0.125pi or u16");
  simulate->add_option("--n-runs", o.n_runs, "Pairs per setting");
  simulate->add_option("--seed", o.seed, "Random seed (required)");
  add_out(simulate);

  auto* correlate = app.add_subcommand("correlate", "Compare a hidden-variable model with the singlet");
  correlate->add_option("--grid", o.grid, "Settings grid (default u64:0)");
  add_model(correlate);
  add_out(correlate);

  auto* fourier = app.add_subcommand(
      "fourier",
      "Fourier spectra. Targets: quantum, aspect (2D correlation spectra); fig2, square, constant "
      "(step functions; fig2 assumes 8 equally spaced intervals of width pi/8)");
  fourier->add_option("--target", o.target, "Built-in target name");
  fourier->add_option("--model", o.model_file, "Model file: emits its moment matrix");
  fourier->add_option("--fourier-window", o.window, "Index window N");
  fourier->add_option("--resolution", o.resolution, "Quadrature nodes per axis (2D targets)");
  fourier->add_option("--points", o.points, "Reconstruction points (step-function targets)");
  fourier->add_option("--reconstruction", o.reconstruction, "Reconstruction table path");
  fourier->add_option("--schmidt-threshold", o.threshold, "Threshold for the Schmidt weight count");
  add_out(fourier);

  auto* theorem = app.add_subcommand("theorem", "Moment-matrix incompatibility report");
  theorem->add_option("--fourier-window", o.window, "Index window N (>= 2)");
  add_model(theorem);
  theorem->add_option("--out", o.out, "Output file ('-' for stdout)");
  theorem->add_option("--format", o.report_format, "doc (report) or table (witnesses)")
      ->check(CLI::IsMember({"table", "doc"}));

  auto* chsh = app.add_subcommand("chsh", "CHSH score for the singlet and optionally a model");
  chsh->add_option("--angles", o.angles, "a,a',b,b' (default 0,pi/4,pi/8,3pi/8)");
  add_model(chsh);

  auto* model = app.add_subcommand("model", "Write a built-in model as a model file");
  add_model(model);
  model->add_option("--out", o.out, "Output file ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kArgumentError;
  }
  try {
    if (simulate->parsed()) return cmd_simulate(o);
    if (correlate->parsed()) return cmd_correlate(o);
    if (fourier->parsed()) return cmd_fourier(o);
    if (theorem->parsed()) return cmd_theorem(o);
    if (chsh->parsed()) return cmd_chsh(o);
    if (model->parsed()) return cmd_model(o);
  } catch (const io::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIoError;
  } catch (const bf::ModelError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kModelError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return kArgumentError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kOk;
}
