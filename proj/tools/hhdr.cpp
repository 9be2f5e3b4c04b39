#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hhdr/config.hpp"
#include "hhdr/errors.hpp"
#include "hhdr/run.hpp"

namespace {

std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw hhdr::ConfigError("cannot read config file " + path, 0);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void parse_grid(const std::string& spec, std::size_t& rows, std::size_t& cols) {
  const auto x = spec.find_first_of("xX");
  std::size_t used_r = 0;
  std::size_t used_c = 0;
  try {
    if (x == std::string::npos) throw std::invalid_argument("");
    const std::string r = spec.substr(0, x);
    const std::string c = spec.substr(x + 1);
    const unsigned long rv = std::stoul(r, &used_r);
    const unsigned long cv = std::stoul(c, &used_c);
    if (used_r != r.size() || used_c != c.size() || rv == 0 || cv == 0) throw std::invalid_argument("");
    rows = rv;
    cols = cv;
  } catch (const std::logic_error&) {
    throw hhdr::ConfigError("--grid expects RxC with positive integers, got '" + spec + "'", 0);
  }
}

int threads_from_env() {
  const char* v = std::getenv("HHDR_THREADS");
  if (!v || !*v) return 0;
  try {
    std::size_t used = 0;
    const int n = std::stoi(v, &used);
    if (used != std::string(v).size() || n < 1) throw std::invalid_argument("");
    return n;
  } catch (const std::logic_error&) {
    throw hhdr::ConfigError(std::string("HHDR_THREADS must be a positive integer, got '") + v + "'", 0);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hartmann-Hahn double-resonance stability toolkit"};
  app.set_version_flag("--version", hhdr::kVersion);

  std::string subcommand;
  std::string config_path;
  std::string out_dir = ".";
  std::string grid;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<double> t_end;

  app.add_option("subcommand", subcommand, "fixed-point | alpha | sweep-alpha | contour | simulate | sweep-seo | lme-report | feasibility")
      ->required()
      ->check(CLI::IsMember(hhdr::subcommands()));
  app.add_option("--config", config_path, "configuration file (key = value)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--grid", grid, "sweep resolution RxC (rows along delta_b)");
  app.add_option("--seed", seed, "random seed for lme-report");
  app.add_option("--tol", tol, "relative integration tolerance");
  app.add_option("--t-end", t_end, "integration end time in units of 1/omega_a0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    hhdr::ConfigError err(e.what(), 0);
    std::cerr << hhdr::error_record(err) << "\n";
    return 2;
  }

  try {
    hhdr::RunConfig cfg = config_path.empty() ? hhdr::parse_config("") : hhdr::parse_config(read_text(config_path));
    if (!grid.empty()) {
      std::size_t rows = 0;
      std::size_t cols = 0;
      parse_grid(grid, rows, cols);
      hhdr::SweepAxis& d = subcommand == "sweep-seo" ? cfg.seo_delta_b : cfg.delta_b;
      hhdr::SweepAxis& w = subcommand == "sweep-seo" ? cfg.seo_omega_b1 : cfg.omega_b1;
      d.count = rows;
      w.count = cols;
    }
    if (seed) cfg.seed = *seed;
    if (tol) cfg.rel_tol = *tol;
    if (t_end) cfg.t_end = *t_end;
    cfg.validate();

    hhdr::RunOptions opts;
    opts.out_dir = out_dir;
    opts.threads = threads_from_env();
    opts.command_line.assign(argv, argv + argc);
    const hhdr::RunSummary s = hhdr::run(subcommand, cfg, opts);
    for (const auto& f : s.files) std::cout << f.string() << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << hhdr::error_record(e) << "\n";
    return hhdr::exit_code_for(e);
  }
}
