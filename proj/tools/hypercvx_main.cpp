#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "hypercvx/table.hpp"

namespace {

void add_common_flags(CLI::App* cmd, hypercvx::RunConfig& cfg) {
  cmd->add_option("--d", cfg.d, "polynomial degree");
  cmd->add_option("--L", cfg.L, "edge size");
  cmd->add_option("--n-min", cfg.n_min, "smallest ground set size");
  cmd->add_option("--n-max", cfg.n_max, "largest ground set size");
  cmd->add_option("--samples", cfg.samples, "random simplex samples");
  cmd->add_option("--seed", cfg.seed, "rng seed");
  cmd->add_option("--tol", cfg.tol, "PSD tolerance");
  cmd->add_option("--format", cfg.format, "output format: csv|json");
  cmd->add_option("--out", cfg.out, "output path (default stdout)");
  cmd->add_option("--cap", cfg.cap, "matrix dimension cap");
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  os << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypergraph polynomial convexity toolkit"};
  app.require_subcommand(1);

  hypercvx::RunConfig cfg;
  auto* table = app.add_subcommand(
      "table", "minimum eigenvalues of the Hessian component matrices");
  add_common_flags(table, cfg);
  auto* convexity = app.add_subcommand(
      "check-convexity", "PSD scan of component matrices and Hessians");
  add_common_flags(convexity, cfg);
  auto* barycenter = app.add_subcommand(
      "barycenter", "compare the uniform point against sampled minima");
  add_common_flags(barycenter, cfg);
  auto* certify = app.add_subcommand(
      "certify", "exact elimination certificate and block/dense cross-checks");
  add_common_flags(certify, cfg);
  auto* selftest = app.add_subcommand("selftest", "quick consistency battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (table->parsed()) {
      auto rows = hypercvx::compute_table_rows(cfg);
      if (cfg.format == "json")
        emit(hypercvx::table_to_json(rows).dump(2) + "\n", cfg.out);
      else
        emit(hypercvx::table_to_csv(rows), cfg.out);
      return 0;
    }
    if (convexity->parsed()) {
      auto rep = hypercvx::run_convexity_check(cfg);
      if (cfg.format == "json") {
        emit(rep.to_json().dump(2) + "\n", cfg.out);
      } else {
        std::ostringstream os;
        os << "orbit_checks," << rep.orbit_checks << "\n"
           << "sample_checks," << rep.sample_checks << "\n"
           << "violations," << rep.violations << "\n";
        for (const auto& f : rep.failures) os << "failure,\"" << f << "\"\n";
        emit(os.str(), cfg.out);
      }
      return rep.violations == 0 ? 0 : 1;
    }
    if (barycenter->parsed()) {
      auto rep = hypercvx::run_barycenter(cfg);
      if (cfg.format == "json") {
        emit(rep.to_json().dump(2) + "\n", cfg.out);
      } else {
        std::ostringstream os;
        os << "n,p_at_center,f_at_center,p_sample_min,f_sample_min,p_gap,"
              "f_gap,grad_spread_p,grad_spread_f\n";
        os.precision(12);
        for (const auto& r : rep.rows)
          os << r.n << "," << r.p_at_center << "," << r.f_at_center << ","
             << r.p_sample_min << "," << r.f_sample_min << "," << r.p_gap
             << "," << r.f_gap << "," << r.grad_spread_p << ","
             << r.grad_spread_f << "\n";
        emit(os.str(), cfg.out);
      }
      return rep.center_is_min ? 0 : 1;
    }
    if (certify->parsed()) {
      auto rep = hypercvx::run_certify(cfg);
      emit(rep.to_json().dump(2) + "\n", cfg.out);
      return rep.ok() ? 0 : 1;
    }
    if (selftest->parsed()) {
      return hypercvx::run_selftest(std::cout);
    }
  } catch (const hypercvx::parameter_error& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const hypercvx::capacity_error& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
