#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qspec/calculus.hpp"
#include "qspec/errors.hpp"
#include "qspec/harness.hpp"
#include "qspec/spectral.hpp"

namespace {

using namespace qspec;

const char* status_text(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::EvidenceOnly: return "evidence";
  }
  return "?";
}

int cmd_verify(const std::string& config_path) {
  RunConfig cfg = RunConfig::load(config_path);
  SuiteReport rep = run_suite(cfg);
  for (const Check& c : rep.checks) {
    std::printf("[%s] %-44s margin=%.3e  (%s)\n", status_text(c.status),
                c.name.c_str(), c.margin, c.anchor.c_str());
    if (c.status == CheckStatus::Fail && !c.witness.empty())
      std::printf("        witness: %s\n", c.witness.c_str());
  }
  std::printf("%zu checks, %zu tables, %.1f ms\n", rep.checks.size(),
              rep.tables.size(), rep.total_ms);
  return rep.all_expected_pass() ? 0 : 1;
}

int cmd_decompose(const std::string& config_path, int n, const std::string& out) {
  RunConfig cfg = RunConfig::load(config_path);
  GContext ctx = cfg.make_context();
  SampleSet samples = cfg.make_samples();
  if (cfg.operators.empty()) throw ConfigError("config declares no operators");
  std::ofstream os(out);
  if (!os) throw Error("cannot write " + out);
  os << "operator,n,mesh,sup_error,scalar_identity_residual,converged\n";
  os.precision(17);
  for (const OperatorSpec& spec : cfg.operators) {
    NlOperator f = cfg.make_operator(spec);
    if (!f.vanishes_at_zero()) continue;
    std::vector<int> schedule = cfg.partition_schedule;
    if (n > 0) schedule = {n};
    SpectralDecomposition dec = decompose(f, ctx, schedule, samples);
    for (const auto& s : dec.sums)
      os << spec.name << "," << s.n << "," << s.mesh << "," << s.sup_error << ","
         << dec.scalar_identity_residual << ","
         << (dec.resolution_converged ? "yes" : "no") << "\n";
    std::printf("%s: bracket [%.6g, %.6g], identity residual %.3e, %s\n",
                spec.name.c_str(), dec.brkt.m, dec.brkt.M,
                dec.scalar_identity_residual,
                dec.resolution_converged ? "converged" : "NOT converged");
  }
  std::printf("wrote %s\n", out.c_str());
  return 0;
}

int cmd_calculus(const std::string& config_path, const std::string& fn_name,
                 double tol) {
  RunConfig cfg = RunConfig::load(config_path);
  GContext ctx = cfg.make_context();
  SampleSet samples = cfg.make_samples();
  FuncSpec fn;
  if (fn_name == "exp") fn = func_exp();
  else if (fn_name == "abs") fn = func_abs();
  else if (fn_name == "id") fn = func_identity();
  else if (fn_name == "sin") fn = func_sin();
  else throw ConfigError("unknown function '" + fn_name + "' (exp|abs|id|sin)");
  for (const OperatorSpec& spec : cfg.operators) {
    NlOperator f = cfg.make_operator(spec);
    if (!f.vanishes_at_zero()) continue;
    CalcResult res = cont_calculus(f, ctx, fn, tol, samples, true);
    std::printf("%s(%s): degree %d, ||f||_C %.6g, norm ratio %.9f\n",
                fn_name.c_str(), spec.name.c_str(), res.degree, res.f_sup,
                res.norm_ratio);
    if (res.cheb_agreement)
      std::printf("  route independence gap: %.3e (tol %.1e)\n",
                  *res.cheb_agreement, 2.0 * tol);
    for (auto [deg, gap] : res.cauchy_trace)
      std::printf("  degree %5d  gap %.3e\n", deg, gap);
  }
  return 0;
}

int cmd_report(const std::string& config_path, const std::string& format,
               const std::string& out_dir) {
  RunConfig cfg = RunConfig::load(config_path);
  SuiteReport rep = run_suite(cfg);
  for (const std::string& path : emit(rep, format, out_dir))
    std::printf("wrote %s\n", path.c_str());
  return rep.all_expected_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasi-product spectral calculus verification harness"};
  app.require_subcommand(1);

  std::string config_path, out_path = "decomposition.csv", out_dir = "reports";
  std::string fn_name = "exp", format = "json";
  int n = 0;
  double tol = 1e-3;

  CLI::App* verify = app.add_subcommand("verify", "run the configured suites");
  verify->add_option("config", config_path, "config file (JSON)")->required();

  CLI::App* dec = app.add_subcommand("decompose", "emit a spectral resolution");
  dec->add_option("config", config_path)->required();
  dec->add_option("--n", n, "single partition size (default: config schedule)");
  dec->add_option("--out", out_path, "output CSV path");

  CLI::App* calc = app.add_subcommand("calculus", "run the continuous calculus");
  calc->add_option("config", config_path)->required();
  calc->add_option("--fn", fn_name, "function name (exp|abs|id|sin)");
  calc->add_option("--tol", tol, "operator convergence tolerance");

  CLI::App* report = app.add_subcommand("report", "run suites and emit artifacts");
  report->add_option("config", config_path)->required();
  report->add_option("--format", format, "json|csv");
  report->add_option("--out", out_dir, "output directory");

  CLI11_PARSE(app, argc, argv);
  try {
    if (verify->parsed()) return cmd_verify(config_path);
    if (dec->parsed()) return cmd_decompose(config_path, n, out_path);
    if (calc->parsed()) return cmd_calculus(config_path, fn_name, tol);
    if (report->parsed()) return cmd_report(config_path, format, out_dir);
  } catch (const qspec::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 3;
  }
  return 0;
}
