#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qspec/definite.hpp"
#include "qspec/sample.hpp"
#include "qspec/space.hpp"

namespace qspec {

inline constexpr const char* kVersion = "0.1.0";

struct OperatorSpec {
  std::string name;
  std::string phi;  // profile grammar source
  std::optional<std::pair<double, double>> range;
  std::optional<std::vector<double>> shift;  // s0 for a shifted operator
};

struct ToleranceSpec {
  double axiom = 1e-9;
  double exact = 1e-12;
  double calculus = 1e-3;
  double sqrt = 1e-8;
};

/// One verification run, fully determined by its fields (the seed pins the
/// sampling). Round-trips through JSON; unknown keys are rejected.
struct RunConfig {
  std::string id;
  std::uint64_t seed = 0;
  // space
  std::size_t dim = 1;
  NormKind norm = NormKind::Sup;
  std::vector<double> weights;  // defaults to all ones
  AlgebraKind algebra = AlgebraKind::PointwiseUnital;
  // quasi-product
  QpKind qp_kind = QpKind::ScalarProduct;
  double qp_param = 0.0;                   // k for scaled_inner
  std::vector<double> qp_weights;          // w for weighted_sum
  std::map<std::string, bool> flag_overrides;  // declared-capability overrides
  // operators, sampling, schedule
  std::vector<OperatorSpec> operators;
  SampleSpec samples;
  std::vector<int> partition_schedule = {25, 50, 100, 200, 400};
  ToleranceSpec tolerances;
  std::vector<std::string> suites;  // axioms, definite, spectral, calculus, spectral_ops

  static RunConfig from_json_text(const std::string& text);
  static RunConfig load(const std::string& path);  // honors QSPEC_SEED override
  std::string to_json_text() const;

  Space make_space() const;
  QuasiProduct make_qp() const;
  GContext make_context() const;
  SampleSet make_samples() const;
  NlOperator make_operator(const OperatorSpec& spec) const;
};

enum class CheckStatus { Pass, Fail, EvidenceOnly };

struct Check {
  std::string name;
  std::string anchor;  // stable traceability id
  CheckStatus status = CheckStatus::Pass;
  double margin = 0.0;
  std::string witness;  // empty when none
  double timing_ms = 0.0;
};

struct ConvergenceTable {
  std::string label;
  struct Row {
    int n = 0;
    double mesh = 0.0;
    double sup_error = 0.0;
  };
  std::vector<Row> rows;
};

struct SuiteReport {
  std::string config_id;
  std::uint64_t seed = 0;
  std::string version = kVersion;
  std::vector<Check> checks;
  std::vector<ConvergenceTable> tables;
  double total_ms = 0.0;

  bool all_expected_pass() const;  // no Fail among pass-expected checks
  std::string to_json_text() const;
  // JSON with every timing field stripped, for determinism comparisons.
  std::string to_json_text_no_timing() const;
};

SuiteReport run_suite(const RunConfig& config);

// Writes report.json and/or one CSV per convergence table (header
// n,mesh,sup_error) under out_dir. Returns the paths written.
std::vector<std::string> emit(const SuiteReport& report, const std::string& format,
                              const std::string& out_dir);

}  // namespace qspec
