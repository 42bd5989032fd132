#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bpb/certificate.hpp"
#include "bpb/complex_matrix.hpp"
#include "bpb/linalg.hpp"

namespace bpb {

/// Sweep coordinates: the cross product of classes x dims x epsilons, each
/// cell run trials_per_cell times with per-trial derived seeds.
struct ExperimentConfig {
  std::vector<OperatorClass> classes;
  std::vector<std::size_t> dims;
  std::vector<double> epsilons;
  int trials_per_cell = 1;
  std::uint64_t seed = 0;
  std::string mode = "norm";  // "norm" | "nu"
  bool exact_point = false;
  std::optional<double> schatten_p;
};

/// Throws on invalid coordinates (trials < 1, dims < 2, epsilon outside
/// (0,1), or epsilon >= 1/2 for normal-radius cells).
void validate_config(const ExperimentConfig& cfg);

struct ReportRow {
  std::string mode;
  OperatorClass op_class = OperatorClass::General;
  std::size_t dim = 0;
  double epsilon = 0.0;
  int trials = 0;
  int pass = 0;
  int fail = 0;
  double max_residual = 0.0;
  double max_bound_ratio = 0.0;
  double max_op_distance = 0.0;
  double theoretical_bound = 0.0;
  double ms = 0.0;
  std::map<std::string, int> failure_reasons;
};

struct Report {
  ExperimentConfig config;
  std::vector<ReportRow> rows;
};

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);
bool operator==(const ReportRow& a, const ReportRow& b);
bool operator==(const Report& a, const Report& b);

/// Runs the class-appropriate corrector on one instance and packages the
/// self-contained record (inputs, outputs, certificate). Shared by the CLI
/// and the sweep harness.
CorrectionRecord run_correction(const std::string& mode, OperatorClass op_class, double epsilon,
                                std::optional<double> schatten_p, bool exact_point,
                                const ComplexMatrix& input, const UnitVector& point);

/// Generates, corrects, and certificate-checks every cell. Apart from the
/// per-cell wall-time field the outcome is a pure function of cfg; trials
/// run in parallel with order-independent aggregation.
Report run_experiment(const ExperimentConfig& cfg);

std::string report_csv_string(const Report& report);
/// csv columns: mode,class,dim,epsilon,trials,pass,fail,max_residual,max_bound_ratio,ms
void emit_report_csv(const Report& report, const std::string& path);
/// csv columns: class,epsilon,theoretical_bound,observed_max_distance
void emit_plotdata_csv(const Report& report, const std::string& path);
std::string plotdata_csv_string(const Report& report);

}  // namespace bpb
