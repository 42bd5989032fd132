#include "bpb/experiment.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>

#include "bpb/generators.hpp"
#include "bpb/norm_correction.hpp"
#include "bpb/nu_correction.hpp"
#include "bpb/rng.hpp"

namespace bpb {

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.trials_per_cell < 1) fail(ErrorCode::InvalidArgument, "trials_per_cell must be >= 1");
  if (cfg.mode != "norm" && cfg.mode != "nu")
    fail(ErrorCode::InvalidArgument, "mode must be norm or nu");
  if (cfg.classes.empty() || cfg.dims.empty() || cfg.epsilons.empty())
    fail(ErrorCode::InvalidArgument, "classes, dims, and epsilons must be non-empty");
  for (std::size_t d : cfg.dims)
    if (d < 2) fail(ErrorCode::InvalidArgument, "dims must be >= 2");
  const bool has_normal_nu =
      cfg.mode == "nu" && std::find(cfg.classes.begin(), cfg.classes.end(),
                                    OperatorClass::Normal) != cfg.classes.end();
  for (double e : cfg.epsilons) {
    if (!(e > 0.0 && e < 1.0)) fail(ErrorCode::InvalidEpsilon, "epsilons must lie in (0,1)");
    if (has_normal_nu && !(e < 0.5))
      fail(ErrorCode::InvalidEpsilon, "normal-radius cells need epsilon < 1/2");
  }
  if (cfg.schatten_p && !(*cfg.schatten_p >= 1.0 && std::isfinite(*cfg.schatten_p)))
    fail(ErrorCode::InvalidP, "schatten_p must be finite with p >= 1");
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  return a.classes == b.classes && a.dims == b.dims && a.epsilons == b.epsilons &&
         a.trials_per_cell == b.trials_per_cell && a.seed == b.seed && a.mode == b.mode &&
         a.exact_point == b.exact_point && a.schatten_p == b.schatten_p;
}

bool operator==(const ReportRow& a, const ReportRow& b) {
  return a.mode == b.mode && a.op_class == b.op_class && a.dim == b.dim &&
         a.epsilon == b.epsilon && a.trials == b.trials && a.pass == b.pass && a.fail == b.fail &&
         a.max_residual == b.max_residual && a.max_bound_ratio == b.max_bound_ratio &&
         a.max_op_distance == b.max_op_distance && a.theoretical_bound == b.theoretical_bound &&
         a.ms == b.ms && a.failure_reasons == b.failure_reasons;
}

bool operator==(const Report& a, const Report& b) {
  return a.config == b.config && a.rows == b.rows;
}

CorrectionRecord run_correction(const std::string& mode, OperatorClass op_class, double epsilon,
                                std::optional<double> schatten_p, bool exact_point,
                                const ComplexMatrix& input, const UnitVector& point) {
  CorrectionRecord record;
  record.mode = mode;
  record.op_class = op_class;
  record.epsilon = epsilon;
  record.schatten_p = schatten_p;
  record.exact_point = exact_point;
  record.input = input;
  record.point = point;
  if (schatten_p) record.schatten_M = schatten_norm(input, *schatten_p);

  if (mode == "norm") {
    NormCorrectionRequest req(input, point, epsilon, op_class);
    req.schatten_p = schatten_p;
    req.target_point_exact = exact_point;
    NormCorrectionResult res = [&] {
      if (schatten_p && !exact_point) return norm_correct_schatten(req, *record.schatten_M);
      if (op_class == OperatorClass::Positive && !exact_point) return norm_correct_positive(req);
      return norm_correct(req);
    }();
    record.corrected = res.corrected;
    record.attain_point = res.attain_point;
    record.certificate = res.certificate;
    record.precondition_threshold = 1.0 - epsilon * epsilon / 4.0;
  } else if (mode == "nu") {
    NuCorrectionRequest req(input, point, epsilon, op_class);
    req.schatten_p = schatten_p;
    req.target_point_exact = exact_point;
    NuCorrectionResult res = nu_correct_any(req);
    record.corrected = res.corrected;
    record.attain_point = res.attain_point;
    record.certificate = res.certificate;
    record.precondition_threshold = res.precondition_threshold;
  } else {
    fail(ErrorCode::InvalidArgument, "mode must be norm or nu");
  }
  return record;
}

namespace {
struct TrialOutcome {
  bool pass = false;
  double residual = 0.0;
  double ratio = 0.0;
  double op_distance = 0.0;
  double bound = 0.0;
  double ms = 0.0;
  std::string reason;
};

struct Cell {
  OperatorClass op_class;
  std::size_t dim;
  double epsilon;
};
}  // namespace

Report run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);

  std::vector<Cell> cells;
  for (OperatorClass c : cfg.classes)
    for (std::size_t d : cfg.dims)
      for (double e : cfg.epsilons) cells.push_back({c, d, e});

  const std::size_t trials = static_cast<std::size_t>(cfg.trials_per_cell);
  const std::size_t total = cells.size() * trials;
  std::vector<TrialOutcome> outcomes(total);
  const bool nu_mode = cfg.mode == "nu";

#pragma omp parallel for schedule(dynamic)
  for (std::size_t idx = 0; idx < total; ++idx) {
    const std::size_t cell_idx = idx / trials;
    const std::size_t trial = idx % trials;
    const Cell& cell = cells[cell_idx];
    const std::uint64_t seed = Rng::derive(cfg.seed, cell_idx, trial);
    TrialOutcome& out = outcomes[idx];
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Instance inst = gen_instance(cell.op_class, cell.dim, cell.epsilon, nu_mode, seed);
      const CorrectionRecord record = run_correction(cfg.mode, cell.op_class, cell.epsilon,
                                                     cfg.schatten_p, cfg.exact_point, inst.input,
                                                     inst.point);
      const CheckReport check = verify_certificate(record);
      out.pass = check.passed;
      out.residual = record.certificate.attainment_residual;
      out.op_distance = record.certificate.op_distance;
      out.bound = record.certificate.theoretical_bound;
      out.ratio = record.certificate.theoretical_bound > 0.0
                      ? record.certificate.op_distance / record.certificate.theoretical_bound
                      : 0.0;
      if (!check.passed) out.reason = "CertificateViolation";
    } catch (const Error& err) {
      out.pass = false;
      out.reason = error_code_name(err.code());
    } catch (const std::exception&) {
      out.pass = false;
      out.reason = "InternalError";
    }
    out.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                 .count();
  }

  Report report;
  report.config = cfg;
  for (std::size_t cell_idx = 0; cell_idx < cells.size(); ++cell_idx) {
    const Cell& cell = cells[cell_idx];
    ReportRow row;
    row.mode = cfg.mode;
    row.op_class = cell.op_class;
    row.dim = cell.dim;
    row.epsilon = cell.epsilon;
    row.trials = cfg.trials_per_cell;
    for (std::size_t trial = 0; trial < trials; ++trial) {
      const TrialOutcome& out = outcomes[cell_idx * trials + trial];
      if (out.pass)
        ++row.pass;
      else {
        ++row.fail;
        ++row.failure_reasons[out.reason];
      }
      row.max_residual = std::max(row.max_residual, out.residual);
      row.max_bound_ratio = std::max(row.max_bound_ratio, out.ratio);
      row.max_op_distance = std::max(row.max_op_distance, out.op_distance);
      row.theoretical_bound = std::max(row.theoretical_bound, out.bound);
      row.ms += out.ms;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

namespace {
std::string fmt_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IOFailure, "cannot open " + path + " for writing");
  out << text;
  if (!out) fail(ErrorCode::IOFailure, "short write to " + path);
}
}  // namespace

std::string report_csv_string(const Report& report) {
  std::string csv = "mode,class,dim,epsilon,trials,pass,fail,max_residual,max_bound_ratio,ms\n";
  for (const ReportRow& row : report.rows) {
    csv += row.mode;
    csv += ',';
    csv += class_name(row.op_class);
    csv += ',';
    csv += std::to_string(row.dim);
    csv += ',';
    csv += fmt_double(row.epsilon);
    csv += ',';
    csv += std::to_string(row.trials);
    csv += ',';
    csv += std::to_string(row.pass);
    csv += ',';
    csv += std::to_string(row.fail);
    csv += ',';
    csv += fmt_double(row.max_residual);
    csv += ',';
    csv += fmt_double(row.max_bound_ratio);
    csv += ',';
    csv += fmt_double(row.ms);
    csv += '\n';
  }
  return csv;
}

void emit_report_csv(const Report& report, const std::string& path) {
  write_file(path, report_csv_string(report));
}

std::string plotdata_csv_string(const Report& report) {
  std::string csv = "class,epsilon,theoretical_bound,observed_max_distance\n";
  // one triple per (class, epsilon), maximizing the observed distance over dims
  std::vector<std::pair<OperatorClass, double>> keys;
  for (const ReportRow& row : report.rows) {
    const std::pair<OperatorClass, double> key{row.op_class, row.epsilon};
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) keys.push_back(key);
  }
  for (const auto& [cls, eps] : keys) {
    double bound = 0.0, observed = 0.0;
    for (const ReportRow& row : report.rows)
      if (row.op_class == cls && row.epsilon == eps) {
        bound = std::max(bound, row.theoretical_bound);
        observed = std::max(observed, row.max_op_distance);
      }
    csv += std::string(class_name(cls)) + ',' + fmt_double(eps) + ',' + fmt_double(bound) + ',' +
           fmt_double(observed) + '\n';
  }
  return csv;
}

void emit_plotdata_csv(const Report& report, const std::string& path) {
  write_file(path, plotdata_csv_string(report));
}

}  // namespace bpb
