#include <cstdio>
#include <cstdlib>
#include <string>

#include "CLI11.hpp"
#include "bpb/experiment.hpp"
#include "bpb/io_json.hpp"
#include "bpb/kernels.hpp"
#include "bpb/nu_correction.hpp"
#include "bpb/oracles.hpp"

namespace {

bpb::OperatorClass parse_class(const std::string& name) {
  const auto cls = bpb::class_from_name(name);
  if (!cls)
    bpb::fail(bpb::ErrorCode::InvalidArgument,
              "unknown class '" + name +
                  "' (expected general|positive|selfadjoint|antisymmetric|unitary|normal|schatten)");
  return *cls;
}

int cmd_correct(const std::string& mode, const std::string& class_name_arg, double epsilon,
                double schatten_p, bool has_schatten, const std::string& input_path,
                const std::string& point_path, bool exact_point, bool normalize,
                const std::string& out_path, const std::string& trace_path,
                const std::string& dump_spectral_path, double eta, bool has_eta) {
  using namespace bpb;
  const OperatorClass op_class = parse_class(class_name_arg);

  ComplexMatrix input = matrix_from_json(load_json_file(input_path));
  const UnitVector point(vector_from_json(load_json_file(point_path)));

  double scale = 1.0;
  if (normalize) {
    scale = (mode == "norm") ? operator_norm(input) : numerical_radius_value(input, 1e-10);
    if (scale <= 0.0) fail(ErrorCode::InvalidArgument, "cannot normalize the zero operator");
    input *= Complex(1.0 / scale);
  }

  CorrectionRecord record;
  IterationTrace trace;
  if (mode == "nu") {
    NuCorrectionRequest req(input, point, epsilon, op_class);
    if (has_schatten) req.schatten_p = schatten_p;
    req.target_point_exact = exact_point;
    if (has_eta) req.eta_override = eta;
    NuCorrectionResult res = nu_correct_any(req);
    trace = res.trace;
    record.mode = mode;
    record.op_class = op_class;
    record.epsilon = epsilon;
    if (has_schatten) {
      record.schatten_p = schatten_p;
      record.schatten_M = schatten_norm(input, schatten_p);
    }
    record.exact_point = exact_point;
    record.input = input;
    record.point = point;
    record.corrected = res.corrected;
    record.attain_point = res.attain_point;
    record.certificate = res.certificate;
    record.precondition_threshold = res.precondition_threshold;
  } else {
    record = run_correction(mode, op_class, epsilon,
                            has_schatten ? std::optional<double>(schatten_p) : std::nullopt,
                            exact_point, input, point);
  }

  nlohmann::json out = record_to_json(record);
  if (normalize) out["normalization_scale"] = scale;
  save_json_file(out_path, out);

  if (!trace_path.empty()) save_json_file(trace_path, trace_to_json(trace));
  if (!dump_spectral_path.empty())
    save_json_file(dump_spectral_path, spectral_measure_to_json(normal_spectral_measure(input)));

  const CheckReport check = verify_certificate(record);
  std::printf("tag=%s op_distance=%.6g bound=%.6g point_distance=%.6g residual=%.3g\n",
              record.certificate.theorem_tag.c_str(), record.certificate.op_distance,
              record.certificate.theoretical_bound, record.certificate.point_distance,
              record.certificate.attainment_residual);
  for (const std::string& f : check.failures) std::printf("check failed: %s\n", f.c_str());
  std::printf("%s\n", check.passed ? "certificate OK" : "certificate FAILED");
  return check.passed ? 0 : 1;
}

int cmd_sweep(const std::string& config_path, const std::string& out_csv,
              const std::string& out_json, const std::string& out_plot) {
  using namespace bpb;
  ExperimentConfig cfg = config_from_json(load_json_file(config_path));
  if (const char* env_seed = std::getenv("BPB_SEED"))
    cfg.seed = std::strtoull(env_seed, nullptr, 10);

  const Report report = run_experiment(cfg);
  if (!out_csv.empty()) emit_report_csv(report, out_csv);
  if (!out_json.empty()) save_json_file(out_json, report_to_json(report));
  if (!out_plot.empty()) emit_plotdata_csv(report, out_plot);

  bool all_pass = true;
  for (const ReportRow& row : report.rows) {
    std::printf("%s class=%s dim=%zu eps=%g: %d/%d pass (max residual %.3g, ratio %.3f)\n",
                row.mode.c_str(), class_name(row.op_class), row.dim, row.epsilon, row.pass,
                row.trials, row.max_residual, row.max_bound_ratio);
    for (const auto& [code, count] : row.failure_reasons)
      std::printf("  %d failures: %s\n", count, code.c_str());
    if (row.fail > 0) all_pass = false;
  }
  return all_pass ? 0 : 1;
}

int cmd_oracle(const std::string& input_path, int density) {
  using namespace bpb;
  const ComplexMatrix input = matrix_from_json(load_json_file(input_path));
  const double bf_norm = brute_force_norm(input, density);
  const double bf_radius = brute_force_radius(input, density);
  const double lib_norm = operator_norm(input);
  const double lib_radius = numerical_radius_value(input, 1e-9);
  std::printf("operator_norm: sweep=%.12g brute=%.12g |diff|=%.3g\n", lib_norm, bf_norm,
              std::abs(lib_norm - bf_norm));
  std::printf("numerical_radius: sweep=%.12g brute=%.12g |diff|=%.3g\n", lib_radius, bf_radius,
              std::abs(lib_radius - bf_radius));
  const bool ok = std::abs(lib_norm - bf_norm) <= 1e-3 && std::abs(lib_radius - bf_radius) <= 1e-3;
  std::printf("%s\n", ok ? "oracle agreement OK" : "oracle agreement FAILED");
  return ok ? 0 : 1;
}

int cmd_verify(const std::string& result_path) {
  using namespace bpb;
  const CorrectionRecord record = record_from_json(load_json_file(result_path));
  const CheckReport check = verify_certificate(record);
  for (const std::string& f : check.failures) std::printf("check failed: %s\n", f.c_str());
  std::printf("%s\n", check.passed ? "certificate OK" : "certificate FAILED");
  return check.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"constructive norm/numerical-radius attainment corrections on C^n"};
  app.require_subcommand(1);
  bool serial = false;
  app.add_flag("--serial", serial, "disable the OpenMP kernels");

  // correct
  auto* correct = app.add_subcommand("correct", "correct one operator from files");
  std::string mode, cls, input_path, point_path, out_path = "result.json";
  std::string trace_path, dump_spectral_path;
  double epsilon = 0.0, schatten_p = 0.0, eta = 0.0;
  bool exact_point = false, normalize = false;
  correct->add_option("--mode", mode, "norm | nu")->required()
      ->check(CLI::IsMember({"norm", "nu"}));
  correct->add_option("--class", cls, "operator class")->required();
  auto* p_opt = correct->add_option("--schatten", schatten_p, "Schatten exponent p >= 1");
  correct->add_option("--epsilon", epsilon, "target epsilon in (0,1)")->required();
  correct->add_option("--input", input_path, "operator json")->required();
  correct->add_option("--point", point_path, "unit vector json")->required();
  correct->add_flag("--exact-point", exact_point, "attain at x0 itself");
  correct->add_flag("--normalize", normalize, "divide the input by its norm first");
  correct->add_option("--out", out_path, "result json path");
  correct->add_option("--trace", trace_path, "dump the iteration trace (nu mode)");
  correct->add_option("--dump-spectral", dump_spectral_path,
                      "dump the spectral measure of the (normal) input");
  auto* eta_opt = correct->add_option("--eta", eta, "override the admissibility modulus");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run a configured experiment sweep");
  std::string config_path, sweep_csv, sweep_json, sweep_plot;
  sweep->add_option("--config", config_path, "experiment config json")->required();
  sweep->add_option("--out", sweep_csv, "report csv path");
  sweep->add_option("--json", sweep_json, "report json path");
  sweep->add_option("--plotdata", sweep_plot, "plot data csv path");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "brute-force norm and radius of a small operator");
  std::string oracle_input;
  int density = 1;
  oracle->add_option("--input", oracle_input, "operator json (dim <= 3)")->required();
  oracle->add_option("--density", density, "grid density multiplier");

  // verify
  auto* verify = app.add_subcommand("verify", "re-check a result file's certificate");
  std::string result_path;
  verify->add_option("--result", result_path, "result json")->required();

  CLI11_PARSE(app, argc, argv);
  if (serial) bpb::kernels::set_parallel_enabled(false);

  try {
    if (correct->parsed())
      return cmd_correct(mode, cls, epsilon, schatten_p, p_opt->count() > 0, input_path,
                         point_path, exact_point, normalize, out_path, trace_path,
                         dump_spectral_path, eta, eta_opt->count() > 0);
    if (sweep->parsed()) return cmd_sweep(config_path, sweep_csv, sweep_json, sweep_plot);
    if (oracle->parsed()) return cmd_oracle(oracle_input, density);
    if (verify->parsed()) return cmd_verify(result_path);
  } catch (const bpb::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 3;
  }
  return 0;
}
