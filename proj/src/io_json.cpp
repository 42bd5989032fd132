#include "bpb/io_json.hpp"

#include <cmath>
#include <fstream>

namespace bpb {

using nlohmann::json;

namespace {
json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(ErrorCode::IOFailure, "complex scalar must be a [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}
}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return json{{"dim", m.dim()}, {"entries", std::move(rows)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
    fail(ErrorCode::IOFailure, "matrix json needs dim and entries");
  const std::size_t dim = j.at("dim").get<std::size_t>();
  if (dim < 1) fail(ErrorCode::IOFailure, "matrix dim must be >= 1");
  const json& rows = j.at("entries");
  if (!rows.is_array() || rows.size() != dim)
    fail(ErrorCode::IOFailure, "matrix entries must hold dim rows");
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.size() != dim)
      fail(ErrorCode::IOFailure, "matrix row " + std::to_string(i) + " must hold dim entries");
    for (std::size_t k = 0; k < dim; ++k) m(i, k) = complex_from_json(row[k]);
  }
  if (!m.all_finite()) fail(ErrorCode::IOFailure, "matrix entries must be finite");
  return m;
}

json vector_to_json(const ComplexVector& v) {
  json entries = json::array();
  for (const Complex& z : v) entries.push_back(complex_to_json(z));
  return json{{"dim", v.size()}, {"entries", std::move(entries)}};
}

ComplexVector vector_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries"))
    fail(ErrorCode::IOFailure, "vector json needs dim and entries");
  const std::size_t dim = j.at("dim").get<std::size_t>();
  const json& entries = j.at("entries");
  if (!entries.is_array() || entries.size() != dim)
    fail(ErrorCode::IOFailure, "vector entries must hold dim values");
  ComplexVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = complex_from_json(entries[i]);
  for (const Complex& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      fail(ErrorCode::IOFailure, "vector entries must be finite");
  return v;
}

json certificate_to_json(const CorrectionCertificate& c) {
  json j{{"op_distance", c.op_distance},
         {"point_distance", c.point_distance},
         {"attainment_residual", c.attainment_residual},
         {"theoretical_bound", c.theoretical_bound},
         {"theorem_tag", c.theorem_tag}};
  j["schatten_distance"] = c.schatten_distance ? json(*c.schatten_distance) : json(nullptr);
  j["schatten_p"] = c.schatten_p ? json(*c.schatten_p) : json(nullptr);
  return j;
}

CorrectionCertificate certificate_from_json(const json& j) {
  CorrectionCertificate c;
  c.op_distance = j.at("op_distance").get<double>();
  c.point_distance = j.at("point_distance").get<double>();
  c.attainment_residual = j.at("attainment_residual").get<double>();
  c.theoretical_bound = j.at("theoretical_bound").get<double>();
  c.theorem_tag = j.at("theorem_tag").get<std::string>();
  if (j.contains("schatten_distance") && !j.at("schatten_distance").is_null())
    c.schatten_distance = j.at("schatten_distance").get<double>();
  if (j.contains("schatten_p") && !j.at("schatten_p").is_null())
    c.schatten_p = j.at("schatten_p").get<double>();
  return c;
}

json record_to_json(const CorrectionRecord& r) {
  json j{{"mode", r.mode},
         {"class", class_name(r.op_class)},
         {"epsilon", r.epsilon},
         {"exact_point", r.exact_point},
         {"input", matrix_to_json(r.input)},
         {"point", vector_to_json(r.point.entries())},
         {"S", matrix_to_json(r.corrected)},
         {"x1", vector_to_json(r.attain_point.entries())},
         {"certificate", certificate_to_json(r.certificate)}};
  j["schatten_p"] = r.schatten_p ? json(*r.schatten_p) : json(nullptr);
  j["schatten_M"] = r.schatten_M ? json(*r.schatten_M) : json(nullptr);
  j["precondition_threshold"] =
      r.precondition_threshold ? json(*r.precondition_threshold) : json(nullptr);
  return j;
}

CorrectionRecord record_from_json(const json& j) {
  CorrectionRecord r;
  r.mode = j.at("mode").get<std::string>();
  const auto cls = class_from_name(j.at("class").get<std::string>());
  if (!cls) fail(ErrorCode::IOFailure, "unknown operator class in record");
  r.op_class = *cls;
  r.epsilon = j.at("epsilon").get<double>();
  r.exact_point = j.at("exact_point").get<bool>();
  if (j.contains("schatten_p") && !j.at("schatten_p").is_null())
    r.schatten_p = j.at("schatten_p").get<double>();
  if (j.contains("schatten_M") && !j.at("schatten_M").is_null())
    r.schatten_M = j.at("schatten_M").get<double>();
  if (j.contains("precondition_threshold") && !j.at("precondition_threshold").is_null())
    r.precondition_threshold = j.at("precondition_threshold").get<double>();
  r.input = matrix_from_json(j.at("input"));
  r.point = UnitVector(vector_from_json(j.at("point")));
  r.corrected = matrix_from_json(j.at("S"));
  r.attain_point = UnitVector(vector_from_json(j.at("x1")));
  r.certificate = certificate_from_json(j.at("certificate"));
  return r;
}

json trace_to_json(const IterationTrace& t) {
  json steps = json::array();
  for (const IterationStep& s : t.steps)
    steps.push_back(json{{"witness", vector_to_json(s.witness.entries())},
                         {"alpha", complex_to_json(s.alpha)},
                         {"nu", s.nu}});
  return json{{"converged", t.converged}, {"steps", std::move(steps)}};
}

json spectral_measure_to_json(const SpectralMeasure& e) {
  json points = json::array();
  for (const SpectralMeasure::Point& pt : e.points)
    points.push_back(json{{"eigenvalue", complex_to_json(pt.eigenvalue)},
                          {"projection", matrix_to_json(pt.projection)}});
  return json{{"dim", e.dim}, {"points", std::move(points)}};
}

json config_to_json(const ExperimentConfig& cfg) {
  json classes = json::array();
  for (OperatorClass c : cfg.classes) classes.push_back(class_name(c));
  json j{{"mode", cfg.mode},          {"classes", std::move(classes)},
         {"dims", cfg.dims},          {"epsilons", cfg.epsilons},
         {"trials_per_cell", cfg.trials_per_cell}, {"seed", cfg.seed},
         {"exact_point", cfg.exact_point}};
  j["schatten_p"] = cfg.schatten_p ? json(*cfg.schatten_p) : json(nullptr);
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg;
  cfg.mode = j.at("mode").get<std::string>();
  for (const json& c : j.at("classes")) {
    const auto cls = class_from_name(c.get<std::string>());
    if (!cls) fail(ErrorCode::IOFailure, "unknown operator class in config");
    cfg.classes.push_back(*cls);
  }
  cfg.dims = j.at("dims").get<std::vector<std::size_t>>();
  cfg.epsilons = j.at("epsilons").get<std::vector<double>>();
  cfg.trials_per_cell = j.at("trials_per_cell").get<int>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("exact_point")) cfg.exact_point = j.at("exact_point").get<bool>();
  if (j.contains("schatten_p") && !j.at("schatten_p").is_null())
    cfg.schatten_p = j.at("schatten_p").get<double>();
  validate_config(cfg);
  return cfg;
}

json report_to_json(const Report& report) {
  json rows = json::array();
  for (const ReportRow& row : report.rows) {
    json reasons = json::object();
    for (const auto& [code, count] : row.failure_reasons) reasons[code] = count;
    rows.push_back(json{{"mode", row.mode},
                        {"class", class_name(row.op_class)},
                        {"dim", row.dim},
                        {"epsilon", row.epsilon},
                        {"trials", row.trials},
                        {"pass", row.pass},
                        {"fail", row.fail},
                        {"max_residual", row.max_residual},
                        {"max_bound_ratio", row.max_bound_ratio},
                        {"max_op_distance", row.max_op_distance},
                        {"theoretical_bound", row.theoretical_bound},
                        {"ms", row.ms},
                        {"failure_reasons", std::move(reasons)}});
  }
  return json{{"config", config_to_json(report.config)}, {"rows", std::move(rows)}};
}

Report report_from_json(const json& j) {
  Report report;
  report.config = config_from_json(j.at("config"));
  for (const json& rj : j.at("rows")) {
    ReportRow row;
    row.mode = rj.at("mode").get<std::string>();
    const auto cls = class_from_name(rj.at("class").get<std::string>());
    if (!cls) fail(ErrorCode::IOFailure, "unknown operator class in report row");
    row.op_class = *cls;
    row.dim = rj.at("dim").get<std::size_t>();
    row.epsilon = rj.at("epsilon").get<double>();
    row.trials = rj.at("trials").get<int>();
    row.pass = rj.at("pass").get<int>();
    row.fail = rj.at("fail").get<int>();
    row.max_residual = rj.at("max_residual").get<double>();
    row.max_bound_ratio = rj.at("max_bound_ratio").get<double>();
    row.max_op_distance = rj.at("max_op_distance").get<double>();
    row.theoretical_bound = rj.at("theoretical_bound").get<double>();
    row.ms = rj.at("ms").get<double>();
    for (const auto& [code, count] : rj.at("failure_reasons").items())
      row.failure_reasons[code] = count.get<int>();
    report.rows.push_back(std::move(row));
  }
  return report;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IOFailure, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorCode::IOFailure, "malformed json in " + path + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IOFailure, "cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
  if (!out) fail(ErrorCode::IOFailure, "short write to " + path);
}

}  // namespace bpb
