#pragma once

#include <string>

#include "bpb/certificate.hpp"
#include "bpb/complex_matrix.hpp"
#include "bpb/experiment.hpp"
#include "bpb/nu_correction.hpp"
#include "bpb/spectral.hpp"

#include "json.hpp"

namespace bpb {

// Matrix wire format, used by every file in the repo:
//   {"dim": n, "entries": [[[re,im], ...], ...]}   (row-major)
// Vectors: {"dim": n, "entries": [[re,im], ...]}.
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(const ComplexVector& v);
ComplexVector vector_from_json(const nlohmann::json& j);

nlohmann::json certificate_to_json(const CorrectionCertificate& c);
CorrectionCertificate certificate_from_json(const nlohmann::json& j);

/// Result files carry the request echo (input, point, coordinates) so a
/// certificate can be re-checked from the file alone.
nlohmann::json record_to_json(const CorrectionRecord& r);
CorrectionRecord record_from_json(const nlohmann::json& j);

nlohmann::json trace_to_json(const IterationTrace& t);
nlohmann::json spectral_measure_to_json(const SpectralMeasure& e);

nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const Report& report);
Report report_from_json(const nlohmann::json& j);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace bpb
