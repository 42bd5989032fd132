#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bpb/complex_matrix.hpp"
#include "bpb/linalg.hpp"

namespace bpb {

/// Achieved distances of a correction paired with the closed-form bound of
/// the result that produced it. theorem_tag selects the bound formulas; see
/// certificate.cpp for the full table.
struct CorrectionCertificate {
  double op_distance = 0.0;                      // ||S - T||
  std::optional<double> schatten_distance;       // sigma_p(S - T)
  std::optional<double> schatten_p;
  double point_distance = 0.0;                   // ||x1 - x0||
  double attainment_residual = 0.0;              // | |<S x,x>| - 1 | or | ||S x|| - 1 |
  double theoretical_bound = 0.0;                // bound on op_distance
  std::string theorem_tag;
};

/// Bound on ||S - T|| for a tag at a given epsilon (schatten_M feeds the
/// Schatten tags, where the operator-norm distance inherits the sigma_p
/// bound through monotonicity).
double op_distance_bound(const std::string& tag, double epsilon, double schatten_M);
/// Bound on ||x1 - x0||; zero for the point-exact tags.
double point_distance_bound(const std::string& tag, double epsilon);
/// Bound on sigma_p(S - T) for tags that certify a Schatten distance.
std::optional<double> schatten_distance_bound(const std::string& tag, double epsilon,
                                              double schatten_M);
/// Tolerance on the attainment residual.
double attainment_tolerance(const std::string& tag);

/// Everything needed to re-check a correction from files alone.
struct CorrectionRecord {
  std::string mode;  // "norm" | "nu"
  OperatorClass op_class = OperatorClass::General;
  double epsilon = 0.0;
  std::optional<double> schatten_p;
  std::optional<double> schatten_M;
  bool exact_point = false;
  /// the almost-attainment threshold that was actually enforced
  std::optional<double> precondition_threshold;
  ComplexMatrix input;
  UnitVector point;
  ComplexMatrix corrected;
  UnitVector attain_point;
  CorrectionCertificate certificate;

  CorrectionRecord() : point(UnitVector::basis(1, 0)), attain_point(UnitVector::basis(1, 0)) {}
};

struct CheckReport {
  bool passed = true;
  std::vector<std::string> failures;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      failures.push_back(what);
    }
  }
};

/// Recomputes every certified quantity of a record and compares against the
/// stored certificate and the tag's bounds. Strict paper inequalities are
/// tested with 1e-9 slack.
CheckReport verify_certificate(const CorrectionRecord& record);

}  // namespace bpb
