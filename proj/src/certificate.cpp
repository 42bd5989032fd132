#include "bpb/certificate.hpp"

#include <cmath>

namespace bpb {

namespace {
double beta_of(double eps) { return 4.0 * std::sqrt(eps); }

// pieces of the normal-class bound
double normal_op_bound(double eps) {
  const double s = std::sqrt(2.0 * eps);
  const double q = std::pow(2.0 * eps, 0.25);
  return (s + 2.0 * q) / (1.0 - s) + 2.0 * s;
}
double normal_point_bound(double eps) {
  return std::sqrt(2.0 * eps) + std::pow(2.0 * eps, 0.25);
}
}  // namespace

double op_distance_bound(const std::string& tag, double epsilon, double schatten_M) {
  if (tag == "norm-positive" || tag == "norm-general") return epsilon;
  if (tag == "norm-pointwise") return 3.0 * epsilon;
  if (tag == "norm-schatten")
    return 2.0 * epsilon * schatten_M + (1.0 + 2.0 * epsilon) * schatten_M * beta_of(epsilon);
  if (tag == "nu-general" || tag == "nu-positive" || tag == "nu-schatten" || tag == "nu-unitary")
    return epsilon;
  if (tag == "nu-selfadjoint") return 9.0 * epsilon;
  if (tag == "nu-normal" || tag == "nu-normal-schatten") return normal_op_bound(epsilon);
  if (tag == "nu-pointwise") return 5.0 * epsilon;
  if (tag == "nu-selfadjoint-pointwise") return 13.0 * epsilon;
  if (tag == "nu-normal-pointwise")
    return normal_op_bound(epsilon) + 4.0 * normal_point_bound(epsilon);
  fail(ErrorCode::InvalidArgument, "unknown certificate tag " + tag);
}

double point_distance_bound(const std::string& tag, double epsilon) {
  if (tag == "norm-positive" || tag == "norm-general") return beta_of(epsilon);
  if (tag == "nu-general" || tag == "nu-positive" || tag == "nu-schatten" ||
      tag == "nu-selfadjoint")
    return epsilon;
  if (tag == "nu-normal" || tag == "nu-normal-schatten") return normal_point_bound(epsilon);
  // point-exact tags attain at x0 itself
  if (tag == "norm-pointwise" || tag == "norm-schatten" || tag == "nu-unitary" ||
      tag == "nu-pointwise" || tag == "nu-selfadjoint-pointwise" || tag == "nu-normal-pointwise")
    return 0.0;
  fail(ErrorCode::InvalidArgument, "unknown certificate tag " + tag);
}

std::optional<double> schatten_distance_bound(const std::string& tag, double epsilon,
                                              double schatten_M) {
  if (tag == "norm-schatten")
    return 2.0 * epsilon * schatten_M + (1.0 + 2.0 * epsilon) * schatten_M * beta_of(epsilon);
  if (tag == "nu-schatten")
    return (epsilon / (1.0 - epsilon)) * (schatten_M + epsilon) + epsilon;
  if (tag == "nu-normal-schatten") {
    const double s = std::sqrt(2.0 * epsilon);
    const double q = std::pow(2.0 * epsilon, 0.25);
    const double r_gap = (s + 2.0 * q) / (1.0 - s) + s;  // ||R~ - Id|| + modulus gap
    return r_gap * schatten_M / (1.0 - s) + schatten_M * s / (1.0 - s);
  }
  return std::nullopt;
}

double attainment_tolerance(const std::string& tag) {
  if (tag == "nu-unitary") return 1e-10;
  if (tag.rfind("norm-", 0) == 0) return 1e-7;
  if (tag == "nu-normal" || tag == "nu-normal-schatten") return 1e-7;
  return 1e-6;
}

CheckReport verify_certificate(const CorrectionRecord& record) {
  CheckReport report;
  const std::string& tag = record.certificate.theorem_tag;
  const double eps = record.epsilon;
  const double m_bound = record.schatten_M.value_or(0.0);
  constexpr double kSlack = 1e-9;

  const ComplexMatrix diff = record.corrected - record.input;
  const double op_dist = operator_norm(diff);
  const double op_bound = op_distance_bound(tag, eps, m_bound);
  report.require(op_dist <= op_bound + kSlack,
                 "operator distance " + std::to_string(op_dist) + " exceeds bound " +
                     std::to_string(op_bound));
  report.require(std::abs(op_dist - record.certificate.op_distance) <= 1e-7,
                 "stored op_distance disagrees with recomputation");
  report.require(std::abs(record.certificate.theoretical_bound - op_bound) <=
                     1e-12 * std::max(1.0, op_bound),
                 "stored theoretical_bound disagrees with the tag formula");

  const double pt_dist = distance(record.attain_point, record.point);
  const double pt_bound = point_distance_bound(tag, eps);
  report.require(pt_dist <= pt_bound + kSlack,
                 "point distance " + std::to_string(pt_dist) + " exceeds bound " +
                     std::to_string(pt_bound));

  const double attain_tol = attainment_tolerance(tag);
  if (record.mode == "norm") {
    const double at = vec_norm(record.corrected.apply(record.attain_point.entries()));
    report.require(std::abs(at - 1.0) <= attain_tol,
                   "||S x|| = " + std::to_string(at) + " misses 1 beyond " +
                       std::to_string(attain_tol));
    const double norm_s = operator_norm(record.corrected);
    report.require(std::abs(norm_s - 1.0) <= 1e-7,
                   "||S|| = " + std::to_string(norm_s) + " is not 1 within 1e-7");
  } else {
    const double at = std::abs(quadratic_form(record.corrected, record.attain_point));
    report.require(std::abs(at - 1.0) <= attain_tol,
                   "|<S x, x>| = " + std::to_string(at) + " misses 1 beyond " +
                       std::to_string(attain_tol));
    const double nu_s = numerical_radius_value(record.corrected, 1e-4);
    report.require(std::abs(nu_s - 1.0) <= 2e-3,
                   "nu(S) = " + std::to_string(nu_s) + " is not 1 within 2e-3");
  }

  const double class_tol = (tag == "nu-unitary") ? 1e-9 : 1e-8;
  report.require(class_check(record.corrected, record.op_class, class_tol),
                 std::string("corrected operator left class ") + class_name(record.op_class));

  if (tag == "nu-normal" || tag == "nu-normal-schatten") {
    const double norm_s = operator_norm(record.corrected);
    report.require(norm_s <= 1.0 + 1e-9, "||S|| exceeds 1 + 1e-9");
    const ComplexMatrix sadj = adjoint(record.corrected);
    const double defect = operator_norm(record.corrected * sadj - sadj * record.corrected);
    report.require(defect <= 1e-8, "normality defect exceeds 1e-8");
  }

  if (record.schatten_p) {
    const double p = *record.schatten_p;
    const double sp = schatten_norm(diff, p);
    if (auto bound = schatten_distance_bound(tag, eps, m_bound)) {
      report.require(sp <= *bound + kSlack, "sigma_p distance " + std::to_string(sp) +
                                                " exceeds bound " + std::to_string(*bound));
    }
    report.require(op_dist <= sp + kSlack, "operator norm exceeds the sigma_p distance");
    if (record.certificate.schatten_distance)
      report.require(std::abs(*record.certificate.schatten_distance - sp) <= 1e-7,
                     "stored schatten_distance disagrees with recomputation");
  }
  return report;
}

}  // namespace bpb
