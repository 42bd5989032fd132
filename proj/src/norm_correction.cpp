#include "bpb/norm_correction.hpp"

#include <cmath>

#include "bpb/isometry.hpp"
#include "bpb/spectral.hpp"

namespace bpb {

std::function<double(double)> truncation_function(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    fail(ErrorCode::InvalidEpsilon, "epsilon must lie in (0, 1)");
  return [epsilon](double t) { return t <= 1.0 - epsilon ? 1.0 : 1.0 / t; };
}

namespace {

void validate_request(const NormCorrectionRequest& req) {
  if (!(req.epsilon > 0.0 && req.epsilon < 1.0))
    fail(ErrorCode::InvalidEpsilon, "epsilon must lie in (0, 1)");
  if (!req.input.all_finite()) fail(ErrorCode::InvalidArgument, "input has non-finite entries");
  if (req.input.dim() != req.point.dim())
    fail(ErrorCode::DimensionMismatch, "operator and point dims differ");
  const double norm = operator_norm(req.input);
  if (std::abs(norm - 1.0) > 1e-8)
    fail(ErrorCode::PreconditionViolated,
         "||T|| = " + std::to_string(norm) + "; inputs must be pre-normalized to 1");
  const double at = vec_norm(req.input.apply(req.point.entries()));
  const double threshold = 1.0 - req.epsilon * req.epsilon / 4.0;
  if (!(at > threshold))
    fail(ErrorCode::AlmostAttainmentViolated, "||T x0|| = " + std::to_string(at) +
                                                  " does not exceed " + std::to_string(threshold));
}

// z * f(z) on the (real) spectrum of a modulus: identity below the cut,
// renormalized to 1 above it.
Complex spectral_flatten(Complex z, double epsilon) {
  return z.real() > 1.0 - epsilon ? Complex(1.0) : z;
}

CorrectionCertificate make_certificate(const ComplexMatrix& corrected, const ComplexMatrix& input,
                                       const UnitVector& attain_point, const UnitVector& x0,
                                       const std::string& tag, double epsilon,
                                       double schatten_M) {
  CorrectionCertificate cert;
  cert.op_distance = operator_norm(corrected - input);
  cert.point_distance = distance(attain_point, x0);
  cert.attainment_residual = std::abs(vec_norm(corrected.apply(attain_point.entries())) - 1.0);
  cert.theoretical_bound = op_distance_bound(tag, epsilon, schatten_M);
  cert.theorem_tag = tag;
  return cert;
}

}  // namespace

NormCorrectionResult norm_correct_positive(const NormCorrectionRequest& req) {
  validate_request(req);
  const ComplexMatrix& t = req.input;
  if (!class_check(t, OperatorClass::Positive, default_class_tol(t)))
    fail(ErrorCode::NotPositive, "input is not positive within tolerance");

  const SpectralMeasure e = normal_spectral_measure(t);
  const SpectralRegion top = SpectralRegion::real_above(1.0 - req.epsilon);

  const ComplexMatrix corrected =
      apply_borel_function(e, [&](Complex z) { return spectral_flatten(z, req.epsilon); });

  const ComplexMatrix projector = spectral_projection(e, top);
  ComplexVector px = projector.apply(req.point.entries());
  if (vec_norm(px) <= 1e-14)
    fail(ErrorCode::EmptyProjection, "E(A) x0 vanished despite the preconditions");
  const UnitVector x1 = UnitVector::normalized(std::move(px));

  NormCorrectionResult out{corrected, x1,
                           make_certificate(corrected, t, x1, req.point, "norm-positive",
                                            req.epsilon, 0.0)};
  return out;
}

NormCorrectionResult norm_correct(const NormCorrectionRequest& req) {
  validate_request(req);
  const ComplexMatrix& t = req.input;
  if (!class_check(t, req.op_class, default_class_tol(t)))
    fail(ErrorCode::ClassMismatch,
         std::string("input fails membership in class ") + class_name(req.op_class));

  // unitary operators attain the norm everywhere
  if (req.op_class == OperatorClass::Unitary) {
    const char* tag = req.target_point_exact ? "norm-pointwise" : "norm-general";
    return {t, req.point, make_certificate(t, t, req.point, req.point, tag, req.epsilon, 0.0)};
  }

  // skew-adjoint inputs reduce to the self-adjoint path through i*T
  if (req.op_class == OperatorClass::AntiSymmetric) {
    NormCorrectionRequest rotated(Complex(0.0, 1.0) * req.input, req.point, req.epsilon,
                                  OperatorClass::SelfAdjoint);
    rotated.schatten_p = req.schatten_p;
    rotated.target_point_exact = req.target_point_exact;
    NormCorrectionResult inner = norm_correct(rotated);
    ComplexMatrix corrected = Complex(0.0, -1.0) * inner.corrected;
    return {corrected, inner.attain_point,
            make_certificate(corrected, t, inner.attain_point, req.point,
                             inner.certificate.theorem_tag, req.epsilon, 0.0)};
  }

  const bool commuting_polar = req.op_class == OperatorClass::Normal ||
                               req.op_class == OperatorClass::SelfAdjoint ||
                               req.op_class == OperatorClass::Positive;

  ComplexMatrix corrected(t.dim());
  ComplexMatrix projector(t.dim());
  if (commuting_polar) {
    // one spectral measure yields the commuting polar factor, the flattened
    // modulus, and the attainment projector, keeping them exactly consistent
    const SpectralMeasure e = normal_spectral_measure(t);
    const ComplexMatrix u = apply_borel_function(e, [](Complex z) {
      const double a = std::abs(z);
      return a == 0.0 ? Complex(1.0) : z / a;
    });
    const ComplexMatrix flattened = apply_borel_function(e, [&](Complex z) {
      return spectral_flatten(Complex(std::abs(z)), req.epsilon);
    });
    corrected = u * flattened;
    projector = spectral_projection(e, SpectralRegion::abs_above(1.0 - req.epsilon));
  } else {
    const PolarFactors polar = polar_decompose(t);
    const SpectralMeasure e = normal_spectral_measure(polar.modulus);
    const ComplexMatrix flattened =
        apply_borel_function(e, [&](Complex z) { return spectral_flatten(z, req.epsilon); });
    corrected = polar.isometry_part * flattened;
    projector = spectral_projection(e, SpectralRegion::real_above(1.0 - req.epsilon));
  }
  ComplexVector px = projector.apply(req.point.entries());
  if (vec_norm(px) <= 1e-14)
    fail(ErrorCode::EmptyProjection, "E(A) x0 vanished despite the preconditions");
  UnitVector x1 = UnitVector::normalized(std::move(px));

  std::string tag = "norm-general";
  UnitVector attain = x1;
  if (req.target_point_exact) {
    corrected = pointify(corrected, x1, req.point, AttainMode::Norm);
    attain = req.point;
    tag = "norm-pointwise";
  }
  return {corrected, attain,
          make_certificate(corrected, t, attain, req.point, tag, req.epsilon, 0.0)};
}

NormCorrectionResult norm_correct_schatten(const NormCorrectionRequest& req, double m_bound) {
  if (!req.schatten_p) fail(ErrorCode::InvalidP, "a finite Schatten exponent is required");
  const double p = *req.schatten_p;
  if (!(p >= 1.0) || std::isinf(p))
    fail(ErrorCode::InvalidP, "Schatten exponent must be finite with p >= 1");
  const double sigma_t = schatten_norm(req.input, p);
  if (sigma_t > m_bound + 1e-9)
    fail(ErrorCode::PreconditionViolated,
         "sigma_p(T) = " + std::to_string(sigma_t) + " exceeds M = " + std::to_string(m_bound));

  NormCorrectionRequest base = req;
  base.target_point_exact = false;
  const NormCorrectionResult inner = norm_correct(base);

  const ComplexMatrix rotation = transitive_isometry(req.point, inner.attain_point);
  const ComplexMatrix corrected = inner.corrected * rotation;

  CorrectionCertificate cert = make_certificate(corrected, req.input, req.point, req.point,
                                                "norm-schatten", req.epsilon, m_bound);
  cert.schatten_p = p;
  cert.schatten_distance = schatten_norm(corrected - req.input, p);
  return {corrected, req.point, cert};
}

}  // namespace bpb
