#include "bpb/nu_correction.hpp"

#include <cmath>

#include "bpb/isometry.hpp"
#include "bpb/spectral.hpp"

namespace bpb {

double nu_threshold(OperatorClass c, double epsilon, std::optional<double> eta_override) {
  switch (c) {
    case OperatorClass::Unitary:
      return 1.0 - epsilon * epsilon / 2.0;
    case OperatorClass::Normal:
      return 1.0 - epsilon;
    default: {
      const double eta = eta_override.value_or(epsilon * epsilon / 16.0);
      return 1.0 - std::min(epsilon, eta);
    }
  }
}

namespace {

// Global phases of the bump points are free: <., x> x is phase-invariant.
// Aligning each witness against the previous one keeps the recorded points
// (and the distance-to-x0 budget) meaningful.
UnitVector align_phase(const UnitVector& v, const UnitVector& anchor) {
  const Complex overlap = inner(v, anchor);
  const double mag = std::abs(overlap);
  if (mag < 1e-14) return v;
  const Complex rot = std::conj(overlap) / mag;
  ComplexVector out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = v[i] * rot;
  return UnitVector::normalized(std::move(out));
}

double validate_nu_request(const NuCorrectionRequest& req) {
  if (!(req.epsilon > 0.0 && req.epsilon < 1.0))
    fail(ErrorCode::InvalidEpsilon, "epsilon must lie in (0, 1)");
  if (req.op_class == OperatorClass::Normal && !(req.epsilon < 0.5))
    fail(ErrorCode::InvalidEpsilon, "the normal corrector needs epsilon < 1/2");
  if (!req.input.all_finite()) fail(ErrorCode::InvalidArgument, "input has non-finite entries");
  if (req.input.dim() != req.point.dim())
    fail(ErrorCode::DimensionMismatch, "operator and point dims differ");
  if (!class_check(req.input, req.op_class, default_class_tol(req.input)))
    fail(ErrorCode::ClassMismatch,
         std::string("input fails membership in class ") + class_name(req.op_class));

  const double nu = numerical_radius_value(req.input, 1e-9);
  if (std::abs(nu - 1.0) > 1e-6)
    fail(ErrorCode::PreconditionViolated,
         "nu(T) = " + std::to_string(nu) + "; inputs must be pre-normalized to 1");
  if (req.op_class == OperatorClass::Normal) {
    const double norm = operator_norm(req.input);
    if (std::abs(norm - 1.0) > 1e-6)
      fail(ErrorCode::PreconditionViolated,
           "||T|| = " + std::to_string(norm) + " must equal nu(T) = 1 for normal inputs");
  }

  const double threshold = nu_threshold(req.op_class, req.epsilon, req.eta_override);
  const double attained = std::abs(quadratic_form(req.input, req.point));
  if (!(attained > threshold))
    fail(ErrorCode::AlmostAttainmentViolated,
         "|<T x0, x0>| = " + std::to_string(attained) + " does not exceed " +
             std::to_string(threshold));
  return threshold;
}

CorrectionCertificate make_nu_certificate(const ComplexMatrix& corrected,
                                          const ComplexMatrix& input,
                                          const UnitVector& attain_point, const UnitVector& x0,
                                          const std::string& tag, double epsilon,
                                          double schatten_M) {
  CorrectionCertificate cert;
  cert.op_distance = operator_norm(corrected - input);
  cert.point_distance = distance(attain_point, x0);
  cert.attainment_residual = std::abs(std::abs(quadratic_form(corrected, attain_point)) - 1.0);
  cert.theoretical_bound = op_distance_bound(tag, epsilon, schatten_M);
  cert.theorem_tag = tag;
  return cert;
}

NuIterateResult iterate_unchecked(const NuCorrectionRequest& req) {
  NuIterateResult out{req.input, req.point, 0.0, {}};
  UnitVector seed = req.point;
  ComplexMatrix current = req.input;

  for (int n = 1; n <= req.max_steps + 1; ++n) {
    const RadiusResult rr = numerical_radius_seeded(current, req.stop_tol, seed);
    if (!out.trace.steps.empty() && out.trace.steps.back().nu < 0.0)
      out.trace.steps.back().nu = rr.value;

    const UnitVector witness = align_phase(rr.witness, seed);
    const Complex z = quadratic_form(current, witness);
    const double gap = rr.value - std::abs(z);

    const std::string progress = " after " + std::to_string(out.trace.steps.size()) + " bumps";
    if (gap <= req.stop_tol) {
      if (distance(witness, req.point) >= req.epsilon)
        fail(ErrorCode::IterationStalled,
             "witness drifted " + std::to_string(distance(witness, req.point)) +
                 " from x0, beyond epsilon," + progress);
      out.t_inf = current;
      out.x_inf = witness;
      out.nu_inf = rr.value;
      out.trace.converged = true;
      return out;
    }
    if (n > req.max_steps)
      fail(ErrorCode::IterationStalled,
           "bump budget exhausted with gap " + std::to_string(gap) + progress);
    if (distance(witness, req.point) >= req.epsilon)
      fail(ErrorCode::IterationStalled,
           "point-distance budget exceeded before convergence" + progress);
    if (std::abs(z) == 0.0)
      fail(ErrorCode::AlmostAttainmentViolated, "witness value vanished; phase undefined");

    Complex alpha = z / std::abs(z);
    if (req.op_class == OperatorClass::Positive) alpha = 1.0;
    const double weight = std::pow(req.epsilon / 4.0, n);
    ComplexMatrix bump = outer(witness.entries(), witness.entries());
    bump *= alpha * weight;
    current += bump;

    out.trace.steps.push_back({witness, alpha, -1.0});
    seed = witness;
  }
  fail(ErrorCode::IterationStalled, "unreachable");
}

}  // namespace

NuIterateResult nu_iterate(const NuCorrectionRequest& req) {
  validate_nu_request(req);
  return iterate_unchecked(req);
}

NuCorrectionResult nu_correct(const NuCorrectionRequest& req) {
  if (req.op_class != OperatorClass::General && req.op_class != OperatorClass::Positive &&
      req.op_class != OperatorClass::SchattenP)
    fail(ErrorCode::ClassMismatch, "nu_correct handles general, positive, and Schatten classes");
  const double threshold = validate_nu_request(req);

  NuIterateResult it = iterate_unchecked(req);
  ComplexMatrix corrected = (Complex(1.0) / it.nu_inf) * it.t_inf;
  UnitVector attain = it.x_inf;

  std::string tag;
  switch (req.op_class) {
    case OperatorClass::Positive: tag = "nu-positive"; break;
    case OperatorClass::SchattenP: tag = "nu-schatten"; break;
    default: tag = "nu-general"; break;
  }
  double m_bound = 0.0;
  if (req.schatten_p) m_bound = schatten_norm(req.input, *req.schatten_p);

  if (req.target_point_exact) {
    corrected = pointify(corrected, attain, req.point, AttainMode::Nu);
    attain = req.point;
    tag = "nu-pointwise";
  }

  NuCorrectionResult out{corrected, attain,
                         make_nu_certificate(corrected, req.input, attain, req.point, tag,
                                             req.epsilon, m_bound),
                         it.trace, 0.0, threshold};
  if (req.schatten_p) {
    out.certificate.schatten_p = req.schatten_p;
    out.certificate.schatten_distance = schatten_norm(corrected - req.input, *req.schatten_p);
  }
  return out;
}

NuCorrectionResult nu_correct_selfadjoint(const NuCorrectionRequest& req) {
  if (req.op_class == OperatorClass::AntiSymmetric) {
    NuCorrectionRequest rotated(Complex(0.0, 1.0) * req.input, req.point, req.epsilon,
                                OperatorClass::SelfAdjoint);
    rotated.schatten_p = req.schatten_p;
    rotated.target_point_exact = req.target_point_exact;
    rotated.eta_override = req.eta_override;
    rotated.stop_tol = req.stop_tol;
    rotated.max_steps = req.max_steps;
    NuCorrectionResult inner = nu_correct_selfadjoint(rotated);
    NuCorrectionResult out = inner;
    out.corrected = Complex(0.0, -1.0) * inner.corrected;
    out.certificate = make_nu_certificate(out.corrected, req.input, out.attain_point, req.point,
                                          inner.certificate.theorem_tag, req.epsilon, 0.0);
    if (req.schatten_p) {
      out.certificate.schatten_p = req.schatten_p;
      out.certificate.schatten_distance =
          schatten_norm(out.corrected - req.input, *req.schatten_p);
    }
    return out;
  }
  if (req.op_class != OperatorClass::SelfAdjoint)
    fail(ErrorCode::ClassMismatch, "nu_correct_selfadjoint needs a self-adjoint input");

  const double threshold = validate_nu_request(req);

  // align the sign so the quadratic form at x0 starts positive
  const bool negated = quadratic_form(req.input, req.point).real() < 0.0;
  NuCorrectionRequest work = req;
  if (negated) work.input = Complex(-1.0) * req.input;
  work.op_class = OperatorClass::General;  // bumps carry free phases here

  NuIterateResult it = iterate_unchecked(work);
  ComplexMatrix s_tilde = (Complex(1.0) / it.nu_inf) * it.t_inf;

  const Complex at = quadratic_form(s_tilde, it.x_inf);
  const double theta = std::arg(at);
  ComplexMatrix s_prime = std::polar(1.0, -theta) * s_tilde;
  ComplexMatrix symmetrized = Complex(0.5) * (s_prime + adjoint(s_prime));
  if (negated) symmetrized = Complex(-1.0) * symmetrized;

  UnitVector attain = it.x_inf;
  std::string tag = "nu-selfadjoint";
  if (req.target_point_exact) {
    symmetrized = pointify(symmetrized, attain, req.point, AttainMode::Nu);
    attain = req.point;
    tag = "nu-selfadjoint-pointwise";
  }

  NuCorrectionResult out{symmetrized, attain,
                         make_nu_certificate(symmetrized, req.input, attain, req.point, tag,
                                             req.epsilon, 0.0),
                         it.trace, std::abs(std::polar(1.0, theta) - 1.0), threshold};
  if (req.schatten_p) {
    out.certificate.schatten_p = req.schatten_p;
    out.certificate.schatten_distance = schatten_norm(symmetrized - req.input, *req.schatten_p);
  }
  return out;
}

NuCorrectionResult nu_correct_unitary(const NuCorrectionRequest& req) {
  if (req.op_class != OperatorClass::Unitary)
    fail(ErrorCode::ClassMismatch, "nu_correct_unitary needs a unitary input");
  const double threshold = validate_nu_request(req);

  const Complex z = quadratic_form(req.input, req.point);
  const double theta = std::arg(z);

  const UnitVector image = UnitVector::normalized(req.input.apply(req.point.entries()));
  ComplexVector aligned(req.point.dim());
  for (std::size_t i = 0; i < req.point.dim(); ++i)
    aligned[i] = std::polar(1.0, theta) * req.point[i];
  const UnitVector target = UnitVector::normalized(std::move(aligned));

  const ComplexMatrix rotation = transitive_isometry(image, target);
  const ComplexMatrix corrected = rotation * req.input;

  NuCorrectionResult out{corrected, req.point,
                         make_nu_certificate(corrected, req.input, req.point, req.point,
                                             "nu-unitary", req.epsilon, 0.0),
                         {}, 0.0, threshold};
  return out;
}

NuCorrectionResult nu_correct_normal(const NuCorrectionRequest& req) {
  if (req.op_class != OperatorClass::Normal)
    fail(ErrorCode::ClassMismatch, "nu_correct_normal needs a normal input");
  const double threshold = validate_nu_request(req);

  const Complex z0 = quadratic_form(req.input, req.point);
  if (std::abs(z0) == 0.0)
    fail(ErrorCode::AlmostAttainmentViolated, "quadratic form vanished; phase undefined");
  const Complex aligner = std::conj(z0) / std::abs(z0);  // e^{i theta}

  const double radius = 1.0 - std::sqrt(2.0 * req.epsilon);
  const SpectralMeasure e = normal_spectral_measure(req.input);
  const SpectralRegion annulus = SpectralRegion::abs_above(radius);

  const ComplexMatrix projector = spectral_projection(e, annulus);
  ComplexVector inside = projector.apply(req.point.entries());
  const double inside_norm = vec_norm(inside);
  if (inside_norm < radius - 1e-9)
    fail(ErrorCode::AlmostAttainmentViolated,
         "||E(annulus) x0|| = " + std::to_string(inside_norm) + " fell below " +
             std::to_string(radius));
  const UnitVector x_eps = UnitVector::normalized(std::move(inside));

  const ComplexMatrix n1 = region_truncation(e, annulus, [](Complex w) {
    const double a = std::abs(w);
    return a == 0.0 ? Complex(1.0) : w / a;
  });
  const ComplexMatrix n2 =
      region_truncation(e, SpectralRegion::complement(annulus), [](Complex w) { return w; });

  ComplexVector rotated = n1.apply(x_eps.entries());
  for (Complex& c : rotated) c *= aligner;
  const UnitVector target = UnitVector::normalized(std::move(rotated));

  const ComplexMatrix rotation = transitive_isometry(x_eps, target);
  ComplexMatrix corrected = adjoint(rotation) * n1 + n2;

  double m_bound = 0.0;
  std::string tag = "nu-normal";
  if (req.schatten_p) {
    m_bound = schatten_norm(req.input, *req.schatten_p);
    tag = "nu-normal-schatten";
  }

  UnitVector attain = x_eps;
  if (req.target_point_exact) {
    corrected = pointify(corrected, attain, req.point, AttainMode::Nu);
    attain = req.point;
    tag = "nu-normal-pointwise";
  }

  NuCorrectionResult out{corrected, attain,
                         make_nu_certificate(corrected, req.input, attain, req.point, tag,
                                             req.epsilon, m_bound),
                         {}, 0.0, threshold};
  if (req.schatten_p) {
    out.certificate.schatten_p = req.schatten_p;
    out.certificate.schatten_distance = schatten_norm(corrected - req.input, *req.schatten_p);
  }
  return out;
}

NuCorrectionResult nu_correct_any(const NuCorrectionRequest& req) {
  switch (req.op_class) {
    case OperatorClass::General:
    case OperatorClass::Positive:
    case OperatorClass::SchattenP:
      return nu_correct(req);
    case OperatorClass::SelfAdjoint:
    case OperatorClass::AntiSymmetric:
      return nu_correct_selfadjoint(req);
    case OperatorClass::Unitary:
      return nu_correct_unitary(req);
    case OperatorClass::Normal:
      return nu_correct_normal(req);
  }
  fail(ErrorCode::InvalidArgument, "unknown operator class");
}

}  // namespace bpb
