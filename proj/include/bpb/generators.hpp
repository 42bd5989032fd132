#pragma once

#include <cstdint>

#include "bpb/complex_matrix.hpp"
#include "bpb/linalg.hpp"
#include "bpb/rng.hpp"

namespace bpb {

ComplexMatrix random_complex_gaussian(std::size_t dim, Rng& rng);
ComplexMatrix random_unitary(std::size_t dim, Rng& rng);
UnitVector random_unit_vector(std::size_t dim, Rng& rng);

/// A generated test case: a class member T normalized for the requested
/// mode, and a point x0 that almost attains with at least 10% margin
/// inside the class threshold.
struct Instance {
  ComplexMatrix input;
  UnitVector point;
};

/// Deterministic given (class, dim, epsilon, nu_mode, seed). The point is
/// a perturbed exact witness; the perturbation is shrunk until the
/// almost-attainment precondition holds with margin.
Instance gen_instance(OperatorClass c, std::size_t dim, double epsilon, bool nu_mode,
                      std::uint64_t seed);

}  // namespace bpb
