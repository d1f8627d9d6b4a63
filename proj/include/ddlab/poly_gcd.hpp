#pragma once

#include "ddlab/polycore.hpp"

namespace ddlab {

// Exact multivariate division; throws std::domain_error if q does not divide p.
ExactPoly divide_exact(const ExactPoly& p, const ExactPoly& q);

// View of p as a univariate polynomial in `pivot`: coefficient polynomials by
// pivot degree, pivot variable stripped to degree zero.
std::vector<ExactPoly> univ_coeffs(const ExactPoly& p, int pivot);
ExactPoly univ_assemble(const BlockGrading& g, const std::vector<ExactPoly>& coeffs, int pivot);

// Pseudo-remainder of a by b, both viewed univariately in pivot.
ExactPoly pseudo_rem(const ExactPoly& a, const ExactPoly& b, int pivot);

// GCD of a and b as univariate polynomials in pivot over the fraction field of
// the remaining variables (primitive pseudo-remainder sequence). Result is
// primitive with respect to pivot and has leading coefficient normalized to 1
// when it is constant in the other variables.
ExactPoly gcd_univariate_in_pivot(const ExactPoly& a, const ExactPoly& b, int pivot);

// Full multivariate GCD over Q(i) (recursive primitive PRS), normalized so the
// graded-lex leading coefficient is 1.
ExactPoly gcd_mpoly(const ExactPoly& a, const ExactPoly& b);

// p divided by GCD(p, dp/d(pivot)), the GCD taken univariately in pivot.
ExactPoly squarefree_part(const ExactPoly& p, int pivot);

// Divide out, for every variable, the largest power dividing all terms.
ExactPoly strip_monomial_content(const ExactPoly& p);

// Scale so the graded-lex leading coefficient is 1.
ExactPoly normalize_leading(const ExactPoly& p);

} // namespace ddlab
