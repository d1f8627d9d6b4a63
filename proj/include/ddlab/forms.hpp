#pragma once

#include "ddlab/poly_gcd.hpp"
#include "ddlab/polycore.hpp"
#include "ddlab/projgeom.hpp"

#include <optional>

namespace ddlab {

// Chow form of a hypersurface {F=0} in P^m: a form on m hyperplane blocks of
// size m+1, per-block degree (d,...,d).
struct ChowForm {
    ExactPoly poly;
    int source_degree = 0;
    int ambient_dim = 0;
};

struct DiscriminantForm {
    std::optional<ExactPoly> exact; // eliminate path
    FloatPoly floating;             // always populated
    int degree = 0;
    std::string method;
    double residual = 0.0; // interpolation residual (smallest singular value)
};

// Degree bookkeeping for plane curves (n = m-1 = 1).
struct DegreeData {
    int ambient_dim = 0;
    int d = 0;
    int deg_canonical = 0;          // d(d-3)
    mpq_class volume;               // c1(L)^n on X = d
    mpq_class mu;                   // (d-3)/2
    std::vector<int> chow_degrees;  // (d, d)
    std::vector<int> disc_degrees;  // (d(d-1)): classical dual-curve degree
};

// Signed maximal minors of the m x (m+1) matrix of hyperplane coefficients;
// the result lies on every input hyperplane. Zero vector means the input is
// rank deficient (degenerate flag for callers).
CVec generalized_cross(const std::vector<CVec>& hyperplanes);
std::vector<RationalComplex> generalized_cross_exact(
    const std::vector<std::vector<RationalComplex>>& hyperplanes);

ChowForm chow_form_hypersurface(const ExactPoly& f, int m);

// coefficients of the binary form F(s p + t q), degree d in (s,t);
// coeffs[k] multiplies s^k t^(d-k)
template <class C>
struct BinaryForm {
    int degree = 0;
    std::vector<C> coeffs; // size degree+1
    bool is_zero() const;
};

BinaryForm<RationalComplex> restrict_to_line(const ExactPoly& f,
                                             const std::vector<RationalComplex>& p,
                                             const std::vector<RationalComplex>& q);
BinaryForm<std::complex<double>> restrict_to_line(const FloatPoly& f, const CVec& p,
                                                  const CVec& q);

// Res(db/ds, db/dt); zero iff b has a repeated projective root. For d=2 with
// b = a s^2 + c st + e t^2 this equals 4ae - c^2.
RationalComplex binary_discriminant(const BinaryForm<RationalComplex>& b);
std::complex<double> binary_discriminant(const BinaryForm<std::complex<double>>& b);

// Binary form whose coefficients are polynomials (symbolic discriminant for
// the elimination path).
ExactPoly binary_discriminant_symbolic(const std::vector<ExactPoly>& coeffs);

enum class DualMethod { eliminate, interpolate };

DiscriminantForm discriminant_form(const ExactPoly& f, DualMethod method,
                                   std::uint64_t seed = 20240501);

// closed-form oracle: dual of the conic u^T A u is u^T adj(A) u
ExactPoly dual_conic_adjugate(const std::vector<std::vector<RationalComplex>>& a);

// symmetric matrix of a conic x^T A x = F (off-diagonal split in half)
std::vector<std::vector<RationalComplex>> conic_matrix(const ExactPoly& f);

DegreeData form_degree_data(const ExactPoly& f, int m);

// Sample `count` points on the curve {F=0} in P^2 by intersecting with random
// lines; points with |grad F| below `grad_tol` (after normalization) are
// rejected.
std::vector<CVec> sample_curve_points(const FloatPoly& f, int count, std::uint64_t seed,
                                      double grad_tol = 1e-10);

CVec gradient_at(const FloatPoly& f, const CVec& x);

// roots of a univariate complex polynomial via the companion matrix;
// coeffs[k] multiplies t^k
std::vector<std::complex<double>> poly_roots(const std::vector<std::complex<double>>& coeffs);

} // namespace ddlab
