#pragma once

#include "ddlab/polycore.hpp"

#include <Eigen/Dense>
#include <functional>
#include <string>

namespace ddlab {

using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

// Canonical representative: unit norm, first nonzero entry real-positive.
CVec canonicalize(const CVec& v);

// Bilinear incidence pairing H(x) = sum_i H_i x_i (no conjugation).
std::complex<double> incidence(const CVec& hyperplane, const CVec& point);

// sigma in SL(N+1), stored det-normalized
struct GroupElement {
    CMat mat;

    int dim() const { return static_cast<int>(mat.rows()) - 1; } // N of P^N
    GroupElement inverse() const;
    static GroupElement det_normalized(const CMat& m);
    static GroupElement identity(int n1);
};

// exp(tA) for traceless A, det renormalized
GroupElement one_param_subgroup(const CMat& A, double t);

// x -> sigma x
CVec act_point(const GroupElement& s, const CVec& x);
// H -> sigma^{-T} H, so that incidence is preserved
CVec act_hyperplane(const GroupElement& s, const CVec& h);

// Compose every listed block of a form on hyperplane tuples with sigma^T:
// (act(s,f))(H_1,...,H_k) = f(sigma^T H_1, ..., sigma^T H_k). Together with
// act_hyperplane this preserves incidence of the form's zero locus.
ExactPoly act_on_hyperplane_form(const GroupElement& s, const ExactPoly& f);
FloatPoly act_on_hyperplane_form(const GroupElement& s, const FloatPoly& f);

// f -> f(sigma x) on a point-space block
ExactPoly compose_point_block(const ExactPoly& f, int block, const CMat& m);

// Affine chart lift: z in C^N -> homogeneous vector with 1 in slot `chart`.
CVec chart_lift(int chart, const CVec& z);
// Inverse: affine coordinates of x in the chart of its largest component;
// returns the chart index through `chart`.
CVec chart_coords(const CVec& x, int& chart);

// Real-valued scale-invariant function on projective points together with its
// analytic complex Hessian in affine charts.
struct PotentialField {
    std::string tag;
    std::function<double(const CVec&)> value;                    // homogeneous input
    std::function<CMat(int, const CVec&)> chart_hessian;         // (chart, affine z)

    bool is_zero = false;
};

PotentialField zero_potential();

// phi_sigma(x) = log(|sigma x|^2 / |x|^2); curvature contribution is the
// pullback Fubini-Study Hessian minus the base one.
PotentialField bergman_potential(const GroupElement& s);

// d/dt phi_{exp(tA)}(x) at t=0: 2 Re <A x, x> / |x|^2
double bergman_potential_rate(const CMat& A, const CVec& x);

// complex Hessian of log |M x(z)|^2 in chart coordinates
CMat log_norm_hessian(const CMat& m, int chart, const CVec& z);
// Fubini-Study chart Hessian (m = identity)
CMat fs_chart_hessian(int chart, const CVec& z);

} // namespace ddlab
