#pragma once

#include "ddlab/polycore.hpp"
#include "ddlab/projgeom.hpp"
#include "ddlab/rng.hpp"

#include <cstdint>
#include <functional>
#include <optional>

namespace ddlab {

// numerical failure (CLI exit code 3)
struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Estimate {
    double value = 0.0;
    double stderr_ = 0.0;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
    std::string method;
    // multinomial c1(O(1,...,1))^m factor for product spaces; recorded here,
    // applied once by the energy layer, never inside sampling
    double volume_factor = 1.0;

    Estimate operator+(const Estimate& o) const;
    Estimate operator-(const Estimate& o) const;
    Estimate scaled(double c) const;
};

struct SpaceSpec {
    enum class Kind { projective, product, plane_curve };
    Kind kind = Kind::projective;
    std::vector<int> factor_dims;        // complex dimensions, one per factor
    std::optional<ExactPoly> curve;      // plane_curve only

    static SpaceSpec projective(int n) { return {Kind::projective, {n}, std::nullopt}; }
    static SpaceSpec product(std::vector<int> dims) {
        return {Kind::product, std::move(dims), std::nullopt};
    }
    static SpaceSpec plane_curve(ExactPoly f) {
        return {Kind::plane_curve, {2}, std::move(f)};
    }

    int nfactors() const { return static_cast<int>(factor_dims.size()); }
    int total_dim() const {
        int n = 0;
        for (int d : factor_dims) n += d;
        return n;
    }
    // multinomial coefficient (sum dims)! / prod dims!
    double product_volume() const;
};

// One FS-uniform point per factor, deterministic in (seed, index).
std::vector<CVec> sample_fs_point(const SpaceSpec& space, std::uint64_t seed,
                                  std::int64_t index);
std::vector<std::vector<CVec>> sample_fs(const SpaceSpec& space, std::int64_t count,
                                         std::uint64_t seed);

using Integrand = std::function<double(const std::vector<CVec>&)>;

// MC estimate of int f against the product FS measure (mass one per factor).
// Non-finite samples beyond a 1e-6 quota raise NumericalFailure.
Estimate integrate_projective(const Integrand& f, const SpaceSpec& space,
                              std::int64_t budget, std::uint64_t seed, int jobs = 1);

// int (log f - log g) with common random numbers; stderr of the difference
Estimate paired_log_ratio(const Integrand& f, const Integrand& g, const SpaceSpec& space,
                          std::int64_t budget, std::uint64_t seed, int jobs = 1);

// Everything a curve integrand may need at one branch point.
struct CurvePointData {
    CVec x;        // point on X, unit norm, original coordinates
    double h_fs;   // FS restriction density along the local parameter
    double h_phi;  // omega_phi restriction density (== h_fs without sigma)
    double ric;    // Ric(omega|_X) density
    double phi;    // phi_sigma(x) (0 without sigma)
};

struct CurveMeasure {
    enum class Kind { base_fs, potential_deformed };
    Kind kind = Kind::base_fs;
    std::optional<CMat> sigma; // deformation phi_sigma = log(|sigma x|^2/|x|^2)

    static CurveMeasure base() { return {Kind::base_fs, std::nullopt}; }
    // base FS measure, but still expose phi_sigma data to the integrand
    static CurveMeasure base_with(const CMat& s) { return {Kind::base_fs, s}; }
    static CurveMeasure deformed(const CMat& s) {
        return {Kind::potential_deformed, s};
    }
};

using CurveIntegrand = std::function<double(const CurvePointData&)>;

// int_X f d(measure) over X = {F=0} in P^2 by projection slicing; the
// normalization gives int_X omega = deg X. Branch points where the fiber
// polynomial is near its discriminant locus are rejected and resampled.
Estimate curve_integral(const ExactPoly& f, const CurveIntegrand& integrand,
                        const CurveMeasure& measure, std::int64_t budget,
                        std::uint64_t seed, int jobs = 1);

int default_jobs();

} // namespace ddlab
