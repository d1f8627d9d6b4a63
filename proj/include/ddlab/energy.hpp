#pragma once

#include "ddlab/forms.hpp"
#include "ddlab/quadrature.hpp"

namespace ddlab {

// One factor of a Deligne pairing: which bundle sits in the slot and which
// potential deforms its metric. Potentials are Bergman (phi_sigma) plus an
// optional constant; the KL slot's ratio-log potential psi is built
// internally by k_energy.
struct EnergySlot {
    enum class Bundle { L, KL };
    Bundle bundle = Bundle::L;
    std::optional<CMat> sigma; // nullopt = zero potential
    double constant = 0.0;
};

// Aubin-Yau E(phi) = sum_j int phi omega_phi^j omega^(n-j) on P^N (N<=2) or a
// plane curve; phi = phi_sigma + c.
Estimate aubin_yau(const SpaceSpec& space, const std::optional<CMat>& sigma,
                   double constant, std::int64_t budget, std::uint64_t seed, int jobs = 1);

// E(phi_0,...,phi_n) = sum_j int phi_j (prod_{k<j} omega_phi_k)(prod_{k>j} omega_k)
// for L-slots on P^1, P^2 or a plane curve (slot count = dim + 1).
Estimate multilinear_energy(const std::vector<EnergySlot>& slots, const SpaceSpec& space,
                            std::int64_t budget, std::uint64_t seed, int jobs = 1);

// log |f|^2_{D(h)} = (1/V) int log(|f|^2 / prod |H_i|^(2 d_i)) omega^m with FS
// metrics on every factor; the product-volume factor cancels against V and is
// recorded in the Estimate.
Estimate deligne_norm_log(const FloatPoly& f, std::int64_t budget, std::uint64_t seed,
                          int jobs = 1);

// log(|f_num|^2_D / |f_den|^2_D) with common random numbers
Estimate deligne_norm_log_ratio(const FloatPoly& f_num, const FloatPoly& f_den,
                                std::int64_t budget, std::uint64_t seed, int jobs = 1);

mpq_class mu_exponent(const DegreeData& dd);

// Mabuchi K-energy nu(phi_sigma) of a plane curve, via the Deligne
// decomposition: [E(psi,phi) - (mu+n) E_AY(phi)] / V with psi =
// log(omega_phi/omega) + n phi on the KL^n slot.
Estimate k_energy(const ExactPoly& f, const GroupElement& sigma, std::int64_t budget,
                  std::uint64_t seed, int jobs = 1);

// -(1/V) int phidot (S - Sbar) omega over X at t=0 along exp(tA); the oracle
// side of the K-energy derivative identity. Sbar is computed numerically.
Estimate k_energy_derivative_formula(const ExactPoly& f, const CMat& a, std::int64_t budget,
                                     std::uint64_t seed, int jobs = 1);

// numeric mean scalar curvature (1/V) int S(omega) omega over X
Estimate mean_scalar_curvature(const ExactPoly& f, std::int64_t budget, std::uint64_t seed,
                               int jobs = 1);

} // namespace ddlab
