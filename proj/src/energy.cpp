#include "ddlab/energy.hpp"

namespace ddlab {

namespace {

double mix2(const CMat& a, const CMat& b) {
    // density of alpha wedge beta for (1,1)-forms on C^2; mix2(h,h) = 2 det h
    std::complex<double> m =
        a(0, 0) * b(1, 1) + a(1, 1) * b(0, 0) - a(0, 1) * b(1, 0) - a(1, 0) * b(0, 1);
    return m.real();
}

struct AmbientPotential {
    std::optional<CMat> sigma;
    double constant = 0.0;

    double value(const CVec& x) const {
        double v = constant;
        if (sigma) v += std::log(((*sigma) * x).squaredNorm() / x.squaredNorm());
        return v;
    }
    // full deformed curvature density omega_phi = omega + ddbar phi
    CMat curvature(int chart, const CVec& z) const {
        if (sigma) return log_norm_hessian(*sigma, chart, z);
        return fs_chart_hessian(chart, z);
    }
};

} // namespace

Estimate aubin_yau(const SpaceSpec& space, const std::optional<CMat>& sigma,
                   double constant, std::int64_t budget, std::uint64_t seed, int jobs) {
    AmbientPotential pot{sigma, constant};
    if (space.kind == SpaceSpec::Kind::plane_curve) {
        // n = 1: int phi (omega + omega_phi)
        CurveMeasure m = sigma ? CurveMeasure::base_with(*sigma) : CurveMeasure::base();
        Estimate e = curve_integral(
            *space.curve,
            [&](const CurvePointData& d) {
                return (d.phi + constant) * (1.0 + d.h_phi / d.h_fs);
            },
            m, budget, seed, jobs);
        e.method = "aubin_yau_curve";
        return e;
    }
    if (space.nfactors() != 1 || space.factor_dims[0] > 2)
        throw std::invalid_argument("aubin_yau: space must be P^1, P^2 or a plane curve");
    int n = space.factor_dims[0];
    Integrand f = [pot, n](const std::vector<CVec>& pts) {
        const CVec& x = pts[0];
        int chart;
        CVec z = chart_coords(x, chart);
        double phi = pot.value(x);
        if (n == 1) {
            double h = fs_chart_hessian(chart, z)(0, 0).real();
            double hp = pot.curvature(chart, z)(0, 0).real();
            return phi * (1.0 + hp / h);
        }
        CMat h = fs_chart_hessian(chart, z);
        CMat hp = pot.curvature(chart, z);
        double base = mix2(h, h);
        return phi * (1.0 + mix2(hp, h) / base + mix2(hp, hp) / base);
    };
    Estimate e = integrate_projective(f, space, budget, seed, jobs);
    e.method = "aubin_yau_p" + std::to_string(n);
    return e;
}

Estimate multilinear_energy(const std::vector<EnergySlot>& slots, const SpaceSpec& space,
                            std::int64_t budget, std::uint64_t seed, int jobs) {
    int n = space.kind == SpaceSpec::Kind::plane_curve ? 1 : space.factor_dims[0];
    if (static_cast<int>(slots.size()) != n + 1)
        throw std::invalid_argument("multilinear_energy: slot count must equal dim+1");
    for (const auto& s : slots)
        if (s.bundle != EnergySlot::Bundle::L)
            throw std::invalid_argument(
                "multilinear_energy: KL slots are handled by k_energy");
    std::vector<AmbientPotential> pots;
    for (const auto& s : slots) pots.push_back({s.sigma, s.constant});

    if (space.kind == SpaceSpec::Kind::plane_curve) {
        // j=0: int phi_0 omega ; j=1: int phi_1 omega_{phi_0}
        CurveMeasure m0 =
            slots[0].sigma ? CurveMeasure::base_with(*slots[0].sigma) : CurveMeasure::base();
        Estimate e0 = curve_integral(
            *space.curve,
            [&](const CurvePointData& d) { return d.phi + slots[0].constant; }, m0, budget,
            seed, jobs);
        Estimate e1;
        if (slots[0].sigma) {
            Estimate t = curve_integral(
                *space.curve,
                [&](const CurvePointData& d) { return pots[1].value(d.x); },
                CurveMeasure::deformed(*slots[0].sigma), budget, seed + 1, jobs);
            e1 = t;
        } else {
            e1 = curve_integral(
                *space.curve,
                [&](const CurvePointData& d) { return pots[1].value(d.x); },
                CurveMeasure::base(), budget, seed + 1, jobs);
        }
        Estimate e = e0 + e1;
        e.method = "multilinear_curve";
        e.seed = seed;
        return e;
    }

    if (space.nfactors() != 1 || n > 2)
        throw std::invalid_argument("multilinear_energy: space must be P^1 or P^2");
    Integrand f = [pots, n](const std::vector<CVec>& pts) {
        const CVec& x = pts[0];
        int chart;
        CVec z = chart_coords(x, chart);
        if (n == 1) {
            double h = fs_chart_hessian(chart, z)(0, 0).real();
            double h0 = pots[0].curvature(chart, z)(0, 0).real();
            return pots[0].value(x) + pots[1].value(x) * (h0 / h);
        }
        CMat h = fs_chart_hessian(chart, z);
        CMat h0 = pots[0].curvature(chart, z);
        CMat h1 = pots[1].curvature(chart, z);
        double base = mix2(h, h);
        return pots[0].value(x) + pots[1].value(x) * mix2(h0, h) / base +
               pots[2].value(x) * mix2(h0, h1) / base;
    };
    Estimate e = integrate_projective(f, space, budget, seed, jobs);
    e.method = "multilinear_p" + std::to_string(n);
    return e;
}

namespace {

Integrand deligne_integrand(const FloatPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("deligne_norm_log: zero section");
    auto degs = f.multidegree();
    const BlockGrading g = f.grading();
    return [f, degs, g](const std::vector<CVec>& pts) {
        std::vector<std::complex<double>> flat;
        double log_denominator = 0.0;
        for (size_t b = 0; b < pts.size(); ++b) {
            for (int i = 0; i < pts[b].size(); ++i) flat.push_back(pts[b][i]);
            log_denominator += degs[b] * std::log(pts[b].squaredNorm());
        }
        std::complex<double> v = f.eval_complex(flat);
        return std::log(std::norm(v)) - log_denominator;
    };
}

SpaceSpec space_of_form(const FloatPoly& f) {
    std::vector<int> dims;
    for (const auto& b : f.grading().blocks) dims.push_back(b.nvars - 1);
    return dims.size() == 1 ? SpaceSpec::projective(dims[0]) : SpaceSpec::product(dims);
}

} // namespace

Estimate deligne_norm_log(const FloatPoly& f, std::int64_t budget, std::uint64_t seed,
                          int jobs) {
    SpaceSpec space = space_of_form(f);
    Estimate e = integrate_projective(deligne_integrand(f), space, budget, seed, jobs);
    e.method = "deligne_norm_log";
    return e;
}

Estimate deligne_norm_log_ratio(const FloatPoly& f_num, const FloatPoly& f_den,
                                std::int64_t budget, std::uint64_t seed, int jobs) {
    if (!(f_num.grading() == f_den.grading()))
        throw std::invalid_argument("deligne_norm_log_ratio: grading mismatch");
    Integrand a = deligne_integrand(f_num);
    Integrand b = deligne_integrand(f_den);
    Integrand diff = [a, b](const std::vector<CVec>& pts) { return a(pts) - b(pts); };
    SpaceSpec space = space_of_form(f_num);
    Estimate e = integrate_projective(diff, space, budget, seed, jobs);
    e.method = "deligne_norm_log_ratio";
    return e;
}

mpq_class mu_exponent(const DegreeData& dd) {
    // n/(n+1) * c1(K)c1(L)^(n-1) / c1(L)^n at n = 1
    return mpq_class(dd.deg_canonical, 2 * dd.d);
}

Estimate k_energy(const ExactPoly& f, const GroupElement& sigma, std::int64_t budget,
                  std::uint64_t seed, int jobs) {
    DegreeData dd = form_degree_data(f, 2);
    double v = dd.d;
    double mu = mu_exponent(dd).get_d();
    const CMat& s = sigma.mat;
    // E(psi, phi) = int phi chi + int psi omega_phi after moving ddbar psi onto
    // phi by parts; chi = -Ric(omega) + omega on the KL slot.
    Estimate e_chi = curve_integral(
        f,
        [&](const CurvePointData& d) { return d.phi * (d.h_fs - d.ric) / d.h_fs; },
        CurveMeasure::base_with(s), budget, seed, jobs);
    Estimate e_psi = curve_integral(
        f,
        [&](const CurvePointData& d) { return std::log(d.h_phi / d.h_fs) + d.phi; },
        CurveMeasure::deformed(s), budget, seed + 1, jobs);
    Estimate e_ay = aubin_yau(SpaceSpec::plane_curve(f), s, 0.0, budget, seed + 2, jobs);
    Estimate nu = (e_chi + e_psi - e_ay.scaled(mu + 1.0)).scaled(1.0 / v);
    nu.method = "k_energy";
    nu.seed = seed;
    return nu;
}

Estimate mean_scalar_curvature(const ExactPoly& f, std::int64_t budget, std::uint64_t seed,
                               int jobs) {
    DegreeData dd = form_degree_data(f, 2);
    Estimate e = curve_integral(
        f, [](const CurvePointData& d) { return d.ric / d.h_fs; }, CurveMeasure::base(),
        budget, seed, jobs);
    e = e.scaled(1.0 / dd.d);
    e.method = "mean_scalar_curvature";
    return e;
}

Estimate k_energy_derivative_formula(const ExactPoly& f, const CMat& a, std::int64_t budget,
                                     std::uint64_t seed, int jobs) {
    DegreeData dd = form_degree_data(f, 2);
    double v = dd.d;
    Estimate sbar = mean_scalar_curvature(f, budget, seed + 7, jobs);
    double sb = sbar.value;
    Estimate e = curve_integral(
        f,
        [&](const CurvePointData& d) {
            double rate = bergman_potential_rate(a, d.x);
            return rate * (d.ric / d.h_fs - sb);
        },
        CurveMeasure::base(), budget, seed, jobs);
    e = e.scaled(-1.0 / v);
    e.method = "k_energy_derivative_formula";
    return e;
}

} // namespace ddlab
