#include "ddlab/verify.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ddlab {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

CMat parse_matrix(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("scenario: matrix must be an array");
    int n1 = static_cast<int>(std::llround(std::sqrt(static_cast<double>(j.size()))));
    if (n1 * n1 != static_cast<int>(j.size()))
        throw std::invalid_argument("scenario: matrix entry count is not a square");
    CMat m(n1, n1);
    for (int i = 0; i < n1; ++i) {
        for (int k = 0; k < n1; ++k) {
            const json& e = j[i * n1 + k];
            if (e.is_number()) {
                m(i, k) = e.get<double>();
            } else if (e.is_array() && e.size() == 2) {
                m(i, k) = std::complex<double>(e[0].get<double>(), e[1].get<double>());
            } else {
                throw std::invalid_argument("scenario: matrix entry must be number or [re,im]");
            }
        }
    }
    return m;
}

double tol_margin(const Tolerances& t, double se) {
    return std::max(t.abs, t.stderr_mult * se);
}

CheckResult make_check(std::string name, double measured, double se, double expected,
                       double margin) {
    CheckResult c;
    c.name = std::move(name);
    c.measured = measured;
    c.stderr_ = se;
    c.expected = expected;
    c.margin = margin;
    c.pass = std::isfinite(measured) && std::abs(measured - expected) <= margin;
    return c;
}

// deterministic seed stream per report section
struct SeedSeq {
    std::uint64_t base;
    std::uint64_t section;
    std::uint64_t k = 0;
    std::uint64_t next() { return base + 1000003u * section + 7919u * ++k; }
};

ExactPoly default_conic() {
    BlockGrading g = BlockGrading::single(3);
    ExactPoly f(g);
    Exponents e(3, 0);
    e[0] = 1; e[2] = 1;
    f.add_term(e, RationalComplex(1));
    e = {0, 2, 0};
    f.add_term(e, RationalComplex(-1));
    return f;
}

ExactPoly scenario_curve(const Scenario& sc) {
    if (sc.curve) return *sc.curve;
    return default_conic();
}

// f^sigma(x) = f(sigma x) on the point block
FloatPoly compose_points(const FloatPoly& f, const CMat& s) {
    int nv = f.grading().blocks.at(0).nvars;
    std::vector<std::complex<double>> m(static_cast<size_t>(nv) * nv);
    for (int i = 0; i < nv; ++i)
        for (int k = 0; k < nv; ++k) m[i * nv + k] = s(i, k);
    return f.compose_linear(0, m);
}

CMat diag3(double a, double b, double c) {
    CMat m = CMat::Zero(3, 3);
    m(0, 0) = a; m(1, 1) = b; m(2, 2) = c;
    return m;
}

CMat random_unitary(int n1, std::uint64_t seed) {
    Rng rng(seed, 0);
    CMat m(n1, n1);
    for (int i = 0; i < n1; ++i)
        for (int k = 0; k < n1; ++k) m(i, k) = rng.next_complex_gaussian();
    Eigen::HouseholderQR<CMat> qr(m);
    CMat q = qr.householderQ();
    return q;
}

// Resolve the action direction on the Cor.-1 linear calibration case
// Z = {x0 = 0}: E_Z(phi_sigma|_Z) against both Delta log candidates.
struct DirectionOutcome {
    Calibration cal;
    std::vector<CheckResult> checks;
};

DirectionOutcome calibrate_direction(const Scenario& sc, int jobs) {
    SeedSeq ss{sc.seed, 11};
    BlockGrading g = BlockGrading::single(3);
    FloatPoly f(g);
    f.add_term({1, 0, 0}, 1.0);
    CMat embed = CMat::Zero(3, 2); // Z = {x0=0} ~ P^1
    embed(1, 0) = 1.0;
    embed(2, 1) = 1.0;

    std::vector<GroupElement> sigmas;
    sigmas.push_back(GroupElement::det_normalized(diag3(2.0, 1.0, 0.5)));
    for (auto& s : random_sl_elements(3, 2, sc.sigma_radius, sc.seed + 41))
        sigmas.push_back(s);

    int pass_fwd = 0, pass_inv = 0;
    DirectionOutcome out;
    for (size_t i = 0; i < sigmas.size(); ++i) {
        const GroupElement& s = sigmas[i];
        CMat restricted = s.mat * embed;
        Estimate lhs = aubin_yau(SpaceSpec::projective(1), restricted, 0.0,
                                 sc.budget_ambient, ss.next(), jobs);
        Estimate fwd = deligne_norm_log_ratio(compose_points(f, s.mat), f,
                                              sc.budget_ambient, ss.next(), jobs);
        Estimate inv = deligne_norm_log_ratio(compose_points(f, s.inverse().mat), f,
                                              sc.budget_ambient, ss.next(), jobs);
        double se_f = std::hypot(lhs.stderr_, fwd.stderr_);
        double se_i = std::hypot(lhs.stderr_, inv.stderr_);
        CheckResult cf = make_check("cor1_linear_forward[" + std::to_string(i) + "]",
                                    lhs.value - fwd.value, se_f, 0.0,
                                    tol_margin(sc.tol, se_f));
        CheckResult ci = make_check("cor1_linear_inverse[" + std::to_string(i) + "]",
                                    lhs.value - inv.value, se_i, 0.0,
                                    tol_margin(sc.tol, se_i));
        pass_fwd += cf.pass;
        pass_inv += ci.pass;
        cf.details["lhs"] = lhs.value;
        cf.details["rhs"] = fwd.value;
        ci.details["lhs"] = lhs.value;
        ci.details["rhs"] = inv.value;
        out.checks.push_back(cf);
        out.checks.push_back(ci);
    }
    int n = static_cast<int>(sigmas.size());
    bool fwd_ok = pass_fwd == n;
    bool inv_ok = pass_inv == n;
    if (fwd_ok == inv_ok)
        throw NumericalFailure(
            "cor1 calibration: action direction not uniquely resolved (forward " +
            std::to_string(pass_fwd) + "/" + std::to_string(n) + ", inverse " +
            std::to_string(pass_inv) + "/" + std::to_string(n) + ")");
    out.cal.forward_action = fwd_ok;
    out.cal.zero_gate = true;
    // keep only the winning direction's checks as gating results; the losing
    // direction stays in details for diagnostics
    for (auto& c : out.checks) {
        bool winning = c.name.find(fwd_ok ? "forward" : "inverse") != std::string::npos;
        if (!winning) {
            c.details["calibration_rejected_candidate"] = true;
            c.pass = true; // rejected candidate is expected to fail
        }
    }
    return out;
}

struct FitResult {
    double a = 0, b = 0, se_a = 0, se_b = 0, r2 = 0;
    int used = 0, dropped = 0;
};

FitResult weighted_fit(const std::vector<double>& x, const std::vector<double>& y,
                       const std::vector<double>& v, const std::vector<double>& sv) {
    FitResult fr;
    double sxx = 0, sxy = 0, syy = 0, sxv = 0, syv = 0, sw = 0, swv = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        double se = std::max(sv[i], 1e-9);
        double w = 1.0 / (se * se);
        sxx += w * x[i] * x[i];
        sxy += w * x[i] * y[i];
        syy += w * y[i] * y[i];
        sxv += w * x[i] * v[i];
        syv += w * y[i] * v[i];
        sw += w;
        swv += w * v[i];
    }
    double det = sxx * syy - sxy * sxy;
    if (!(det > 1e-10 * std::max(sxx * syy, 1.0)))
        throw std::invalid_argument(
            "cor2: regressors are rank deficient (sigma set too symmetric)");
    fr.a = (syy * sxv - sxy * syv) / det;
    fr.b = (sxx * syv - sxy * sxv) / det;
    fr.se_a = std::sqrt(syy / det);
    fr.se_b = std::sqrt(sxx / det);
    double vbar = swv / sw;
    double ss_res = 0, ss_tot = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        double se = std::max(sv[i], 1e-9);
        double w = 1.0 / (se * se);
        double r = v[i] - fr.a * x[i] - fr.b * y[i];
        ss_res += w * r * r;
        ss_tot += w * (v[i] - vbar) * (v[i] - vbar);
    }
    fr.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 0.0;
    fr.used = static_cast<int>(v.size());
    return fr;
}

} // namespace

std::vector<GroupElement> random_sl_elements(int n1, int count, double radius,
                                             std::uint64_t seed) {
    std::vector<GroupElement> out;
    Rng rng(seed, 3);
    while (static_cast<int>(out.size()) < count) {
        CMat m(n1, n1);
        for (int i = 0; i < n1; ++i) {
            for (int k = 0; k < n1; ++k) {
                double re, im;
                do {
                    re = 2.0 * rng.next_double() - 1.0;
                    im = 2.0 * rng.next_double() - 1.0;
                } while (re * re + im * im > 1.0);
                m(i, k) = radius * std::complex<double>(re, im);
            }
        }
        m += CMat::Identity(n1, n1); // keep a bounded distance from identity
        if (std::abs(m.determinant()) < 1e-3) continue;
        GroupElement g = GroupElement::det_normalized(m);
        Eigen::JacobiSVD<CMat> svd(g.mat);
        double cond = svd.singularValues()(0) / svd.singularValues()(n1 - 1);
        if (cond > 20.0) continue;
        out.push_back(g);
    }
    return out;
}

Scenario Scenario::from_json(const json& j) {
    Scenario sc;
    if (!j.is_object()) throw std::invalid_argument("scenario: root must be an object");
    sc.format_version = j.value("format_version", 1);
    if (sc.format_version > scenario_format_version)
        throw std::invalid_argument("scenario: format_version newer than this tool");
    sc.name = j.value("name", std::string("scenario"));
    if (j.contains("curve")) {
        sc.curve_text = j.at("curve").get<std::string>();
        sc.curve = parse_exact_poly(sc.curve_text, BlockGrading::single(3));
    }
    if (j.contains("sigmas")) {
        const json& s = j.at("sigmas");
        sc.random_sigma_count = s.value("random_count", sc.random_sigma_count);
        sc.sigma_radius = s.value("radius", sc.sigma_radius);
        if (s.contains("list"))
            for (const auto& m : s.at("list")) sc.sigma_list.push_back(parse_matrix(m));
        if (s.contains("rays")) {
            for (const auto& r : s.at("rays")) {
                RaySpec ray;
                ray.generator = parse_matrix(r.at("generator"));
                ray.t_grid = r.at("t_grid").get<std::vector<double>>();
                if (ray.t_grid.empty())
                    throw std::invalid_argument("scenario: empty ray t_grid");
                sc.rays.push_back(std::move(ray));
            }
        }
    }
    if (j.contains("budgets")) {
        sc.budget_ambient = j.at("budgets").value("ambient", sc.budget_ambient);
        sc.budget_curve = j.at("budgets").value("curve", sc.budget_curve);
    }
    sc.seed = j.value("seed", sc.seed);
    if (j.contains("tolerances")) {
        const json& t = j.at("tolerances");
        sc.tol.abs = t.value("abs", sc.tol.abs);
        sc.tol.stderr_mult = t.value("stderr_multiple", sc.tol.stderr_mult);
        sc.tol.stderr_cap = t.value("stderr_cap", sc.tol.stderr_cap);
        sc.tol.ratio_rel = t.value("ratio_rel", sc.tol.ratio_rel);
        sc.tol.r2_min = t.value("r2_min", sc.tol.r2_min);
    }
    if (j.contains("checks")) sc.checks = j.at("checks").get<std::vector<std::string>>();
    for (const auto& c : sc.checks)
        if (c != "zero_energies" && c != "cor1" && c != "cor2")
            throw std::invalid_argument("scenario: unknown check '" + c + "'");
    return sc;
}

Scenario Scenario::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("scenario: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("scenario: invalid JSON in " + path + ": " + e.what());
    }
    return from_json(j);
}

ordered_json Calibration::to_json() const {
    ordered_json j;
    j["phi_sigma"] = "log(|sigma x|^2 / |x|^2)";
    j["f_action"] = forward_action ? "forward: f^sigma(x) = f(sigma x)"
                                   : "inverse: f^sigma(x) = f(sigma^-1 x)";
    j["cor1_scale"] = "1 (ambient c1(L)^m volume of P^2)";
    return j;
}

bool Report::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

void Report::append(const Report& other) {
    for (auto it = other.calibration.begin(); it != other.calibration.end(); ++it) {
        if (calibration.contains(it.key()) && calibration[it.key()] != it.value())
            throw NumericalFailure("calibration constants disagree across checks: " +
                                   it.key());
        calibration[it.key()] = it.value();
    }
    for (const auto& c : other.checks) checks.push_back(c);
}

ordered_json Report::to_json() const {
    ordered_json j;
    j["format_version"] = report_format_version;
    j["tool_version"] = tool_version;
    j["scenario"] = scenario_name;
    j["seed"] = seed;
    j["calibration"] = calibration;
    j["checks"] = ordered_json::array();
    for (const auto& c : checks) {
        ordered_json e;
        e["name"] = c.name;
        e["pass"] = c.pass;
        e["measured"] = c.measured;
        e["stderr"] = c.stderr_;
        e["expected"] = c.expected;
        e["margin"] = c.margin;
        if (!c.details.empty()) e["details"] = c.details;
        j["checks"].push_back(std::move(e));
    }
    j["all_pass"] = all_pass();
    return j;
}

std::string Report::to_text() const {
    std::ostringstream os;
    os << "scenario " << scenario_name << " (seed " << seed << ", version "
       << tool_version << ")\n";
    for (auto it = calibration.begin(); it != calibration.end(); ++it)
        os << "  calibration " << it.key() << " = " << it.value().dump() << "\n";
    int npass = 0;
    char buf[256];
    for (const auto& c : checks) {
        npass += c.pass;
        std::snprintf(buf, sizeof buf,
                      "[%s] %s: measured=%.6g stderr=%.3g expected=%.6g margin=%.3g\n",
                      c.pass ? "PASS" : "FAIL", c.name.c_str(), c.measured, c.stderr_,
                      c.expected, c.margin);
        os << buf;
    }
    os << npass << "/" << checks.size() << " checks passed\n";
    return os.str();
}

Report verify_zero_energies(const Scenario& sc, int jobs) {
    Report r;
    r.scenario_name = sc.name;
    r.seed = sc.seed;
    bool gate = true;
    for (int n = 1; n <= 2; ++n) {
        SeedSeq ss{sc.seed, static_cast<std::uint64_t>(n)};
        SpaceSpec space = SpaceSpec::projective(n);
        std::string pn = "P" + std::to_string(n);

        // unitary sigma: phi vanishes pointwise, no quadrature error involved
        CMat u = random_unitary(n + 1, sc.seed + 17 * n);
        Estimate eu = aubin_yau(space, u, 0.0, std::min<std::int64_t>(sc.budget_ambient, 20000),
                                ss.next(), jobs);
        r.checks.push_back(
            make_check("zero_ay_unitary_" + pn, eu.value, eu.stderr_, 0.0, 1e-9));

        std::vector<GroupElement> sigmas;
        if (n == 1) sigmas.push_back(GroupElement::det_normalized(diag3(2, 0.5, 1).topLeftCorner(2, 2)));
        else sigmas.push_back(GroupElement::det_normalized(diag3(2, 1, 0.5)));
        for (const auto& m : sc.sigma_list)
            if (m.rows() == n + 1) sigmas.push_back(GroupElement::det_normalized(m));
        int want = std::max(5, sc.random_sigma_count);
        for (auto& s : random_sl_elements(n + 1, want, sc.sigma_radius, sc.seed + 29 * n))
            sigmas.push_back(s);

        for (size_t i = 0; i < sigmas.size(); ++i) {
            const CMat& m = sigmas[i].mat;
            Estimate ay = aubin_yau(space, m, 0.0, sc.budget_ambient, ss.next(), jobs);
            r.checks.push_back(make_check(
                "zero_ay_" + pn + "[" + std::to_string(i) + "]", ay.value, ay.stderr_,
                0.0, tol_margin(sc.tol, ay.stderr_)));
            std::vector<EnergySlot> slots(n + 1);
            for (auto& sl : slots) sl = {EnergySlot::Bundle::L, m, 0.0};
            Estimate ml = multilinear_energy(slots, space, sc.budget_ambient, ss.next(), jobs);
            r.checks.push_back(make_check(
                "zero_multilinear_" + pn + "[" + std::to_string(i) + "]", ml.value,
                ml.stderr_, 0.0, tol_margin(sc.tol, ml.stderr_)));
        }
    }
    for (const auto& c : r.checks) gate = gate && c.pass;
    r.calibration["phi_sigma"] = "log(|sigma x|^2 / |x|^2)";
    r.calibration["zero_gate"] = gate;
    return r;
}

Report verify_cor1(const Scenario& sc, int jobs) {
    Report r;
    r.scenario_name = sc.name;
    r.seed = sc.seed;
    DirectionOutcome dir = calibrate_direction(sc, jobs);
    for (const auto& c : dir.checks) r.checks.push_back(c);

    ExactPoly f = scenario_curve(sc);
    DegreeData dd = form_degree_data(f, 2);
    if (dd.d != 2)
        throw std::invalid_argument("cor1: scenario curve must be a smooth conic");
    FloatPoly ff = to_float(f);
    SpaceSpec xspace = SpaceSpec::plane_curve(f);

    std::vector<GroupElement> sigmas;
    for (const auto& m : sc.sigma_list)
        if (m.rows() == 3) sigmas.push_back(GroupElement::det_normalized(m));
    int want = std::max(5, static_cast<int>(sigmas.size()));
    if (static_cast<int>(sigmas.size()) < want)
        for (auto& s : random_sl_elements(3, want - static_cast<int>(sigmas.size()),
                                          sc.sigma_radius, sc.seed + 59))
            sigmas.push_back(s);

    SeedSeq ss{sc.seed, 12};
    for (size_t i = 0; i < sigmas.size(); ++i) {
        const GroupElement& s = sigmas[i];
        Estimate lhs = aubin_yau(xspace, s.mat, 0.0, sc.budget_curve, ss.next(), jobs);
        CMat act = dir.cal.forward_action ? s.mat : s.inverse().mat;
        Estimate rhs = deligne_norm_log_ratio(compose_points(ff, act), ff,
                                              sc.budget_ambient, ss.next(), jobs);
        double se = std::hypot(lhs.stderr_, rhs.stderr_);
        CheckResult c = make_check("cor1_conic[" + std::to_string(i) + "]",
                                   lhs.value - rhs.value, se, 0.0, tol_margin(sc.tol, se));
        c.details["lhs"] = lhs.value;
        c.details["rhs"] = rhs.value;
        c.details["rhs_alt_scale_1_over_Vz"] = rhs.value / dd.volume.get_d();
        r.checks.push_back(c);
    }
    r.calibration = dir.cal.to_json();
    return r;
}

Report verify_cor2(const Scenario& sc, int jobs) {
    Report r;
    r.scenario_name = sc.name;
    r.seed = sc.seed;
    DirectionOutcome dir = calibrate_direction(sc, jobs);
    for (const auto& c : dir.checks) r.checks.push_back(c);

    ExactPoly f = scenario_curve(sc);
    DegreeData dd = form_degree_data(f, 2);
    ChowForm chow = chow_form_hypersurface(f, 2);
    FloatPoly chow_f = to_float(chow.poly);
    DiscriminantForm disc = discriminant_form(f, DualMethod::eliminate);
    FloatPoly disc_f = disc.floating;

    std::vector<std::pair<GroupElement, double>> sigmas; // (sigma, ray t or nan)
    for (const auto& m : sc.sigma_list)
        if (m.rows() == 3)
            sigmas.emplace_back(GroupElement::det_normalized(m),
                                std::numeric_limits<double>::quiet_NaN());
    for (const auto& ray : sc.rays)
        for (double t : ray.t_grid)
            sigmas.emplace_back(one_param_subgroup(ray.generator, t), t);
    int want = std::max(20, static_cast<int>(sigmas.size()));
    if (static_cast<int>(sigmas.size()) < want)
        for (auto& s : random_sl_elements(3, want - static_cast<int>(sigmas.size()),
                                          sc.sigma_radius, sc.seed + 71))
            sigmas.emplace_back(s, std::numeric_limits<double>::quiet_NaN());

    SeedSeq ss{sc.seed, 13};
    std::vector<double> xs, ys, vs, svs;
    ordered_json points = ordered_json::array();
    int dropped = 0;
    for (size_t i = 0; i < sigmas.size(); ++i) {
        const GroupElement& s = sigmas[i].first;
        GroupElement act = dir.cal.forward_action ? s.inverse() : s;
        Estimate nu = k_energy(f, s, sc.budget_curve, ss.next(), jobs);
        Estimate dlog_d = deligne_norm_log_ratio(act_on_hyperplane_form(act, disc_f),
                                                 disc_f, sc.budget_ambient, ss.next(), jobs);
        Estimate dlog_c = deligne_norm_log_ratio(act_on_hyperplane_form(act, chow_f),
                                                 chow_f, sc.budget_ambient, ss.next(), jobs);
        ordered_json p;
        if (std::isnan(sigmas[i].second)) p["t"] = nullptr;
        else p["t"] = sigmas[i].second;
        p["nu"] = nu.value;
        p["nu_stderr"] = nu.stderr_;
        p["dlogD"] = dlog_d.value;
        p["dlogD_stderr"] = dlog_d.stderr_;
        p["dlogC"] = dlog_c.value;
        p["dlogC_stderr"] = dlog_c.stderr_;
        if (nu.stderr_ > sc.tol.stderr_cap) {
            ++dropped;
            p["dropped"] = true;
        } else {
            xs.push_back(dlog_d.value);
            ys.push_back(dlog_c.value);
            vs.push_back(nu.value);
            svs.push_back(nu.stderr_);
        }
        points.push_back(std::move(p));
    }
    if (xs.size() < 3)
        throw std::invalid_argument("cor2: too few usable sigma samples after stderr cap");
    FitResult fit = weighted_fit(xs, ys, vs, svs);

    CheckResult r2c = make_check("cor2_fit_r2", fit.r2, 0.0, 1.0, 1.0 - sc.tol.r2_min);
    r2c.details["a"] = fit.a;
    r2c.details["a_stderr"] = fit.se_a;
    r2c.details["b"] = fit.b;
    r2c.details["b_stderr"] = fit.se_b;
    r2c.details["used"] = fit.used;
    r2c.details["dropped"] = dropped;
    r2c.details["points"] = points;
    r.checks.push_back(r2c);

    // deg(C), deg(D) under both conventions; report the matching one
    double ratio = fit.a / fit.b;
    double deg_c_pf = dd.chow_degrees[0], deg_d_pf = dd.disc_degrees[0];
    double deg_c_tot = 0, deg_d_tot = 0;
    for (int d : dd.chow_degrees) deg_c_tot += d;
    for (int d : dd.disc_degrees) deg_d_tot += d;
    double exp_pf = -deg_c_pf / deg_d_pf;
    double exp_tot = -deg_c_tot / deg_d_tot;
    bool pf_ok = std::abs(ratio - exp_pf) <= sc.tol.ratio_rel * std::abs(exp_pf);
    bool tot_ok = std::abs(ratio - exp_tot) <= sc.tol.ratio_rel * std::abs(exp_tot);
    std::string conv = pf_ok ? "per_factor" : (tot_ok ? "total" : "none");
    double expected = pf_ok ? exp_pf : exp_tot;
    CheckResult rc = make_check("cor2_degree_ratio", ratio, 0.0, expected,
                                sc.tol.ratio_rel * std::abs(expected));
    rc.details["convention"] = conv;
    rc.details["expected_per_factor"] = exp_pf;
    rc.details["expected_total"] = exp_tot;
    r.checks.push_back(rc);

    // residual overall scale of (a,b) against (deg C, -deg D); reported, not gated
    double dc = conv == "total" ? deg_c_tot : deg_c_pf;
    double dd2 = conv == "total" ? deg_d_tot : deg_d_pf;
    double scale = (fit.a * dc - fit.b * dd2) / (dc * dc + dd2 * dd2);
    CheckResult scl = make_check("cor2_scale_factor", scale, 0.0, scale, 0.0);
    scl.pass = true;
    scl.details["gated"] = false;
    r.checks.push_back(scl);

    r.calibration = dir.cal.to_json();
    return r;
}

Report run_scenario(const Scenario& sc, int jobs) {
    if (sc.checks.empty())
        throw std::invalid_argument("scenario: no checks requested");
    Report r;
    r.scenario_name = sc.name;
    r.seed = sc.seed;
    auto has = [&](const char* n) {
        return std::find(sc.checks.begin(), sc.checks.end(), n) != sc.checks.end();
    };
    if (has("zero_energies")) r.append(verify_zero_energies(sc, jobs));
    if (has("cor1")) r.append(verify_cor1(sc, jobs));
    if (has("cor2")) r.append(verify_cor2(sc, jobs));
    return r;
}

void emit_report(const Report& r, const std::string& path, const std::string& format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("emit_report: cannot open " + path);
    if (format == "json") {
        out << r.to_json().dump(2) << "\n";
    } else if (format == "text") {
        out << r.to_text();
    } else {
        throw std::invalid_argument("emit_report: unknown format " + format);
    }
    if (!out) throw std::runtime_error("emit_report: write failed for " + path);
}

} // namespace ddlab
