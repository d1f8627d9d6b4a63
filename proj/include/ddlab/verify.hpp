#pragma once

#include "ddlab/energy.hpp"
#include "ddlab/version.hpp"

#include <json.hpp>

namespace ddlab {

struct Tolerances {
    double abs = 1e-2;            // absolute floor
    double stderr_mult = 3.0;     // k in max(abs, k*stderr)
    double stderr_cap = 0.05;     // cor2: drop points noisier than this
    double ratio_rel = 0.05;      // cor2: relative tolerance on a/b
    double r2_min = 0.999;        // cor2: fit quality gate
};

struct RaySpec {
    CMat generator;               // traceless; sigma(t) = exp(t A)
    std::vector<double> t_grid;
};

struct Scenario {
    int format_version = scenario_format_version;
    std::string name;
    std::string curve_text;              // point-space form, block x0 of size 3
    std::optional<ExactPoly> curve;
    std::vector<CMat> sigma_list;        // explicit SL(3) elements
    std::vector<RaySpec> rays;
    int random_sigma_count = 5;
    double sigma_radius = 0.6;
    std::int64_t budget_ambient = 200000;
    std::int64_t budget_curve = 20000;
    std::uint64_t seed = 1;
    Tolerances tol;
    std::vector<std::string> checks;     // subset of zero_energies|cor1|cor2

    static Scenario from_json(const nlohmann::json& j);
    static Scenario load(const std::string& path);
};

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double stderr_ = 0.0;
    double expected = 0.0;
    double margin = 0.0;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();
};

struct Report {
    std::string scenario_name;
    std::uint64_t seed = 0;
    nlohmann::ordered_json calibration = nlohmann::ordered_json::object();
    std::vector<CheckResult> checks;

    bool all_pass() const;
    void append(const Report& other); // merges checks; calibration must agree
    nlohmann::ordered_json to_json() const;
    std::string to_text() const;
};

// Sign/normalization conventions resolved numerically (see verify_cor1).
struct Calibration {
    bool forward_action = true;  // f^sigma = f o sigma (else f o sigma^-1)
    bool zero_gate = false;      // Prop.-1 / Example zero energies held
    nlohmann::ordered_json to_json() const;
};

// bounded random elements: entries uniform on a radius-r disc, det-normalized
std::vector<GroupElement> random_sl_elements(int n1, int count, double radius,
                                             std::uint64_t seed);

Report verify_zero_energies(const Scenario& sc, int jobs = 1);
Report verify_cor1(const Scenario& sc, int jobs = 1);
Report verify_cor2(const Scenario& sc, int jobs = 1);
Report run_scenario(const Scenario& sc, int jobs = 1);

void emit_report(const Report& r, const std::string& path, const std::string& format);

} // namespace ddlab
