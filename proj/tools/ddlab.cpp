#include "ddlab/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace ddlab;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_tolerance = 1;
constexpr int exit_input = 2;
constexpr int exit_numerical = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// curve input: either an inline polynomial or a path to a text file holding one
ExactPoly load_curve(const std::string& spec) {
    std::string text = spec;
    if (std::ifstream probe(spec); probe) text = read_file(spec);
    return parse_exact_poly(text, BlockGrading::single(3));
}

BlockGrading grading_from_json(const json& j) {
    std::vector<BlockGrading::Block> blocks;
    for (const auto& b : j)
        blocks.push_back({b.at(0).get<std::string>(), b.at(1).get<int>()});
    return BlockGrading(std::move(blocks));
}

ordered_json grading_to_json(const BlockGrading& g) {
    ordered_json j = ordered_json::array();
    for (const auto& b : g.blocks) j.push_back(ordered_json::array({b.name, b.nvars}));
    return j;
}

// versioned on-disk format for multigraded forms (chow/dual output, knorm input)
void write_form(const std::string& path, const FloatPoly& f, const std::string& kind,
                const std::string& method) {
    ordered_json j;
    j["format_version"] = 1;
    j["kind"] = kind;
    j["method"] = method;
    j["blocks"] = grading_to_json(f.grading());
    j["degree"] = f.multidegree();
    j["poly"] = to_string(f);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open " + path);
    out << j.dump(2) << "\n";
}

FloatPoly read_form(const std::string& path) {
    json j = json::parse(read_file(path));
    if (j.value("format_version", 1) > 1)
        throw std::invalid_argument("form file format_version newer than this tool");
    BlockGrading g = grading_from_json(j.at("blocks"));
    return to_float(parse_exact_poly(j.at("poly").get<std::string>(), g));
}

CMat load_sigma(const std::string& spec) {
    std::string text = spec;
    if (std::ifstream probe(spec); probe) text = read_file(spec);
    json j = json::parse(text);
    if (j.is_object() && j.contains("matrix")) j = j.at("matrix");
    int n1 = static_cast<int>(std::llround(std::sqrt(static_cast<double>(j.size()))));
    if (n1 * n1 != static_cast<int>(j.size()))
        throw std::invalid_argument("sigma: entry count is not a square");
    CMat m(n1, n1);
    for (int i = 0; i < n1; ++i)
        for (int k = 0; k < n1; ++k) {
            const json& e = j[i * n1 + k];
            if (e.is_number()) m(i, k) = e.get<double>();
            else m(i, k) = std::complex<double>(e[0].get<double>(), e[1].get<double>());
        }
    return m;
}

void print_estimate(const Estimate& e) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s = %.12g +- %.3g (samples=%lld, seed=%llu)\n",
                  e.method.c_str(), e.value, e.stderr_,
                  static_cast<long long>(e.samples),
                  static_cast<unsigned long long>(e.seed));
    std::cout << buf;
}

void emit_plot_data(const ordered_json& points, const std::string& path) {
    std::vector<std::array<double, 5>> rows;
    for (const auto& p : points) {
        if (p.at("t").is_null()) continue;
        rows.push_back({p.at("t").get<double>(), p.at("nu").get<double>(),
                        p.at("nu_stderr").get<double>(), p.at("dlogD").get<double>(),
                        p.at("dlogC").get<double>()});
    }
    if (rows.empty())
        throw std::invalid_argument("emit_plot_data: no one-parameter ray points");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open " + path);
    out << "t,nu,nu_stderr,dlogD,dlogC\n";
    char buf[200];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r[0], r[1],
                      r[2], r[3], r[4]);
        out << buf;
    }
}

int run_selftest() {
    // fast deterministic invariant sweep; throws on violation
    ExactPoly conic = parse_exact_poly("(1)*x0_0^1*x0_2^1 + (-1)*x0_1^2",
                                       BlockGrading::single(3));
    ChowForm cf = chow_form_hypersurface(conic, 2);
    auto md = cf.poly.multidegree();
    if (md != std::vector<int>{2, 2}) throw std::runtime_error("selftest: chow multidegree");
    DiscriminantForm dual = discriminant_form(conic, DualMethod::eliminate);
    ExactPoly oracle = dual_conic_adjugate(conic_matrix(conic));
    // proportionality against the adjugate oracle at random rational-free points
    Rng rng(424242, 0);
    std::complex<double> ratio{};
    for (int i = 0; i < 32; ++i) {
        std::vector<std::complex<double>> u(3);
        for (auto& z : u) z = rng.next_complex_gaussian();
        std::complex<double> a = dual.floating.eval_complex(u);
        std::complex<double> b = to_float(oracle).eval_complex(u);
        if (std::abs(b) < 1e-12) continue;
        std::complex<double> q = a / b;
        if (i == 0) ratio = q;
        else if (std::abs(q - ratio) > 1e-6 * std::abs(ratio))
            throw std::runtime_error("selftest: dual conic mismatch");
    }
    Estimate lg = integrate_projective(
        [](const std::vector<CVec>& pts) {
            return std::log(std::norm(pts[0][0]) / pts[0].squaredNorm());
        },
        SpaceSpec::projective(1), 100000, 7);
    if (std::abs(lg.value + 1.0) > 5 * lg.stderr_ + 1e-2)
        throw std::runtime_error("selftest: P1 log moment");
    Estimate vol = curve_integral(
        conic, [](const CurvePointData&) { return 1.0; }, CurveMeasure::base(), 100000, 7);
    if (std::abs(vol.value - 2.0) > 5.0 * vol.stderr_)
        throw std::runtime_error("selftest: conic volume");
    std::cout << "selftest ok\n";
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"chow/dual forms and energy functionals of plane curves"};
    app.require_subcommand(1);
    int jobs = default_jobs();

    // chow
    auto* chow_cmd = app.add_subcommand("chow", "Chow form of a plane curve");
    std::string chow_curve, chow_out;
    chow_cmd->add_option("--curve", chow_curve, "curve polynomial (inline or file)")
        ->required();
    chow_cmd->add_option("--out", chow_out, "output form file (JSON)");

    // dual
    auto* dual_cmd = app.add_subcommand("dual", "dual-curve (discriminant) form");
    std::string dual_curve, dual_out, dual_method = "eliminate";
    std::uint64_t dual_seed = 20240501;
    dual_cmd->add_option("--curve", dual_curve, "curve polynomial (inline or file)")
        ->required();
    dual_cmd->add_option("--method", dual_method, "eliminate|interpolate");
    auto* dual_seed_opt = dual_cmd->add_option("--seed", dual_seed, "sampling seed");
    dual_cmd->add_option("--out", dual_out, "output form file (JSON)");

    // energy
    auto* energy_cmd = app.add_subcommand("energy", "Aubin-Yau or K-energy of phi_sigma");
    std::string en_space = "p2", en_curve, en_sigma, en_kind = "aubin-yau";
    std::int64_t en_budget = 200000;
    std::uint64_t en_seed = 0;
    energy_cmd->add_option("--space", en_space, "p1|p2|curve");
    energy_cmd->add_option("--curve", en_curve, "curve polynomial (for --space curve)");
    energy_cmd->add_option("--sigma", en_sigma, "group element (JSON matrix or file)")
        ->required();
    energy_cmd->add_option("--kind", en_kind, "aubin-yau|k-energy");
    energy_cmd->add_option("--budget", en_budget, "sample budget");
    energy_cmd->add_option("--seed", en_seed, "sampling seed")->required();
    energy_cmd->add_option("--jobs", jobs, "worker threads");

    // knorm
    auto* knorm_cmd = app.add_subcommand("knorm", "Deligne log-norm of a form");
    std::string kn_form, kn_rel;
    std::int64_t kn_budget = 200000;
    std::uint64_t kn_seed = 0;
    knorm_cmd->add_option("--form", kn_form, "form file (JSON, from chow/dual)")
        ->required();
    knorm_cmd->add_option("--relative-to", kn_rel, "second form file: log-norm ratio");
    knorm_cmd->add_option("--budget", kn_budget, "sample budget");
    knorm_cmd->add_option("--seed", kn_seed, "sampling seed")->required();
    knorm_cmd->add_option("--jobs", jobs, "worker threads");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run scenario checks");
    std::string vf_check = "all", vf_scenario, vf_report, vf_format = "json", vf_plot;
    std::uint64_t vf_seed = 0;
    verify_cmd->add_option("check", vf_check, "zero_energies|cor1|cor2|all");
    verify_cmd->add_option("--scenario", vf_scenario, "scenario JSON file")->required();
    verify_cmd->add_option("--seed", vf_seed, "master seed (overrides scenario)")
        ->required();
    verify_cmd->add_option("--report", vf_report, "report output path");
    verify_cmd->add_option("--format", vf_format, "json|text");
    verify_cmd->add_option("--plot", vf_plot, "CSV of (t, nu, dlog) along rays");
    verify_cmd->add_option("--jobs", jobs, "worker threads");

    auto* selftest_cmd = app.add_subcommand("selftest", "fast invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_input;
    }

    try {
        if (*chow_cmd) {
            ExactPoly f = load_curve(chow_curve);
            ChowForm cf = chow_form_hypersurface(f, 2);
            std::cout << "chow multidegree:";
            for (int d : cf.poly.multidegree()) std::cout << " " << d;
            std::cout << "\n" << to_string(cf.poly) << "\n";
            if (!chow_out.empty())
                write_form(chow_out, to_float(cf.poly), "chow", "symbolic");
            return exit_ok;
        }
        if (*dual_cmd) {
            ExactPoly f = load_curve(dual_curve);
            DualMethod m;
            if (dual_method == "eliminate") m = DualMethod::eliminate;
            else if (dual_method == "interpolate") m = DualMethod::interpolate;
            else throw std::invalid_argument("dual: unknown method " + dual_method);
            if (m == DualMethod::interpolate && dual_seed_opt->count() == 0)
                throw std::invalid_argument("dual: --seed required for interpolate");
            DiscriminantForm df = discriminant_form(f, m, dual_seed);
            std::cout << "dual degree: " << df.degree << " (" << df.method << ")\n";
            if (df.exact) std::cout << to_string(*df.exact) << "\n";
            else std::cout << to_string(df.floating) << "\n";
            if (!dual_out.empty()) write_form(dual_out, df.floating, "dual", df.method);
            return exit_ok;
        }
        if (*energy_cmd) {
            CMat sigma = load_sigma(en_sigma);
            Estimate e;
            if (en_kind == "k-energy") {
                if (en_curve.empty())
                    throw std::invalid_argument("energy: --curve required for k-energy");
                e = k_energy(load_curve(en_curve), GroupElement::det_normalized(sigma),
                             en_budget, en_seed, jobs);
            } else if (en_kind == "aubin-yau") {
                SpaceSpec space = SpaceSpec::projective(2);
                if (en_space == "p1") space = SpaceSpec::projective(1);
                else if (en_space == "p2") space = SpaceSpec::projective(2);
                else if (en_space == "curve") {
                    if (en_curve.empty())
                        throw std::invalid_argument("energy: --curve required");
                    space = SpaceSpec::plane_curve(load_curve(en_curve));
                } else {
                    throw std::invalid_argument("energy: unknown space " + en_space);
                }
                e = aubin_yau(space, sigma, 0.0, en_budget, en_seed, jobs);
            } else {
                throw std::invalid_argument("energy: unknown kind " + en_kind);
            }
            print_estimate(e);
            return exit_ok;
        }
        if (*knorm_cmd) {
            FloatPoly f = read_form(kn_form);
            Estimate e;
            if (kn_rel.empty()) e = deligne_norm_log(f, kn_budget, kn_seed, jobs);
            else e = deligne_norm_log_ratio(f, read_form(kn_rel), kn_budget, kn_seed, jobs);
            print_estimate(e);
            return exit_ok;
        }
        if (*verify_cmd) {
            Scenario sc = Scenario::load(vf_scenario);
            sc.seed = vf_seed;
            if (vf_check != "all") {
                if (vf_check != "zero_energies" && vf_check != "cor1" && vf_check != "cor2")
                    throw std::invalid_argument("verify: unknown check " + vf_check);
                sc.checks = {vf_check};
            } else if (sc.checks.empty()) {
                sc.checks = {"zero_energies", "cor1", "cor2"};
            }
            Report rep = run_scenario(sc, jobs);
            std::cout << rep.to_text();
            if (!vf_report.empty()) emit_report(rep, vf_report, vf_format);
            if (!vf_plot.empty()) {
                ordered_json points = ordered_json::array();
                for (const auto& c : rep.checks)
                    if (c.name == "cor2_fit_r2" && c.details.contains("points"))
                        points = c.details.at("points");
                emit_plot_data(points, vf_plot);
            }
            return rep.all_pass() ? exit_ok : exit_tolerance;
        }
        if (*selftest_cmd) return run_selftest();
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numerical;
    }
    return exit_input;
}
