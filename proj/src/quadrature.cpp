#include "ddlab/quadrature.hpp"
#include "ddlab/forms.hpp"

#include <Eigen/QR>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace ddlab {

namespace {
constexpr std::int64_t kChunk = 4096;
}

Estimate Estimate::operator+(const Estimate& o) const {
    return {value + o.value, std::sqrt(stderr_ * stderr_ + o.stderr_ * o.stderr_),
            samples + o.samples, seed, "sum", 1.0};
}
Estimate Estimate::operator-(const Estimate& o) const {
    return {value - o.value, std::sqrt(stderr_ * stderr_ + o.stderr_ * o.stderr_),
            samples + o.samples, seed, "sum", 1.0};
}
Estimate Estimate::scaled(double c) const {
    return {value * c, stderr_ * std::abs(c), samples, seed, method, volume_factor};
}

double SpaceSpec::product_volume() const {
    // (sum n_i)! / prod n_i!  from expanding c1(O(1,...,1))^m
    double v = 1.0;
    int total = 0;
    for (int d : factor_dims) {
        for (int k = 1; k <= d; ++k) v *= static_cast<double>(total + k) / k;
        total += d;
    }
    return v;
}

int default_jobs() {
    if (const char* e = std::getenv("DDLAB_JOBS")) {
        int j = std::atoi(e);
        if (j > 0) return j;
    }
    return 1;
}

namespace {

CVec fs_point(Rng& rng, int dim) {
    CVec v(dim + 1);
    for (int i = 0; i <= dim; ++i) v[i] = rng.next_complex_gaussian();
    double n = v.norm();
    if (n == 0.0) v[0] = 1.0;
    else v /= n;
    return v;
}

struct ChunkAcc {
    double sum = 0.0;
    double sumsq = 0.0;
    std::int64_t n = 0;
    std::int64_t bad = 0;
};

Estimate reduce_chunks(const std::vector<ChunkAcc>& chunks, std::int64_t budget,
                       std::uint64_t seed, const std::string& method, double quota_frac,
                       double volume_factor) {
    double sum = 0.0, sumsq = 0.0;
    std::int64_t n = 0, bad = 0;
    for (const auto& c : chunks) { // fixed order: result independent of workers
        sum += c.sum;
        sumsq += c.sumsq;
        n += c.n;
        bad += c.bad;
    }
    std::int64_t quota = std::max<std::int64_t>(1, static_cast<std::int64_t>(quota_frac * budget));
    if (bad > quota)
        throw NumericalFailure(method + ": rejected " + std::to_string(bad) +
                               " samples (quota " + std::to_string(quota) + ")");
    double mean = sum / n;
    double var = n > 1 ? std::max(0.0, (sumsq - n * mean * mean) / (n - 1)) : 0.0;
    Estimate e;
    e.value = mean;
    e.stderr_ = std::sqrt(var / n);
    e.samples = n;
    e.seed = seed;
    e.method = method;
    e.volume_factor = volume_factor;
    return e;
}

template <class ChunkFn>
std::vector<ChunkAcc> run_chunks(std::int64_t nchunks, int jobs, ChunkFn fn) {
    std::vector<ChunkAcc> out(nchunks);
    if (jobs <= 1) {
        for (std::int64_t i = 0; i < nchunks; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&] {
            while (true) {
                std::int64_t i = next.fetch_add(1);
                if (i >= nchunks) break;
                out[i] = fn(i);
            }
        });
    }
    for (auto& t : workers) t.join();
    return out;
}

} // namespace

std::vector<CVec> sample_fs_point(const SpaceSpec& space, std::uint64_t seed,
                                  std::int64_t index) {
    if (space.kind == SpaceSpec::Kind::plane_curve)
        throw std::invalid_argument("sample_fs: curve spaces use curve_integral");
    Rng rng(seed, static_cast<std::uint64_t>(index));
    std::vector<CVec> pt;
    for (int d : space.factor_dims) pt.push_back(fs_point(rng, d));
    return pt;
}

std::vector<std::vector<CVec>> sample_fs(const SpaceSpec& space, std::int64_t count,
                                         std::uint64_t seed) {
    std::vector<std::vector<CVec>> out;
    out.reserve(count);
    for (std::int64_t i = 0; i < count; ++i) out.push_back(sample_fs_point(space, seed, i));
    return out;
}

Estimate integrate_projective(const Integrand& f, const SpaceSpec& space,
                              std::int64_t budget, std::uint64_t seed, int jobs) {
    if (space.kind == SpaceSpec::Kind::plane_curve)
        throw std::invalid_argument("integrate_projective: use curve_integral");
    if (budget <= 0) throw std::invalid_argument("integrate_projective: empty budget");
    std::int64_t nchunks = (budget + kChunk - 1) / kChunk;
    auto chunks = run_chunks(nchunks, jobs, [&](std::int64_t ci) {
        ChunkAcc acc;
        std::int64_t lo = ci * kChunk, hi = std::min(budget, lo + kChunk);
        for (std::int64_t i = lo; i < hi; ++i) {
            Rng rng(seed, static_cast<std::uint64_t>(i));
            std::vector<CVec> pt;
            for (int d : space.factor_dims) pt.push_back(fs_point(rng, d));
            double v = f(pt);
            if (!std::isfinite(v)) {
                ++acc.bad;
                continue;
            }
            acc.sum += v;
            acc.sumsq += v * v;
            ++acc.n;
        }
        return acc;
    });
    return reduce_chunks(chunks, budget, seed, "mc_projective", 1e-6,
                         space.product_volume());
}

Estimate paired_log_ratio(const Integrand& f, const Integrand& g, const SpaceSpec& space,
                          std::int64_t budget, std::uint64_t seed, int jobs) {
    Integrand diff = [&f, &g](const std::vector<CVec>& pt) {
        return std::log(f(pt)) - std::log(g(pt));
    };
    Estimate e = integrate_projective(diff, space, budget, seed, jobs);
    e.method = "mc_paired_log_ratio";
    return e;
}

namespace {

Eigen::Vector3cd cross3(const Eigen::Vector3cd& a, const Eigen::Vector3cd& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

struct CurveSetup {
    CMat u;            // unitary frame: work on G = F(U y)
    FloatPoly g;       // F composed with U
    std::vector<FloatPoly> grad;     // dG/dy_v
    std::vector<FloatPoly> hess;     // d2G/dy_v dy_w, packed v*3+w
    int d = 0;
};

CurveSetup make_curve_setup(const ExactPoly& f, std::uint64_t seed) {
    CurveSetup s;
    FloatPoly ff = to_float(f);
    s.d = f.multidegree()[0];
    double fscale = 0.0;
    for (const auto& [e, c] : ff.terms()) fscale = std::max(fscale, std::abs(c));
    for (std::uint64_t attempt = 0;; ++attempt) {
        if (attempt > 64) throw NumericalFailure("curve_integral: no usable projection frame");
        Rng rng(seed, 0xF0A3E000ULL + attempt);
        CMat gm(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) gm(i, j) = rng.next_complex_gaussian();
        Eigen::HouseholderQR<CMat> qr(gm);
        CMat q = qr.householderQ();
        // keep the chart center (0:0:1) well away from the transformed curve
        std::vector<std::complex<double>> m(9);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m[i * 3 + j] = q(i, j);
        FloatPoly g = ff.compose_linear(0, m);
        std::vector<std::complex<double>> e2{0.0, 0.0, 1.0};
        if (std::abs(g.eval_complex(e2)) < 0.05 * fscale) continue;
        s.u = q;
        s.g = g;
        break;
    }
    for (int v = 0; v < 3; ++v) s.grad.push_back(s.g.diff(v));
    for (int v = 0; v < 3; ++v)
        for (int w = 0; w < 3; ++w) s.hess.push_back(s.grad[v].diff(w));
    return s;
}

} // namespace

Estimate curve_integral(const ExactPoly& f, const CurveIntegrand& integrand,
                        const CurveMeasure& measure, std::int64_t budget,
                        std::uint64_t seed, int jobs) {
    if (budget <= 0) throw std::invalid_argument("curve_integral: empty budget");
    CurveSetup setup = make_curve_setup(f, seed);
    bool deformed = measure.kind == CurveMeasure::Kind::potential_deformed;
    bool have_sigma = measure.sigma.has_value();
    if (deformed && !have_sigma)
        throw std::invalid_argument("curve_integral: missing sigma");
    CMat msig;
    if (have_sigma) msig = *measure.sigma * setup.u; // phi(U y) is the Bergman potential of sigma U
    const double kTangentTol = 1e-9;
    std::int64_t nchunks = (budget + kChunk - 1) / kChunk;

    auto chunks = run_chunks(nchunks, jobs, [&](std::int64_t ci) {
        ChunkAcc acc;
        Rng rng(seed, 0xCE11ULL * 0x10000ULL + static_cast<std::uint64_t>(ci));
        std::int64_t want = std::min(budget, (ci + 1) * kChunk) - ci * kChunk;
        std::int64_t attempts_cap = 64 * want + 4096;
        std::int64_t attempts = 0;
        while (acc.n < want) {
            if (++attempts > attempts_cap) {
                acc.bad += want - acc.n;
                break;
            }
            std::complex<double> w0 = rng.next_complex_gaussian();
            std::complex<double> w1 = rng.next_complex_gaussian();
            double wn = std::sqrt(std::norm(w0) + std::norm(w1));
            if (wn < 1e-12) continue;
            w0 /= wn;
            w1 /= wn;
            int c1 = std::abs(w0) >= std::abs(w1) ? 0 : 1;
            int other = 1 - c1;
            std::complex<double> alpha = (c1 == 0 ? w1 : w0) / (c1 == 0 ? w0 : w1);
            double h_p1 = 1.0 / std::pow(1.0 + std::norm(alpha), 2);
            // fiber polynomial G(a + s e2) in s
            CVec a(3), e2v(3);
            a << w0, w1, 0.0;
            e2v << 0.0, 0.0, 1.0;
            auto bform = restrict_to_line(setup.g, e2v, a);
            std::vector<std::complex<double>> poly(bform.coeffs.begin(), bform.coeffs.end());
            auto roots = poly_roots(poly);
            if (static_cast<int>(roots.size()) != setup.d) {
                ++acc.bad; // root at the chart center; measure-zero locus
                continue;
            }
            double obs = 0.0;
            bool reject = false;
            for (auto s : roots) {
                Eigen::Vector3cd yl;
                yl << w0, w1, s;
                yl /= yl[c1];
                std::vector<std::complex<double>> ylv{yl[0], yl[1], yl[2]};
                std::complex<double> g_u = setup.grad[other].eval_complex(ylv);
                std::complex<double> g_v = setup.grad[2].eval_complex(ylv);
                double gn = std::sqrt(std::norm(g_u) + std::norm(g_v)) + 1e-300;
                if (std::abs(g_v) < kTangentTol * gn) {
                    reject = true;
                    break;
                }
                std::complex<double> vp = -g_u / g_v;
                std::complex<double> g_uu = setup.hess[other * 3 + other].eval_complex(ylv);
                std::complex<double> g_uv = setup.hess[other * 3 + 2].eval_complex(ylv);
                std::complex<double> g_vv = setup.hess[2 * 3 + 2].eval_complex(ylv);
                std::complex<double> vpp = -(g_uu + 2.0 * g_uv * vp + g_vv * vp * vp) / g_v;
                Eigen::Vector3cd xp = Eigen::Vector3cd::Zero();
                xp[other] = 1.0;
                xp[2] = vp;
                Eigen::Vector3cd w3 = cross3(yl, xp);
                double x2 = yl.squaredNorm();
                double w2 = w3.squaredNorm();
                double h_fs = w2 / (x2 * x2);
                Eigen::Vector3cd wp = vpp * cross3(yl, e2v);
                double h_w = (w2 * wp.squaredNorm() - std::norm(w3.dot(wp))) / (w2 * w2);
                double ric = 2.0 * h_fs - h_w;
                CurvePointData data;
                data.h_fs = h_fs;
                data.ric = ric;
                data.h_phi = h_fs;
                data.phi = 0.0;
                CVec xo = setup.u * yl;
                data.x = xo / xo.norm();
                if (have_sigma) {
                    CVec z(2);
                    z << yl[other], yl[2];
                    CMat hphi = log_norm_hessian(msig, c1, z) - fs_chart_hessian(c1, z);
                    Eigen::Vector2cd t;
                    t << 1.0, vp;
                    std::complex<double> add = 0.0;
                    for (int p = 0; p < 2; ++p)
                        for (int q = 0; q < 2; ++q) add += hphi(p, q) * t[p] * std::conj(t[q]);
                    data.h_phi = h_fs + add.real();
                    data.phi = std::log((msig * yl).squaredNorm() / yl.squaredNorm());
                }
                double weight = (deformed ? data.h_phi : data.h_fs) / h_p1;
                obs += weight * integrand(data);
            }
            if (reject || !std::isfinite(obs)) {
                ++acc.bad;
                continue;
            }
            acc.sum += obs;
            acc.sumsq += obs * obs;
            ++acc.n;
        }
        return acc;
    });
    return reduce_chunks(chunks, budget, seed, "mc_curve_slice", 1e-3, 1.0);
}

} // namespace ddlab
