#include "ddlab/forms.hpp"
#include "ddlab/rng.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace ddlab {

template <class C>
bool BinaryForm<C>::is_zero() const {
    for (const auto& c : coeffs)
        if (!coeff_is_zero(c)) return false;
    return true;
}
template struct BinaryForm<RationalComplex>;
template struct BinaryForm<std::complex<double>>;

namespace {

RationalComplex det_exact(std::vector<std::vector<RationalComplex>> m) {
    size_t n = m.size();
    RationalComplex det(1);
    for (size_t r = 0; r < n; ++r) {
        size_t p = r;
        while (p < n && m[p][r].is_zero()) ++p;
        if (p == n) return RationalComplex(0);
        if (p != r) {
            std::swap(m[p], m[r]);
            det = -det;
        }
        det *= m[r][r];
        for (size_t i = r + 1; i < n; ++i) {
            RationalComplex f = m[i][r] / m[r][r];
            for (size_t j = r; j < n; ++j) m[i][j] -= f * m[r][j];
        }
    }
    return det;
}

// fraction-free Bareiss determinant for polynomial entries
ExactPoly det_poly(std::vector<std::vector<ExactPoly>> m, const BlockGrading& g) {
    size_t n = m.size();
    ExactPoly one = ExactPoly::constant(g, RationalComplex(1));
    ExactPoly prev = one;
    int sign = 1;
    for (size_t r = 0; r + 1 < n; ++r) {
        size_t p = r;
        while (p < n && m[p][r].is_zero()) ++p;
        if (p == n) return ExactPoly(g);
        if (p != r) {
            std::swap(m[p], m[r]);
            sign = -sign;
        }
        for (size_t i = r + 1; i < n; ++i)
            for (size_t j = r + 1; j < n; ++j)
                m[i][j] = divide_exact(m[i][j] * m[r][r] - m[i][r] * m[r][j], prev);
        prev = m[r][r];
    }
    ExactPoly d = m[n - 1][n - 1];
    return sign < 0 ? -d : d;
}

template <class C>
C laplace_det(const std::vector<std::vector<C>>& m) {
    size_t n = m.size();
    if (n == 1) return m[0][0];
    C acc = m[0][0] - m[0][0]; // zero
    int sign = 1;
    for (size_t c = 0; c < n; ++c) {
        std::vector<std::vector<C>> sub;
        for (size_t i = 1; i < n; ++i) {
            std::vector<C> row;
            for (size_t j = 0; j < n; ++j)
                if (j != c) row.push_back(m[i][j]);
            sub.push_back(std::move(row));
        }
        C term = m[0][c] * laplace_det(sub);
        acc = sign > 0 ? acc + term : acc - term;
        sign = -sign;
    }
    return acc;
}

} // namespace

CVec generalized_cross(const std::vector<CVec>& hyperplanes) {
    int m = static_cast<int>(hyperplanes.size());
    for (const auto& h : hyperplanes)
        if (h.size() != m + 1)
            throw std::invalid_argument("generalized_cross: need m vectors of length m+1");
    CVec out(m + 1);
    for (int k = 0; k <= m; ++k) {
        CMat sub(m, m);
        for (int i = 0; i < m; ++i)
            for (int j = 0, cc = 0; j <= m; ++j)
                if (j != k) sub(i, cc++) = hyperplanes[i][j];
        out[k] = (k % 2 == 0 ? 1.0 : -1.0) * sub.determinant();
    }
    return out;
}

std::vector<RationalComplex> generalized_cross_exact(
    const std::vector<std::vector<RationalComplex>>& hyperplanes) {
    size_t m = hyperplanes.size();
    for (const auto& h : hyperplanes)
        if (h.size() != m + 1)
            throw std::invalid_argument("generalized_cross: need m vectors of length m+1");
    std::vector<RationalComplex> out(m + 1);
    for (size_t k = 0; k <= m; ++k) {
        std::vector<std::vector<RationalComplex>> sub;
        for (size_t i = 0; i < m; ++i) {
            std::vector<RationalComplex> row;
            for (size_t j = 0; j <= m; ++j)
                if (j != k) row.push_back(hyperplanes[i][j]);
            sub.push_back(std::move(row));
        }
        RationalComplex d = det_exact(sub);
        out[k] = (k % 2 == 0) ? d : -d;
    }
    return out;
}

ChowForm chow_form_hypersurface(const ExactPoly& f, int m) {
    const auto& fg = f.grading();
    if (fg.nblocks() != 1 || fg.total_vars() != m + 1)
        throw std::invalid_argument("chow_form: F must live in one block of m+1 variables");
    int d = f.multidegree()[0]; // throws on non-homogeneous input
    BlockGrading hg = BlockGrading::uniform(m, m + 1);
    // symbolic signed maximal minors of the m x (m+1) matrix of block variables
    std::vector<ExactPoly> cross;
    for (int k = 0; k <= m; ++k) {
        std::vector<std::vector<ExactPoly>> sub;
        for (int i = 0; i < m; ++i) {
            std::vector<ExactPoly> row;
            for (int j = 0; j <= m; ++j)
                if (j != k) row.push_back(ExactPoly::variable(hg, i, j));
            sub.push_back(std::move(row));
        }
        ExactPoly mk = laplace_det(sub);
        cross.push_back(k % 2 == 0 ? mk : -mk);
    }
    ExactPoly one = ExactPoly::constant(hg, RationalComplex(1));
    ChowForm c;
    c.poly = f.eval_generic<ExactPoly>(cross, one);
    c.source_degree = d;
    c.ambient_dim = m;
    return c;
}

namespace {

template <class C, class Poly>
std::vector<C> restrict_impl(const Poly& f, const std::vector<C>& p, const std::vector<C>& q) {
    int n1 = f.grading().total_vars();
    if (static_cast<int>(p.size()) != n1 || static_cast<int>(q.size()) != n1)
        throw std::invalid_argument("restrict_to_line: point dimension mismatch");
    int d = f.multidegree()[0];
    // independence: some 2x2 minor must be nonzero
    bool indep = false;
    for (int i = 0; i < n1 && !indep; ++i)
        for (int j = i + 1; j < n1 && !indep; ++j)
            if (!coeff_is_zero(p[i] * q[j] - p[j] * q[i])) indep = true;
    if (!indep) throw std::invalid_argument("restrict_to_line: points are proportional");
    std::vector<C> acc(static_cast<size_t>(d) + 1, C(0));
    for (const auto& [e, c] : f.terms()) {
        std::vector<C> term{C(1)}; // binary poly by s-degree
        for (int v = 0; v < n1; ++v) {
            for (int k = 0; k < e[v]; ++k) {
                std::vector<C> next(term.size() + 1, C(0));
                for (size_t s = 0; s < term.size(); ++s) {
                    next[s + 1] += term[s] * p[v];
                    next[s] += term[s] * q[v];
                }
                term = std::move(next);
            }
        }
        for (size_t s = 0; s < term.size(); ++s) acc[s] += term[s] * C(c);
    }
    return acc;
}

} // namespace

BinaryForm<RationalComplex> restrict_to_line(const ExactPoly& f,
                                             const std::vector<RationalComplex>& p,
                                             const std::vector<RationalComplex>& q) {
    BinaryForm<RationalComplex> b;
    b.coeffs = restrict_impl<RationalComplex>(f, p, q);
    b.degree = static_cast<int>(b.coeffs.size()) - 1;
    return b;
}

BinaryForm<std::complex<double>> restrict_to_line(const FloatPoly& f, const CVec& p,
                                                  const CVec& q) {
    std::vector<std::complex<double>> pv(p.data(), p.data() + p.size());
    std::vector<std::complex<double>> qv(q.data(), q.data() + q.size());
    BinaryForm<std::complex<double>> b;
    b.coeffs = restrict_impl<std::complex<double>>(f, pv, qv);
    b.degree = static_cast<int>(b.coeffs.size()) - 1;
    return b;
}

namespace {

// Sylvester matrix of db/ds and db/dt (formal degrees d-1 each)
template <class C>
std::vector<std::vector<C>> discriminant_sylvester(const std::vector<C>& coeffs, const C& zero) {
    int d = static_cast<int>(coeffs.size()) - 1;
    if (d < 2) throw std::invalid_argument("binary_discriminant: degree must be >= 2");
    int e = d - 1;
    // u_j: coeff of s^j in db/ds, v_j: coeff of s^j in db/dt (t = 1)
    std::vector<C> u(e + 1, zero), v(e + 1, zero);
    for (int j = 0; j <= e; ++j) {
        u[j] = C(j + 1) * coeffs[j + 1];
        v[j] = C(d - j) * coeffs[j];
    }
    int n = 2 * e;
    std::vector<std::vector<C>> m(n, std::vector<C>(n, zero));
    for (int i = 0; i < e; ++i)
        for (int j = 0; j <= e; ++j) m[i][i + j] = u[e - j];
    for (int i = 0; i < e; ++i)
        for (int j = 0; j <= e; ++j) m[e + i][i + j] = v[e - j];
    return m;
}

} // namespace

RationalComplex binary_discriminant(const BinaryForm<RationalComplex>& b) {
    auto m = discriminant_sylvester(b.coeffs, RationalComplex(0));
    return det_exact(m);
}

std::complex<double> binary_discriminant(const BinaryForm<std::complex<double>>& b) {
    auto m = discriminant_sylvester(b.coeffs, std::complex<double>(0));
    int n = static_cast<int>(m.size());
    CMat em(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) em(i, j) = m[i][j];
    return em.determinant();
}

ExactPoly binary_discriminant_symbolic(const std::vector<ExactPoly>& coeffs) {
    if (coeffs.size() < 3)
        throw std::invalid_argument("binary_discriminant: degree must be >= 2");
    const BlockGrading& g = coeffs.front().grading();
    ExactPoly zero(g);
    int d = static_cast<int>(coeffs.size()) - 1;
    int e = d - 1;
    std::vector<ExactPoly> u(e + 1, zero), v(e + 1, zero);
    for (int j = 0; j <= e; ++j) {
        u[j] = coeffs[j + 1].scale(RationalComplex(j + 1));
        v[j] = coeffs[j].scale(RationalComplex(d - j));
    }
    int n = 2 * e;
    std::vector<std::vector<ExactPoly>> m(n, std::vector<ExactPoly>(n, zero));
    for (int i = 0; i < e; ++i)
        for (int j = 0; j <= e; ++j) m[i][i + j] = u[e - j];
    for (int i = 0; i < e; ++i)
        for (int j = 0; j <= e; ++j) m[e + i][i + j] = v[e - j];
    return det_poly(m, g);
}

namespace {

bool divisible_by_variable(const ExactPoly& p, int var) {
    for (const auto& [e, c] : p.terms())
        if (e[var] == 0) return false;
    return true;
}

FloatPoly normalize_float_form(const FloatPoly& p) {
    if (p.is_zero()) return p;
    // first nonzero (graded-lex leading) coefficient real-positive, then unit
    // max-absolute coefficient
    std::complex<double> lead = p.terms().begin()->second;
    std::complex<double> phase = std::conj(lead) / std::abs(lead);
    double maxabs = 0.0;
    for (const auto& [e, c] : p.terms()) maxabs = std::max(maxabs, std::abs(c));
    FloatPoly r(p.grading());
    for (const auto& [e, c] : p.terms()) r.add_term(e, c * phase / maxabs);
    return r;
}

ExactPoly eliminate_dual(const ExactPoly& f) {
    const BlockGrading& fg = f.grading();
    int d = f.multidegree()[0];
    BlockGrading ug({{ "u", 3 }});
    // line {u.x = 0} parametrized by s (u x e_a) + t (u x e_b); the spanning
    // pair degenerates exactly on the coordinate line u_c = 0, c the index
    // complementary to {a,b}, which contributes the only extraneous factor.
    const int pairs[3][2] = {{1, 2}, {0, 2}, {0, 1}};
    for (const auto& pr : pairs) {
        int a = pr[0], b = pr[1];
        int c3 = 3 - a - b;
        auto cross_e = [&](int e_idx) {
            // (u x e)_i = eps_{i j e} u_j, written out per basis vector
            std::vector<ExactPoly> v(3, ExactPoly(ug));
            auto set = [&](int i, int j, int s) {
                v[i] = v[i] + ExactPoly::variable(ug, 0, j, RationalComplex(s));
            };
            if (e_idx == 0) { set(1, 2, 1); set(2, 1, -1); }
            if (e_idx == 1) { set(0, 2, -1); set(2, 0, 1); }
            if (e_idx == 2) { set(0, 1, 1); set(1, 0, -1); }
            return v;
        };
        std::vector<ExactPoly> p = cross_e(a), q = cross_e(b);
        // binary form coefficients of F(s p + t q), each an ExactPoly in u
        std::vector<ExactPoly> coeffs(static_cast<size_t>(d) + 1, ExactPoly(ug));
        for (const auto& [e, c] : f.terms()) {
            std::vector<ExactPoly> term{ExactPoly::constant(ug, RationalComplex(1))};
            for (int v = 0; v < fg.total_vars(); ++v) {
                for (int k = 0; k < e[v]; ++k) {
                    std::vector<ExactPoly> next(term.size() + 1, ExactPoly(ug));
                    for (size_t s = 0; s < term.size(); ++s) {
                        next[s + 1] = next[s + 1] + term[s] * p[v];
                        next[s] = next[s] + term[s] * q[v];
                    }
                    term = std::move(next);
                }
            }
            for (size_t s = 0; s < term.size(); ++s)
                coeffs[s] = coeffs[s] + term[s].scale(c);
        }
        ExactPoly disc = binary_discriminant_symbolic(coeffs);
        if (disc.is_zero()) continue; // degenerate parametrization for this curve
        disc = strip_monomial_content(disc);
        for (int v = 0; v < 3; ++v)
            if (disc.degree_in(v) > 0) disc = squarefree_part(disc, v);
        disc = strip_monomial_content(disc);
        // strip remaining copies of the degeneracy line u_c (the dual of a
        // smooth curve is irreducible, so it never contains that line)
        ExactPoly uc = ExactPoly::variable(ug, 0, c3);
        while (disc.total_degree() > 0 && divisible_by_variable(disc, c3))
            disc = divide_exact(disc, uc);
        if (disc.total_degree() == 0) continue;
        return normalize_leading(disc);
    }
    throw std::runtime_error("discriminant_form: all line parametrizations degenerate");
}

} // namespace

CVec gradient_at(const FloatPoly& f, const CVec& x) {
    int n = f.grading().total_vars();
    std::vector<std::complex<double>> xv(x.data(), x.data() + x.size());
    CVec g(n);
    for (int v = 0; v < n; ++v) g[v] = f.diff(v).eval_complex(xv);
    return g;
}

std::vector<std::complex<double>> poly_roots(const std::vector<std::complex<double>>& coeffs) {
    int deg = static_cast<int>(coeffs.size()) - 1;
    while (deg > 0 && std::abs(coeffs[deg]) < 1e-13 * [&] {
               double m = 0;
               for (const auto& c : coeffs) m = std::max(m, std::abs(c));
               return m + 1e-300;
           }())
        --deg;
    if (deg <= 0) return {};
    CMat comp = CMat::Zero(deg, deg);
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -coeffs[i] / coeffs[deg];
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    Eigen::ComplexEigenSolver<CMat> es(comp, false);
    std::vector<std::complex<double>> roots;
    for (int i = 0; i < deg; ++i) roots.push_back(es.eigenvalues()[i]);
    return roots;
}

std::vector<CVec> sample_curve_points(const FloatPoly& f, int count, std::uint64_t seed,
                                      double grad_tol) {
    std::vector<CVec> pts;
    Rng rng(seed, 0xC0FFEE);
    int n1 = f.grading().total_vars();
    int guard = 0;
    while (static_cast<int>(pts.size()) < count) {
        if (++guard > 100 * count + 1000)
            throw std::runtime_error("sample_curve_points: too many rejections");
        CVec a(n1), b(n1);
        for (int i = 0; i < n1; ++i) a[i] = rng.next_complex_gaussian();
        for (int i = 0; i < n1; ++i) b[i] = rng.next_complex_gaussian();
        auto bform = restrict_to_line(f, a, b);
        // bform.coeffs[k] multiplies s^k t^(d-k); roots in s with t=1
        std::vector<std::complex<double>> poly(bform.coeffs.begin(), bform.coeffs.end());
        for (auto s : poly_roots(poly)) {
            if (static_cast<int>(pts.size()) >= count) break;
            CVec x = (s * a + b).eval();
            double nx = x.norm();
            if (nx < 1e-12) continue;
            x /= nx;
            CVec g = gradient_at(f, x);
            if (g.norm() < grad_tol) continue;
            pts.push_back(canonicalize(x));
        }
    }
    return pts;
}

namespace {

std::vector<Exponents> monomials_of_degree(int deg) {
    std::vector<Exponents> out;
    for (int i = 0; i <= deg; ++i)
        for (int j = 0; j <= deg - i; ++j) out.push_back({i, j, deg - i - j});
    return out;
}

DiscriminantForm interpolate_dual(const ExactPoly& f, std::uint64_t seed) {
    FloatPoly ff = to_float(f);
    int d = f.multidegree()[0];
    int target = d * (d - 1);
    auto mons = monomials_of_degree(target);
    int m = static_cast<int>(mons.size());
    int k = 2 * m;
    auto pts = sample_curve_points(ff, k, seed);
    CMat a(k, m);
    for (int r = 0; r < k; ++r) {
        CVec u = gradient_at(ff, pts[r]);
        u /= u.norm();
        for (int cidx = 0; cidx < m; ++cidx) {
            std::complex<double> val = 1.0;
            for (int v = 0; v < 3; ++v)
                for (int e = 0; e < mons[cidx][v]; ++e) val *= u[v];
            a(r, cidx) = val;
        }
    }
    Eigen::JacobiSVD<CMat> svd(a, Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    double smax = sv[0];
    double s_last = sv[m - 1], s_prev = sv[m - 2];
    if (s_last > 1e-7 * smax || s_prev < 1e-5 * smax)
        throw std::runtime_error("discriminant_form: interpolation null space is not "
                                 "one-dimensional (singular values " +
                                 std::to_string(s_last / smax) + ", " +
                                 std::to_string(s_prev / smax) + ")");
    CVec null = svd.matrixV().col(m - 1);
    BlockGrading ug({{ "u", 3 }});
    FloatPoly dual(ug);
    for (int cidx = 0; cidx < m; ++cidx) dual.add_term(mons[cidx], null[cidx]);
    DiscriminantForm out;
    out.floating = normalize_float_form(dual);
    out.degree = target;
    out.method = "interpolate";
    out.residual = s_last / smax;
    return out;
}

} // namespace

DiscriminantForm discriminant_form(const ExactPoly& f, DualMethod method, std::uint64_t seed) {
    const auto& g = f.grading();
    if (g.nblocks() != 1 || g.total_vars() != 3)
        throw std::invalid_argument("discriminant_form: only plane curves (m=2) supported");
    if (f.multidegree()[0] < 2)
        throw std::invalid_argument("discriminant_form: degree must be >= 2");
    if (method == DualMethod::interpolate) return interpolate_dual(f, seed);
    ExactPoly dual = eliminate_dual(f);
    DiscriminantForm out;
    out.exact = dual;
    out.floating = normalize_float_form(to_float(dual));
    out.degree = dual.multidegree()[0];
    out.method = "eliminate";
    return out;
}

ExactPoly dual_conic_adjugate(const std::vector<std::vector<RationalComplex>>& a) {
    if (a.size() != 3 || a[0].size() != 3)
        throw std::invalid_argument("dual_conic_adjugate: need a 3x3 matrix");
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (a[i][j] != a[j][i])
                throw std::invalid_argument("dual_conic_adjugate: matrix not symmetric");
    std::vector<std::vector<RationalComplex>> rows = a;
    if (det_exact(rows).is_zero())
        throw std::invalid_argument("dual_conic_adjugate: singular conic");
    auto cof = [&](int i, int j) {
        std::vector<std::vector<RationalComplex>> sub;
        for (int r = 0; r < 3; ++r) {
            if (r == i) continue;
            std::vector<RationalComplex> row;
            for (int c = 0; c < 3; ++c)
                if (c != j) row.push_back(a[r][c]);
            sub.push_back(std::move(row));
        }
        RationalComplex d = det_exact(sub);
        return ((i + j) % 2 == 0) ? d : -d;
    };
    BlockGrading ug({{ "u", 3 }});
    ExactPoly out(ug);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            RationalComplex adj_ij = cof(j, i); // adjugate = transposed cofactors
            if (adj_ij.is_zero()) continue;
            Exponents e(3, 0);
            e[i] += 1;
            e[j] += 1;
            out.add_term(e, adj_ij);
        }
    return out;
}

std::vector<std::vector<RationalComplex>> conic_matrix(const ExactPoly& f) {
    if (f.grading().total_vars() != 3 || f.multidegree()[0] != 2)
        throw std::invalid_argument("conic_matrix: need a plane conic");
    std::vector<std::vector<RationalComplex>> a(3, std::vector<RationalComplex>(3));
    RationalComplex half(mpq_class(1, 2));
    for (const auto& [e, c] : f.terms()) {
        int i = -1, j = -1;
        for (int v = 0; v < 3; ++v) {
            if (e[v] == 2) i = j = v;
            else if (e[v] == 1) (i < 0 ? i : j) = v;
        }
        if (i == j) a[i][i] += c;
        else {
            a[i][j] += c * half;
            a[j][i] += c * half;
        }
    }
    return a;
}

DegreeData form_degree_data(const ExactPoly& f, int m) {
    if (m != 2)
        throw std::invalid_argument("form_degree_data: only plane curves (m=2) supported");
    int d = f.multidegree()[0];
    if (d < 2) throw std::invalid_argument("form_degree_data: degree must be >= 2");
    DegreeData dd;
    dd.ambient_dim = m;
    dd.d = d;
    dd.deg_canonical = d * (d - 3);
    dd.volume = d;
    dd.mu = mpq_class(d - 3, 2);
    dd.chow_degrees = {d, d};
    dd.disc_degrees = {d * (d - 1)};
    return dd;
}

} // namespace ddlab
