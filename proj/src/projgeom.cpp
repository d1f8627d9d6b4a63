#include "ddlab/projgeom.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace ddlab {

CVec canonicalize(const CVec& v) {
    double n = v.norm();
    if (n == 0.0) throw std::invalid_argument("canonicalize: zero vector");
    CVec w = v / n;
    for (int i = 0; i < w.size(); ++i) {
        if (std::abs(w[i]) > 1e-14) {
            w *= std::conj(w[i]) / std::abs(w[i]);
            break;
        }
    }
    return w;
}

std::complex<double> incidence(const CVec& hyperplane, const CVec& point) {
    if (hyperplane.size() != point.size())
        throw std::invalid_argument("incidence: dimension mismatch");
    return hyperplane.transpose() * point;
}

GroupElement GroupElement::inverse() const { return {mat.inverse()}; }

GroupElement GroupElement::det_normalized(const CMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("GroupElement: non-square matrix");
    std::complex<double> d = m.determinant();
    if (std::abs(d) < 1e-300) throw std::invalid_argument("GroupElement: singular matrix");
    int n = static_cast<int>(m.rows());
    std::complex<double> root = std::pow(d, 1.0 / n);
    return {m / root};
}

GroupElement GroupElement::identity(int n1) { return {CMat::Identity(n1, n1)}; }

GroupElement one_param_subgroup(const CMat& A, double t) {
    if (std::abs(A.trace()) > 1e-12)
        throw std::invalid_argument("one_param_subgroup: matrix is not traceless");
    CMat e = (t * A).exp();
    return GroupElement::det_normalized(e);
}

CVec act_point(const GroupElement& s, const CVec& x) {
    if (x.size() != s.mat.rows()) throw std::invalid_argument("act_point: dimension mismatch");
    return s.mat * x;
}

CVec act_hyperplane(const GroupElement& s, const CVec& h) {
    if (h.size() != s.mat.rows())
        throw std::invalid_argument("act_hyperplane: dimension mismatch");
    return s.mat.inverse().transpose() * h;
}

namespace {

template <class C, class Conv>
MultiPoly<C> compose_all_blocks(const GroupElement& s, const MultiPoly<C>& f, Conv conv) {
    const auto& g = f.grading();
    CMat mt = s.mat.transpose();
    MultiPoly<C> r = f;
    for (int b = 0; b < g.nblocks(); ++b) {
        int nv = g.blocks[b].nvars;
        if (nv != mt.rows())
            throw std::invalid_argument("act_on_hyperplane_form: block size mismatch");
        std::vector<C> m(static_cast<size_t>(nv) * nv);
        for (int i = 0; i < nv; ++i)
            for (int j = 0; j < nv; ++j) m[i * nv + j] = conv(mt(i, j));
        r = r.compose_linear(b, m);
    }
    return r;
}

} // namespace

FloatPoly act_on_hyperplane_form(const GroupElement& s, const FloatPoly& f) {
    return compose_all_blocks(s, f, [](std::complex<double> c) { return c; });
}

ExactPoly act_on_hyperplane_form(const GroupElement& s, const ExactPoly& f) {
    // exact path used only in tests at modest precision: rationalize the entries
    return compose_all_blocks(s, f, [](std::complex<double> c) {
        return RationalComplex(mpq_class(c.real()), mpq_class(c.imag()));
    });
}

ExactPoly compose_point_block(const ExactPoly& f, int block, const CMat& m) {
    int nv = f.grading().blocks.at(block).nvars;
    if (m.rows() != nv || m.cols() != nv)
        throw std::invalid_argument("compose_point_block: matrix size mismatch");
    std::vector<RationalComplex> mm(static_cast<size_t>(nv) * nv);
    for (int i = 0; i < nv; ++i)
        for (int j = 0; j < nv; ++j)
            mm[i * nv + j] = RationalComplex(mpq_class(m(i, j).real()), mpq_class(m(i, j).imag()));
    return f.compose_linear(block, mm);
}

CVec chart_lift(int chart, const CVec& z) {
    CVec x(z.size() + 1);
    for (int i = 0, k = 0; i < x.size(); ++i) {
        if (i == chart) x[i] = 1.0;
        else x[i] = z[k++];
    }
    return x;
}

CVec chart_coords(const CVec& x, int& chart) {
    int j = 0;
    for (int i = 1; i < x.size(); ++i)
        if (std::abs(x[i]) > std::abs(x[j])) j = i;
    chart = j;
    CVec z(x.size() - 1);
    for (int i = 0, k = 0; i < x.size(); ++i) {
        if (i == j) continue;
        z[k++] = x[i] / x[j];
    }
    return z;
}

CMat log_norm_hessian(const CMat& m, int chart, const CVec& z) {
    // v(z) = m * lift(z); H_ab = d_a dbar_b log |v|^2. m may be rectangular
    // (e.g. a potential restricted to a linear subspace).
    int n1 = static_cast<int>(m.cols());
    int n = n1 - 1;
    CVec v = m * chart_lift(chart, z);
    CMat a(m.rows(), n);
    for (int i = 0, k = 0; i < n1; ++i) {
        if (i == chart) continue;
        a.col(k++) = m.col(i);
    }
    double n2 = v.squaredNorm();
    CVec u = a.adjoint() * v;
    CMat gram = a.adjoint() * a;
    CMat h(n, n);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            h(p, q) = gram(q, p) / n2 - std::conj(u[p]) * u[q] / (n2 * n2);
    return h;
}

CMat fs_chart_hessian(int chart, const CVec& z) {
    int n1 = static_cast<int>(z.size()) + 1;
    return log_norm_hessian(CMat::Identity(n1, n1), chart, z);
}

PotentialField zero_potential() {
    PotentialField p;
    p.tag = "zero";
    p.value = [](const CVec&) { return 0.0; };
    p.chart_hessian = [](int, const CVec& z) {
        int n = static_cast<int>(z.size());
        return CMat::Zero(n, n).eval();
    };
    p.is_zero = true;
    return p;
}

PotentialField bergman_potential(const GroupElement& s) {
    PotentialField p;
    p.tag = "bergman";
    CMat m = s.mat;
    p.value = [m](const CVec& x) {
        return std::log((m * x).squaredNorm() / x.squaredNorm());
    };
    p.chart_hessian = [m](int chart, const CVec& z) {
        return (log_norm_hessian(m, chart, z) - fs_chart_hessian(chart, z)).eval();
    };
    return p;
}

double bergman_potential_rate(const CMat& A, const CVec& x) {
    std::complex<double> ip = x.dot(A * x); // conj(x)^T A x
    return 2.0 * ip.real() / x.squaredNorm();
}

} // namespace ddlab
