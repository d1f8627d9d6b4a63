#include "ddlab/poly_gcd.hpp"

namespace ddlab {

namespace {

bool monomial_divides(const Exponents& a, const Exponents& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

} // namespace

ExactPoly divide_exact(const ExactPoly& p, const ExactPoly& q) {
    p.check_same_grading(q);
    if (q.is_zero()) throw std::domain_error("divide_exact: division by zero polynomial");
    ExactPoly rem = p;
    ExactPoly quot(p.grading());
    const auto& ltq = *q.terms().begin();
    while (!rem.is_zero()) {
        const auto& ltr = *rem.terms().begin();
        if (!monomial_divides(ltq.first, ltr.first))
            throw std::domain_error("divide_exact: not divisible");
        Exponents e(ltr.first.size());
        for (size_t i = 0; i < e.size(); ++i) e[i] = ltr.first[i] - ltq.first[i];
        RationalComplex c = ltr.second / ltq.second;
        ExactPoly t(p.grading());
        t.add_term(e, c);
        quot = quot + t;
        rem = rem - t * q;
    }
    return quot;
}

std::vector<ExactPoly> univ_coeffs(const ExactPoly& p, int pivot) {
    int d = p.degree_in(pivot);
    std::vector<ExactPoly> out(static_cast<size_t>(d) + 1, ExactPoly(p.grading()));
    for (const auto& [e, c] : p.terms()) {
        Exponents f = e;
        int k = f[pivot];
        f[pivot] = 0;
        out[k].add_term(f, c);
    }
    return out;
}

ExactPoly univ_assemble(const BlockGrading& g, const std::vector<ExactPoly>& coeffs, int pivot) {
    ExactPoly r(g);
    for (size_t k = 0; k < coeffs.size(); ++k) {
        for (const auto& [e, c] : coeffs[k].terms()) {
            Exponents f = e;
            f[pivot] += static_cast<int>(k);
            r.add_term(f, c);
        }
    }
    return r;
}

namespace {

ExactPoly leading_coeff_in(const ExactPoly& p, int pivot) {
    auto cs = univ_coeffs(p, pivot);
    return cs.back();
}

ExactPoly times_pivot_power(const ExactPoly& p, int pivot, int k) {
    ExactPoly r(p.grading());
    for (const auto& [e, c] : p.terms()) {
        Exponents f = e;
        f[pivot] += k;
        r.add_term(f, c);
    }
    return r;
}

// content w.r.t. pivot: gcd of the univariate coefficient polynomials
ExactPoly content_in_pivot(const ExactPoly& p, int pivot) {
    auto cs = univ_coeffs(p, pivot);
    ExactPoly g(p.grading());
    for (const auto& c : cs) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? normalize_leading(c) : gcd_mpoly(g, c);
    }
    return g;
}

} // namespace

ExactPoly pseudo_rem(const ExactPoly& a, const ExactPoly& b, int pivot) {
    a.check_same_grading(b);
    if (b.is_zero()) throw std::domain_error("pseudo_rem: zero divisor");
    int db = b.degree_in(pivot);
    ExactPoly r = a;
    ExactPoly lb = leading_coeff_in(b, pivot);
    while (!r.is_zero()) {
        int dr = r.degree_in(pivot);
        if (dr < db) break;
        ExactPoly lr = leading_coeff_in(r, pivot);
        // r <- lb*r - lr*x^(dr-db)*b
        r = lb * r - times_pivot_power(lr * b, pivot, dr - db);
    }
    return r;
}

ExactPoly gcd_univariate_in_pivot(const ExactPoly& a, const ExactPoly& b, int pivot) {
    a.check_same_grading(b);
    ExactPoly one = ExactPoly::constant(a.grading(), RationalComplex(1));
    if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd: both zero");
    ExactPoly p = a, q = b;
    if (p.degree_in(pivot) < q.degree_in(pivot)) std::swap(p, q);
    while (!q.is_zero()) {
        if (q.degree_in(pivot) == 0) return one; // unit in the fraction field
        ExactPoly r = pseudo_rem(p, q, pivot);
        // keep coefficient growth down: primitive part w.r.t. pivot
        if (!r.is_zero()) {
            ExactPoly cont = content_in_pivot(r, pivot);
            if (!cont.is_zero() && cont.total_degree() > 0) r = divide_exact(r, cont);
            r = strip_monomial_content(r);
        }
        p = q;
        q = r;
    }
    ExactPoly cont = content_in_pivot(p, pivot);
    if (!cont.is_zero() && cont.total_degree() > 0) p = divide_exact(p, cont);
    return normalize_leading(p);
}

ExactPoly gcd_mpoly(const ExactPoly& a, const ExactPoly& b) {
    a.check_same_grading(b);
    if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd: both zero");
    if (a.is_zero()) return normalize_leading(b);
    if (b.is_zero()) return normalize_leading(a);
    ExactPoly one = ExactPoly::constant(a.grading(), RationalComplex(1));
    if (a.total_degree() == 0 || b.total_degree() == 0) return one;
    // pick the highest variable present in either
    int pivot = -1;
    for (int v = a.grading().total_vars() - 1; v >= 0; --v) {
        if (a.degree_in(v) > 0 || b.degree_in(v) > 0) { pivot = v; break; }
    }
    if (a.degree_in(pivot) == 0) return gcd_mpoly(content_in_pivot(b, pivot), a);
    if (b.degree_in(pivot) == 0) return gcd_mpoly(content_in_pivot(a, pivot), b);
    ExactPoly ca = content_in_pivot(a, pivot);
    ExactPoly cb = content_in_pivot(b, pivot);
    ExactPoly pa = divide_exact(a, ca);
    ExactPoly pb = divide_exact(b, cb);
    ExactPoly g = gcd_univariate_in_pivot(pa, pb, pivot);
    ExactPoly cg = gcd_mpoly(ca, cb);
    return normalize_leading(cg * g);
}

ExactPoly squarefree_part(const ExactPoly& p, int pivot) {
    if (p.is_zero()) throw std::domain_error("squarefree_part: zero polynomial");
    ExactPoly dp = p.diff(pivot);
    if (dp.is_zero()) return p; // constant in pivot
    ExactPoly g = gcd_univariate_in_pivot(p, dp, pivot);
    if (g.total_degree() == 0) return p;
    return divide_exact(p, g);
}

ExactPoly strip_monomial_content(const ExactPoly& p) {
    if (p.is_zero()) return p;
    int n = p.grading().total_vars();
    Exponents mins(n, 1 << 28);
    for (const auto& [e, c] : p.terms())
        for (int v = 0; v < n; ++v) mins[v] = std::min(mins[v], e[v]);
    bool trivial = true;
    for (int v = 0; v < n; ++v)
        if (mins[v] > 0) trivial = false;
    if (trivial) return p;
    ExactPoly r(p.grading());
    for (const auto& [e, c] : p.terms()) {
        Exponents f = e;
        for (int v = 0; v < n; ++v) f[v] -= mins[v];
        r.add_term(f, c);
    }
    return r;
}

ExactPoly normalize_leading(const ExactPoly& p) {
    if (p.is_zero()) return p;
    RationalComplex lc = p.terms().begin()->second;
    return p.scale(RationalComplex(1) / lc);
}

} // namespace ddlab
