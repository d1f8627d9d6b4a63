#include "ddlab/polycore.hpp"

#include <cctype>
#include <cstdio>
#include <sstream>

namespace ddlab {

std::string rational_to_string(const mpq_class& q) {
    std::string s = q.get_num().get_str();
    if (q.get_den() != 1) s += "/" + q.get_den().get_str();
    return s;
}

std::string coeff_to_string(const RationalComplex& c) {
    if (c.is_zero()) return "0";
    if (c.im == 0) return rational_to_string(c.re);
    std::string im = rational_to_string(abs(c.im)) + "*i";
    if (c.re == 0) return (c.im < 0 ? "-" : "") + im;
    return rational_to_string(c.re) + (c.im < 0 ? "-" : "+") + im;
}

std::string coeff_to_string(const std::complex<double>& c) {
    char buf[80];
    if (c.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.17g", c.real());
        return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g%s%.17g*i", c.real(), c.imag() < 0 ? "-" : "+",
                  std::abs(c.imag()));
    return buf;
}

namespace {

template <class C>
std::string poly_to_string(const MultiPoly<C>& p) {
    if (p.is_zero()) return "(0)";
    const auto& g = p.grading();
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : p.terms()) {
        if (!first) out << " + ";
        first = false;
        out << "(" << coeff_to_string(c) << ")";
        int var = 0;
        for (int b = 0; b < g.nblocks(); ++b) {
            for (int v = 0; v < g.blocks[b].nvars; ++v, ++var) {
                if (e[var] == 0) continue;
                out << "*x" << b << "_" << v << "^" << e[var];
            }
        }
    }
    return out.str();
}

struct Cursor {
    const std::string& s;
    size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() { skip_ws(); return i >= s.size(); }
    char peek() { skip_ws(); return i < s.size() ? s[i] : '\0'; }
    char take() { skip_ws(); return s[i++]; }
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("polynomial parse error at position " + std::to_string(i) +
                                    ": " + what);
    }
};

mpz_class parse_integer(Cursor& c) {
    c.skip_ws();
    size_t start = c.i;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
    if (c.i == start) c.fail("expected integer");
    return mpz_class(c.s.substr(start, c.i - start));
}

mpq_class parse_rational(Cursor& c) {
    mpz_class num = parse_integer(c);
    if (c.peek() == '/') {
        c.take();
        mpz_class den = parse_integer(c);
        if (den == 0) c.fail("zero denominator");
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }
    return mpq_class(num);
}

// a/b + c/d*i style expression, already inside parentheses (or a bare atom)
RationalComplex parse_coeff_body(Cursor& c, char stop) {
    RationalComplex acc;
    bool any = false;
    while (true) {
        char p = c.peek();
        if (p == stop || p == '\0') break;
        int sign = 1;
        while (c.peek() == '+' || c.peek() == '-') {
            if (c.take() == '-') sign = -sign;
        }
        RationalComplex part;
        if (c.peek() == 'i') {
            c.take();
            part = rc_i();
        } else {
            mpq_class q = parse_rational(c);
            if (c.peek() == '*') {
                size_t save = c.i;
                c.take();
                if (c.peek() == 'i') {
                    c.take();
                    part = RationalComplex(mpq_class(0), q);
                } else {
                    c.i = save; // the '*' belongs to the monomial
                    part = RationalComplex(q);
                }
            } else {
                part = RationalComplex(q);
            }
        }
        if (sign < 0) part = -part;
        acc += part;
        any = true;
        if (stop == '\0') break; // bare atom: single summand only
    }
    if (!any) c.fail("empty coefficient");
    return acc;
}

} // namespace

std::string to_string(const ExactPoly& p) { return poly_to_string(p); }
std::string to_string(const FloatPoly& p) { return poly_to_string(p); }

ExactPoly parse_exact_poly(const std::string& text, const BlockGrading& g) {
    ExactPoly result(g);
    Cursor c{text};
    if (c.done()) throw std::invalid_argument("empty polynomial text");
    while (!c.done()) {
        int sign = 1;
        while (c.peek() == '+' || c.peek() == '-') {
            if (c.take() == '-') sign = -sign;
        }
        RationalComplex coeff(1);
        Exponents e(g.total_vars(), 0);
        bool expect_factor = true;
        while (expect_factor) {
            char p = c.peek();
            if (p == '(') {
                c.take();
                coeff *= parse_coeff_body(c, ')');
                if (c.take() != ')') c.fail("expected ')'");
            } else if (p == 'x') {
                c.take();
                mpz_class blk = parse_integer(c);
                if (c.take() != '_') c.fail("expected '_' in variable");
                mpz_class idx = parse_integer(c);
                int b = static_cast<int>(blk.get_si());
                int v = static_cast<int>(idx.get_si());
                if (b < 0 || b >= g.nblocks() || v < 0 || v >= g.blocks[b].nvars)
                    c.fail("variable out of range for grading");
                int exp = 1;
                if (c.peek() == '^') {
                    c.take();
                    exp = static_cast<int>(parse_integer(c).get_si());
                    if (exp < 0) c.fail("negative exponent");
                }
                e[g.var_index(b, v)] += exp;
            } else if (std::isdigit(static_cast<unsigned char>(p)) || p == 'i') {
                coeff *= parse_coeff_body(c, '\0');
            } else {
                c.fail("expected factor");
            }
            if (c.peek() == '*') {
                c.take();
            } else {
                expect_factor = false;
            }
        }
        if (sign < 0) coeff = -coeff;
        result.add_term(e, coeff);
        char p = c.peek();
        if (p != '+' && p != '-' && p != '\0') c.fail("expected '+' or '-' between terms");
    }
    return result;
}

} // namespace ddlab
