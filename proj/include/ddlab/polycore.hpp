#pragma once

#include "ddlab/rational_complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ddlab {

// One block of projective variables per factor of the ambient product space.
struct BlockGrading {
    struct Block {
        std::string name;
        int nvars = 0;
    };
    std::vector<Block> blocks;

    BlockGrading() = default;
    explicit BlockGrading(std::vector<Block> b) : blocks(std::move(b)) { validate(); }

    static BlockGrading single(int nvars, std::string name = "x0") {
        return BlockGrading({{std::move(name), nvars}});
    }
    static BlockGrading uniform(int nblocks, int nvars) {
        std::vector<Block> b;
        for (int i = 0; i < nblocks; ++i) b.push_back({"x" + std::to_string(i), nvars});
        return BlockGrading(std::move(b));
    }

    void validate() const {
        if (blocks.empty()) throw std::invalid_argument("BlockGrading: no blocks");
        for (const auto& b : blocks)
            if (b.nvars < 1) throw std::invalid_argument("BlockGrading: nonpositive block size");
        for (size_t i = 0; i < blocks.size(); ++i)
            for (size_t j = i + 1; j < blocks.size(); ++j)
                if (blocks[i].name == blocks[j].name)
                    throw std::invalid_argument("BlockGrading: duplicate block name");
    }

    int nblocks() const { return static_cast<int>(blocks.size()); }
    int total_vars() const {
        int n = 0;
        for (const auto& b : blocks) n += b.nvars;
        return n;
    }
    // global index of variable v in block b
    int var_index(int block, int v) const {
        int off = 0;
        for (int i = 0; i < block; ++i) off += blocks[i].nvars;
        return off + v;
    }
    int block_of_var(int var) const {
        int off = 0;
        for (int i = 0; i < nblocks(); ++i) {
            off += blocks[i].nvars;
            if (var < off) return i;
        }
        throw std::out_of_range("BlockGrading: variable index");
    }
    bool operator==(const BlockGrading& o) const {
        if (blocks.size() != o.blocks.size()) return false;
        for (size_t i = 0; i < blocks.size(); ++i)
            if (blocks[i].name != o.blocks[i].name || blocks[i].nvars != o.blocks[i].nvars)
                return false;
        return true;
    }
};

using Exponents = std::vector<int>;

// graded-lex: total degree first, then lexicographic; gives the canonical term order
struct GradedLex {
    bool operator()(const Exponents& a, const Exponents& b) const {
        int da = std::accumulate(a.begin(), a.end(), 0);
        int db = std::accumulate(b.begin(), b.end(), 0);
        if (da != db) return da > db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                            [](int x, int y) { return x > y; });
    }
};

// Sparse block-graded multivariate polynomial. Coefficient type is either
// RationalComplex (exact) or std::complex<double> (float).
template <class C>
class MultiPoly {
public:
    using Coeff = C;
    using TermMap = std::map<Exponents, C, GradedLex>;

    MultiPoly() = default;
    explicit MultiPoly(BlockGrading g) : grading_(std::move(g)) {}

    const BlockGrading& grading() const { return grading_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    static MultiPoly constant(const BlockGrading& g, const C& c) {
        MultiPoly p(g);
        p.add_term(Exponents(g.total_vars(), 0), c);
        return p;
    }
    static MultiPoly variable(const BlockGrading& g, int block, int v, const C& c = C(1)) {
        MultiPoly p(g);
        Exponents e(g.total_vars(), 0);
        e[g.var_index(block, v)] = 1;
        p.add_term(e, c);
        return p;
    }

    void add_term(const Exponents& e, const C& c) {
        if (static_cast<int>(e.size()) != grading_.total_vars())
            throw std::invalid_argument("MultiPoly: exponent length mismatch");
        for (int x : e)
            if (x < 0) throw std::invalid_argument("MultiPoly: negative exponent");
        if (coeff_is_zero(c)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (coeff_is_zero(it->second)) terms_.erase(it);
        }
    }

    MultiPoly operator+(const MultiPoly& o) const {
        check_same_grading(o);
        MultiPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }
    MultiPoly operator-(const MultiPoly& o) const {
        check_same_grading(o);
        MultiPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
        return r;
    }
    MultiPoly operator-() const {
        MultiPoly r(grading_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }
    MultiPoly operator*(const MultiPoly& o) const {
        check_same_grading(o);
        MultiPoly r(grading_);
        for (const auto& [ea, ca] : terms_) {
            for (const auto& [eb, cb] : o.terms_) {
                Exponents e(ea.size());
                for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    MultiPoly scale(const C& c) const {
        MultiPoly r(grading_);
        if (coeff_is_zero(c)) return r;
        for (const auto& [e, k] : terms_) r.add_term(e, k * c);
        return r;
    }

    bool operator==(const MultiPoly& o) const {
        return grading_ == o.grading_ && terms_ == o.terms_;
    }

    // formal partial derivative
    MultiPoly diff(int var) const {
        if (var < 0 || var >= grading_.total_vars())
            throw std::out_of_range("MultiPoly::diff: variable index");
        MultiPoly r(grading_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponents f = e;
            f[var] -= 1;
            r.add_term(f, c * C(e[var]));
        }
        return r;
    }

    // Evaluate over any commutative ring V; `vals` holds one value per variable.
    template <class V>
    V eval_generic(const std::vector<V>& vals, const V& one) const {
        if (static_cast<int>(vals.size()) != grading_.total_vars())
            throw std::invalid_argument("MultiPoly::eval: dimension mismatch");
        V acc = one - one; // zero
        for (const auto& [e, c] : terms_) {
            V t = apply_coeff<V>(one, c);
            for (size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) t = t * vals[i];
            acc = acc + t;
        }
        return acc;
    }

    C eval(const std::vector<C>& vals) const { return eval_generic<C>(vals, C(1)); }

    std::complex<double> eval_complex(const std::vector<std::complex<double>>& vals) const {
        if (static_cast<int>(vals.size()) != grading_.total_vars())
            throw std::invalid_argument("MultiPoly::eval: dimension mismatch");
        std::complex<double> acc = 0.0;
        for (const auto& [e, c] : terms_) {
            std::complex<double> t = coeff_to_complex(c);
            for (size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) t *= vals[i];
            acc += t;
        }
        return acc;
    }

    // per-block degree of a single term
    std::vector<int> block_degrees(const Exponents& e) const {
        std::vector<int> d(grading_.nblocks(), 0);
        int var = 0;
        for (int b = 0; b < grading_.nblocks(); ++b)
            for (int v = 0; v < grading_.blocks[b].nvars; ++v, ++var) d[b] += e[var];
        return d;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        auto d0 = block_degrees(terms_.begin()->first);
        for (const auto& [e, c] : terms_)
            if (block_degrees(e) != d0) return false;
        return true;
    }

    // per-block degree vector; requires per-block homogeneity
    std::vector<int> multidegree() const {
        if (terms_.empty()) throw std::domain_error("multidegree: zero polynomial");
        auto d0 = block_degrees(terms_.begin()->first);
        for (const auto& [e, c] : terms_)
            if (block_degrees(e) != d0)
                throw std::domain_error("multidegree: polynomial is not per-block homogeneous");
        return d0;
    }

    // max degree in a single variable
    int degree_in(int var) const {
        int d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
        return d;
    }
    int total_degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_)
            d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
        return d;
    }

    // Substitute block variables by M-linear combinations: result(x) = p(M x) on
    // that block, other blocks untouched. M is row-major, size nv x nv.
    MultiPoly compose_linear(int block, const std::vector<C>& M) const {
        int nv = grading_.blocks.at(block).nvars;
        if (static_cast<int>(M.size()) != nv * nv)
            throw std::invalid_argument("compose_linear: matrix size mismatch");
        std::vector<MultiPoly> vals;
        vals.reserve(grading_.total_vars());
        for (int b = 0; b < grading_.nblocks(); ++b) {
            for (int v = 0; v < grading_.blocks[b].nvars; ++v) {
                if (b != block) {
                    vals.push_back(variable(grading_, b, v));
                } else {
                    MultiPoly lin(grading_);
                    for (int k = 0; k < nv; ++k) {
                        if (coeff_is_zero(M[v * nv + k])) continue;
                        lin = lin + variable(grading_, b, k, M[v * nv + k]);
                    }
                    vals.push_back(lin);
                }
            }
        }
        MultiPoly one = constant(grading_, C(1));
        return eval_generic<MultiPoly>(vals, one);
    }

    void check_same_grading(const MultiPoly& o) const {
        if (!(grading_ == o.grading_))
            throw std::invalid_argument("MultiPoly: grading mismatch");
    }

private:
    // c * one, for each ring we evaluate into
    template <class V>
    static V apply_coeff(const V& one, const C& c) {
        if constexpr (std::is_same_v<V, C>) {
            return c;
        } else if constexpr (std::is_same_v<V, std::complex<double>>) {
            return coeff_to_complex(c);
        } else {
            return one.scale(c);
        }
    }

    BlockGrading grading_;
    TermMap terms_;
};

// eval_generic needs MultiPoly to act as its own ring element
template <class C>
MultiPoly<C> operator*(const C& c, const MultiPoly<C>& p) { return p.scale(c); }

using ExactPoly = MultiPoly<RationalComplex>;
using FloatPoly = MultiPoly<std::complex<double>>;

inline FloatPoly to_float(const ExactPoly& p) {
    FloatPoly r(p.grading());
    for (const auto& [e, c] : p.terms()) r.add_term(e, c.to_complex());
    return r;
}

// --- text format (see polyio.cpp) ---
std::string to_string(const ExactPoly& p);
std::string to_string(const FloatPoly& p);
ExactPoly parse_exact_poly(const std::string& text, const BlockGrading& g);

} // namespace ddlab
