#pragma once

#include <complex>
#include <cstdint>
#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace ddlab {

// Element of Q(i): exact rational real and imaginary parts.
struct RationalComplex {
    mpq_class re;
    mpq_class im;

    RationalComplex() : re(0), im(0) {}
    RationalComplex(long r) : re(r), im(0) {}
    RationalComplex(const mpq_class& r) : re(r), im(0) {}
    RationalComplex(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    RationalComplex operator-() const { return {-re, -im}; }
    RationalComplex operator+(const RationalComplex& o) const { return {re + o.re, im + o.im}; }
    RationalComplex operator-(const RationalComplex& o) const { return {re - o.re, im - o.im}; }
    RationalComplex operator*(const RationalComplex& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    RationalComplex operator/(const RationalComplex& o) const {
        mpq_class n = o.re * o.re + o.im * o.im;
        if (n == 0) throw std::domain_error("RationalComplex: division by zero");
        return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
    }
    RationalComplex& operator+=(const RationalComplex& o) { re += o.re; im += o.im; return *this; }
    RationalComplex& operator-=(const RationalComplex& o) { re -= o.re; im -= o.im; return *this; }
    RationalComplex& operator*=(const RationalComplex& o) { *this = *this * o; return *this; }
    RationalComplex& operator/=(const RationalComplex& o) { *this = *this / o; return *this; }
    bool operator==(const RationalComplex& o) const { return re == o.re && im == o.im; }
    bool operator!=(const RationalComplex& o) const { return !(*this == o); }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

inline RationalComplex rc_i() { return {mpq_class(0), mpq_class(1)}; }

// Coefficient concept shims so MultiPoly can be generic over
// RationalComplex and std::complex<double>.
inline bool coeff_is_zero(const RationalComplex& c) { return c.is_zero(); }
inline bool coeff_is_zero(const std::complex<double>& c) {
    return c.real() == 0.0 && c.imag() == 0.0;
}
inline std::complex<double> coeff_to_complex(const RationalComplex& c) { return c.to_complex(); }
inline std::complex<double> coeff_to_complex(const std::complex<double>& c) { return c; }

std::string rational_to_string(const mpq_class& q);
std::string coeff_to_string(const RationalComplex& c);
std::string coeff_to_string(const std::complex<double>& c);

} // namespace ddlab
