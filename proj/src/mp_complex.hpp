#pragma once

#include <cmath>
#include <complex>

#include <gmpxx.h>

#include "thetadet/rational.hpp"

namespace thetadet {

inline constexpr mp_bitcnt_t kMpBits = 256;

// Minimal complex arithmetic over GMP floats.
struct MpComplex {
  mpf_class re{0, kMpBits};
  mpf_class im{0, kMpBits};

  MpComplex() = default;
  MpComplex(double r) : re(r, kMpBits) {}  // NOLINT
  MpComplex(const mpf_class& r, const mpf_class& i) : re(r, kMpBits), im(i, kMpBits) {}
  explicit MpComplex(std::complex<double> z) : re(z.real(), kMpBits), im(z.imag(), kMpBits) {}
  explicit MpComplex(const Rational& r) : re(r, kMpBits) {}

  MpComplex& operator+=(const MpComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  MpComplex& operator-=(const MpComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  MpComplex& operator*=(const MpComplex& o) {
    mpf_class r(re * o.re - im * o.im, kMpBits);
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
  MpComplex& operator/=(const MpComplex& o) {
    const mpf_class d(o.re * o.re + o.im * o.im, kMpBits);
    mpf_class r((re * o.re + im * o.im) / d, kMpBits);
    im = (im * o.re - re * o.im) / d;
    re = r;
    return *this;
  }
  MpComplex operator-() const { return MpComplex(-re, -im); }
  bool operator==(const MpComplex& o) const { return re == o.re && im == o.im; }

  std::complex<double> to_double() const { return {re.get_d(), im.get_d()}; }
};

inline MpComplex operator+(MpComplex a, const MpComplex& b) { return a += b; }
inline MpComplex operator-(MpComplex a, const MpComplex& b) { return a -= b; }
inline MpComplex operator*(MpComplex a, const MpComplex& b) { return a *= b; }
inline MpComplex operator/(MpComplex a, const MpComplex& b) { return a /= b; }

inline double cabs(const MpComplex& z) {
  long exp_re = 0, exp_im = 0;
  const double mr = mpf_get_d_2exp(&exp_re, z.re.get_mpf_t());
  const double mi = mpf_get_d_2exp(&exp_im, z.im.get_mpf_t());
  return std::hypot(std::ldexp(mr, static_cast<int>(exp_re)), std::ldexp(mi, static_cast<int>(exp_im)));
}

}  // namespace thetadet
