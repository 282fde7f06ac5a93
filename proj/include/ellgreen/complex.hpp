#pragma once

#include "ellgreen/scalar.hpp"

#include <ostream>
#include <utility>

namespace ellgreen {

/// Minimal complex type over any scalar of the `math` overload set.
/// (`std::complex` is only specified for the built-in floating types.)
template <class R>
struct Complex {
    R re;
    R im;

    Complex() = default;
    Complex(R re_, R im_) : re(std::move(re_)), im(std::move(im_)) {}

    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex& operator*=(const Complex& o) {
        R r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Complex& operator/=(const Complex& o) {
        R d = o.re * o.re + o.im * o.im;
        R r = (re * o.re + im * o.im) / d;
        im = (im * o.re - re * o.im) / d;
        re = std::move(r);
        return *this;
    }
    Complex& operator*=(const R& s) {
        re *= s;
        im *= s;
        return *this;
    }
    Complex& operator/=(const R& s) {
        re /= s;
        im /= s;
        return *this;
    }

    Complex operator-() const { return Complex(-re, -im); }
};

template <class R>
Complex<R> operator+(Complex<R> a, const Complex<R>& b) {
    return a += b;
}
template <class R>
Complex<R> operator-(Complex<R> a, const Complex<R>& b) {
    return a -= b;
}
template <class R>
Complex<R> operator*(Complex<R> a, const Complex<R>& b) {
    return a *= b;
}
template <class R>
Complex<R> operator/(Complex<R> a, const Complex<R>& b) {
    return a /= b;
}
template <class R>
Complex<R> operator*(Complex<R> a, const R& s) {
    return a *= s;
}
template <class R>
Complex<R> operator*(const R& s, Complex<R> a) {
    return a *= s;
}
template <class R>
Complex<R> operator/(Complex<R> a, const R& s) {
    return a /= s;
}

template <class R>
Complex<R> conj(const Complex<R>& z) {
    return Complex<R>(z.re, -z.im);
}

/// |z|^2
template <class R>
R norm(const Complex<R>& z) {
    return z.re * z.re + z.im * z.im;
}

template <class R>
R abs(const Complex<R>& z) {
    return math::hypot(z.re, z.im);
}

template <class R>
R arg(const Complex<R>& z) {
    return math::atan2(z.im, z.re);
}

/// e^{i theta}
template <class R>
Complex<R> cis(const R& theta) {
    return Complex<R>(math::cos(theta), math::sin(theta));
}

template <class R>
Complex<R> exp(const Complex<R>& z) {
    R m = math::exp(z.re);
    return Complex<R>(m * math::cos(z.im), m * math::sin(z.im));
}

/// sin(z) = sin x cosh y + i cos x sinh y; accurate for small |z|.
template <class R>
Complex<R> sin(const Complex<R>& z) {
    return Complex<R>(math::sin(z.re) * math::cosh(z.im), math::cos(z.re) * math::sinh(z.im));
}

/// Principal logarithm.
template <class R>
Complex<R> log(const Complex<R>& z) {
    return Complex<R>(math::log(abs(z)), arg(z));
}

/// Integer power by repeated squaring; n may be negative.
template <class R>
Complex<R> pow(Complex<R> z, long n) {
    if (n < 0) {
        Complex<R> one(z.re * 0 + 1, z.im * 0);
        return pow(one / z, -n);
    }
    Complex<R> result(z.re * 0 + 1, z.im * 0);
    while (n > 0) {
        if (n & 1) result *= z;
        z *= z;
        n >>= 1;
    }
    return result;
}

template <class R>
std::ostream& operator<<(std::ostream& os, const Complex<R>& z) {
    return os << '(' << z.re << ", " << z.im << ')';
}

}  // namespace ellgreen
