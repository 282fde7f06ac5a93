#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ellgreen {

/// Exact rational from "p/q", an integer, or a decimal such as "-1.25e-3".
inline mpq_class parse_rational(std::string_view text) {
    std::string s(text);
    auto bad = [&] { return std::invalid_argument("not a rational number: '" + s + "'"); };
    if (s.empty()) throw bad();

    if (auto slash = s.find('/'); slash != std::string::npos) {
        mpz_class num, den;
        if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0) throw bad();
        if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }

    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
    std::string digits;
    long scale = 0;
    bool seen_point = false;
    bool seen_digit = false;
    for (; pos < s.size(); ++pos) {
        char ch = s[pos];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits.push_back(ch);
            seen_digit = true;
            if (seen_point) --scale;
        } else if (ch == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!seen_digit) throw bad();
    if (pos < s.size()) {
        if (s[pos] != 'e' && s[pos] != 'E') throw bad();
        std::size_t used = 0;
        long exp10 = 0;
        try {
            exp10 = std::stol(s.substr(pos + 1), &used);
        } catch (const std::exception&) {
            throw bad();
        }
        if (pos + 1 + used != s.size() || exp10 > 100000 || exp10 < -100000) throw bad();
        scale += exp10;
    }

    mpz_class num(digits, 10);
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    mpq_class q = scale < 0 ? mpq_class(num, pow10) : mpq_class(num * pow10);
    q.canonicalize();
    return negative ? mpq_class(-q) : q;
}

/// x - floor(x), exact.
inline mpq_class frac(const mpq_class& x) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    mpq_class r = x - mpq_class(fl);
    r.canonicalize();
    return r;
}

/// Nearest integer, ties rounded up.
inline mpz_class round_nearest(const mpq_class& x) {
    mpq_class shifted = x + mpq_class(1, 2);
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    return fl;
}

inline std::string to_string(const mpq_class& q) { return q.get_str(10); }

}  // namespace ellgreen
