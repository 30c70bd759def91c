// Copyright 2026 The clonestab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "clonestab/rational.hpp"

#include <cstdlib>
#include <limits>

#include "clonestab/error.hpp"

namespace clonestab {

namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
    if (a < 0)
        a = -a;
    if (b < 0)
        b = -b;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational reduce(i128 num, i128 den) {
    if (den == 0)
        fail(ErrorKind::Domain, "rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    constexpr i128 lim = std::numeric_limits<std::int64_t>::max();
    if (num > lim || num < -lim || den > lim)
        fail(ErrorKind::Domain, "rational overflow");
    return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0)
        fail(ErrorKind::Domain, "rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    num_ = num;
    den_ = den;
}

Rational operator+(const Rational& a, const Rational& b) {
    return reduce(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
    return reduce(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
    return reduce(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0)
        fail(ErrorKind::Domain, "rational division by zero");
    return reduce(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
}

Rational Rational::parse_decimal(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        negative = s[0] == '-';
        s.remove_prefix(1);
    }
    if (s.empty())
        fail(ErrorKind::Data, "malformed decimal '" + std::string(text) + "'");
    i128 num = 0;
    i128 den = 1;
    bool seen_point = false;
    bool seen_digit = false;
    for (char c : s) {
        if (c == '.' && !seen_point) {
            seen_point = true;
            continue;
        }
        if (c < '0' || c > '9')
            fail(ErrorKind::Data, "malformed decimal '" + std::string(text) + "'");
        seen_digit = true;
        num = num * 10 + (c - '0');
        if (seen_point)
            den *= 10;
        if (num > i128(std::numeric_limits<std::int64_t>::max()) || den > i128(1'000'000'000'000'000'000))
            fail(ErrorKind::Data, "decimal out of range '" + std::string(text) + "'");
    }
    if (!seen_digit)
        fail(ErrorKind::Data, "malformed decimal '" + std::string(text) + "'");
    return reduce(negative ? -num : num, den);
}

std::string Rational::to_decimal(int digits) const {
    i128 scale = 1;
    for (int i = 0; i < digits; ++i)
        scale *= 10;
    i128 n = num_;
    bool negative = n < 0;
    if (negative)
        n = -n;
    i128 scaled = (n * scale * 2 + den_) / (2 * i128(den_));  // round half up on magnitude
    i128 whole = scaled / scale;
    i128 frac = scaled % scale;

    auto to_str = [](i128 v) {
        if (v == 0)
            return std::string("0");
        std::string s;
        while (v > 0) {
            s.insert(s.begin(), static_cast<char>('0' + int(v % 10)));
            v /= 10;
        }
        return s;
    };

    std::string out = (negative && scaled != 0 ? "-" : "") + to_str(whole);
    if (frac != 0) {
        std::string f = to_str(frac);
        f.insert(f.begin(), static_cast<std::size_t>(digits) - f.size(), '0');
        while (!f.empty() && f.back() == '0')
            f.pop_back();
        out += "." + f;
    }
    return out;
}

}  // namespace clonestab
