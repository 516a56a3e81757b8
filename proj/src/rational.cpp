// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dnc/rational.hpp"

#include <cctype>
#include <limits>

namespace dnc {

namespace {

__int128 gcd_wide(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(__int128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

[[noreturn]] void bad_number(std::string_view text, const char* why) {
  throw std::invalid_argument("cannot parse number '" + std::string(text) + "': " + why);
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  *this = from_wide(num, den);
}

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = gcd_wide(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (!fits(num) || !fits(den)) throw RationalOverflow("rational arithmetic overflow");
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational operator+(const Rational& a, const Rational& b) {
  if (a.den_ == b.den_) return Rational::from_wide(static_cast<__int128>(a.num_) + b.num_, a.den_);
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                             static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_ - static_cast<__int128>(b.num_) * a.den_,
                             static_cast<__int128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
}

std::int64_t Rational::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::string Rational::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) bad_number(text, "empty");

  auto parse_int = [&](std::string_view digits) -> __int128 {
    bool negative = false;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
      negative = digits.front() == '-';
      digits.remove_prefix(1);
    }
    if (digits.empty()) bad_number(text, "missing digits");
    __int128 v = 0;
    for (char c : digits) {
      if (!std::isdigit(static_cast<unsigned char>(c))) bad_number(text, "unexpected character");
      v = v * 10 + (c - '0');
      if (!fits(v)) bad_number(text, "out of range");
    }
    return negative ? -v : v;
  };

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    __int128 p = parse_int(s.substr(0, slash));
    __int128 q = parse_int(s.substr(slash + 1));
    if (q == 0) bad_number(text, "zero denominator");
    return from_wide(p, q);
  }

  auto dot = s.find('.');
  if (dot == std::string_view::npos) return from_wide(parse_int(s), 1);

  std::string_view whole = s.substr(0, dot);
  std::string_view frac = s.substr(dot + 1);
  if (frac.empty() || frac.front() == '-' || frac.front() == '+') bad_number(text, "malformed decimal");
  bool negative = !whole.empty() && whole.front() == '-';
  if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
  __int128 w = whole.empty() ? 0 : parse_int(whole);
  __int128 f = parse_int(frac);
  __int128 scale = 1;
  for (std::size_t i = 0; i < frac.size(); ++i) {
    scale *= 10;
    if (!fits(scale)) bad_number(text, "too many decimal places");
  }
  __int128 num = w * scale + f;
  if (!fits(num)) bad_number(text, "out of range");
  return from_wide(negative ? -num : num, scale);
}

}  // namespace dnc
