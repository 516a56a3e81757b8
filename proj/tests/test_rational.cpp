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

#include <doctest.h>

#include <limits>
#include <random>

#include "dnc/rational.hpp"

using dnc::Rational;

TEST_CASE("parse fractions and decimals exactly") {
  CHECK(Rational::parse("3/10") == Rational(3, 10));
  CHECK(Rational::parse("0.3") == Rational(3, 10));
  CHECK(Rational::parse(" 1.25 ") == Rational(5, 4));
  CHECK(Rational::parse("2") == Rational(2));
  CHECK(Rational::parse("6/4") == Rational(3, 2));
  CHECK(Rational::parse(".5") == Rational(1, 2));
  CHECK(Rational::parse("-1/2") == Rational(-1, 2));
}

TEST_CASE("parse rejects garbage") {
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1e5"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("99999999999999999999"), std::invalid_argument);
}

TEST_CASE("formatting and floor") {
  CHECK(Rational(4).to_string() == "4/1");
  CHECK(Rational(2, 6).to_string() == "1/3");
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(6, 3).floor() == 2);
}

TEST_CASE("overflow is reported, not wrapped") {
  const Rational big(std::numeric_limits<std::int64_t>::max());
  CHECK_THROWS_AS(big + big, dnc::RationalOverflow);
  CHECK_THROWS_AS(big * Rational(2), dnc::RationalOverflow);
}

TEST_CASE("field axioms on random small rationals") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 30);
  for (int i = 0; i < 500; ++i) {
    Rational a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - b) + b == a);
    CHECK(((a < b) == (a.to_double() < b.to_double()) || a.to_double() == b.to_double()));
    CHECK(Rational::parse(a.to_string()) == a);
  }
}
