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

#include <cmath>
#include <sstream>

#include "dnc/enumerate.hpp"
#include "dnc/format.hpp"
#include "oracles.hpp"

using namespace dnc;

namespace {

Alphabet binary(Rational w0, Rational w1) { return {{"0", w0}, {"1", w1}}; }

std::vector<BigInt> counts_of(const WeightSpectrum& s) {
  std::vector<BigInt> out;
  for (const auto& e : s.entries) out.push_back(e.count);
  return out;
}

std::vector<Rational> weights_of(const WeightSpectrum& s) {
  std::vector<Rational> out;
  for (const auto& e : s.entries) out.push_back(e.weight);
  return out;
}

}  // namespace

TEST_CASE("weight_spectrum examples") {
  auto s = weight_spectrum(make_memoryless(binary(1, 1)), Rational(4));
  CHECK(weights_of(s) == std::vector<Rational>{1, 2, 3, 4});
  CHECK(counts_of(s) == std::vector<BigInt>{2, 4, 8, 16});

  s = weight_spectrum(make_memoryless(binary(1, 2)), Rational(4));
  CHECK(weights_of(s) == std::vector<Rational>{1, 2, 3, 4});
  CHECK(counts_of(s) == std::vector<BigInt>{1, 2, 3, 5});

  s = weight_spectrum(make_dyck_prefix(), Rational(4));
  CHECK(counts_of(s) == std::vector<BigInt>{1, 2, 3, 6});
}

TEST_CASE("weight_spectrum errors") {
  CHECK_THROWS_AS(weight_spectrum(make_memoryless({{"a", Weight::real(std::sqrt(2.0))}}), Rational(3)), ModelError);
  CHECK_THROWS_AS(weight_spectrum(make_dyck_prefix(), Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(weight_spectrum(make_dyck_prefix(), Rational(60), SpectrumOptions{5}), BudgetExceeded);
}

TEST_CASE("weight_spectrum equals brute-force string generation") {
  struct Case {
    BranchSystem system;
    Alphabet alphabet;
    oracle::Predicate accept;
  };
  const Alphabet parens{{"(", 1}, {")", 1}};
  std::vector<Case> cases{
      {make_memoryless(binary(1, 1)), binary(1, 1), oracle::accept_all},
      {make_memoryless(binary(1, 2)), binary(1, 2), oracle::accept_all},
      {make_memoryless(binary(Rational(1, 3), Rational(1, 2))), binary(Rational(1, 3), Rational(1, 2)),
       oracle::accept_all},
      {make_dyck_prefix(), parens, oracle::dyck_prefix},
      {fsm_to_branch_system(make_golden_mean()), binary(1, 1), oracle::golden_mean},
      {fsm_to_branch_system(make_rll(1, 3)), binary(1, 1), oracle::rll(1, 3)},
      {fsm_to_branch_system(make_rll(0, 1)), binary(1, 1), oracle::rll(0, 1)},
  };
  for (const auto& c : cases) {
    const Rational w_max = c.alphabet[0].weight.exact()->den() == 1 ? Rational(12) : Rational(5);
    const auto spectrum = weight_spectrum(c.system, w_max);
    const auto expected = oracle::brute_force_counts(c.alphabet, w_max, c.accept);
    REQUIRE(spectrum.entries.size() == expected.size());
    std::size_t i = 0;
    for (const auto& [w, n] : expected) {
      CHECK(spectrum.entries[i].weight == w);
      CHECK(spectrum.entries[i].count == n);
      ++i;
    }
  }
}

TEST_CASE("spectrum invariants") {
  for (const auto& sys : {make_dyck_prefix(), fsm_to_branch_system(make_rll(2, 5)),
                          make_memoryless({{"a", Rational(1, 4)}, {"b", Rational(3, 2)}, {"c", 4}})}) {
    const auto s = weight_spectrum(sys, Rational(15));
    BigInt cumulative = 0, previous = 0;
    for (std::size_t i = 0; i < s.entries.size(); ++i) {
      if (i) CHECK(s.entries[i - 1].weight < s.entries[i].weight);
      CHECK(s.entries[i].count >= 1);
      CHECK(s.entries[i].weight <= s.w_max);
      cumulative += s.entries[i].count;
      CHECK(cumulative >= previous);
      previous = cumulative;
    }
  }
}

TEST_CASE("transfer-matrix consistency for integer-weight FSMs") {
  for (const auto& fsm : {make_golden_mean(), make_rll(1, 3), make_rll(2, 7), make_rll(0, 2)}) {
    const auto s = weight_spectrum(fsm_to_branch_system(fsm), Rational(30));
    const auto expected = oracle::transfer_counts(fsm, 30);
    REQUIRE(s.entries.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(s.entries[i].count == expected[i]);
  }
}

TEST_CASE("weights_below counts distinct weights under each integer") {
  auto s = weight_spectrum(make_memoryless(binary(Rational(1, 3), Rational(1, 2))), Rational(2));
  // below 1: 1/3, 1/2, 2/3, 5/6; below 2 adds 1 .. 11/6 on the 1/6 grid.
  CHECK(weights_below(s) == std::vector<std::int64_t>{4, 10});
}

TEST_CASE("density_check") {
  SUBCASE("integer weights with L=1, K=1") {
    auto r = density_check(weight_spectrum(make_memoryless(binary(1, 1)), Rational(64)), {1.0, 1.0});
    CHECK(r.passes);
    CHECK(r.n_range.size() == 64);
  }
  SUBCASE("1/6 grid with L=6, K=1") {
    auto r = density_check(weight_spectrum(make_memoryless(binary(Rational(1, 3), Rational(1, 2))), Rational(20)),
                           {6.0, 1.0});
    CHECK(r.passes);
  }
  SUBCASE("too dense: ceil(1.5^n) weights below n") {
    // Unit counts, weights spread over [n-1, n) so exactly ceil(1.5^n) lie below n.
    WeightSpectrum s;
    s.w_max = Rational(24);
    std::int64_t placed = 0;
    for (int n = 1; n <= 24; ++n) {
      const auto target = static_cast<std::int64_t>(std::ceil(std::pow(1.5, n)));
      const std::int64_t fresh = target - placed;
      for (std::int64_t j = 0; j < fresh; ++j) s.entries.push_back({Rational(n - 1) + Rational(j, fresh), 1});
      placed = target;
    }
    auto r = density_check(s);
    for (std::size_t i = 0; i < r.n_range.size(); ++i) {
      CHECK(r.k_of_n[i] == static_cast<std::int64_t>(std::ceil(std::pow(1.5, r.n_range[i]))));
    }
    CHECK_FALSE(r.passes);
    CHECK(r.fitted_K > 8.0);
    CHECK_FALSE(density_check(s, {1.0, 1.0}).passes);
    CHECK_FALSE(density_check(s, {10.0, 2.0}).passes);
    // Its combinatorial capacity is zero anyway: every count is 1.
    CHECK(empirical_capacity(s).estimate.value == 0.0);
  }
  SUBCASE("k_of_n is nondecreasing and auto-fit stays low on builtins") {
    for (const auto& sys : {make_dyck_prefix(), fsm_to_branch_system(make_rll(1, 3)), make_memoryless(binary(1, 2))}) {
      auto r = density_check(weight_spectrum(sys, Rational(40)));
      CHECK(std::is_sorted(r.k_of_n.begin(), r.k_of_n.end()));
      CHECK(r.passes);
      CHECK(r.fitted_K <= 2.0);
      for (std::size_t i = 0; i < r.n_range.size(); ++i) {
        CHECK(static_cast<double>(r.k_of_n[i]) <= r.fitted_L * std::pow(double(r.n_range[i]), r.fitted_K) * (1 + 1e-12));
      }
    }
  }
}

TEST_CASE("empirical_capacity examples") {
  auto e = empirical_capacity(weight_spectrum(make_memoryless(binary(1, 1)), Rational(30)));
  for (double c : e.sequence) CHECK(c == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(e.estimate.value == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(e.estimate.method == Method::empirical);

  e = empirical_capacity(weight_spectrum(make_memoryless({{"a", 1}}), Rational(10)));
  for (double c : e.sequence) CHECK(c == 0.0);
  CHECK(e.estimate.value == 0.0);

  e = empirical_capacity(weight_spectrum(make_dyck_prefix(), Rational(40)));
  CHECK(e.estimate.value >= 0.63);
  CHECK(e.estimate.value <= std::log(2.0));
  CHECK(e.sequence.back() == doctest::Approx(oracle::log_big(oracle::binomial(40, 20)) / 40).epsilon(1e-14));
  CHECK(e.estimate.lo <= e.estimate.value);

  WeightSpectrum tiny;
  tiny.w_max = 1;
  tiny.entries.push_back({1, 2});
  CHECK_THROWS_AS(empirical_capacity(tiny), std::invalid_argument);
}

TEST_CASE("ternary unit alphabet has constant c_k") {
  auto e = empirical_capacity(weight_spectrum(make_memoryless({{"a", 1}, {"b", 1}, {"c", 1}}), Rational(20)));
  for (double c : e.sequence) CHECK(c == doctest::Approx(std::log(3.0)).epsilon(1e-14));
}

TEST_CASE("log_big beyond double range") {
  BigInt v = 1;
  v <<= 5000;
  CHECK(log_big(v) == doctest::Approx(5000 * std::log(2.0)).epsilon(1e-14));
  CHECK(log_big(BigInt(1)) == 0.0);
}

TEST_CASE("spectrum TSV") {
  std::ostringstream out;
  write_spectrum_tsv(out, weight_spectrum(make_memoryless(binary(1, 2)), Rational(3)));
  CHECK(out.str() == "weight\tcount\tc_k\n"
                     "1/1\t1\t0\n"
                     "2/1\t2\t" + format_double(std::log(2.0) / 2) + "\n"
                     "3/1\t3\t" + format_double(std::log(3.0) / 3) + "\n");
}
