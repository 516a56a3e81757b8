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

#include "dnc/verify.hpp"
#include "oracles.hpp"

using namespace dnc;

namespace {

const double kLn2 = std::log(2.0);

Alphabet binary(Rational w0, Rational w1) { return {{"0", w0}, {"1", w1}}; }

VerifyOptions with_tol(double tol) {
  VerifyOptions o;
  o.tol = tol;
  return o;
}

}  // namespace

TEST_CASE("memoryless systems pass at tight tolerance") {
  auto r = verify_equality(make_memoryless(binary(1, 1)), with_tol(1e-9));
  CHECK(r.verdict == Verdict::pass);
  CHECK(std::abs(r.c_comb.value - kLn2) < 1e-9);
  CHECK(std::abs(r.c_prob.value - kLn2) < 1e-9);
  CHECK(r.ae_pass);
  CHECK(r.io_pass);

  r = verify_equality(make_memoryless(binary(1, 2)), with_tol(1e-9));
  CHECK(r.verdict == Verdict::pass);
  CHECK(std::abs(r.c_comb.value - 0.4812118250596035) < 1e-9);
  CHECK(r.difference < 1e-9);
  CHECK(r.comb_trajectory.size() == 40);
  CHECK(r.prob_trajectory.size() == 40);
}

TEST_CASE("irrational weights skip the spectrum but still verify") {
  const auto r = verify_equality(make_memoryless({{"a", Weight::real(std::sqrt(2.0))}, {"b", 1}}), with_tol(1e-9));
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.comb_trajectory.empty());
}

TEST_CASE("dyck prefixes at desk scale") {
  VerifyOptions o;
  o.w_max = 40;
  o.l_max = 40;
  o.tol = 0.06;
  const auto r = verify_equality(make_dyck_prefix(), o);
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.c_comb.method == Method::abscissa);
  REQUIRE(r.prob_trajectory.size() == 40);
  REQUIRE(r.comb_trajectory.size() == 40);
  for (std::size_t i = 1; i < 40; ++i) {
    CHECK(r.prob_trajectory[i] >= r.prob_trajectory[i - 1] - 0.01);
    CHECK(r.comb_trajectory[i] >= r.comb_trajectory[i - 1] - 0.01);
  }
  CHECK(kLn2 - r.prob_trajectory[39] < kLn2 - r.prob_trajectory[19]);
  CHECK(kLn2 - r.comb_trajectory[39] < kLn2 - r.comb_trajectory[19]);
  CHECK(std::abs(r.prob_trajectory[39] - oracle::log_big(oracle::binomial(40, 20)) / 40) < 1e-9);
}

TEST_CASE("regular systems converge at rate 1/l") {
  // R_l approaches the spectral capacity only like O(1/l), so a 1e-6
  // tolerance is out of reach at l = 40 while a few hundredths is not.
  for (const auto& fsm : {make_golden_mean(), make_rll(1, 3)}) {
    const auto strict = verify_equality(fsm_to_branch_system(fsm), with_tol(1e-6));
    CHECK(strict.verdict == Verdict::fail);
    CHECK(strict.difference < 0.05);
    const auto loose = verify_equality(fsm_to_branch_system(fsm), with_tol(0.05));
    CHECK(loose.verdict == Verdict::pass);
    CHECK(loose.io_pass);
  }
}

TEST_CASE("budget exhaustion is inconclusive") {
  VerifyOptions o;
  o.maxent.class_budget = 16;
  o.w_max = 12;
  o.l_max = 30;
  const auto r = verify_equality(make_memoryless({{"a", 1}, {"b", Rational(7, 5)}}), o);
  CHECK(r.verdict == Verdict::inconclusive);
  CHECK_FALSE(r.message.empty());

  VerifyOptions tiny;
  tiny.spectrum.state_budget = 4;
  tiny.l_max = 10;
  const auto g = verify_equality(make_dyck_prefix(), tiny);
  CHECK(g.verdict == Verdict::inconclusive);
  CHECK(g.message.find("counting side") == 0);
}

TEST_CASE("verdict names") {
  CHECK(std::string(to_string(Verdict::pass)) == "PASS");
  CHECK(std::string(to_string(Verdict::fail)) == "FAIL");
  CHECK(std::string(to_string(Verdict::inconclusive)) == "INCONCLUSIVE");
}
