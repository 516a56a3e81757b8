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

#include <algorithm>
#include <set>

#include "dnc/core.hpp"
#include "oracles.hpp"

using namespace dnc;

namespace {

struct Path {
  std::string label;
  Rational weight;
};

// Depth-l root paths by plain recursion over expand.
std::vector<Path> depth_paths(const BranchSystem& system, int depth) {
  std::vector<Path> out;
  std::function<void(NodeHandle, std::string, Rational, int)> walk = [&](NodeHandle node, std::string label,
                                                                         Rational weight, int d) {
    if (d == depth) {
      out.push_back({label, weight});
      return;
    }
    for (const auto& b : system.expand(node)) walk(b.next, label + b.symbol.label, weight + *b.symbol.weight.exact(), d + 1);
  };
  walk(system.root(), "", Rational(0), 0);
  return out;
}

Alphabet binary(Rational w0, Rational w1) { return {{"0", w0}, {"1", w1}}; }

}  // namespace

TEST_CASE("fsm_to_branch_system: one-state binary machine") {
  auto system = fsm_to_branch_system(memoryless_fsm(binary(1, 1)));
  CHECK(system.kind() == SystemKind::fsm);
  for (int l = 1; l <= 8; ++l) {
    auto paths = depth_paths(system, l);
    CHECK(paths.size() == (std::size_t{1} << l));
    for (const auto& p : paths) CHECK(p.weight == Rational(l));
  }
}

TEST_CASE("fsm_to_branch_system: single self-loop") {
  auto system = fsm_to_branch_system(WeightedFsm(1, 0, {{0, Symbol{"a", 1}, 0}}));
  CHECK(depth_paths(system, 5).size() == 1);
}

TEST_CASE("fsm_to_branch_system: golden mean depth 3") {
  auto paths = depth_paths(fsm_to_branch_system(make_golden_mean()), 3);
  std::set<std::string> labels;
  for (const auto& p : paths) labels.insert(p.label);
  CHECK(labels == std::set<std::string>{"000", "001", "010", "100", "101"});
  // Fibonacci growth against the brute-force oracle.
  auto counts = oracle::brute_force_counts(binary(1, 1), Rational(10), oracle::golden_mean);
  for (int l = 1; l <= 10; ++l) CHECK(depth_paths(fsm_to_branch_system(make_golden_mean()), l).size() == counts[l]);
}

TEST_CASE("WeightedFsm rejects invalid machines") {
  CHECK_THROWS_AS(WeightedFsm(2, 0, {{0, Symbol{"a", 1}, 1}}), ModelError);                          // dead end
  CHECK_THROWS_AS(WeightedFsm(2, 0, {{0, Symbol{"a", 1}, 0}, {1, Symbol{"a", 1}, 1}}), ModelError);  // unreachable
  CHECK_THROWS_AS(WeightedFsm(1, 0, {{0, Symbol{"a", 1}, 0}, {0, Symbol{"a", 2}, 0}}), ModelError);  // duplicate
  CHECK_THROWS_AS(WeightedFsm(1, 0, {{0, Symbol{"a", 0}, 0}}), ModelError);                          // zero weight
  CHECK_THROWS_AS(WeightedFsm(1, 0, {{0, Symbol{"a", -1}, 0}}), ModelError);
  CHECK_THROWS_AS(WeightedFsm(1, 3, {{0, Symbol{"a", 1}, 0}}), ModelError);
  CHECK_THROWS_AS(WeightedFsm(1, 0, {{0, Symbol{"a", 1}, 4}}), ModelError);
}

TEST_CASE("make_memoryless examples") {
  auto equal = make_memoryless(binary(1, 1));
  CHECK(equal.kind() == SystemKind::memoryless);
  auto d2 = depth_paths(equal, 2);
  std::set<std::string> labels;
  for (const auto& p : d2) {
    labels.insert(p.label);
    CHECK(p.weight == Rational(2));
  }
  CHECK(labels == std::set<std::string>{"00", "01", "10", "11"});

  std::multiset<Rational> weights;
  for (const auto& p : depth_paths(make_memoryless(binary(1, 2)), 2)) weights.insert(p.weight);
  CHECK(weights == std::multiset<Rational>{2, 3, 3, 4});

  auto single = depth_paths(make_memoryless({{"a", 1}}), 6);
  REQUIRE(single.size() == 1);
  CHECK(single[0].weight == Rational(6));
}

TEST_CASE("make_memoryless errors") {
  CHECK_THROWS_AS(make_memoryless({}), ModelError);
  CHECK_THROWS_AS(make_memoryless({{"a", 1}, {"a", 2}}), ModelError);
  CHECK_THROWS_AS(make_memoryless({{"a", 0}}), ModelError);
  CHECK_THROWS_AS(make_memoryless({{"", 1}}), ModelError);
  CHECK_THROWS_AS(make_memoryless({{"a", Weight::real(-0.5)}}), ModelError);
}

TEST_CASE("make_dyck_prefix examples") {
  auto dyck = make_dyck_prefix();
  CHECK(dyck.kind() == SystemKind::generator);
  auto d1 = depth_paths(dyck, 1);
  REQUIRE(d1.size() == 1);
  CHECK(d1[0].label == "(");
  std::set<std::string> d3;
  for (const auto& p : depth_paths(dyck, 3)) d3.insert(p.label);
  CHECK(d3 == std::set<std::string>{"(((", "(()", "()("});
  CHECK(depth_paths(dyck, 4).size() == 6);
  for (unsigned n = 1; n <= 14; ++n) CHECK(depth_paths(dyck, static_cast<int>(n)).size() == oracle::binomial(n, n / 2));
}

TEST_CASE("make_rll") {
  auto rll13 = make_rll(1, 3);
  CHECK(rll13.num_states() == 4);
  auto counts = oracle::brute_force_counts(binary(1, 1), Rational(8), oracle::rll(1, 3));
  CHECK(counts[8] == 19);
  CHECK(depth_paths(fsm_to_branch_system(rll13), 8).size() == 19);
  CHECK(oracle::transfer_counts(rll13, 8).back() == 19);

  auto rll01 = make_rll(0, 1);
  CHECK(rll01.num_states() == 2);
  for (const auto& p : depth_paths(fsm_to_branch_system(rll01), 7)) CHECK(p.label.find("00") == std::string::npos);

  CHECK_THROWS_AS(make_rll(3, 3), ModelError);
  CHECK_THROWS_AS(make_rll(-1, 2), ModelError);
}

TEST_CASE("path-weight additivity and support nesting") {
  const Alphabet alphabet{{"a", Rational(1, 3)}, {"b", Rational(1, 2)}, {"c", 2}};
  auto system = make_memoryless(alphabet);
  auto flat = flatten(system, 5);
  for (const auto& [label, weight] : flat) {
    Rational expected = 0;
    for (char c : label) expected += *alphabet[static_cast<std::size_t>(c - 'a')].weight.exact();
    CHECK(*weight.exact() == expected);
  }
  for (const auto& sys : {make_dyck_prefix(), fsm_to_branch_system(make_rll(1, 3)), system}) {
    for (int l = 1; l < 6; ++l) {
      auto longer = depth_paths(sys, l + 1);
      for (const auto& p : depth_paths(sys, l)) {
        CHECK(std::any_of(longer.begin(), longer.end(),
                          [&](const Path& q) { return q.label.compare(0, p.label.size(), p.label) == 0; }));
      }
    }
  }
}

TEST_CASE("label uniqueness check") {
  for (const auto& sys : {make_dyck_prefix(), fsm_to_branch_system(make_golden_mean()),
                          fsm_to_branch_system(make_rll(2, 7)), make_memoryless(binary(1, 2))}) {
    CHECK_NOTHROW(check_branch_system(sys));
  }
  // "a" then "b" collides with the single branch "ab".
  auto ambiguous = make_generator("ambiguous", 0, [](NodeHandle) {
    return std::vector<Branch>{{Symbol{"a", 1}, 0}, {Symbol{"b", 1}, 0}, {Symbol{"ab", 2}, 0}};
  });
  CHECK_THROWS_AS(check_branch_system(ambiguous, 3), ModelError);
  auto dead_end = make_generator("dead", 0, [](NodeHandle n) {
    return n == 0 ? std::vector<Branch>{{Symbol{"a", 1}, 1}} : std::vector<Branch>{};
  });
  CHECK_THROWS_AS(check_branch_system(dead_end, 3), ModelError);
  auto twins = make_generator("twins", 0, [](NodeHandle) {
    return std::vector<Branch>{{Symbol{"a", 1}, 0}, {Symbol{"a", 2}, 0}};
  });
  CHECK_THROWS_AS(check_branch_system(twins, 2), ModelError);
}

TEST_CASE("two tree representations of one finite channel flatten identically") {
  // i: three branches from the root. ii: "a" then "b", plus "b".
  auto one_branch = make_generator("tree_i", 0, [](NodeHandle n) {
    if (n != 0) return std::vector<Branch>{};
    return std::vector<Branch>{{Symbol{"a", 1}, 1}, {Symbol{"b", 1}, 2}, {Symbol{"ab", 2}, 3}};
  });
  auto two_branches = make_generator("tree_ii", 0, [](NodeHandle n) {
    if (n == 0) return std::vector<Branch>{{Symbol{"a", 1}, 1}, {Symbol{"b", 1}, 2}};
    if (n == 1) return std::vector<Branch>{{Symbol{"b", 1}, 3}};
    return std::vector<Branch>{};
  });
  auto fi = flatten(one_branch, 4);
  auto fii = flatten(two_branches, 4);
  std::map<std::string, Rational> ei, eii;
  for (auto& [k, v] : fi) ei.emplace(k, *v.exact());
  for (auto& [k, v] : fii) eii.emplace(k, *v.exact());
  const std::map<std::string, Rational> expected{{"", 0}, {"a", 1}, {"b", 1}, {"ab", 2}};
  CHECK(ei == expected);
  CHECK(eii == expected);
}
