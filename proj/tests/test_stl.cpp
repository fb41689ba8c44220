// Copyright 2026 The LocoSTL Authors
//
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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "locostl/stl/eval.hpp"
#include "locostl/stl/parser.hpp"
#include "locostl/stl/smooth.hpp"
#include "support/oracles.hpp"

using namespace locostl;
using namespace locostl::stl;
using locostl::testing::brute_force_robustness;
using locostl::testing::FormulaSampler;

namespace {

Signal scalar_signal(std::initializer_list<double> values) {
  Signal s = Signal::zeros(values.size());
  int i = 0;
  for (double v : values) s[i++][0] = v;
  return s;
}

PredicateRegistry basic_registry() {
  PredicateRegistry reg;
  reg.add(make_channel_predicate("y_pos", 0, 1.0, 0.0));     // y >= 0
  reg.add(make_channel_predicate("y_ge_two", 0, 1.0, 2.0));  // y >= 2
  reg.add(make_channel_predicate("foot_left", 7, -1.0, -0.5));
  reg.add(make_channel_predicate("kf_le", 0, -1.0, 0.0));
  reg.add(make_channel_predicate("kf_ge", 0, 1.0, 0.0));
  return reg;
}

}  // namespace

TEST_CASE("parser handles single temporal operator", "[stl]") {
  auto reg = basic_registry();
  auto f = parse_stl("G[0,20] foot_left", reg);
  REQUIRE(f->kind == NodeKind::Always);
  CHECK(f->t1 == 0);
  CHECK(f->t2 == 20);
  REQUIRE(f->children.size() == 1);
  CHECK(f->children[0]->kind == NodeKind::Pred);
  CHECK(f->children[0]->pred->name == "foot_left");
}

TEST_CASE("parser builds eventually over conjunction", "[stl]") {
  auto reg = basic_registry();
  auto f = parse_stl("F[14,20] (kf_le & kf_ge)", reg);
  REQUIRE(f->kind == NodeKind::Eventually);
  CHECK(f->t1 == 14);
  CHECK(f->t2 == 20);
  REQUIRE(f->children[0]->kind == NodeKind::And);
  CHECK(f->children[0]->children.size() == 2);
}

TEST_CASE("parser reports malformed interval with offset", "[stl]") {
  auto reg = basic_registry();
  reg.add(make_channel_predicate("a", 0, 1.0, 0.0));
  reg.add(make_channel_predicate("b", 1, 1.0, 0.0));
  try {
    parse_stl("a U[0,3", reg);
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 8);
  }
  CHECK_THROWS_AS(parse_stl("F[3,1] a", reg), ParseError);
  CHECK_THROWS_AS(parse_stl("a & unknown_pred", reg), ParseError);
}

TEST_CASE("parser precedence: not, temporal, and, or", "[stl]") {
  auto reg = basic_registry();
  reg.add(make_channel_predicate("a", 0, 1.0, 0.0));
  reg.add(make_channel_predicate("b", 1, 1.0, 0.0));
  reg.add(make_channel_predicate("c", 2, 1.0, 0.0));
  auto f = parse_stl("!a & F[0,2] b | c", reg);
  REQUIRE(f->kind == NodeKind::Or);
  REQUIRE(f->children[0]->kind == NodeKind::And);
  CHECK(f->children[0]->children[0]->kind == NodeKind::Not);
  CHECK(f->children[0]->children[1]->kind == NodeKind::Eventually);
  CHECK(f->children[1]->kind == NodeKind::Pred);

  auto g = parse_stl("a U[1,4] b & c", reg);
  REQUIRE(g->kind == NodeKind::And);
  CHECK(g->children[0]->kind == NodeKind::Until);
}

TEST_CASE("print/parse round trip is structural identity", "[stl]") {
  PredicateRegistry reg;
  FormulaSampler sampler(321);
  // predicate names from the sampler are not in reg; rebuild a registry as we
  // print, registering every leaf by name.
  std::function<void(const Formula&)> reg_all = [&](const Formula& f) {
    if (f.kind == NodeKind::Pred) {
      if (!reg.find(f.pred->name)) reg.add(*f.pred);
      return;
    }
    for (const auto& c : f.children) reg_all(*c);
  };
  for (int i = 0; i < 50; ++i) {
    auto f = sampler.sample(3, 20);
    reg_all(*f);
    auto back = parse_stl(print_formula(*f), reg);
    CHECK(structurally_equal(*f, *back));
  }
}

TEST_CASE("boolean semantics on scalar examples", "[stl]") {
  auto reg = basic_registry();
  Signal s = scalar_signal({1.0, -2.0, 3.0});
  auto f_ev = parse_stl("F[0,2] y_pos", reg);
  auto f_al = parse_stl("G[0,2] y_pos", reg);
  CHECK(eval_satisfaction(*f_ev, s, 0));
  CHECK_FALSE(eval_satisfaction(*f_al, s, 0));
}

TEST_CASE("robustness on scalar examples", "[stl]") {
  auto reg = basic_registry();
  Signal s = scalar_signal({1.0, -2.0, 3.0});
  CHECK(eval_robustness(*parse_stl("F[0,2] y_pos", reg), s, 0).root() == 3.0);
  CHECK(eval_robustness(*parse_stl("G[0,2] y_pos", reg), s, 0).root() == -2.0);
}

TEST_CASE("until robustness matches hand expansion", "[stl]") {
  auto reg = basic_registry();
  Signal s = scalar_signal({1.0, 1.0, 3.0});
  auto f = parse_stl("y_pos U[0,2] y_ge_two", reg);
  CHECK(eval_robustness(*f, s, 0).root() == 1.0);
}

TEST_CASE("robustness tree shape and root", "[stl]") {
  auto reg = basic_registry();
  Signal s = scalar_signal({1.0, -2.0, 3.0});
  auto f = parse_stl("F[0,2] (y_pos & y_ge_two)", reg);
  auto tree = eval_robustness(*f, s, 0);
  REQUIRE(tree.values.size() == f->node_count());
  CHECK(tree.root() == 1.0);  // witness knot 2: min(3, 3-2) = 1
  // children stored at the witness instant
  CHECK(tree.values[1] == 1.0);
  CHECK(tree.values[2] == 3.0);
  CHECK(tree.values[3] == 1.0);
  auto j = robustness_tree_to_json(*f, tree);
  CHECK(j["kind"] == "eventually");
  CHECK(j["value"] == 1.0);
}

TEST_CASE("window beyond signal length raises", "[stl]") {
  auto reg = basic_registry();
  Signal s = scalar_signal({1.0, 2.0});
  auto f = parse_stl("F[0,5] y_pos", reg);
  CHECK_THROWS_AS(eval_robustness(*f, s, 0), WindowError);
  CHECK_THROWS_AS(eval_satisfaction(*f, s, 0), WindowError);
}

TEST_CASE("robustness equals brute-force oracle bitwise", "[stl]") {
  FormulaSampler sampler(2026);
  for (int trial = 0; trial < 300; ++trial) {
    Signal s = sampler.sample_signal(21);
    auto f = sampler.sample(3, 20);
    double lib = eval_robustness(*f, s, 0).root();
    double oracle = brute_force_robustness(*f, s, 0);
    REQUIRE(lib == oracle);
  }
}

TEST_CASE("satisfaction iff nonnegative robustness", "[stl]") {
  FormulaSampler sampler(99);
  for (int trial = 0; trial < 300; ++trial) {
    Signal s = sampler.sample_signal(15);
    auto f = sampler.sample(3, 14);
    bool sat = eval_satisfaction(*f, s, 0);
    double rho = eval_robustness(*f, s, 0).root();
    REQUIRE(sat == (rho >= 0.0));
  }
}

TEST_CASE("smooth operators hit closed-form values", "[stl]") {
  CHECK_THAT(smooth_min({1.0, 1.0}, 10.0),
             Catch::Matchers::WithinAbs(1.0 - std::log(2.0) / 10.0, 1e-12));
  double e10 = std::exp(10.0);
  CHECK_THAT(smooth_max({0.0, 1.0}, 10.0),
             Catch::Matchers::WithinAbs(e10 / (1.0 + e10), 1e-12));
}

TEST_CASE("smooth robustness is a sound under-approximation", "[stl]") {
  FormulaSampler sampler(7);
  for (int trial = 0; trial < 100; ++trial) {
    Signal s = sampler.sample_signal(12);
    auto f = sampler.sample(3, 11);
    double exact = eval_robustness(*f, s, 0).root();
    for (double k : {1.0, 10.0, 100.0}) {
      double smooth = smooth_robustness_value(*f, s, 0, k, k);
      REQUIRE(smooth <= exact + 1e-12);
      if (smooth >= 0.0) REQUIRE(eval_satisfaction(*f, s, 0));
    }
  }
}

TEST_CASE("pure-min gap bounded by log(m)/k", "[stl]") {
  FormulaSampler sampler(11);
  Signal s = sampler.sample_signal(5);
  for (int m = 2; m <= 8; ++m) {
    auto f = sampler.sample_conjunction(m);
    for (double k : {1.0, 10.0, 100.0, 1000.0}) {
      double exact = eval_robustness(*f, s, 0).root();
      double smooth = smooth_robustness_value(*f, s, 0, k, k);
      REQUIRE(exact - smooth <= std::log(double(m)) / k + 1e-9);
      REQUIRE(exact - smooth >= 0.0);
    }
  }
}

TEST_CASE("smooth value non-decreasing in k on conjunctions", "[stl]") {
  FormulaSampler sampler(13);
  for (int trial = 0; trial < 20; ++trial) {
    Signal s = sampler.sample_signal(5);
    auto f = sampler.sample_conjunction(2 + trial % 6);
    double prev = -1e300;
    for (int n = 0; n <= 3; ++n) {
      double k = std::pow(10.0, n);
      double v = smooth_robustness_value(*f, s, 0, k, k);
      REQUIRE(v >= prev - 1e-12);
      prev = v;
    }
  }
}

TEST_CASE("De Morgan duals agree exactly", "[stl]") {
  FormulaSampler sampler(17);
  for (int trial = 0; trial < 50; ++trial) {
    Signal s = sampler.sample_signal(6);
    auto a = sampler.sample(1, 5);
    auto b = sampler.sample(1, 5);
    auto lhs = negate(conjunction({a, b}));
    auto rhs = disjunction({negate(a), negate(b)});
    REQUIRE(eval_robustness(*lhs, s, 0).root() ==
            eval_robustness(*rhs, s, 0).root());
  }
}

TEST_CASE("smooth gradient matches central differences", "[stl]") {
  FormulaSampler sampler(23);
  const double eps = 1e-6;
  for (int trial = 0; trial < 40; ++trial) {
    Signal s = sampler.sample_signal(8);
    auto f = sampler.sample(3, 7);
    auto res = eval_smooth_robustness(*f, s, 0, 8.0, 8.0);
    double scale = 1e-9;
    for (const auto& g : res.gradient) scale = std::max(scale, g.cwiseAbs().maxCoeff());
    for (std::size_t i = 0; i < s.size(); ++i) {
      for (int c = 0; c < 3; ++c) {
        Signal sp = s, sm = s;
        sp[i][c] += eps;
        sm[i][c] -= eps;
        double fd = (smooth_robustness_value(*f, sp, 0, 8.0, 8.0) -
                     smooth_robustness_value(*f, sm, 0, 8.0, 8.0)) /
                    (2.0 * eps);
        REQUIRE_THAT(res.gradient[i][c],
                     Catch::Matchers::WithinAbs(fd, 1e-5 * std::max(1.0, scale)));
      }
    }
  }
}

TEST_CASE("smooth evaluation stays finite at extreme magnitudes", "[stl]") {
  auto reg = basic_registry();
  Signal s = scalar_signal({1e3, -1e3, 1e3, -1e3});
  auto f = parse_stl("F[0,3] y_pos & G[0,3] y_pos", reg);
  double v = smooth_robustness_value(*f, s, 0, 1e3, 1e3);
  CHECK(std::isfinite(v));
}

TEST_CASE("formula constructors enforce arity and window order", "[stl]") {
  auto reg = basic_registry();
  auto a = parse_stl("y_pos", reg);
  CHECK_THROWS_AS(conjunction({a}), std::invalid_argument);
  CHECK_THROWS_AS(disjunction({a}), std::invalid_argument);
  CHECK_THROWS_AS(eventually(3, 1, a), std::invalid_argument);
  CHECK_THROWS_AS(eval_smooth_robustness(*a, scalar_signal({1.0}), 0, -1.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("predicate gradient consistency via finite differences", "[stl]") {
  FormulaSampler sampler(29);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  auto reg = basic_registry();
  for (const auto& name : reg.names()) {
    auto p = reg.find(name);
    for (int trial = 0; trial < 10; ++trial) {
      Sample y;
      for (int c = 0; c < kSignalDim; ++c) y[c] = dist(sampler.rng());
      Sample g = p->gradient(y);
      for (int c = 0; c < kSignalDim; ++c) {
        Sample yp = y, ym = y;
        yp[c] += 1e-6;
        ym[c] -= 1e-6;
        double fd = (p->value(yp) - p->value(ym)) / 2e-6;
        REQUIRE_THAT(g[c], Catch::Matchers::WithinAbs(fd, 1e-5));
      }
    }
  }
}
