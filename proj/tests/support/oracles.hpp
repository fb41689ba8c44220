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

// Test-only oracles, kept independent of the library evaluation paths.

#pragma once

#include <algorithm>
#include <limits>
#include <random>
#include <vector>

#include "locostl/stl/ast.hpp"

namespace locostl::testing {

using stl::Formula;
using stl::FormulaPtr;
using stl::NodeKind;
using stl::Sample;
using stl::Signal;

// Plain recursive robustness per the quantitative semantics table. No tree,
// no witness bookkeeping; folds left to right like a hand calculation.
inline double brute_force_robustness(const Formula& f, const Signal& s,
                                     int t) {
  switch (f.kind) {
    case NodeKind::Pred:
      return f.pred->value(s[t]);
    case NodeKind::Not:
      return -brute_force_robustness(*f.children[0], s, t);
    case NodeKind::And: {
      double acc = std::numeric_limits<double>::infinity();
      for (const auto& c : f.children)
        acc = std::min(acc, brute_force_robustness(*c, s, t));
      return acc;
    }
    case NodeKind::Or: {
      double acc = -std::numeric_limits<double>::infinity();
      for (const auto& c : f.children)
        acc = std::max(acc, brute_force_robustness(*c, s, t));
      return acc;
    }
    case NodeKind::Eventually: {
      double acc = -std::numeric_limits<double>::infinity();
      for (int u = t + f.t1; u <= t + f.t2; ++u)
        acc = std::max(acc, brute_force_robustness(*f.children[0], s, u));
      return acc;
    }
    case NodeKind::Always: {
      double acc = std::numeric_limits<double>::infinity();
      for (int u = t + f.t1; u <= t + f.t2; ++u)
        acc = std::min(acc, brute_force_robustness(*f.children[0], s, u));
      return acc;
    }
    case NodeKind::Until: {
      double acc = -std::numeric_limits<double>::infinity();
      for (int u = t + f.t1; u <= t + f.t2; ++u) {
        double prefix = std::numeric_limits<double>::infinity();
        for (int v = t + f.t1; v <= u; ++v)
          prefix =
              std::min(prefix, brute_force_robustness(*f.children[0], s, v));
        acc = std::max(
            acc, std::min(brute_force_robustness(*f.children[1], s, u),
                          prefix));
      }
      return acc;
    }
  }
  return 0.0;
}

/// Random linear predicates over the first `channels` signal channels.
class FormulaSampler {
 public:
  FormulaSampler(std::uint64_t seed, int channels = 3)
      : rng_(seed), channels_(channels) {}

  FormulaPtr sample(int max_depth, int horizon_end) {
    return gen(max_depth, horizon_end);
  }

  Signal sample_signal(int length, double amplitude = 2.0) {
    std::uniform_real_distribution<double> dist(-amplitude, amplitude);
    Signal s = Signal::zeros(length);
    for (int i = 0; i < length; ++i)
      for (int c = 0; c < channels_; ++c) s[i][c] = dist(rng_);
    return s;
  }

  /// Conjunction of m predicates (pure min tree).
  FormulaPtr sample_conjunction(int m) {
    std::vector<FormulaPtr> kids;
    for (int i = 0; i < m; ++i) kids.push_back(stl::pred(random_pred()));
    return stl::conjunction(std::move(kids));
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  stl::Predicate random_pred() {
    std::uniform_int_distribution<int> ch(0, channels_ - 1);
    std::uniform_real_distribution<double> off(-1.0, 1.0);
    std::bernoulli_distribution flip(0.5);
    int channel = ch(rng_);
    double sign = flip(rng_) ? 1.0 : -1.0;
    double c = off(rng_);
    std::string name = "p" + std::to_string(counter_++);
    return stl::make_channel_predicate(name, channel, sign, c);
  }

  FormulaPtr gen(int depth, int budget) {
    std::uniform_int_distribution<int> kind_dist(0, depth <= 0 ? 0 : 6);
    int kind = kind_dist(rng_);
    if (budget <= 0 && kind >= 4) kind = 0;  // no room for a window
    switch (kind) {
      case 0:
        return stl::pred(random_pred());
      case 1:
        return stl::negate(gen(depth - 1, budget));
      case 2:
      case 3: {
        std::uniform_int_distribution<int> n_kids(2, 3);
        std::vector<FormulaPtr> kids;
        int n = n_kids(rng_);
        for (int i = 0; i < n; ++i) kids.push_back(gen(depth - 1, budget));
        return kind == 2 ? stl::conjunction(std::move(kids))
                         : stl::disjunction(std::move(kids));
      }
      default: {
        std::uniform_int_distribution<int> a_dist(0, budget);
        int a = a_dist(rng_);
        std::uniform_int_distribution<int> b_dist(a, budget);
        int b = b_dist(rng_);
        if (kind == 4) return stl::eventually(a, b, gen(depth - 1, budget - b));
        if (kind == 5) return stl::always(a, b, gen(depth - 1, budget - b));
        return stl::until(a, b, gen(depth - 1, budget - b),
                          gen(depth - 1, budget - b));
      }
    }
  }

  std::mt19937_64 rng_;
  int channels_;
  int counter_ = 0;
};

}  // namespace locostl::testing
