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

#pragma once

#include <cmath>
#include <vector>

#include "locostl/stl/ast.hpp"
#include "locostl/stl/eval.hpp"

namespace locostl::stl {

// Log-sum-exp under-approximation of min; exponents are shifted by the
// group minimum so the result stays finite for |rho| <= 1e3, k <= 1e3.
// Weights are the softmin coefficients (the value's gradient), summing to 1.
inline double smooth_min(const std::vector<double>& v, double k,
                         std::vector<double>* weights = nullptr) {
  double m = v[0];
  for (double x : v) m = std::min(m, x);
  double sum = 0.0;
  if (weights) weights->resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double e = std::exp(-k * (v[i] - m));
    if (weights) (*weights)[i] = e;
    sum += e;
  }
  if (weights)
    for (double& w : *weights) w /= sum;
  return m - std::log(sum) / k;
}

// Softmax-weighted average; always <= max element.
inline double smooth_max(const std::vector<double>& v, double k,
                         std::vector<double>* weights = nullptr) {
  double m = v[0];
  for (double x : v) m = std::max(m, x);
  double sum = 0.0, acc = 0.0;
  std::vector<double> w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    w[i] = std::exp(k * (v[i] - m));
    sum += w[i];
    acc += v[i] * w[i];
  }
  double value = acc / sum;
  if (weights) {
    weights->resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      (*weights)[i] = w[i] / sum * (1.0 + k * (v[i] - value));
  }
  return value;
}

struct SmoothRobustness {
  double value = 0.0;
  std::vector<Sample> gradient;  // one 12-dim block per signal knot
};

namespace detail {

// Negations are pushed to the leaves on the fly (negation normal form), so
// every internal operator is a smooth min or max of already-under-approximated
// children. Monotonicity then gives rho_tilde <= rho for the whole formula.
struct SmoothNode {
  double value = 0.0;
  int knot = -1;        // leaves only
  double sign = 1.0;    // leaves only
  const Predicate* pred = nullptr;
  std::vector<SmoothNode> children;
  std::vector<double> weights;
};

struct SmoothParams {
  double k_min;
  double k_max;
};

inline SmoothNode smooth_expand(const Formula& f, const Signal& s, int t,
                                bool negated, const SmoothParams& kp) {
  require_window(f, s, t);
  SmoothNode node;
  auto combine = [&](bool minimum) {
    std::vector<double> vals(node.children.size());
    for (std::size_t i = 0; i < vals.size(); ++i)
      vals[i] = node.children[i].value;
    node.value = minimum ? smooth_min(vals, kp.k_min, &node.weights)
                         : smooth_max(vals, kp.k_max, &node.weights);
  };
  switch (f.kind) {
    case NodeKind::Pred:
      node.knot = t;
      node.sign = negated ? -1.0 : 1.0;
      node.pred = f.pred.get();
      node.value = node.sign * f.pred->value(s[t]);
      return node;
    case NodeKind::Not:
      return smooth_expand(*f.children[0], s, t, !negated, kp);
    case NodeKind::And:
    case NodeKind::Or: {
      bool minimum = (f.kind == NodeKind::And) != negated;
      for (const auto& c : f.children)
        node.children.push_back(smooth_expand(*c, s, t, negated, kp));
      combine(minimum);
      return node;
    }
    case NodeKind::Eventually:
    case NodeKind::Always: {
      bool minimum = (f.kind == NodeKind::Always) != negated;
      for (int u = t + f.t1; u <= t + f.t2; ++u)
        node.children.push_back(smooth_expand(*f.children[0], s, u, negated, kp));
      combine(minimum);
      return node;
    }
    case NodeKind::Until: {
      // max over t' of min(rho2(t'), min over prefix of rho1); operators are
      // swapped under negation with the flag carried to the leaves.
      bool outer_max = !negated;
      for (int u = t + f.t1; u <= t + f.t2; ++u) {
        SmoothNode cand;
        cand.children.push_back(smooth_expand(*f.children[1], s, u, negated, kp));
        for (int v = t + f.t1; v <= u; ++v)
          cand.children.push_back(
              smooth_expand(*f.children[0], s, v, negated, kp));
        std::vector<double> vals(cand.children.size());
        for (std::size_t i = 0; i < vals.size(); ++i)
          vals[i] = cand.children[i].value;
        cand.value = outer_max ? smooth_min(vals, kp.k_min, &cand.weights)
                               : smooth_max(vals, kp.k_max, &cand.weights);
        node.children.push_back(std::move(cand));
      }
      std::vector<double> vals(node.children.size());
      for (std::size_t i = 0; i < vals.size(); ++i)
        vals[i] = node.children[i].value;
      node.value = outer_max ? smooth_max(vals, kp.k_max, &node.weights)
                             : smooth_min(vals, kp.k_min, &node.weights);
      return node;
    }
  }
  return node;  // unreachable
}

inline void smooth_backprop(const SmoothNode& node, const Signal& s,
                            double weight, std::vector<Sample>& grad) {
  if (node.pred) {
    grad[node.knot] += weight * node.sign * node.pred->gradient(s[node.knot]);
    return;
  }
  for (std::size_t i = 0; i < node.children.size(); ++i)
    smooth_backprop(node.children[i], s, weight * node.weights[i], grad);
}

}  // namespace detail

/// Differentiable robustness; value never exceeds the exact degree.
inline SmoothRobustness eval_smooth_robustness(const Formula& f,
                                               const Signal& s, int t,
                                               double k1, double k2) {
  if (k1 <= 0.0 || k2 <= 0.0)
    throw std::invalid_argument("smooth sharpness parameters must be positive");
  detail::SmoothParams kp{k1, k2};
  detail::SmoothNode root = detail::smooth_expand(f, s, t, false, kp);
  SmoothRobustness out;
  out.value = root.value;
  out.gradient.assign(s.size(), Sample::Zero());
  detail::smooth_backprop(root, s, 1.0, out.gradient);
  return out;
}

/// Value-only variant for inner optimization loops.
inline double smooth_robustness_value(const Formula& f, const Signal& s, int t,
                                      double k1, double k2) {
  detail::SmoothParams kp{k1, k2};
  return detail::smooth_expand(f, s, t, false, kp).value;
}

}  // namespace locostl::stl
