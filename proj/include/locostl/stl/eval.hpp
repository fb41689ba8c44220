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

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "locostl/stl/ast.hpp"

namespace locostl::stl {

class WindowError : public std::runtime_error {
 public:
  explicit WindowError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
inline void require_window(const Formula& f, const Signal& s, int t) {
  if (t < 0 || static_cast<std::size_t>(t) >= s.size())
    throw WindowError("evaluation instant outside signal");
  if (f.kind == NodeKind::Eventually || f.kind == NodeKind::Always ||
      f.kind == NodeKind::Until) {
    if (static_cast<std::size_t>(t + f.t2) >= s.size())
      throw WindowError("temporal window exceeds signal length");
  }
}
}  // namespace detail

/// Boolean validity, recursive over the formula structure.
inline bool eval_satisfaction(const Formula& f, const Signal& s, int t) {
  detail::require_window(f, s, t);
  switch (f.kind) {
    case NodeKind::Pred:
      return f.pred->value(s[t]) >= 0.0;
    case NodeKind::Not:
      return !eval_satisfaction(*f.children[0], s, t);
    case NodeKind::And:
      return std::all_of(f.children.begin(), f.children.end(),
                         [&](const FormulaPtr& c) {
                           return eval_satisfaction(*c, s, t);
                         });
    case NodeKind::Or:
      return std::any_of(f.children.begin(), f.children.end(),
                         [&](const FormulaPtr& c) {
                           return eval_satisfaction(*c, s, t);
                         });
    case NodeKind::Eventually:
      for (int u = t + f.t1; u <= t + f.t2; ++u)
        if (eval_satisfaction(*f.children[0], s, u)) return true;
      return false;
    case NodeKind::Always:
      for (int u = t + f.t1; u <= t + f.t2; ++u)
        if (!eval_satisfaction(*f.children[0], s, u)) return false;
      return true;
    case NodeKind::Until:
      for (int u = t + f.t1; u <= t + f.t2; ++u) {
        if (!eval_satisfaction(*f.children[1], s, u)) continue;
        bool prefix = true;
        for (int v = t + f.t1; v <= u && prefix; ++v)
          prefix = eval_satisfaction(*f.children[0], s, v);
        if (prefix) return true;
      }
      return false;
  }
  return false;  // unreachable
}

// Per-node robustness values in pre-order, root first. For temporal nodes the
// child subtree is recorded at the witness instant (first index on ties), so
// every stored value equals the contribution selected by its parent.
struct RobustnessTree {
  std::vector<double> values;
  double root() const { return values.at(0); }
};

namespace detail {

inline double rho(const Formula& f, const Signal& s, int t);

// min over [t + f.t1, t'] of rho(child0); shared by Until value and witness.
inline double until_prefix_min(const Formula& f, const Signal& s, int t,
                               int t_prime) {
  double m = std::numeric_limits<double>::infinity();
  for (int v = t + f.t1; v <= t_prime; ++v)
    m = std::min(m, rho(*f.children[0], s, v));
  return m;
}

inline double rho(const Formula& f, const Signal& s, int t) {
  require_window(f, s, t);
  switch (f.kind) {
    case NodeKind::Pred:
      return f.pred->value(s[t]);
    case NodeKind::Not:
      return -rho(*f.children[0], s, t);
    case NodeKind::And: {
      double m = rho(*f.children[0], s, t);
      for (std::size_t i = 1; i < f.children.size(); ++i)
        m = std::min(m, rho(*f.children[i], s, t));
      return m;
    }
    case NodeKind::Or: {
      double m = rho(*f.children[0], s, t);
      for (std::size_t i = 1; i < f.children.size(); ++i)
        m = std::max(m, rho(*f.children[i], s, t));
      return m;
    }
    case NodeKind::Eventually: {
      double m = -std::numeric_limits<double>::infinity();
      for (int u = t + f.t1; u <= t + f.t2; ++u)
        m = std::max(m, rho(*f.children[0], s, u));
      return m;
    }
    case NodeKind::Always: {
      double m = std::numeric_limits<double>::infinity();
      for (int u = t + f.t1; u <= t + f.t2; ++u)
        m = std::min(m, rho(*f.children[0], s, u));
      return m;
    }
    case NodeKind::Until: {
      double m = -std::numeric_limits<double>::infinity();
      for (int u = t + f.t1; u <= t + f.t2; ++u) {
        double cand =
            std::min(rho(*f.children[1], s, u), until_prefix_min(f, s, t, u));
        m = std::max(m, cand);
      }
      return m;
    }
  }
  return 0.0;  // unreachable
}

inline void fill_tree(const Formula& f, const Signal& s, int t,
                      std::vector<double>& out, std::size_t& idx) {
  std::size_t self = idx++;
  switch (f.kind) {
    case NodeKind::Pred:
      out[self] = f.pred->value(s[t]);
      return;
    case NodeKind::Not:
      fill_tree(*f.children[0], s, t, out, idx);
      out[self] = -out[self + 1];
      return;
    case NodeKind::And:
    case NodeKind::Or: {
      bool is_and = f.kind == NodeKind::And;
      double m = is_and ? std::numeric_limits<double>::infinity()
                        : -std::numeric_limits<double>::infinity();
      for (const auto& c : f.children) {
        std::size_t child_at = idx;
        fill_tree(*c, s, t, out, idx);
        m = is_and ? std::min(m, out[child_at]) : std::max(m, out[child_at]);
      }
      out[self] = m;
      return;
    }
    case NodeKind::Eventually:
    case NodeKind::Always: {
      bool is_max = f.kind == NodeKind::Eventually;
      int witness = t + f.t1;
      double best = rho(*f.children[0], s, witness);
      for (int u = t + f.t1 + 1; u <= t + f.t2; ++u) {
        double v = rho(*f.children[0], s, u);
        if (is_max ? v > best : v < best) {
          best = v;
          witness = u;
        }
      }
      fill_tree(*f.children[0], s, witness, out, idx);
      out[self] = best;
      return;
    }
    case NodeKind::Until: {
      int witness = t + f.t1;
      double best = -std::numeric_limits<double>::infinity();
      for (int u = t + f.t1; u <= t + f.t2; ++u) {
        double cand =
            std::min(rho(*f.children[1], s, u), until_prefix_min(f, s, t, u));
        if (cand > best) {
          best = cand;
          witness = u;
        }
      }
      int arg_prefix = t + f.t1;
      double prefix_best = std::numeric_limits<double>::infinity();
      for (int v = t + f.t1; v <= witness; ++v) {
        double r = rho(*f.children[0], s, v);
        if (r < prefix_best) {
          prefix_best = r;
          arg_prefix = v;
        }
      }
      fill_tree(*f.children[0], s, arg_prefix, out, idx);
      fill_tree(*f.children[1], s, witness, out, idx);
      out[self] = best;
      return;
    }
  }
}

}  // namespace detail

/// Quantitative semantics; exact min/max composition, ties to first index.
inline RobustnessTree eval_robustness(const Formula& f, const Signal& s,
                                      int t) {
  RobustnessTree tree;
  tree.values.assign(f.node_count(),
                     std::numeric_limits<double>::quiet_NaN());
  std::size_t idx = 0;
  detail::fill_tree(f, s, t, tree.values, idx);
  return tree;
}

inline double robustness(const Formula& f, const Signal& s, int t) {
  return detail::rho(f, s, t);
}

namespace detail {
inline nlohmann::json tree_json(const Formula& f,
                                const std::vector<double>& values,
                                std::size_t& idx) {
  nlohmann::json node;
  std::size_t self = idx++;
  node["value"] = values[self];
  switch (f.kind) {
    case NodeKind::Pred:
      node["kind"] = "pred";
      node["name"] = f.pred->name;
      return node;
    case NodeKind::Not: node["kind"] = "not"; break;
    case NodeKind::And: node["kind"] = "and"; break;
    case NodeKind::Or: node["kind"] = "or"; break;
    case NodeKind::Eventually: node["kind"] = "eventually"; break;
    case NodeKind::Always: node["kind"] = "always"; break;
    case NodeKind::Until: node["kind"] = "until"; break;
  }
  if (f.kind == NodeKind::Eventually || f.kind == NodeKind::Always ||
      f.kind == NodeKind::Until) {
    node["window"] = {f.t1, f.t2};
  }
  node["children"] = nlohmann::json::array();
  for (const auto& c : f.children)
    node["children"].push_back(tree_json(*c, values, idx));
  return node;
}
}  // namespace detail

inline nlohmann::json robustness_tree_to_json(const Formula& f,
                                              const RobustnessTree& tree) {
  std::size_t idx = 0;
  return detail::tree_json(f, tree.values, idx);
}

}  // namespace locostl::stl
