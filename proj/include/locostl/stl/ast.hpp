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

#include <Eigen/Core>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace locostl::stl {

// Signal sample layout (SI units, stance-foot frame):
//   0..2  p_com xyz
//   3..5  v_com xyz
//   6..8  p_swing xyz
//   9..11 swing-foot velocity command xyz
inline constexpr int kSignalDim = 12;

using Sample = Eigen::Matrix<double, kSignalDim, 1>;

/// Atomic inequality mu(y) - c >= 0 with an analytic gradient in y.
struct Predicate {
  std::string name;
  std::function<double(const Sample&)> value;
  std::function<Sample(const Sample&)> gradient;
};

using PredicatePtr = std::shared_ptr<const Predicate>;

/// Named predicates available to the formula parser.
class PredicateRegistry {
 public:
  void add(Predicate p) {
    auto ptr = std::make_shared<const Predicate>(std::move(p));
    table_[ptr->name] = ptr;
  }

  PredicatePtr find(const std::string& name) const {
    auto it = table_.find(name);
    return it == table_.end() ? nullptr : it->second;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    out.reserve(table_.size());
    for (const auto& [k, v] : table_) out.push_back(k);
    return out;
  }

 private:
  std::map<std::string, PredicatePtr> table_;
};

/// Linear predicate sign * y[channel] - offset >= 0.
inline Predicate make_channel_predicate(std::string name, int channel,
                                        double sign, double offset) {
  if (channel < 0 || channel >= kSignalDim)
    throw std::invalid_argument("predicate channel out of range");
  Predicate p;
  p.name = std::move(name);
  p.value = [channel, sign, offset](const Sample& y) {
    return sign * y[channel] - offset;
  };
  p.gradient = [channel, sign](const Sample&) {
    Sample g = Sample::Zero();
    g[channel] = sign;
    return g;
  };
  return p;
}

enum class NodeKind { Pred, Not, And, Or, Eventually, Always, Until };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable AST node. Temporal windows [t1, t2] are discrete knot offsets
// relative to the evaluation instant; boolean connectives carry none.
struct Formula {
  NodeKind kind = NodeKind::Pred;
  PredicatePtr pred;                // Pred only
  std::vector<FormulaPtr> children; // Not: 1, And/Or: >= 2, Until: 2
  int t1 = 0;
  int t2 = 0;

  std::size_t node_count() const {
    std::size_t n = 1;
    for (const auto& c : children) n += c->node_count();
    return n;
  }
};

inline FormulaPtr pred(PredicatePtr p) {
  if (!p) throw std::invalid_argument("null predicate");
  auto f = std::make_shared<Formula>();
  f->kind = NodeKind::Pred;
  f->pred = std::move(p);
  return f;
}

inline FormulaPtr pred(const Predicate& p) {
  return pred(std::make_shared<const Predicate>(p));
}

inline FormulaPtr negate(FormulaPtr child) {
  auto f = std::make_shared<Formula>();
  f->kind = NodeKind::Not;
  f->children = {std::move(child)};
  return f;
}

inline FormulaPtr conjunction(std::vector<FormulaPtr> children) {
  if (children.size() < 2)
    throw std::invalid_argument("conjunction needs at least two operands");
  auto f = std::make_shared<Formula>();
  f->kind = NodeKind::And;
  f->children = std::move(children);
  return f;
}

inline FormulaPtr disjunction(std::vector<FormulaPtr> children) {
  if (children.size() < 2)
    throw std::invalid_argument("disjunction needs at least two operands");
  auto f = std::make_shared<Formula>();
  f->kind = NodeKind::Or;
  f->children = std::move(children);
  return f;
}

namespace detail {
inline void check_window(int t1, int t2) {
  if (t1 < 0 || t2 < t1)
    throw std::invalid_argument("temporal window must satisfy 0 <= t1 <= t2");
}
}  // namespace detail

inline FormulaPtr eventually(int t1, int t2, FormulaPtr child) {
  detail::check_window(t1, t2);
  auto f = std::make_shared<Formula>();
  f->kind = NodeKind::Eventually;
  f->t1 = t1;
  f->t2 = t2;
  f->children = {std::move(child)};
  return f;
}

inline FormulaPtr always(int t1, int t2, FormulaPtr child) {
  detail::check_window(t1, t2);
  auto f = std::make_shared<Formula>();
  f->kind = NodeKind::Always;
  f->t1 = t1;
  f->t2 = t2;
  f->children = {std::move(child)};
  return f;
}

inline FormulaPtr until(int t1, int t2, FormulaPtr lhs, FormulaPtr rhs) {
  detail::check_window(t1, t2);
  auto f = std::make_shared<Formula>();
  f->kind = NodeKind::Until;
  f->t1 = t1;
  f->t2 = t2;
  f->children = {std::move(lhs), std::move(rhs)};
  return f;
}

/// Structural equality (predicates compared by identity or name).
inline bool structurally_equal(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == NodeKind::Pred)
    return a.pred == b.pred || a.pred->name == b.pred->name;
  if (a.t1 != b.t1 || a.t2 != b.t2) return false;
  if (a.children.size() != b.children.size()) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!structurally_equal(*a.children[i], *b.children[i])) return false;
  return true;
}

/// Discrete-time signal: one 12-dim sample per knot.
class Signal {
 public:
  Signal() = default;
  explicit Signal(std::vector<Sample> samples) : samples_(std::move(samples)) {}

  static Signal zeros(std::size_t length) {
    return Signal(std::vector<Sample>(length, Sample::Zero()));
  }

  std::size_t size() const { return samples_.size(); }
  const Sample& operator[](std::size_t i) const { return samples_[i]; }
  Sample& operator[](std::size_t i) { return samples_[i]; }
  const std::vector<Sample>& samples() const { return samples_; }

  bool all_finite() const {
    for (const auto& s : samples_)
      if (!s.allFinite()) return false;
    return true;
  }

 private:
  std::vector<Sample> samples_;
};

}  // namespace locostl::stl
