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
#include <cstdint>
#include <random>

namespace locostl::collision {

inline constexpr int kFeatureDim = 5;   // (p_com.xy, p_swing.xyz)
inline constexpr int kHiddenUnits = 24;

// Two hidden layers of 24 tanh units and a linear scalar head. Inputs and the
// label are affinely normalized; the maps are stored with the weights so a
// loaded net is self-contained.
class Mlp {
 public:
  using Feature = Eigen::Matrix<double, kFeatureDim, 1>;
  using Hidden = Eigen::Matrix<double, kHiddenUnits, 1>;

  Eigen::Matrix<double, kHiddenUnits, kFeatureDim> w1;
  Hidden b1 = Hidden::Zero();
  Eigen::Matrix<double, kHiddenUnits, kHiddenUnits> w2;
  Hidden b2 = Hidden::Zero();
  Eigen::Matrix<double, 1, kHiddenUnits> w3;
  double b3 = 0.0;

  Feature feat_mean = Feature::Zero();
  Feature feat_scale = Feature::Ones();
  double label_offset = 0.0;
  double label_scale = 1.0;

  void init_xavier(std::mt19937_64& rng) {
    auto fill = [&rng](auto& m, int fan_in, int fan_out) {
      double limit = std::sqrt(6.0 / (fan_in + fan_out));
      std::uniform_real_distribution<double> dist(-limit, limit);
      for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) m(r, c) = dist(rng);
    };
    fill(w1, kFeatureDim, kHiddenUnits);
    fill(w2, kHiddenUnits, kHiddenUnits);
    fill(w3, kHiddenUnits, 1);
    b1.setZero();
    b2.setZero();
    b3 = 0.0;
  }

  double forward(const Feature& x_raw) const {
    Feature x = (x_raw - feat_mean).cwiseQuotient(feat_scale);
    Hidden a1 = (w1 * x + b1).array().tanh();
    Hidden a2 = (w2 * a1 + b2).array().tanh();
    double y = w3 * a2 + b3;
    return y * label_scale + label_offset;
  }

  /// Value and gradient in the raw (unnormalized) input.
  double forward_grad(const Feature& x_raw, Feature* grad) const {
    Feature x = (x_raw - feat_mean).cwiseQuotient(feat_scale);
    Hidden z1 = w1 * x + b1;
    Hidden a1 = z1.array().tanh();
    Hidden z2 = w2 * a1 + b2;
    Hidden a2 = z2.array().tanh();
    double y = w3 * a2 + b3;
    if (grad) {
      Hidden d2 = (1.0 - a2.array().square()).matrix().asDiagonal() *
                  w3.transpose();
      Hidden d1 =
          (1.0 - a1.array().square()).matrix().asDiagonal() * (w2.transpose() * d2);
      *grad = (w1.transpose() * d1).cwiseQuotient(feat_scale) * label_scale;
    }
    return y * label_scale + label_offset;
  }

  // Batched normalized-space pass used by the trainer: columns are samples.
  Eigen::RowVectorXd forward_norm_batch(const Eigen::MatrixXd& xn,
                                        Eigen::MatrixXd* a1_out,
                                        Eigen::MatrixXd* a2_out) const {
    Eigen::MatrixXd a1 =
        ((w1 * xn).colwise() + b1).array().tanh().matrix();
    Eigen::MatrixXd a2 =
        ((w2 * a1).colwise() + b2).array().tanh().matrix();
    Eigen::RowVectorXd y = (w3 * a2).array() + b3;
    if (a1_out) *a1_out = std::move(a1);
    if (a2_out) *a2_out = std::move(a2);
    return y;
  }
};

struct SgdSchedule {
  int epochs = 60;
  int batch_size = 128;
  double lr0 = 0.08;
  double lr_decay = 0.6;      // multiplied in every lr_decay_every epochs
  int lr_decay_every = 8;
  double learning_rate(int epoch) const {
    return lr0 * std::pow(lr_decay, epoch / lr_decay_every);
  }
};

// One epoch of plain mini-batch gradient descent on squared error, in
// normalized space. Sample order comes from the caller's permutation so runs
// are reproducible.
inline void sgd_epoch(Mlp& net, const Eigen::MatrixXd& xn,
                      const Eigen::RowVectorXd& yn,
                      const std::vector<int>& order, int batch_size,
                      double lr) {
  const int n = static_cast<int>(order.size());
  for (int start = 0; start < n; start += batch_size) {
    int b = std::min(batch_size, n - start);
    Eigen::MatrixXd xb(kFeatureDim, b);
    Eigen::RowVectorXd yb(b);
    for (int i = 0; i < b; ++i) {
      xb.col(i) = xn.col(order[start + i]);
      yb(i) = yn(order[start + i]);
    }
    Eigen::MatrixXd a1, a2;
    Eigen::RowVectorXd pred = net.forward_norm_batch(xb, &a1, &a2);
    Eigen::RowVectorXd err = 2.0 * (pred - yb) / double(b);

    Eigen::MatrixXd d3 = err;                                   // 1 x b
    Eigen::MatrixXd d2 = (net.w3.transpose() * d3).array() *
                         (1.0 - a2.array().square());           // 24 x b
    Eigen::MatrixXd d1 = (net.w2.transpose() * d2).array() *
                         (1.0 - a1.array().square());           // 24 x b

    net.w3 -= lr * (d3 * a2.transpose());
    net.b3 -= lr * d3.sum();
    net.w2 -= lr * (d2 * a1.transpose());
    net.b2 -= lr * d2.rowwise().sum();
    net.w1 -= lr * (d1 * xb.transpose());
    net.b1 -= lr * d1.rowwise().sum();
  }
}

}  // namespace locostl::collision
