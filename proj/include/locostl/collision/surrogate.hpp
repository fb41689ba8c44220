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

#include <array>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "locostl/collision/leg_model.hpp"
#include "locostl/collision/mlp.hpp"
#include "locostl/rom/model.hpp"

namespace locostl::collision {

inline constexpr std::uint32_t kWeightsFormatVersion = 1;
inline constexpr char kWeightsMagic[9] = "LSMLP001";

/// Uniform sampling box over (p_com.xy, p_swing.xyz), stance-foot frame.
struct SamplerBox {
  Eigen::Vector2d com_x{-0.35, 0.35};
  Eigen::Vector2d com_y{-0.30, 0.10};   // left stance: CoM right of the foot
  Eigen::Vector2d swing_x{-0.55, 0.55};
  Eigen::Vector2d swing_y{-0.70, 0.30};
  Eigen::Vector2d swing_z{0.0, 0.25};
};

struct Dataset {
  Eigen::MatrixXd features;  // kFeatureDim x n
  Eigen::MatrixXd labels;    // kNumPairs x n
  long n() const { return features.cols(); }
};

/// Labeled leg configurations, reproducible under a fixed seed.
inline Dataset generate_dataset(const LegGeometryModel& model, long n,
                                const SamplerBox& box, std::uint64_t seed,
                                double com_height = 0.8) {
  if (n < 1) throw std::invalid_argument("dataset size must be >= 1");
  Dataset ds;
  ds.features.resize(kFeatureDim, n);
  ds.labels.resize(kNumPairs, n);
  std::mt19937_64 rng(seed);
  auto uni = [&rng](const Eigen::Vector2d& range) {
    std::uniform_real_distribution<double> d(range[0], range[1]);
    return d(rng);
  };
  for (long i = 0; i < n; ++i) {
    double cx = uni(box.com_x), cy = uni(box.com_y);
    double sx = uni(box.swing_x), sy = uni(box.swing_y), sz = uni(box.swing_z);
    ds.features.col(i) << cx, cy, sx, sy, sz;
    auto d = model.pair_distances({cx, cy, com_height}, {sx, sy, sz});
    for (int p = 0; p < kNumPairs; ++p) ds.labels(p, i) = d[p];
  }
  return ds;
}

inline void write_dataset_csv(const Dataset& ds, std::ostream& os) {
  os << "p_com_x,p_com_y,p_swing_x,p_swing_y,p_swing_z";
  for (const char* name : kPairNames) os << ",d_" << name;
  os << "\n";
  os.precision(17);
  for (long i = 0; i < ds.n(); ++i) {
    for (int c = 0; c < kFeatureDim; ++c)
      os << (c ? "," : "") << ds.features(c, i);
    for (int p = 0; p < kNumPairs; ++p) os << "," << ds.labels(p, i);
    os << "\n";
  }
}

struct TrainParams {
  SgdSchedule schedule;
  double train_fraction = 0.9;
  std::uint64_t seed = 1;
  double target_max_err = 0.03;   // held-out, per pair [m]
  double target_mean_err = 0.005;
};

struct PairMetrics {
  double max_abs_err = 0.0;
  double mean_abs_err = 0.0;
};

struct TrainReport {
  std::array<PairMetrics, kNumPairs> held_out;
  bool met_targets = false;
};

/// Six per-pair distance nets plus the mirroring data for right-stance use.
class DistanceSurrogate {
 public:
  std::array<Mlp, kNumPairs> nets;

  bool trained() const { return trained_; }
  void mark_trained() { trained_ = true; }

  /// Distances in the canonical left-stance chart.
  std::array<double, kNumPairs> eval(const Mlp::Feature& f) const {
    std::array<double, kNumPairs> out;
    for (int p = 0; p < kNumPairs; ++p) out[p] = nets[p].forward(f);
    return out;
  }

  std::array<double, kNumPairs> eval_grad(
      const Mlp::Feature& f,
      std::array<Mlp::Feature, kNumPairs>& grads) const {
    std::array<double, kNumPairs> out;
    for (int p = 0; p < kNumPairs; ++p)
      out[p] = nets[p].forward_grad(f, &grads[p]);
    return out;
  }

  // Parity-aware evaluation: right-stance states are mirrored into the
  // canonical chart and the pair outputs are permuted back, so the returned
  // order always refers to the physical left/right legs.
  std::array<double, kNumPairs> eval_parity(
      const Mlp::Feature& f, rom::StanceParity parity,
      std::array<Mlp::Feature, kNumPairs>* grads = nullptr) const {
    if (parity == rom::StanceParity::LeftStance) {
      std::array<Mlp::Feature, kNumPairs> g;
      auto v = grads ? eval_grad(f, *grads) : eval(f);
      return v;
    }
    Mlp::Feature fm = f;
    fm[1] = -fm[1];  // p_com.y
    fm[3] = -fm[3];  // p_swing.y
    std::array<double, kNumPairs> canonical;
    std::array<Mlp::Feature, kNumPairs> gcanon;
    canonical = grads ? eval_grad(fm, gcanon) : eval(fm);
    std::array<double, kNumPairs> out;
    for (int p = 0; p < kNumPairs; ++p) {
      out[p] = canonical[kMirroredPair[p]];
      if (grads) {
        Mlp::Feature g = gcanon[kMirroredPair[p]];
        g[1] = -g[1];
        g[3] = -g[3];
        (*grads)[p] = g;
      }
    }
    return out;
  }

  void save(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open weights file for writing");
    os.write(kWeightsMagic, 8);
    write_u32(os, kWeightsFormatVersion);
    write_u32(os, kNumPairs);
    for (const Mlp& net : nets) {
      write_u32(os, 3);  // layers
      for (std::uint32_t d : {std::uint32_t(kFeatureDim),
                              std::uint32_t(kHiddenUnits),
                              std::uint32_t(kHiddenUnits), 1u})
        write_u32(os, d);
      write_block(os, net.feat_mean.data(), kFeatureDim);
      write_block(os, net.feat_scale.data(), kFeatureDim);
      write_block(os, &net.label_offset, 1);
      write_block(os, &net.label_scale, 1);
      write_matrix(os, net.w1);
      write_block(os, net.b1.data(), kHiddenUnits);
      write_matrix(os, net.w2);
      write_block(os, net.b2.data(), kHiddenUnits);
      write_matrix(os, net.w3);
      write_block(os, &net.b3, 1);
    }
  }

  static DistanceSurrogate load(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open weights file: " + path);
    char magic[8];
    is.read(magic, 8);
    if (std::string(magic, 8) != std::string(kWeightsMagic, 8))
      throw std::runtime_error("bad weights magic");
    if (read_u32(is) != kWeightsFormatVersion)
      throw std::runtime_error("unsupported weights version");
    if (read_u32(is) != kNumPairs)
      throw std::runtime_error("unexpected net count");
    DistanceSurrogate s;
    for (Mlp& net : s.nets) {
      if (read_u32(is) != 3) throw std::runtime_error("unexpected layer count");
      std::uint32_t dims[4];
      for (auto& d : dims) d = read_u32(is);
      if (dims[0] != kFeatureDim || dims[1] != kHiddenUnits ||
          dims[2] != kHiddenUnits || dims[3] != 1)
        throw std::runtime_error("unexpected layer dims");
      read_block(is, net.feat_mean.data(), kFeatureDim);
      read_block(is, net.feat_scale.data(), kFeatureDim);
      read_block(is, &net.label_offset, 1);
      read_block(is, &net.label_scale, 1);
      read_matrix(is, net.w1);
      read_block(is, net.b1.data(), kHiddenUnits);
      read_matrix(is, net.w2);
      read_block(is, net.b2.data(), kHiddenUnits);
      read_matrix(is, net.w3);
      read_block(is, &net.b3, 1);
    }
    if (!is) throw std::runtime_error("truncated weights file");
    s.trained_ = true;
    return s;
  }

 private:
  static void write_u32(std::ostream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), 4);
  }
  static std::uint32_t read_u32(std::istream& is) {
    std::uint32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), 4);
    return v;
  }
  static void write_block(std::ostream& os, const double* p, long n) {
    os.write(reinterpret_cast<const char*>(p), n * 8);
  }
  static void read_block(std::istream& is, double* p, long n) {
    is.read(reinterpret_cast<char*>(p), n * 8);
  }
  template <typename M>
  static void write_matrix(std::ostream& os, const M& m) {
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) {
        double v = m(r, c);
        write_block(os, &v, 1);
      }
  }
  template <typename M>
  static void read_matrix(std::istream& is, M& m) {
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) read_block(is, &m(r, c), 1);
  }

  bool trained_ = false;
};

// Plain mini-batch gradient descent with the fixed schedule; one pass per
// pair. Deterministic for a fixed seed (single-threaded, seeded shuffles).
inline DistanceSurrogate train_surrogates(const Dataset& ds,
                                          const TrainParams& params,
                                          TrainReport* report = nullptr) {
  const long n = ds.n();
  const long n_train = std::max<long>(1, long(params.train_fraction * n));
  const long n_test = n - n_train;

  // normalize features once (shared across nets)
  Mlp::Feature mean = ds.features.leftCols(n_train).rowwise().mean();
  Mlp::Feature scale;
  for (int c = 0; c < kFeatureDim; ++c) {
    double var = (ds.features.row(c).leftCols(n_train).array() - mean[c])
                     .square()
                     .mean();
    scale[c] = std::max(std::sqrt(var), 1e-9);
  }
  Eigen::MatrixXd xn = ds.features;
  for (int c = 0; c < kFeatureDim; ++c)
    xn.row(c) = (xn.row(c).array() - mean[c]) / scale[c];

  DistanceSurrogate s;
  TrainReport rep;
  bool all_met = true;
  std::mt19937_64 rng(params.seed);
  for (int p = 0; p < kNumPairs; ++p) {
    Mlp& net = s.nets[p];
    net.init_xavier(rng);
    net.feat_mean = mean;
    net.feat_scale = scale;
    double lmean = ds.labels.row(p).leftCols(n_train).mean();
    double lvar = (ds.labels.row(p).leftCols(n_train).array() - lmean)
                      .square()
                      .mean();
    net.label_offset = lmean;
    net.label_scale = std::max(std::sqrt(lvar), 1e-9);
    Eigen::RowVectorXd yn =
        (ds.labels.row(p).array() - lmean) / net.label_scale;

    std::vector<int> order(n_train);
    std::iota(order.begin(), order.end(), 0);
    for (int epoch = 0; epoch < params.schedule.epochs; ++epoch) {
      std::shuffle(order.begin(), order.end(), rng);
      sgd_epoch(net, xn, yn, order, params.schedule.batch_size,
                params.schedule.learning_rate(epoch));
    }

    PairMetrics m;
    long n_eval = n_test > 0 ? n_test : n_train;
    long off = n_test > 0 ? n_train : 0;
    for (long i = 0; i < n_eval; ++i) {
      double pred = net.forward(ds.features.col(off + i));
      double err = std::abs(pred - ds.labels(p, off + i));
      m.max_abs_err = std::max(m.max_abs_err, err);
      m.mean_abs_err += err;
    }
    m.mean_abs_err /= double(n_eval);
    rep.held_out[p] = m;
    all_met = all_met && m.max_abs_err <= params.target_max_err &&
              m.mean_abs_err <= params.target_mean_err;
  }
  rep.met_targets = all_met;
  if (report) *report = rep;
  s.mark_trained();
  return s;
}

}  // namespace locostl::collision
