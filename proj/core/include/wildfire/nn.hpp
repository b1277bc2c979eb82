#pragma once

#include <Eigen/Dense>
#include <vector>

#include "wildfire/rng.hpp"

namespace wildfire {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Mutable view of one parameter tensor and its gradient accumulator.
struct ParamRef {
  Matrix* value;
  Matrix* grad;
};

/// Fills a weight matrix with a gain-scaled orthogonal basis.
void orthogonal_init(Matrix& weight, double gain, RandomStream& rng);

/// Fully connected layer, y = x * W^T + b. Gradients accumulate across
/// backward calls until zero_grad.
class Linear {
 public:
  Linear() = default;
  Linear(int in_features, int out_features);

  void init_orthogonal(double gain, RandomStream& rng);

  /// input: batch x in -> batch x out.
  Matrix forward(const Matrix& input) const;

  /// Accumulates parameter gradients; returns d(loss)/d(input).
  Matrix backward(const Matrix& input, const Matrix& grad_output);

  void zero_grad();
  std::vector<ParamRef> params();

  int in_features() const { return static_cast<int>(weight.cols()); }
  int out_features() const { return static_cast<int>(weight.rows()); }

  Matrix weight;  // out x in
  Matrix bias;    // 1 x out
  Matrix grad_weight;
  Matrix grad_bias;
};

Matrix relu(const Matrix& x);
/// grad wrt pre-activation given the pre-activation and upstream grad.
Matrix relu_backward(const Matrix& pre_activation, const Matrix& grad_output);

/// Row-wise numerically stable log-softmax.
Matrix log_softmax_rows(const Matrix& logits);

/// Adam with bias correction over an externally owned parameter list.
class AdamOptimizer {
 public:
  explicit AdamOptimizer(std::vector<ParamRef> params, double beta1 = 0.9,
                         double beta2 = 0.999, double epsilon = 1e-8);

  void step(double learning_rate);
  void zero_grad();

  /// Scales all gradients so their global L2 norm is at most max_norm;
  /// returns the pre-clip norm.
  double clip_grad_norm(double max_norm);

  long step_count() const { return step_count_; }
  std::vector<Matrix>& first_moments() { return m_; }
  std::vector<Matrix>& second_moments() { return v_; }
  void set_step_count(long count) { step_count_ = count; }

 private:
  std::vector<ParamRef> params_;
  std::vector<Matrix> m_;
  std::vector<Matrix> v_;
  long step_count_ = 0;
  double beta1_;
  double beta2_;
  double epsilon_;
};

}  // namespace wildfire
