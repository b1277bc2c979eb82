#include "wildfire/nn.hpp"

#include <cmath>
#include <stdexcept>

namespace wildfire {

void orthogonal_init(Matrix& weight, double gain, RandomStream& rng) {
  const long rows = weight.rows();
  const long cols = weight.cols();
  const bool wide = cols > rows;
  Matrix gaussian(wide ? cols : rows, wide ? rows : cols);
  for (long i = 0; i < gaussian.rows(); ++i) {
    for (long j = 0; j < gaussian.cols(); ++j) {
      gaussian(i, j) = rng.normal();
    }
  }
  Eigen::HouseholderQR<Matrix> qr(gaussian);
  Matrix q = qr.householderQ() * Matrix::Identity(gaussian.rows(), gaussian.cols());
  const Matrix r = qr.matrixQR().topRows(gaussian.cols()).triangularView<Eigen::Upper>();
  for (long j = 0; j < q.cols(); ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  weight = gain * (wide ? q.transpose() : q);
}

Linear::Linear(int in_features, int out_features)
    : weight(Matrix::Zero(out_features, in_features)),
      bias(Matrix::Zero(1, out_features)),
      grad_weight(Matrix::Zero(out_features, in_features)),
      grad_bias(Matrix::Zero(1, out_features)) {}

void Linear::init_orthogonal(double gain, RandomStream& rng) {
  orthogonal_init(weight, gain, rng);
  bias.setZero();
}

Matrix Linear::forward(const Matrix& input) const {
  return (input * weight.transpose()).rowwise() + bias.row(0);
}

Matrix Linear::backward(const Matrix& input, const Matrix& grad_output) {
  grad_weight.noalias() += grad_output.transpose() * input;
  grad_bias.row(0) += grad_output.colwise().sum();
  return grad_output * weight;
}

void Linear::zero_grad() {
  grad_weight.setZero();
  grad_bias.setZero();
}

std::vector<ParamRef> Linear::params() {
  return {{&weight, &grad_weight}, {&bias, &grad_bias}};
}

Matrix relu(const Matrix& x) { return x.cwiseMax(0.0); }

Matrix relu_backward(const Matrix& pre_activation, const Matrix& grad_output) {
  return (pre_activation.array() > 0.0).select(grad_output, Matrix::Zero(grad_output.rows(), grad_output.cols()));
}

Matrix log_softmax_rows(const Matrix& logits) {
  Matrix out(logits.rows(), logits.cols());
  for (long i = 0; i < logits.rows(); ++i) {
    const double max_logit = logits.row(i).maxCoeff();
    const double log_sum =
        max_logit + std::log((logits.row(i).array() - max_logit).exp().sum());
    out.row(i) = logits.row(i).array() - log_sum;
  }
  return out;
}

AdamOptimizer::AdamOptimizer(std::vector<ParamRef> params, double beta1, double beta2,
                             double epsilon)
    : params_(std::move(params)), beta1_(beta1), beta2_(beta2), epsilon_(epsilon) {
  m_.reserve(params_.size());
  v_.reserve(params_.size());
  for (const ParamRef& p : params_) {
    m_.push_back(Matrix::Zero(p.value->rows(), p.value->cols()));
    v_.push_back(Matrix::Zero(p.value->rows(), p.value->cols()));
  }
}

void AdamOptimizer::step(double learning_rate) {
  step_count_ += 1;
  const double bias1 = 1.0 - std::pow(beta1_, static_cast<double>(step_count_));
  const double bias2 = 1.0 - std::pow(beta2_, static_cast<double>(step_count_));
  for (std::size_t i = 0; i < params_.size(); ++i) {
    const Matrix& g = *params_[i].grad;
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * g;
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * g.cwiseProduct(g);
    const Matrix m_hat = m_[i] / bias1;
    const Matrix v_hat = v_[i] / bias2;
    *params_[i].value -=
        learning_rate * (m_hat.array() / (v_hat.array().sqrt() + epsilon_)).matrix();
  }
}

void AdamOptimizer::zero_grad() {
  for (ParamRef& p : params_) p.grad->setZero();
}

double AdamOptimizer::clip_grad_norm(double max_norm) {
  double total = 0.0;
  for (const ParamRef& p : params_) {
    total += p.grad->squaredNorm();
  }
  const double norm = std::sqrt(total);
  if (norm > max_norm && norm > 0.0) {
    const double scale = max_norm / norm;
    for (ParamRef& p : params_) *p.grad *= scale;
  }
  return norm;
}

}  // namespace wildfire
