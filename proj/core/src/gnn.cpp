#include "wildfire/gnn.hpp"

#include <cmath>
#include <stdexcept>

namespace wildfire {

namespace {
constexpr double kReluGain = 1.4142135623730951;  // sqrt(2)
}

GnnEncoder::GnnEncoder(int edge_hidden, int embedding_dim)
    : edge_(FrameLayout::kMessageDim, edge_hidden),
      node_(FrameLayout::kNodeFeatures + edge_hidden, embedding_dim) {}

void GnnEncoder::init(RandomStream& rng) {
  edge_.init_orthogonal(kReluGain, rng);
  node_.init_orthogonal(kReluGain, rng);
}

Matrix GnnEncoder::forward(const Matrix& frames, Cache& cache) const {
  if (frames.cols() != FrameLayout::kFrame) {
    throw std::invalid_argument("GnnEncoder: frame width must be 32");
  }
  const long batch = frames.rows();
  const int hidden = edge_.out_features();

  cache.messages.resize(batch * FrameLayout::kMessages, FrameLayout::kMessageDim);
  for (long b = 0; b < batch; ++b) {
    for (int k = 0; k < FrameLayout::kMessages; ++k) {
      cache.messages.row(b * FrameLayout::kMessages + k) = frames.block(
          b, FrameLayout::kMessageOffset + k * FrameLayout::kMessageDim, 1,
          FrameLayout::kMessageDim);
    }
  }

  cache.edge_pre = edge_.forward(cache.messages);
  const Matrix edge_act = relu(cache.edge_pre);

  cache.node_input.resize(batch, FrameLayout::kNodeFeatures + hidden);
  for (long b = 0; b < batch; ++b) {
    cache.node_input.block(b, 0, 1, FrameLayout::kLocal) =
        frames.block(b, 0, 1, FrameLayout::kLocal);
    cache.node_input.block(b, FrameLayout::kLocal, 1,
                           FrameLayout::kHelpFlags + FrameLayout::kReserve) =
        frames.block(b, FrameLayout::kHelpOffset, 1,
                     FrameLayout::kHelpFlags + FrameLayout::kReserve);
    Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(hidden);
    for (int k = 0; k < FrameLayout::kMessages; ++k) {
      mean += edge_act.row(b * FrameLayout::kMessages + k);
    }
    cache.node_input.block(b, FrameLayout::kNodeFeatures, 1, hidden) =
        mean / FrameLayout::kMessages;
  }

  cache.node_pre = node_.forward(cache.node_input);
  return relu(cache.node_pre);
}

Matrix GnnEncoder::backward(const Cache& cache, const Matrix& grad_embedding) {
  const long batch = grad_embedding.rows();
  const int hidden = edge_.out_features();

  const Matrix grad_node_pre = relu_backward(cache.node_pre, grad_embedding);
  const Matrix grad_node_input = node_.backward(cache.node_input, grad_node_pre);

  Matrix grad_edge_act(batch * FrameLayout::kMessages, hidden);
  for (long b = 0; b < batch; ++b) {
    const Eigen::RowVectorXd shared =
        grad_node_input.block(b, FrameLayout::kNodeFeatures, 1, hidden) /
        FrameLayout::kMessages;
    for (int k = 0; k < FrameLayout::kMessages; ++k) {
      grad_edge_act.row(b * FrameLayout::kMessages + k) = shared;
    }
  }
  const Matrix grad_edge_pre = relu_backward(cache.edge_pre, grad_edge_act);
  const Matrix grad_messages = edge_.backward(cache.messages, grad_edge_pre);

  Matrix grad_frames = Matrix::Zero(batch, FrameLayout::kFrame);
  for (long b = 0; b < batch; ++b) {
    grad_frames.block(b, 0, 1, FrameLayout::kLocal) =
        grad_node_input.block(b, 0, 1, FrameLayout::kLocal);
    grad_frames.block(b, FrameLayout::kHelpOffset, 1,
                      FrameLayout::kHelpFlags + FrameLayout::kReserve) =
        grad_node_input.block(b, FrameLayout::kLocal, 1,
                              FrameLayout::kHelpFlags + FrameLayout::kReserve);
    for (int k = 0; k < FrameLayout::kMessages; ++k) {
      grad_frames.block(b, FrameLayout::kMessageOffset + k * FrameLayout::kMessageDim, 1,
                        FrameLayout::kMessageDim) =
          grad_messages.row(b * FrameLayout::kMessages + k);
    }
  }
  return grad_frames;
}

Vector GnnEncoder::encode(const Vector& frame) const {
  Cache cache;
  const Matrix out = forward(frame.transpose(), cache);
  return out.row(0).transpose();
}

void GnnEncoder::zero_grad() {
  edge_.zero_grad();
  node_.zero_grad();
}

std::vector<ParamRef> GnnEncoder::params() {
  std::vector<ParamRef> out = edge_.params();
  const std::vector<ParamRef> node_params = node_.params();
  out.insert(out.end(), node_params.begin(), node_params.end());
  return out;
}

}  // namespace wildfire
