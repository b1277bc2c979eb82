#pragma once

#include "wildfire/nn.hpp"

namespace wildfire {

/// Per-agent observation frame layout consumed by the encoder:
/// [own sensors 7 | neighbor messages 3 x 7 | help flags 3 | reserve 1] = 32.
struct FrameLayout {
  static constexpr int kLocal = 7;
  static constexpr int kMessages = 3;
  static constexpr int kMessageDim = 7;
  static constexpr int kHelpFlags = 3;
  static constexpr int kReserve = 1;
  static constexpr int kMessageOffset = kLocal;
  static constexpr int kHelpOffset = kLocal + kMessages * kMessageDim;
  static constexpr int kReserveOffset = kHelpOffset + kHelpFlags;
  static constexpr int kFrame = kReserveOffset + kReserve;  // 32
  static constexpr int kNodeFeatures = kLocal + kHelpFlags + kReserve;  // 11
};
static_assert(FrameLayout::kFrame == 32);

/// Message-passing node embedding: every inbox message goes through one
/// shared affine+ReLU edge transform, the three transformed messages are
/// mean-aggregated, and the aggregate concatenated with the node's own
/// features feeds the affine+ReLU node transform.
///
/// Mean aggregation makes the embedding invariant to inbox ordering.
class GnnEncoder {
 public:
  GnnEncoder(int edge_hidden = 32, int embedding_dim = 32);

  void init(RandomStream& rng);

  int embedding_dim() const { return node_.out_features(); }
  int edge_hidden() const { return edge_.out_features(); }

  struct Cache {
    Matrix messages;    // (3B) x 7
    Matrix edge_pre;    // (3B) x edge_hidden
    Matrix node_input;  // B x (11 + edge_hidden)
    Matrix node_pre;    // B x embedding_dim
  };

  /// frames: B x 32 -> B x embedding_dim.
  Matrix forward(const Matrix& frames, Cache& cache) const;

  /// Accumulates parameter grads; returns d(loss)/d(frames), B x 32.
  Matrix backward(const Cache& cache, const Matrix& grad_embedding);

  /// Single-frame convenience used by the protocol-level tests.
  Vector encode(const Vector& frame) const;

  void zero_grad();
  std::vector<ParamRef> params();

  Linear edge_;  // message transform, 7 -> edge_hidden
  Linear node_;  // node transform, 11 + edge_hidden -> embedding_dim
};

}  // namespace wildfire
