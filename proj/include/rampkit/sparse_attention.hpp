#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace rampkit::attention {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Rows of `queries` and `keys` are d-dimensional; `values` has one row per key.
struct AttentionInput {
    Matrix queries; // L_Q x d
    Matrix keys;    // L_K x d
    Matrix values;  // L_K x d_v

    std::size_t dim() const noexcept { return static_cast<std::size_t>(keys.cols()); }
    // Throws InvalidArgument on shape mismatch or non-finite entries.
    void validate() const;
};

// Scaled dot products q . k_j / sqrt(d) for every key row.
Vector scaled_scores(const Vector& q, const Matrix& keys, std::size_t d);

// KL divergence of the query's attention distribution from uniform:
// logsumexp(scores) - mean(scores) - ln L_K.
double kl_uniform_score(const Vector& q, const Matrix& keys, std::size_t d);

// Query sparsity measure: logsumexp(scores) - mean(scores).
double m_score(const Vector& q, const Matrix& keys, std::size_t d);

// Max-mean approximation over a key sample: max(scores) - mean(scores).
double m_bar_score(const Vector& q, const Matrix& key_sample, std::size_t d);

// Row-wise softmax(Q K^T / sqrt(d)) V over all keys.
Matrix dense_attention(const AttentionInput& input);

// Indices of the s largest scores; lower index wins ties. Returned ascending.
std::vector<std::size_t> top_s(std::span<const double> scores, std::size_t s);

struct SparseAttentionResult {
    Matrix output;                      // L_Q x d_v
    std::vector<std::size_t> selected;  // ascending query indices
    std::vector<double> m_bar;          // per-query sampled measure
    std::size_t samples_per_query = 0;
    std::size_t scoring_dot_products = 0;   // sampling phase
    std::size_t attention_dot_products = 0; // full attention for selected rows
};

// Keys sampled per query: ceil(ceil(factor * L_K ln L_K) / L_Q), clamped to [1, L_K].
std::size_t samples_per_query(std::size_t l_q, std::size_t l_k, double sample_factor);

// Scores every query on a uniform with-replacement key sample, keeps the top
// s by m_bar, gives those full softmax attention and fills the rest with the
// column mean of V. Deterministic for a fixed seed. Throws InvalidS.
SparseAttentionResult prob_sparse_attention(const AttentionInput& input, std::size_t s, double sample_factor = 1.0,
                                            std::uint64_t seed = 0);

} // namespace rampkit::attention
