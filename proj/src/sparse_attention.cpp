#include "rampkit/sparse_attention.hpp"

#include "rampkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <fmt/format.h>

namespace rampkit::attention {

void AttentionInput::validate() const {
    if (keys.rows() == 0 || queries.rows() == 0)
        throw Error(ErrorKind::InvalidArgument, "attention needs at least one query and one key");
    if (keys.cols() < 1 || queries.cols() != keys.cols())
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("query dim {} != key dim {}", queries.cols(), keys.cols()));
    if (values.rows() != keys.rows())
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("{} value rows for {} keys", values.rows(), keys.rows()));
    if (!queries.allFinite() || !keys.allFinite() || !values.allFinite())
        throw Error(ErrorKind::NonFiniteValue, "attention input has non-finite entries");
}

namespace {

double log_sum_exp(const Vector& v) {
    const double m = v.maxCoeff();
    return m + std::log((v.array() - m).exp().sum());
}

void require_keys(const Matrix& keys, std::size_t d) {
    if (keys.rows() == 0) throw Error(ErrorKind::EmptyInput, "no keys");
    if (d == 0) throw Error(ErrorKind::InvalidArgument, "key dimension must be >= 1");
}

Eigen::RowVectorXd softmax_row(const Vector& scores) {
    const double m = scores.maxCoeff();
    Eigen::RowVectorXd w = (scores.array() - m).exp().matrix().transpose();
    return w / w.sum();
}

} // namespace

Vector scaled_scores(const Vector& q, const Matrix& keys, std::size_t d) {
    require_keys(keys, d);
    return (keys * q) / std::sqrt(static_cast<double>(d));
}

double kl_uniform_score(const Vector& q, const Matrix& keys, std::size_t d) {
    return m_score(q, keys, d) - std::log(static_cast<double>(keys.rows()));
}

double m_score(const Vector& q, const Matrix& keys, std::size_t d) {
    const Vector s = scaled_scores(q, keys, d);
    return log_sum_exp(s) - s.mean();
}

double m_bar_score(const Vector& q, const Matrix& key_sample, std::size_t d) {
    const Vector s = scaled_scores(q, key_sample, d);
    return s.maxCoeff() - s.mean();
}

Matrix dense_attention(const AttentionInput& input) {
    input.validate();
    const auto d = input.dim();
    Matrix out(input.queries.rows(), input.values.cols());
    for (Eigen::Index i = 0; i < input.queries.rows(); ++i) {
        const Vector q = input.queries.row(i).transpose();
        out.row(i) = softmax_row(scaled_scores(q, input.keys, d)) * input.values;
    }
    return out;
}

std::vector<std::size_t> top_s(std::span<const double> scores, std::size_t s) {
    std::vector<std::size_t> idx(scores.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    s = std::min(s, idx.size());
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(s), idx.end(),
                      [&](std::size_t a, std::size_t b) {
                          return scores[a] > scores[b] || (scores[a] == scores[b] && a < b);
                      });
    idx.resize(s);
    std::sort(idx.begin(), idx.end());
    return idx;
}

std::size_t samples_per_query(std::size_t l_q, std::size_t l_k, double sample_factor) {
    const double total = std::ceil(sample_factor * static_cast<double>(l_k) * std::log(static_cast<double>(l_k)));
    const auto per_query = static_cast<std::size_t>(std::ceil(total / static_cast<double>(l_q)));
    return std::clamp<std::size_t>(per_query, 1, l_k);
}

SparseAttentionResult prob_sparse_attention(const AttentionInput& input, std::size_t s, double sample_factor,
                                            std::uint64_t seed) {
    input.validate();
    const auto l_q = static_cast<std::size_t>(input.queries.rows());
    const auto l_k = static_cast<std::size_t>(input.keys.rows());
    if (s < 1 || s > l_q) throw Error(ErrorKind::InvalidS, fmt::format("s = {} outside [1, {}]", s, l_q));
    if (!(sample_factor > 0.0)) throw Error(ErrorKind::InvalidArgument, "sample_factor must be positive");
    const auto d = input.dim();

    SparseAttentionResult out;
    out.samples_per_query = samples_per_query(l_q, l_k, sample_factor);

    // Raw engine output only; distribution objects are implementation-defined.
    std::mt19937_64 rng(seed);
    Matrix sample(static_cast<Eigen::Index>(out.samples_per_query), input.keys.cols());
    out.m_bar.resize(l_q);
    for (std::size_t i = 0; i < l_q; ++i) {
        for (std::size_t u = 0; u < out.samples_per_query; ++u)
            sample.row(static_cast<Eigen::Index>(u)) = input.keys.row(static_cast<Eigen::Index>(rng() % l_k));
        out.m_bar[i] = m_bar_score(input.queries.row(static_cast<Eigen::Index>(i)).transpose(), sample, d);
        out.scoring_dot_products += out.samples_per_query;
    }

    out.selected = top_s(out.m_bar, s);
    const Eigen::RowVectorXd fallback = input.values.colwise().mean();
    out.output = fallback.replicate(static_cast<Eigen::Index>(l_q), 1);
    for (std::size_t i : out.selected) {
        const Vector q = input.queries.row(static_cast<Eigen::Index>(i)).transpose();
        out.output.row(static_cast<Eigen::Index>(i)) = softmax_row(scaled_scores(q, input.keys, d)) * input.values;
        out.attention_dot_products += l_k;
    }
    return out;
}

} // namespace rampkit::attention
