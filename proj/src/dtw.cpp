#include "rampkit/dtw.hpp"

#include "rampkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>

namespace rampkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct RowSpan {
    std::size_t lo = 0; // inclusive
    std::size_t hi = 0; // inclusive
};

// Step that reached a cell.
enum class Move : std::uint8_t { Start, Diagonal, Up, Left };

// DTW restricted to a per-row column window. Rows must satisfy lo[0] == 0,
// hi[n-1] == m-1 and be monotone so that a path exists.
DtwResult dtw_window(std::span<const double> x, std::span<const double> y, const std::vector<RowSpan>& window) {
    const std::size_t n = x.size();
    std::vector<std::vector<double>> cost(n);
    std::vector<std::vector<Move>> moves(n);

    const auto at = [&](std::size_t i, std::size_t j) -> double {
        const auto& w = window[i];
        if (j < w.lo || j > w.hi) return kInf;
        return cost[i][j - w.lo];
    };

    for (std::size_t i = 0; i < n; ++i) {
        const auto& w = window[i];
        cost[i].assign(w.hi - w.lo + 1, kInf);
        moves[i].assign(w.hi - w.lo + 1, Move::Start);
        for (std::size_t j = w.lo; j <= w.hi; ++j) {
            const double local = std::abs(x[i] - y[j]);
            double best;
            Move move;
            if (i == 0 && j == 0) {
                best = 0.0;
                move = Move::Start;
            } else {
                // Diagonal wins ties, then vertical, then horizontal.
                best = kInf;
                move = Move::Start;
                if (i > 0 && j > 0) {
                    best = at(i - 1, j - 1);
                    move = Move::Diagonal;
                }
                if (i > 0 && at(i - 1, j) < best) {
                    best = at(i - 1, j);
                    move = Move::Up;
                }
                if (j > 0 && j - 1 >= w.lo && cost[i][j - 1 - w.lo] < best) {
                    best = cost[i][j - 1 - w.lo];
                    move = Move::Left;
                }
            }
            cost[i][j - w.lo] = best + local;
            moves[i][j - w.lo] = move;
        }
    }

    DtwResult out;
    const std::size_t m_last = window[n - 1].hi;
    out.distance = at(n - 1, m_last);
    std::size_t i = n - 1, j = m_last;
    for (;;) {
        out.path.pairs.emplace_back(i, j);
        const Move move = moves[i][j - window[i].lo];
        if (move == Move::Start) break;
        if (move == Move::Diagonal) {
            --i;
            --j;
        } else if (move == Move::Up) {
            --i;
        } else {
            --j;
        }
    }
    std::reverse(out.path.pairs.begin(), out.path.pairs.end());
    return out;
}

void require_non_empty(std::span<const double> x, std::span<const double> y) {
    if (x.empty() || y.empty()) throw Error(ErrorKind::EmptyInput, "DTW needs two non-empty sequences");
}

std::vector<RowSpan> project_window(const WarpPath& coarse, std::size_t n, std::size_t m, std::size_t radius) {
    std::vector<RowSpan> window(n, RowSpan{m, 0});
    const auto mark = [&](std::size_t a, std::size_t b) {
        const std::size_t r_lo = a >= radius ? a - radius : 0;
        const std::size_t r_hi = std::min(n - 1, a + radius);
        const std::size_t c_lo = b >= radius ? b - radius : 0;
        const std::size_t c_hi = std::min(m - 1, b + radius);
        for (std::size_t r = r_lo; r <= r_hi; ++r) {
            window[r].lo = std::min(window[r].lo, c_lo);
            window[r].hi = std::max(window[r].hi, c_hi);
        }
    };
    for (const auto& [ci, cj] : coarse.pairs) {
        for (std::size_t a = 2 * ci; a <= 2 * ci + 1 && a < n; ++a)
            for (std::size_t b = 2 * cj; b <= 2 * cj + 1 && b < m; ++b) mark(a, b);
    }
    return window;
}

} // namespace

std::vector<double> coarsen(std::span<const double> x) {
    std::vector<double> out;
    out.reserve((x.size() + 1) / 2);
    std::size_t i = 0;
    for (; i + 1 < x.size(); i += 2) out.push_back(0.5 * (x[i] + x[i + 1]));
    if (i < x.size()) out.push_back(x[i]);
    return out;
}

DtwResult dtw(std::span<const double> x, std::span<const double> y) {
    require_non_empty(x, y);
    std::vector<RowSpan> full(x.size(), RowSpan{0, y.size() - 1});
    return dtw_window(x, y, full);
}

DtwResult fastdtw(std::span<const double> x, std::span<const double> y, std::size_t radius) {
    require_non_empty(x, y);
    const std::size_t min_size = radius + 2;
    if (x.size() < min_size || y.size() < min_size) return dtw(x, y);
    const auto xs = coarsen(x);
    const auto ys = coarsen(y);
    const auto low = fastdtw(xs, ys, radius);
    return dtw_window(x, y, project_window(low.path, x.size(), y.size(), radius));
}

} // namespace rampkit
