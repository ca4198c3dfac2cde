#include "nlbox/lp.hpp"

#include <cassert>
#include <stdexcept>

namespace nlbox {

std::optional<std::vector<Rat>> lp_feasible_point(const RatMatrix& a, const std::vector<Rat>& b) {
    const size_t m = a.size();
    if (b.size() != m) throw std::invalid_argument("lp_feasible_point: row mismatch");
    const size_t n = m == 0 ? 0 : a[0].size();
    if (m == 0) return std::vector<Rat>(n, Rat(0));

    // Tableau over columns [structural 0..n-1 | artificial n..n+m-1 | rhs].
    // Rows are flipped so every right-hand side is nonnegative, then phase 1
    // minimizes the sum of artificials.
    const size_t cols = n + m + 1;
    RatMatrix tab(m, std::vector<Rat>(cols, Rat(0)));
    std::vector<size_t> basis(m);
    for (size_t i = 0; i < m; ++i) {
        if (a[i].size() != n) throw std::invalid_argument("lp_feasible_point: ragged matrix");
        bool flip = b[i] < 0;
        for (size_t j = 0; j < n; ++j) tab[i][j] = flip ? -a[i][j] : a[i][j];
        tab[i][n + i] = Rat(1);
        tab[i][cols - 1] = flip ? -b[i] : b[i];
        basis[i] = n + i;
    }

    // Objective row: reduced costs of min sum(artificials) = -sum of rows.
    std::vector<Rat> obj(cols, Rat(0));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < cols; ++j) obj[j] -= tab[i][j];
    for (size_t i = 0; i < m; ++i) obj[n + i] = Rat(0);

    auto pivot = [&](size_t row, size_t col) {
        Rat inv = Rat(1) / tab[row][col];
        for (size_t j = 0; j < cols; ++j) tab[row][j] *= inv;
        for (size_t i = 0; i < m; ++i) {
            if (i == row || tab[i][col] == 0) continue;
            Rat f = tab[i][col];
            for (size_t j = 0; j < cols; ++j) tab[i][j] -= f * tab[row][j];
        }
        if (obj[col] != 0) {
            Rat f = obj[col];
            for (size_t j = 0; j < cols; ++j) obj[j] -= f * tab[row][j];
        }
        basis[row] = col;
    };

    for (;;) {
        // Bland: entering variable is the lowest-index negative reduced cost.
        size_t enter = cols;
        for (size_t j = 0; j + 1 < cols; ++j) {
            if (obj[j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break;

        size_t leave = m;
        Rat best_ratio;
        for (size_t i = 0; i < m; ++i) {
            if (tab[i][enter] <= 0) continue;
            Rat ratio = tab[i][cols - 1] / tab[i][enter];
            if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m) {
            // Phase-1 objective is bounded below by 0, so this cannot happen.
            throw std::logic_error("lp_feasible_point: unbounded phase-1 objective");
        }
        pivot(leave, enter);
    }

    // Feasible iff all artificials vanished.
    Rat infeasibility(0);
    for (size_t i = 0; i < m; ++i)
        if (basis[i] >= n) infeasibility += tab[i][cols - 1];
    if (infeasibility != 0) return std::nullopt;

    std::vector<Rat> x(n, Rat(0));
    for (size_t i = 0; i < m; ++i)
        if (basis[i] < n) x[basis[i]] = tab[i][cols - 1];
    return x;
}

int rank(RatMatrix m) {
    const size_t rows = m.size();
    const size_t cols = rows == 0 ? 0 : m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t pivot_row = r;
        while (pivot_row < rows && m[pivot_row][c] == 0) ++pivot_row;
        if (pivot_row == rows) continue;
        std::swap(m[r], m[pivot_row]);
        Rat inv = Rat(1) / m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        ++r;
    }
    return static_cast<int>(r);
}

}  // namespace nlbox
