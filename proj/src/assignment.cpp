#include "formfit/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "formfit/errors.hpp"

namespace formfit {

namespace {

void check_entry(double value, std::size_t row, std::size_t col) {
    if (!std::isfinite(value)) {
        throw InvalidInputError(fmt::format("cost matrix entry ({}, {}) is not finite", row, col));
    }
    if (value < 0.0) {
        throw InvalidInputError(fmt::format("cost matrix entry ({}, {}) is negative: {}", row, col, value));
    }
}

}  // namespace

CostMatrix CostMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    CostMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) {
            throw InvalidInputError(
                fmt::format("cost matrix is not square: row {} has {} entries, expected {}", i,
                            rows[i].size(), n));
        }
        for (std::size_t j = 0; j < n; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

void CostMatrix::set(std::size_t row, std::size_t col, double value) {
    check_entry(value, row, col);
    cells_[row * n_ + col] = value;
}

Assignment solve_assignment(const CostMatrix& costs) {
    const std::size_t n = costs.size();
    if (n == 0) throw InvalidInputError("cost matrix is empty");

    constexpr double kInf = std::numeric_limits<double>::infinity();
    const std::size_t virt = n;  // virtual column seeding each augmentation

    std::vector<double> row_potential(n, 0.0);
    std::vector<double> col_potential(n + 1, 0.0);
    std::vector<double> min_reduced(n + 1, kInf);
    std::vector<std::size_t> owner(n + 1, n);  // owner[col] = assigned row; n = free
    std::vector<std::size_t> parent(n + 1, virt);
    std::vector<char> visited(n + 1, 0);

    for (std::size_t row = 0; row < n; ++row) {
        std::fill(min_reduced.begin(), min_reduced.end(), kInf);
        std::fill(visited.begin(), visited.end(), 0);
        owner[virt] = row;
        std::size_t col = virt;
        do {
            visited[col] = 1;
            const std::size_t pivot_row = owner[col];
            double delta = kInf;
            std::size_t next_col = virt;
            for (std::size_t j = 0; j < n; ++j) {
                if (visited[j]) continue;
                const double reduced =
                    costs.at(pivot_row, j) - row_potential[pivot_row] - col_potential[j];
                if (reduced < min_reduced[j]) {
                    min_reduced[j] = reduced;
                    parent[j] = col;
                }
                if (min_reduced[j] < delta) {
                    delta = min_reduced[j];
                    next_col = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (visited[j]) {
                    row_potential[owner[j]] += delta;
                    col_potential[j] -= delta;
                } else {
                    min_reduced[j] -= delta;
                }
            }
            col = next_col;
        } while (owner[col] != n);

        while (col != virt) {
            const std::size_t prev = parent[col];
            owner[col] = owner[prev];
            col = prev;
        }
    }

    Assignment result;
    result.slot_of_player.assign(n, 0);
    for (std::size_t j = 0; j < n; ++j) result.slot_of_player[owner[j]] = j;

    // Sum the selected entries directly rather than reading the duals so the
    // reported cost is exactly the sum a caller would recompute.
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += costs.at(i, result.slot_of_player[i]);
    result.total_cost = total;
    return result;
}

}  // namespace formfit
