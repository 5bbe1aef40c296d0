#pragma once

#include <cstddef>
#include <vector>

namespace formfit {

/// Square matrix of finite, non-negative pairing costs. Rows index players,
/// columns index formation slots.
class CostMatrix {
public:
    explicit CostMatrix(std::size_t n) : n_(n), cells_(n * n, 0.0) {}

    /// Builds from row vectors; rejects ragged (non-square) input and
    /// non-finite or negative entries.
    static CostMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t size() const { return n_; }
    double at(std::size_t row, std::size_t col) const { return cells_[row * n_ + col]; }
    void set(std::size_t row, std::size_t col, double value);

private:
    std::size_t n_;
    std::vector<double> cells_;
};

/// A perfect player-to-slot matching and its summed cost.
struct Assignment {
    std::vector<std::size_t> slot_of_player;  // player index -> slot index (a permutation)
    double total_cost = 0.0;
};

/// Minimum-cost perfect matching via shortest augmenting paths with dual
/// potentials (Jonker-Volgenant style), O(n^3). Deterministic: rows augment
/// in index order and cost ties resolve to the lowest slot index, so equal
/// inputs always yield the same assignment.
Assignment solve_assignment(const CostMatrix& costs);

}  // namespace formfit
