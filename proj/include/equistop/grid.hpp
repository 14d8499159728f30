#pragma once

#include <vector>

namespace equistop {

enum class GridScale { Linear, Log };

/// Finite evaluation grid over a truncated slice of the state space.
///
/// The first and last cells are "censored": truncation artifacts there are
/// excluded from stop/continue verdict summaries.
struct Grid {
    double lo = 0, hi = 1;
    int n = 0;
    GridScale scale = GridScale::Linear;
    std::vector<double> points;

    static Grid linear(double lo, double hi, int n);
    static Grid logarithmic(double lo, double hi, int n);

    int size() const { return n; }
    bool censored(int i) const { return i == 0 || i == n - 1; }
    double cell_width_at(int i) const;
};

}  // namespace equistop
