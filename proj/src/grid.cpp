#include "equistop/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace equistop {

namespace {
void validate(double lo, double hi, int n) {
    if (!(lo < hi)) throw std::invalid_argument("grid: lo must be < hi");
    if (n < 16) throw std::invalid_argument("grid: need at least 16 points");
}
}  // namespace

Grid Grid::linear(double lo, double hi, int n) {
    validate(lo, hi, n);
    Grid g;
    g.lo = lo;
    g.hi = hi;
    g.n = n;
    g.scale = GridScale::Linear;
    g.points.resize(n);
    for (int i = 0; i < n; ++i)
        g.points[i] = lo + (hi - lo) * i / (n - 1);
    g.points.back() = hi;
    return g;
}

Grid Grid::logarithmic(double lo, double hi, int n) {
    validate(lo, hi, n);
    if (!(lo > 0)) throw std::invalid_argument("log grid: lo must be > 0");
    Grid g;
    g.lo = lo;
    g.hi = hi;
    g.n = n;
    g.scale = GridScale::Log;
    g.points.resize(n);
    const double llo = std::log(lo), lhi = std::log(hi);
    for (int i = 0; i < n; ++i)
        g.points[i] = std::exp(llo + (lhi - llo) * i / (n - 1));
    g.points.back() = hi;
    return g;
}

double Grid::cell_width_at(int i) const {
    if (i + 1 < n) return points[i + 1] - points[i];
    return points[n - 1] - points[n - 2];
}

}  // namespace equistop
