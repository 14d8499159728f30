#include "equistop/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "equistop/errors.hpp"

namespace equistop {

namespace {

// Symmetric tridiagonal eigenvalue solver (implicit QL with Wilkinson shifts)
// tracking only the first component of each eigenvector, which is all the
// Golub-Welsch weight formula needs.  diag/offdiag are overwritten; first[i]
// ends up as the first component of the i-th eigenvector.
void tridiag_eigen_first_components(std::vector<double>& diag,
                                    std::vector<double>& offdiag,
                                    std::vector<double>& first) {
    const int n = static_cast<int>(diag.size());
    first.assign(n, 0.0);
    first[0] = 1.0;
    offdiag.push_back(0.0);

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
                if (std::abs(offdiag[m]) <= 1e-15 * dd) break;
            }
            if (m != l) {
                if (iter++ == 60)
                    throw ConvergenceError("tridiagonal QL failed to converge");
                double g = (diag[l + 1] - diag[l]) / (2.0 * offdiag[l]);
                double r = std::hypot(g, 1.0);
                g = diag[m] - diag[l] + offdiag[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * offdiag[i];
                    double b = c * offdiag[i];
                    r = std::hypot(f, g);
                    offdiag[i + 1] = r;
                    if (r == 0.0) {
                        diag[i + 1] -= p;
                        offdiag[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = diag[i + 1] - p;
                    r = (diag[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    diag[i + 1] = g + p;
                    g = c * r - b;
                    f = first[i + 1];
                    first[i + 1] = s * first[i] + c * f;
                    first[i] = c * first[i] - s * f;
                }
                if (r == 0.0 && m - 1 >= l) continue;
                diag[l] -= p;
                offdiag[l] = g;
                offdiag[m] = 0.0;
            }
        } while (m != l);
    }
}

// Fixed tanh-sinh rule for ∫_a^b f(x) dx; level 8 resolves the algebraic
// endpoint kinks in this codebase's integrands to machine precision.
double tanh_sinh(const std::function<double(double)>& f, double a, double b) {
    const double h = 1.0 / 32.0;
    const int kmax = static_cast<int>(6.1 / h);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double total = 0.0;
    for (int k = -kmax; k <= kmax; ++k) {
        const double t = k * h;
        const double sh = std::sinh(t);
        const double x = std::tanh(0.5 * M_PI * sh);
        const double ch = std::cosh(0.5 * M_PI * sh);
        const double w = 0.5 * M_PI * std::cosh(t) / (ch * ch);
        const double xx = mid + half * x;
        if (xx <= a || xx >= b) continue;
        const double v = f(xx);
        if (!std::isfinite(v))
            throw EvaluationError("non-finite integrand in tanh-sinh rule", xx);
        total += w * v;
    }
    return total * half * h;
}

}  // namespace

QuadratureRule::QuadratureRule(int order) {
    if (order < 1) throw std::invalid_argument("quadrature order must be >= 1");
    // Jacobi matrix for Laguerre polynomials (weight e^{-s}, alpha = 0):
    // diagonal 2i+1, off-diagonal i.
    std::vector<double> diag(order), off(order > 1 ? order - 1 : 0), first;
    for (int i = 0; i < order; ++i) diag[i] = 2.0 * i + 1.0;
    for (int i = 0; i + 1 < order; ++i) off[i] = i + 1.0;
    tridiag_eigen_first_components(diag, off, first);

    // Sort nodes ascending, weights = mu0 * v0^2 with mu0 = ∫ e^{-s} ds = 1.
    std::vector<int> idx(order);
    for (int i = 0; i < order; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return diag[a] < diag[b]; });
    nodes_.resize(order);
    weights_.resize(order);
    for (int i = 0; i < order; ++i) {
        nodes_[i] = diag[idx[i]];
        weights_[i] = first[idx[i]] * first[idx[i]];
    }
}

const QuadratureRule& QuadratureRule::laguerre(int order) {
    static std::map<int, QuadratureRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end())
        it = cache.emplace(order, QuadratureRule(order)).first;
    return it->second;
}

double QuadratureRule::apply(const std::function<double(double)>& h) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const double v = h(nodes_[i]);
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg << "non-finite integrand value at node s=" << nodes_[i];
            throw EvaluationError(msg.str(), nodes_[i]);
        }
        acc += weights_[i] * v;
    }
    return acc;
}

double integrate_exp(const std::function<double(double)>& h,
                     const IntegrateOptions& opts) {
    const double coarse = QuadratureRule::laguerre(opts.order).apply(h);
    const double fine = QuadratureRule::laguerre(opts.cross_order).apply(h);
    const double scale = std::max({1.0, std::abs(coarse), std::abs(fine)});
    if (std::abs(coarse - fine) <= opts.rtol * scale) return fine;

    // Estimates disagree: split at S and resolve each piece independently.
    const double S = opts.split_point;
    const double head =
        tanh_sinh([&](double s) { return std::exp(-s) * h(s); }, 0.0, S);
    const double tail =
        std::exp(-S) *
        QuadratureRule::laguerre(opts.order).apply([&](double u) { return h(S + u); });
    return head + tail;
}

}  // namespace equistop
