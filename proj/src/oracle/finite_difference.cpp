#include "hob/oracle/finite_difference.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hob/errors.hpp"

namespace hob {

namespace {

class LogGrid {
public:
    LogGrid(double x, double lo, double hi, int intervals, const MarketParams& p) : y(intervals + 1) {
        h_ = (hi - lo) / intervals;
        // Shift the grid so log(x) falls exactly on a node.
        const double offset = (std::log(x) - lo) / h_;
        lo += (offset - std::floor(offset)) * h_;
        for (int j = 0; j <= intervals; ++j) y[j] = lo + j * h_;
        const double a = 0.5 * p.sigma * p.sigma;
        const double b = p.r - p.q - a;
        lower_ = a / (h_ * h_) - b / (2.0 * h_);
        diag_ = -2.0 * a / (h_ * h_) - p.r;
        upper_ = a / (h_ * h_) + b / (2.0 * h_);
        growth_ = std::exp(h_);
    }

    std::vector<double> y;

    // V_M from the linear-in-spot condition V = A e^y + B.
    double upper_edge(const std::vector<double>& v) const {
        const std::size_t m = v.size() - 1;
        return v[m - 1] + growth_ * (v[m - 1] - v[m - 2]);
    }

    // One theta-scheme step of length dt backward in time.
    void step(std::vector<double>& v, double dt, double theta) const {
        const std::size_t m = v.size() - 1;
        const std::size_t n = m - 1;  // unknowns 1..m-1
        std::vector<double> rhs(n), sub(n), dia(n), sup(n);
        const double ex = (1.0 - theta) * dt;
        const double im = theta * dt;
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t j = k + 1;
            rhs[k] = v[j] + ex * (lower_ * v[j - 1] + diag_ * v[j] + upper_ * v[j + 1]);
            sub[k] = -im * lower_;
            dia[k] = 1.0 - im * diag_;
            sup[k] = -im * upper_;
        }
        // Lower edge V_0 = 0 contributes nothing. Fold V_M into row m-1.
        dia[n - 1] += sup[n - 1] * (1.0 + growth_);
        sub[n - 1] -= sup[n - 1] * growth_;
        sup[n - 1] = 0.0;
        // Thomas algorithm.
        for (std::size_t k = 1; k < n; ++k) {
            const double w = sub[k] / dia[k - 1];
            dia[k] -= w * sup[k - 1];
            rhs[k] -= w * rhs[k - 1];
        }
        v[n] = rhs[n - 1] / dia[n - 1];
        for (std::size_t k = n - 1; k-- > 0;) v[k + 1] = (rhs[k] - sup[k] * v[k + 2]) / dia[k];
        v[0] = 0.0;
        v[m] = upper_edge(v);
    }

    // Backward over `span` in `steps` steps; the first two are each split
    // into two implicit half steps.
    void march(std::vector<double>& v, double span, int steps) const {
        const double dt = span / steps;
        for (int s = 0; s < steps; ++s) {
            if (s < 2) {
                step(v, 0.5 * dt, 1.0);
                step(v, 0.5 * dt, 1.0);
            } else {
                step(v, dt, 0.5);
            }
        }
    }

    double h() const { return h_; }

private:
    double h_ = 0.0, lower_ = 0.0, diag_ = 0.0, upper_ = 0.0, growth_ = 1.0;
};

}  // namespace

void GridConfig::validate() const {
    if (n_space < 50) throw ValidationError("n_space must be at least 50", "n_space");
    if (n_time_per_interval < 50) throw ValidationError("n_time_per_interval must be at least 50", "n_time_per_interval");
    if (!(x_max_multiple >= 4.0)) throw ValidationError("x_max_multiple must be at least 4", "x_max_multiple");
}

double fd_extendable(double x, double t, const ExtendableCall& c, const MarketParams& params, const GridConfig& cfg) {
    c.validate();
    params.validate();
    cfg.validate();
    if (!(x > 0.0) || !std::isfinite(x)) throw ValidationError("spot must be positive and finite", "spot");
    const auto& T = c.decision_dates;
    const auto& K = c.strikes;
    if (!(t < T.back())) throw TimeAfterFirstExpiry("valuation time is not before final expiry", "time");

    // Cover the strikes with the configured margin and at least six
    // standard deviations of log-spot over the whole horizon either side.
    const double k_max = *std::max_element(K.begin(), K.end());
    const double k_min = *std::min_element(K.begin(), K.end());
    const double spread = 6.0 * params.sigma * std::sqrt(T.back() - t);
    const double hi = std::max(std::log(cfg.x_max_multiple * std::max(k_max, x)), std::log(x) + spread);
    const double lo = std::min(std::log(std::min(k_min, x) / cfg.x_max_multiple), std::log(x) - spread);
    const LogGrid grid(x, lo, hi, cfg.n_space, params);

    std::vector<double> v(grid.y.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = std::max(std::exp(grid.y[j]) - K.back(), 0.0);

    double later = T.back();
    for (std::size_t k = T.size() - 1; k-- > 0;) {
        if (T[k] <= t) break;
        grid.march(v, later - T[k], cfg.n_time_per_interval);
        for (std::size_t j = 0; j < v.size(); ++j)
            v[j] = std::max(v[j] - c.extension_premiums[k], std::max(std::exp(grid.y[j]) - K[k], 0.0));
        later = T[k];
    }
    grid.march(v, later - t, cfg.n_time_per_interval);

    const double pos = (std::log(x) - grid.y.front()) / grid.h();
    const auto j = std::min(static_cast<std::size_t>(pos), v.size() - 2);
    const double w = pos - static_cast<double>(j);
    return (1.0 - w) * v[j] + w * v[j + 1];
}

}  // namespace hob
