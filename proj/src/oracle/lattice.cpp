#include "hob/oracle/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "hob/errors.hpp"
#include "hob/numerics/normal.hpp"

namespace hob {

namespace {

constexpr double kMaxSnap = 1e-4;

double bs_put(double s, double k, double tau, const MarketParams& p) {
    const double vol = p.sigma * std::sqrt(tau);
    const double d1 = (std::log(s / k) + (p.r - p.q + 0.5 * p.sigma * p.sigma) * tau) / vol;
    return k * std::exp(-p.r * tau) * norm_cdf(-(d1 - vol)) - s * std::exp(-p.q * tau) * norm_cdf(-d1);
}

// Mean of max(l, 0) for l linear from l0 to l1.
double positive_part_mean(double l0, double l1) {
    if (l0 >= 0.0 && l1 >= 0.0) return 0.5 * (l0 + l1);
    if (l0 <= 0.0 && l1 <= 0.0) return 0.0;
    const double pos = std::max(l0, l1);
    return 0.5 * pos * pos / (std::abs(l0) + std::abs(l1));
}

// Applies max(continuation, K - S) at an exercise level. Nodes whose cell
// holds the boundary get the cell average of the maximum, with the
// continuation premium interpolated linearly in log-spot; sampling the kink
// at the node alone makes the error oscillate with the step count.
void exercise(std::vector<double>& v, int level, double K, const std::function<double(int)>& spot) {
    std::vector<double> premium(static_cast<std::size_t>(level) + 1);
    for (int i = 0; i <= level; ++i) premium[i] = v[i] - (K - spot(i));
    for (int i = 0; i <= level; ++i) {
        const double here = premium[i];
        const bool left = i > 0 && (premium[i - 1] > 0.0) != (here > 0.0);
        const bool right = i < level && (premium[i + 1] > 0.0) != (here > 0.0);
        double smoothed = std::max(here, 0.0);
        if (left || right) {
            const double lo = i > 0 ? 0.5 * (premium[i - 1] + here) : here;
            const double hi = i < level ? 0.5 * (premium[i + 1] + here) : here;
            smoothed = 0.5 * (positive_part_mean(lo, here) + positive_part_mean(here, hi));
        }
        v[i] = K - spot(i) + smoothed;
    }
}

struct Snapped {
    int steps;
    std::vector<int> levels;  // exercise levels, excluding the final one
};

Snapped snap(double t, const std::vector<double>& dates, int steps) {
    const double horizon = dates.back() - t;
    for (int n = steps;; ++n) {
        const double dt = horizon / n;
        Snapped s{n, {}};
        bool ok = true;
        for (std::size_t j = 0; j + 1 < dates.size(); ++j) {
            if (dates[j] <= t) continue;
            const double exact = (dates[j] - t) / dt;
            const int level = static_cast<int>(std::lround(exact));
            ok = ok && std::abs(level - exact) * dt < kMaxSnap;
            s.levels.push_back(level);
        }
        if (ok) return s;
    }
}

}  // namespace

double lattice_bermudan_price(double x, double t, const BermudanPut& c, const MarketParams& params, int steps) {
    c.validate();
    params.validate();
    if (steps < 100) throw ValidationError("lattice needs at least 100 steps", "steps");
    if (!(x > 0.0) || !std::isfinite(x)) throw ValidationError("spot must be positive and finite", "spot");
    if (!(t < c.exercise_dates.back())) throw TimeAfterFirstExpiry("valuation time is not before expiry", "time");

    const Snapped s = snap(t, c.exercise_dates, steps);
    const int n = s.steps;
    const double dt = (c.exercise_dates.back() - t) / n;
    const double up = params.sigma * std::sqrt(dt);  // log step
    const double u = std::exp(up), d = 1.0 / u;
    const double p = (std::exp((params.r - params.q) * dt) - d) / (u - d);
    const double disc = std::exp(-params.r * dt);
    const double K = c.strike;
    auto exercise_at = [&](int level) { return std::find(s.levels.begin(), s.levels.end(), level) != s.levels.end(); };
    auto spot = [&](int level, int i) { return x * std::exp((2 * i - level) * up); };

    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = bs_put(spot(n - 1, i), K, dt, params);
    if (exercise_at(n - 1)) exercise(v, n - 1, K, [&](int i) { return spot(n - 1, i); });
    for (int level = n - 2; level >= 0; --level) {
        for (int i = 0; i <= level; ++i) v[i] = disc * (p * v[i + 1] + (1.0 - p) * v[i]);
        if (exercise_at(level)) exercise(v, level, K, [&](int i) { return spot(level, i); });
    }
    return v[0];
}

LatticeEstimate lattice_bermudan(double x, double t, const BermudanPut& c, const MarketParams& params, int steps) {
    c.validate();
    if (!(t < c.exercise_dates.back())) throw TimeAfterFirstExpiry("valuation time is not before expiry", "time");
    if (steps < 100) throw ValidationError("lattice needs at least 100 steps", "steps");
    const int n = snap(t, c.exercise_dates, steps).steps;
    LatticeEstimate e;
    e.steps = n;
    e.coarse = lattice_bermudan_price(x, t, c, params, n);
    e.fine = lattice_bermudan_price(x, t, c, params, 2 * n);
    e.value = 2.0 * e.fine - e.coarse;
    return e;
}

}  // namespace hob
