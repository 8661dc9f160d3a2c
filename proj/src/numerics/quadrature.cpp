#include "hob/numerics/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include "hob/errors.hpp"

namespace hob {
namespace {

// Kronrod nodes/weights; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment kronrod15(const Integrand& g, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = g(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = g(center - dx);
        const double f2 = g(center + dx);
        kronrod += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    kronrod *= half;
    gauss *= half;
    double err = std::abs(kronrod - gauss);
    if (!std::isfinite(kronrod)) err = std::numeric_limits<double>::infinity();
    return {a, b, kronrod, err};
}

QuadratureResult integrate_finite(const Integrand& g, double a, double b, double abs_tol,
                                  double rel_tol, int max_intervals) {
    QuadratureResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    std::priority_queue<Segment> heap;
    Segment first = kronrod15(g, a, b);
    out.evaluations = 15;
    double total = first.value;
    double total_err = first.error;
    heap.push(first);
    int intervals = 1;
    while (true) {
        const double target = std::max(abs_tol, rel_tol * std::abs(total));
        if (total_err <= target) {
            out.converged = true;
            break;
        }
        if (intervals >= max_intervals) break;
        Segment worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) break;  // interval exhausted at machine precision
        heap.pop();
        Segment left = kronrod15(g, worst.a, mid);
        Segment right = kronrod15(g, mid, worst.b);
        out.evaluations += 30;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++intervals;
    }
    // Re-sum to shed the drift of the running totals.
    double value = 0.0, error = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    out.value = value;
    out.error = error;
    if (!out.converged) out.converged = error <= std::max(abs_tol, rel_tol * std::abs(value));
    return out;
}

}  // namespace

QuadratureResult integrate(const Integrand& f, double a, double b, double abs_tol, double rel_tol,
                           int max_intervals) {
    if (std::isnan(a) || std::isnan(b)) throw ValidationError("integrate: NaN limit", "limits");
    if (a > b) {
        QuadratureResult r = integrate(f, b, a, abs_tol, rel_tol, max_intervals);
        r.value = -r.value;
        return r;
    }
    const bool lo_inf = std::isinf(a);
    const bool hi_inf = std::isinf(b);
    if (!lo_inf && !hi_inf) return integrate_finite(f, a, b, abs_tol, rel_tol, max_intervals);
    if (lo_inf && hi_inf) {
        QuadratureResult left = integrate(f, a, 0.0, 0.5 * abs_tol, rel_tol, max_intervals);
        QuadratureResult right = integrate(f, 0.0, b, 0.5 * abs_tol, rel_tol, max_intervals);
        return {left.value + right.value, left.error + right.error,
                left.evaluations + right.evaluations, left.converged && right.converged};
    }
    // x = anchor +/- (1 - s)/s maps s in (0, 1] onto the half line.
    const double anchor = lo_inf ? b : a;
    const double direction = lo_inf ? -1.0 : 1.0;
    Integrand mapped = [&f, anchor, direction](double s) {
        const double x = anchor + direction * (1.0 - s) / s;
        return f(x) / (s * s);
    };
    return integrate_finite(mapped, 0.0, 1.0, abs_tol, rel_tol, max_intervals);
}

QuadratureResult gauss_quadrature(const Integrand& f, double accuracy,
                                  std::span<const double> breakpoints) {
    if (!(accuracy > 0.0)) throw ValidationError("gauss_quadrature: accuracy must be positive", "accuracy");
    std::vector<double> cuts;
    for (double z : breakpoints) {
        if (!(z > 0.0) || !std::isfinite(z))
            throw ValidationError("gauss_quadrature: breakpoints must be positive and finite",
                                  "breakpoints");
        cuts.push_back(std::log(z));
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    cuts.insert(cuts.begin(), -std::numeric_limits<double>::infinity());
    cuts.push_back(std::numeric_limits<double>::infinity());

    Integrand in_log = [&f](double u) {
        const double z = std::exp(u);
        if (z == 0.0 || !std::isfinite(z)) return 0.0;
        return f(z) * z;
    };
    const double share = accuracy / static_cast<double>(cuts.size() - 1);
    QuadratureResult total;
    total.converged = true;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        QuadratureResult piece = integrate(in_log, cuts[i], cuts[i + 1], share);
        total.value += piece.value;
        total.error += piece.error;
        total.evaluations += piece.evaluations;
        total.converged = total.converged && piece.converged;
    }
    if (!total.converged || !(total.error <= accuracy)) {
        throw NonConvergent("gauss_quadrature: error estimate " + std::to_string(total.error) +
                            " exceeds requested accuracy " + std::to_string(accuracy));
    }
    return total;
}

}  // namespace hob
