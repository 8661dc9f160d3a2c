#include "hob/numerics/mvn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <boost/random/sobol.hpp>

#include "hob/errors.hpp"
#include "hob/numerics/normal.hpp"
#include "hob/numerics/quadrature.hpp"

namespace hob {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Gauss-Legendre half-rules (nodes on (0,1], weights) for 6, 12 and 20 points.
constexpr std::array<double, 3> kW6 = {0.1713244923791705, 0.3607615730481384, 0.4679139345726904};
constexpr std::array<double, 3> kX6 = {0.9324695142031522, 0.6612093864662647, 0.2386191860831970};
constexpr std::array<double, 6> kW12 = {0.04717533638651177, 0.1069393259953183,
                                        0.1600783285433464,  0.2031674267230659,
                                        0.2334925365383547,  0.2491470458134029};
constexpr std::array<double, 6> kX12 = {0.9815606342467191, 0.9041172563704750,
                                        0.7699026741943050, 0.5873179542866171,
                                        0.3678314989981802, 0.1252334085114692};
constexpr std::array<double, 10> kW20 = {
    0.01761400713915212, 0.04060142980038694, 0.06267204833410906, 0.08327674157670475,
    0.1019301198172404,  0.1181945319615184,  0.1316886384491766,  0.1420961093183821,
    0.1491729864726037,  0.1527533871307259};
constexpr std::array<double, 10> kX20 = {
    0.9931285991850949, 0.9639719272779138, 0.9122344282513259, 0.8391169718222188,
    0.7463319064601508, 0.6360536807265150, 0.5108670019508271, 0.3737060887154196,
    0.2277858511416451, 0.07652652113349733};

// P(X > h, Y > k), Genz (2004) bvnu.
double bvn_upper(double h, double k, double r) {
    if (h == kInf || k == kInf) return 0.0;
    if (h == -kInf) return k == -kInf ? 1.0 : norm_cdf(-k);
    if (k == -kInf) return norm_cdf(-h);
    if (r == 0.0) return norm_cdf(-h) * norm_cdf(-k);

    std::span<const double> w, x;
    if (std::abs(r) < 0.3) {
        w = kW6;
        x = kX6;
    } else if (std::abs(r) < 0.75) {
        w = kW12;
        x = kX12;
    } else {
        w = kW20;
        x = kX20;
    }
    double hk = h * k;
    double bvn = 0.0;
    if (std::abs(r) < 0.925) {
        const double hs = 0.5 * (h * h + k * k);
        const double asr = 0.5 * std::asin(r);
        for (std::size_t i = 0; i < w.size(); ++i) {
            for (double node : {1.0 - x[i], 1.0 + x[i]}) {
                const double sn = std::sin(asr * node);
                bvn += w[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
            }
        }
        return std::clamp(bvn * asr / kTwoPi + norm_cdf(-h) * norm_cdf(-k), 0.0, 1.0);
    }
    if (r < 0.0) {
        k = -k;
        hk = -hk;
    }
    if (std::abs(r) < 1.0) {
        const double as = (1.0 - r) * (1.0 + r);
        double a = std::sqrt(as);
        const double bs = (h - k) * (h - k);
        const double c = (4.0 - hk) / 8.0;
        const double d = (12.0 - hk) / 80.0;
        double asr = -0.5 * (bs / as + hk);
        if (asr > -100.0) bvn = a * std::exp(asr) * (1.0 - c * (bs - as) * (1.0 - d * bs) / 3.0 + c * d * as * as);
        if (hk > -100.0) {
            const double b = std::sqrt(bs);
            const double sp = std::sqrt(kTwoPi) * norm_cdf(-b / a);
            bvn -= std::exp(-0.5 * hk) * sp * b * (1.0 - c * bs * (1.0 - d * bs) / 3.0);
        }
        a *= 0.5;
        double sum = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            for (double node : {1.0 - x[i], 1.0 + x[i]}) {
                const double xs = (a * node) * (a * node);
                const double asr_i = -0.5 * (bs / xs + hk);
                if (asr_i <= -100.0) continue;
                const double sp = 1.0 + c * xs * (1.0 + 5.0 * d * xs);
                const double rs = std::sqrt(1.0 - xs);
                const double ep = std::exp(-0.5 * hk * xs / ((1.0 + rs) * (1.0 + rs))) / rs;
                sum += w[i] * std::exp(asr_i) * (sp - ep);
            }
        }
        bvn = (a * sum - bvn) / kTwoPi;
    }
    if (r > 0.0) {
        bvn += norm_cdf(-std::max(h, k));
    } else if (h >= k) {
        bvn = -bvn;
    } else {
        const double lower = h < 0.0 ? norm_cdf(k) - norm_cdf(h) : norm_cdf(-h) - norm_cdf(-k);
        bvn = lower - bvn;
    }
    return std::clamp(bvn, 0.0, 1.0);
}

// Accuracy demanded of the deterministic conditioning route.
double conditioning_tolerance(double tol) { return std::clamp(tol * 1e-6, 1e-14, 1e-9); }

// Partial correlations below this are treated as exact zeros when splitting
// into conditionally independent blocks.
constexpr double kIndependence = 1e-12;

// Evaluation plan for the conditioning route. Conditioning on a pivot
// coordinate z leaves the others Gaussian with limits (h_j - load_j z)/scale_j
// and partial correlations; those split into conditionally independent blocks,
// each evaluated by its own child plan.
struct Plan {
    std::size_t dim = 0;
    double rho = 0.0;  // dim == 2
    std::size_t pivot = 0;
    std::vector<std::size_t> rest;
    std::vector<double> load, scale;
    std::vector<std::vector<std::size_t>> blocks;  // positions within `rest`
    std::vector<Plan> children;
};

struct Conditioning {
    std::vector<std::size_t> rest;
    std::vector<double> load, scale;
    Matrix partial;
    std::vector<std::vector<std::size_t>> blocks;
};

Conditioning condition_on(const Matrix& r, std::size_t pivot) {
    Conditioning c;
    const std::size_t n = r.dim();
    for (std::size_t j = 0; j < n; ++j) {
        if (j == pivot) continue;
        c.rest.push_back(j);
        c.load.push_back(r(pivot, j));
        c.scale.push_back(std::sqrt((1.0 - r(pivot, j)) * (1.0 + r(pivot, j))));
    }
    const std::size_t m = c.rest.size();
    c.partial = Matrix(m);
    for (std::size_t i = 0; i < m; ++i) {
        c.partial(i, i) = 1.0;
        for (std::size_t j = 0; j < i; ++j) {
            double v = (r(c.rest[i], c.rest[j]) - c.load[i] * c.load[j]) / (c.scale[i] * c.scale[j]);
            if (std::abs(v) <= kIndependence) v = 0.0;
            c.partial(i, j) = v;
            c.partial(j, i) = v;
        }
    }
    // Connected components of the nonzero pattern.
    std::vector<int> label(m, -1);
    for (std::size_t s = 0; s < m; ++s) {
        if (label[s] >= 0) continue;
        const int id = static_cast<int>(c.blocks.size());
        c.blocks.emplace_back();
        std::vector<std::size_t> stack = {s};
        label[s] = id;
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            c.blocks.back().push_back(i);
            for (std::size_t j = 0; j < m; ++j)
                if (label[j] < 0 && c.partial(i, j) != 0.0) {
                    label[j] = id;
                    stack.push_back(j);
                }
        }
        std::sort(c.blocks.back().begin(), c.blocks.back().end());
    }
    return c;
}

Matrix principal(const Matrix& m, const std::vector<std::size_t>& idx) {
    Matrix out(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = m(idx[i], idx[j]);
    return out;
}

// True when the conditioning route needs at most `depth` nested integrals.
bool fits_depth(const Matrix& r, int depth) {
    if (r.dim() <= 2) return true;
    if (depth == 0) return false;
    for (std::size_t p = 0; p < r.dim(); ++p) {
        const Conditioning c = condition_on(r, p);
        const bool ok = std::all_of(c.blocks.begin(), c.blocks.end(), [&](const auto& b) {
            return fits_depth(principal(c.partial, b), depth - 1);
        });
        if (ok) return true;
    }
    return false;
}

// Builds a plan of at most `depth` nested integrals; among admissible pivots
// the one with the smallest limit (shortest outer range) wins.
Plan make_plan(const Matrix& r, const std::vector<double>& h, int depth) {
    Plan plan;
    plan.dim = r.dim();
    if (plan.dim == 2) plan.rho = r(0, 1);
    if (plan.dim <= 2) return plan;
    std::vector<std::size_t> order(plan.dim);
    for (std::size_t i = 0; i < plan.dim; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return h[a] < h[b]; });
    for (std::size_t p : order) {
        Conditioning c = condition_on(r, p);
        const bool ok = std::all_of(c.blocks.begin(), c.blocks.end(), [&](const auto& b) {
            return fits_depth(principal(c.partial, b), depth - 1);
        });
        if (!ok) continue;
        plan.pivot = p;
        plan.rest = c.rest;
        plan.load = c.load;
        plan.scale = c.scale;
        plan.blocks = c.blocks;
        for (const auto& b : c.blocks) {
            std::vector<double> hb;
            for (std::size_t i : b) hb.push_back(h[c.rest[i]]);
            plan.children.push_back(make_plan(principal(c.partial, b), hb, depth - 1));
        }
        return plan;
    }
    throw NumericalError("mvn_cdf: no conditioning plan within the nesting budget");
}

double evaluate(const Plan& plan, std::span<const double> h, double tol) {
    if (plan.dim == 1) return norm_cdf(h[0]);
    if (plan.dim == 2) return bvn_cdf(h[0], h[1], plan.rho);
    const double child_tol = 0.1 * tol;
    std::vector<double> shifted(plan.rest.size());
    std::vector<double> block_limits;
    Integrand integrand = [&](double u) {
        const double z = norm_inv(u);
        for (std::size_t j = 0; j < plan.rest.size(); ++j)
            shifted[j] = (h[plan.rest[j]] - plan.load[j] * z) / plan.scale[j];
        double product = 1.0;
        for (std::size_t b = 0; b < plan.blocks.size() && product > 0.0; ++b) {
            block_limits.clear();
            for (std::size_t i : plan.blocks[b]) block_limits.push_back(shifted[i]);
            product *= evaluate(plan.children[b], block_limits, child_tol);
        }
        return product;
    };
    const QuadratureResult q = integrate(integrand, 0.0, norm_cdf(h[plan.pivot]), tol, 0.0, 2000);
    return std::clamp(q.value, 0.0, 1.0);
}

// Nested-integral budget for the conditioning route; two levels of
// bivariate-times-quadrature stay in the millisecond range.
constexpr int kMaxNesting = 2;

// Cholesky factor with Genz-Bretz variable prioritisation: at each step the
// coordinate with the smallest conditional probability goes next, with
// earlier coordinates fixed at their truncated-normal means.
std::pair<Matrix, std::vector<double>> prioritized_factor(const CorrelationMatrix& corr,
                                                          std::vector<double> h) {
    const std::size_t n = h.size();
    Matrix r = corr.entries();
    Matrix l(n);
    std::vector<double> y(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t best = j;
        double best_p = 2.0;
        for (std::size_t i = j; i < n; ++i) {
            double var = r(i, i), mean = 0.0;
            for (std::size_t k = 0; k < j; ++k) {
                var -= l(i, k) * l(i, k);
                mean += l(i, k) * y[k];
            }
            const double p = norm_cdf((h[i] - mean) / std::sqrt(std::max(var, 1e-300)));
            if (p < best_p) {
                best_p = p;
                best = i;
            }
        }
        if (best != j) {
            std::swap(h[j], h[best]);
            for (std::size_t k = 0; k < n; ++k) std::swap(r(j, k), r(best, k));
            for (std::size_t k = 0; k < n; ++k) std::swap(r(k, j), r(k, best));
            for (std::size_t k = 0; k < j; ++k) std::swap(l(j, k), l(best, k));
        }
        double pivot = r(j, j);
        for (std::size_t k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
        if (!(pivot > 1e-15)) throw NotPositiveDefinite("mvn_cdf: correlation matrix lost definiteness");
        l(j, j) = std::sqrt(pivot);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = r(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
        double mean = 0.0;
        for (std::size_t k = 0; k < j; ++k) mean += l(j, k) * y[k];
        const double u = (h[j] - mean) / l(j, j);
        const double mass = norm_cdf(u);
        y[j] = mass > 1e-300 ? -norm_pdf(u) / mass : u;
    }
    return {std::move(l), std::move(h)};
}

MvnEstimate genz_rqmc(const std::vector<double>& h, const CorrelationMatrix& corr, double tol,
                      std::uint64_t seed) {
    const std::size_t n = h.size();
    const auto [l, limits] = prioritized_factor(corr, h);
    const std::size_t nw = n - 1;

    // Sobol points under independent random digital shifts; the spread of the
    // per-shift means gives the error estimate.
    constexpr int kShifts = 10;
    std::mt19937_64 engine(seed);
    std::vector<std::vector<std::uint64_t>> shifts(kShifts, std::vector<std::uint64_t>(nw));
    for (auto& sh : shifts)
        for (auto& v : sh) v = engine();
    boost::random::sobol sobol(static_cast<unsigned>(nw));

    std::vector<double> y(n), w(nw);
    std::vector<std::uint64_t> point(nw);
    auto sample = [&]() {
        double e = norm_cdf(limits[0] / l(0, 0));
        double f = e;
        for (std::size_t j = 1; j < n && f > 0.0; ++j) {
            const double u = std::clamp(w[j - 1] * e, 1e-300, 1.0 - 1e-16);
            y[j - 1] = norm_inv(u);
            double s = 0.0;
            for (std::size_t k = 0; k < j; ++k) s += l(j, k) * y[k];
            e = norm_cdf((limits[j] - s) / l(j, j));
            f *= e;
        }
        return f;
    };

    std::vector<double> sums(kShifts, 0.0);
    std::uint64_t points = 0;
    std::uint64_t batch = 2048;
    constexpr std::uint64_t kMaxPoints = std::uint64_t{1} << 21;
    MvnEstimate est;
    while (true) {
        for (std::uint64_t i = 0; i < batch; ++i) {
            for (auto& v : point) v = static_cast<std::uint64_t>(sobol());
            for (int m = 0; m < kShifts; ++m) {
                for (std::size_t j = 0; j < nw; ++j)
                    w[j] = (static_cast<double>((point[j] ^ shifts[m][j]) >> 11) + 0.5) * 0x1.0p-53;
                sums[m] += sample();
            }
        }
        points += batch;
        double mean = 0.0;
        for (double s : sums) mean += s / static_cast<double>(points);
        mean /= kShifts;
        double var = 0.0;
        for (double s : sums) {
            const double d = s / static_cast<double>(points) - mean;
            var += d * d;
        }
        var /= static_cast<double>(kShifts * (kShifts - 1));
        est = {std::clamp(mean, 0.0, 1.0), 3.0 * std::sqrt(var)};
        if (est.error <= tol || points >= kMaxPoints) break;
        batch = points;  // double the point count
    }
    return est;
}

MvnEstimate mvn_reduced(const std::vector<double>& h, const CorrelationMatrix& corr, double tol) {
    if (h.size() == 1) return {norm_cdf(h[0]), 0.0};
    if (h.size() == 2) return {bvn_cdf(h[0], h[1], corr(0, 1)), 1e-15};
    if (fits_depth(corr.entries(), kMaxNesting)) {
        const double det_tol = conditioning_tolerance(tol);
        const Plan plan = make_plan(corr.entries(), h, kMaxNesting);
        return {evaluate(plan, h, det_tol), det_tol};
    }
    return genz_rqmc(h, corr, tol, 0x9e3779b97f4a7c15ULL);
}

struct Reduced {
    bool zero = false;
    std::vector<double> upper;
    std::vector<std::size_t> kept;
};

Reduced reduce(std::span<const double> upper, const CorrelationMatrix& corr, double tol) {
    if (upper.size() != corr.dim()) {
        throw DimensionMismatch("mvn_cdf: " + std::to_string(upper.size()) +
                                " limits for a correlation matrix of dimension " +
                                std::to_string(corr.dim()));
    }
    if (!(tol > 0.0)) throw ValidationError("mvn_cdf: tolerance must be positive", "tol");
    Reduced r;
    for (std::size_t i = 0; i < upper.size(); ++i) {
        if (std::isnan(upper[i])) throw ValidationError("mvn_cdf: NaN limit", "upper");
        if (upper[i] == -kInf) {
            r.zero = true;
            return r;
        }
        if (upper[i] == kInf) continue;
        r.kept.push_back(i);
        r.upper.push_back(upper[i]);
    }
    return r;
}

}  // namespace

double bvn_cdf(double h, double k, double rho) {
    if (std::isnan(h) || std::isnan(k)) throw ValidationError("bvn_cdf: NaN limit", "upper");
    if (!(std::abs(rho) <= 1.0)) throw ValidationError("bvn_cdf: |rho| must not exceed 1", "rho");
    return bvn_upper(-h, -k, rho);
}

MvnEstimate mvn_cdf_estimate(std::span<const double> upper, const CorrelationMatrix& corr,
                             double tol) {
    const Reduced r = reduce(upper, corr, tol);
    if (r.zero) return {0.0, 0.0};
    if (r.upper.empty()) return {1.0, 0.0};
    if (r.upper.size() == corr.dim()) return mvn_reduced(r.upper, corr, tol);
    return mvn_reduced(r.upper, corr.select(r.kept), tol);
}

double mvn_cdf(std::span<const double> upper, const CorrelationMatrix& corr, double tol) {
    return mvn_cdf_estimate(upper, corr, tol).value;
}

namespace detail {

MvnEstimate mvn_cdf_qmc(std::span<const double> upper, const CorrelationMatrix& corr, double tol,
                        std::uint64_t seed) {
    const Reduced r = reduce(upper, corr, tol);
    if (r.zero) return {0.0, 0.0};
    if (r.upper.empty()) return {1.0, 0.0};
    if (r.upper.size() == 1) return {norm_cdf(r.upper[0]), 0.0};
    if (r.upper.size() == corr.dim()) return genz_rqmc(r.upper, corr, tol, seed);
    return genz_rqmc(r.upper, corr.select(r.kept), tol, seed);
}

}  // namespace detail

}  // namespace hob
