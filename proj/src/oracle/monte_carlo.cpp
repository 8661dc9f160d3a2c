#include "hob/oracle/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "hob/errors.hpp"
#include "hob/numerics/normal.hpp"
#include "hob/oracle/philox.hpp"

namespace hob {

namespace {

constexpr std::uint64_t kBatch = 1 << 14;

struct Moments {
    double count = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double v) {
        count += 1.0;
        const double delta = v - mean;
        mean += delta / count;
        m2 += delta * (v - mean);
    }

    // Chan et al. pairwise merge.
    void merge(const Moments& o) {
        if (o.count == 0.0) return;
        const double n = count + o.count;
        const double delta = o.mean - mean;
        mean += delta * o.count / n;
        m2 += o.m2 + delta * delta * count * o.count / n;
        count = n;
    }
};

// Spots on `dates` from exact lognormal increments starting at (x, t).
struct LognormalPath {
    std::vector<double> drift;
    std::vector<double> vol;
    double x;

    LognormalPath(double x0, double t, const std::vector<double>& dates, const MarketParams& p) : x(x0) {
        double prev = t;
        for (double d : dates) {
            const double dt = d - prev;
            drift.push_back((p.r - p.q - 0.5 * p.sigma * p.sigma) * dt);
            vol.push_back(p.sigma * std::sqrt(dt));
            prev = d;
        }
    }

    void fill(std::span<const double> z, std::span<double> spots) const {
        double log_x = std::log(x);
        for (std::size_t i = 0; i < z.size(); ++i) {
            log_x += drift[i] + vol[i] * z[i];
            spots[i] = std::exp(log_x);
        }
    }
};

}  // namespace

void McConfig::validate() const {
    if (n_paths < 2) throw ValidationError("at least two paths are required", "n_paths");
    if (antithetic && n_paths % 2 != 0) throw ValidationError("antithetic sampling needs an even path count", "n_paths");
}

McEstimate monte_carlo(const McConfig& cfg, std::size_t dims,
                       const std::function<double(std::span<const double>)>& f) {
    cfg.validate();
    const std::uint64_t samples = cfg.antithetic ? cfg.n_paths / 2 : cfg.n_paths;
    const std::uint64_t batches = (samples + kBatch - 1) / kBatch;
    std::vector<Moments> results(batches);

    auto run_batch = [&](std::uint64_t b, std::vector<double>& z, std::vector<double>& zm) {
        Moments m;
        const std::uint64_t end = std::min(samples, (b + 1) * kBatch);
        for (std::uint64_t i = b * kBatch; i < end; ++i) {
            const PathUniforms u(cfg.seed, i);
            for (std::size_t k = 0; k < dims; ++k) z[k] = norm_inv(u(static_cast<std::uint32_t>(k)));
            double v = f(z);
            if (cfg.antithetic) {
                for (std::size_t k = 0; k < dims; ++k) zm[k] = -z[k];
                v = 0.5 * (v + f(zm));
            }
            m.add(v);
        }
        results[b] = m;
    };

    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, batches));
    if (threads <= 1) {
        std::vector<double> z(dims), zm(dims);
        for (std::uint64_t b = 0; b < batches; ++b) run_batch(b, z, zm);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                std::vector<double> z(dims), zm(dims);
                for (std::uint64_t b = w; b < batches; b += threads) run_batch(b, z, zm);
            });
        }
        for (auto& th : pool) th.join();
    }

    Moments total;
    for (const Moments& m : results) total.merge(m);
    const double variance = total.count > 1.0 ? total.m2 / (total.count - 1.0) : 0.0;
    return {total.mean, std::sqrt(variance / total.count), cfg.n_paths};
}

McEstimate mc_price_portfolio(double x, double t, const Portfolio& p, const MarketParams& params,
                              const McConfig& cfg) {
    params.validate();
    cfg.validate();
    if (!(x > 0.0) || !std::isfinite(x)) throw ValidationError("spot must be positive and finite", "spot");
    if (p.terms.empty()) return {0.0, 0.0, cfg.n_paths};
    const PayoffEvaluator eval(p);
    const std::vector<double>& dates = eval.dates();
    if (!(t < dates.front())) throw TimeAfterFirstExpiry("valuation time is not before every portfolio date", "time");
    const LognormalPath path(x, t, dates, params);
    return monte_carlo(cfg, dates.size(), [&](std::span<const double> z) {
        thread_local std::vector<double> spots;
        spots.resize(z.size());
        path.fill(z, spots);
        return eval.discounted(spots, t, params.r);
    });
}

McEstimate mc_twice_shout(double x, double t, const TwiceShoutCall& c, const MarketParams& params,
                          const McConfig& cfg) {
    c.validate();
    params.validate();
    if (!(x > 0.0) || !std::isfinite(x)) throw ValidationError("spot must be positive and finite", "spot");
    if (!(t < c.shout_dates[0])) throw TimeAfterFirstExpiry("valuation time is not before the first shout", "time");
    const std::vector<double> dates = {c.shout_dates[0], c.shout_dates[1], c.final_expiry};
    const LognormalPath path(x, t, dates, params);
    const double discount = std::exp(-params.r * (c.final_expiry - t));
    return monte_carlo(cfg, 3, [&](std::span<const double> z) {
        double s[3];
        path.fill(z, s);
        return discount * std::max(0.0, std::max({s[0], s[1], s[2]}) - c.strike);
    });
}

}  // namespace hob
