#include "bls/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <functional>
#include <thread>

#include "bls/rng.hpp"

namespace bls {

namespace {

constexpr int kStrata = 32;
constexpr double kReachFactor = 8.0;  // P(sup |B - root| > 8 sqrt t) < 1e-13

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

int poisson_knuth(Philox& rng, double mean) {
    int n = 0;
    while (mean > 400.0) {  // exp(-mean) underflows; split exactly
        double part = 400.0;
        double L = std::exp(-part);
        int k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= rng.uniform();
        } while (p > L);
        n += k - 1;
        mean -= part;
    }
    double L = std::exp(-mean);
    int k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= rng.uniform();
    } while (p > L);
    return n + k - 1;
}

// Convex hull diameter (monotone chain + rotating calipers).
double hull_diameter(const std::vector<Complex>& pts) {
    std::vector<Complex> p = pts;
    std::sort(p.begin(), p.end(), [](Complex a, Complex b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
    p.erase(std::unique(p.begin(), p.end()), p.end());
    const size_t n = p.size();
    if (n < 2) return 0.0;
    auto cross = [](Complex o, Complex a, Complex b) {
        return (a.real() - o.real()) * (b.imag() - o.imag()) -
               (a.imag() - o.imag()) * (b.real() - o.real());
    };
    std::vector<Complex> h(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
        h[k++] = p[i];
    }
    size_t lower = k + 1;
    for (size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
        h[k++] = p[i];
    }
    h.resize(k - 1);
    double best = 0.0;
    if (h.size() == 2) return std::abs(h[0] - h[1]);
    size_t m = h.size(), j = 1;
    for (size_t i = 0; i < m; ++i) {
        Complex e = h[(i + 1) % m] - h[i];
        while (true) {
            size_t jn = (j + 1) % m;
            double a1 = std::abs(e.real() * (h[j].imag() - h[i].imag()) -
                                 e.imag() * (h[j].real() - h[i].real()));
            double a2 = std::abs(e.real() * (h[jn].imag() - h[i].imag()) -
                                 e.imag() * (h[jn].real() - h[i].real()));
            if (a2 > a1)
                j = jn;
            else
                break;
        }
        best = std::max(best, std::abs(h[i] - h[j]));
        best = std::max(best, std::abs(h[(i + 1) % m] - h[j]));
    }
    return best;
}

// Optional pre-path filter: skip loops that cannot influence the estimator.
struct ReachFilter {
    std::vector<Complex> must_reach_any;  // loop must reach at least one
    // plausible when every point of at least one group is within reach
    std::vector<std::vector<Complex>> reach_all_groups;
    double min_diameter = 0.0;

    bool plausible(Complex root, double t) const {
        double reach = kReachFactor * std::sqrt(t);
        if (2.0 * reach < min_diameter) return false;
        if (!reach_all_groups.empty()) {
            for (const auto& g : reach_all_groups) {
                bool all = true;
                for (Complex z : g)
                    if (std::abs(z - root) > reach) {
                        all = false;
                        break;
                    }
                if (all) return true;
            }
            return false;
        }
        if (!must_reach_any.empty()) {
            for (Complex z : must_reach_any)
                if (std::abs(z - root) <= reach) return true;
            return false;
        }
        return true;
    }
};

struct RawLoop {
    Complex root;
    double duration;
    int sign;
    std::vector<Complex> path;
    Rect bbox;
};

// Generate the loops of one replica, invoking fn for each loop that passes
// the domain constraint and the reach filter.  Loop descriptors (duration,
// root, sign) come from the replica stream; each path has its own stream
// keyed by (replica, loop index) so filtered path generation never shifts
// the sequence of later loops.
void for_each_loop(const SoupConfig& cfg, std::uint64_t replica,
                   const ReachFilter* filter,
                   const std::function<void(RawLoop&)>& fn) {
    Philox desc(cfg.seed, replica);
    const double area = cfg.window.area();
    const int n = cfg.steps_per_loop;
    std::vector<double> vx(n + 1), vy(n + 1);
    std::uint32_t loop_seq = 0;
    RawLoop loop;

    // log-spaced duration strata, each an exact Poisson component
    double lr = std::log(cfg.t_max / cfg.t_min);
    for (int s = 0; s < kStrata; ++s) {
        double a = cfg.t_min * std::exp(lr * s / kStrata);
        double b = cfg.t_min * std::exp(lr * (s + 1) / kStrata);
        double mass = cfg.intensity * area * (1.0 / a - 1.0 / b) / (2.0 * kPi);
        int count = poisson_knuth(desc, mass);
        for (int i = 0; i < count; ++i) {
            double u = desc.uniform();
            double t = 1.0 / (1.0 / a - u * (1.0 / a - 1.0 / b));
            double rx = cfg.window.x0 + desc.uniform() * cfg.window.width();
            double ry = cfg.window.y0 + desc.uniform() * cfg.window.height();
            int sign = desc.uniform() < 0.5 ? +1 : -1;
            std::uint32_t seq = loop_seq++;
            Complex root(rx, ry);
            if (filter && !filter->plausible(root, t)) continue;

            // Brownian bridge by dyadic midpoint refinement, then root offset.
            Philox prng(cfg.seed ^ 0x9E3779B97F4A7C15ull,
                        (replica << 32) | seq);
            std::fill(vx.begin(), vx.end(), 0.0);
            std::fill(vy.begin(), vy.end(), 0.0);
            double dt = t / n;
            for (int len = n; len >= 2; len /= 2) {
                double sd = std::sqrt(len * dt / 4.0);
                for (int i0 = 0; i0 < n; i0 += len) {
                    int mid = i0 + len / 2;
                    vx[mid] = 0.5 * (vx[i0] + vx[i0 + len]) + sd * prng.normal();
                    vy[mid] = 0.5 * (vy[i0] + vy[i0 + len]) + sd * prng.normal();
                }
            }
            loop.root = root;
            loop.duration = t;
            loop.sign = sign;
            loop.path.resize(n + 1);
            double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
            for (int j = 0; j <= n; ++j) {
                double px = rx + vx[j], py = ry + vy[j];
                loop.path[j] = Complex(px, py);
                xmin = std::min(xmin, px);
                xmax = std::max(xmax, px);
                ymin = std::min(ymin, py);
                ymax = std::max(ymax, py);
            }
            if (cfg.domain == Domain::upper_half_plane && ymin <= 0.0) continue;
            loop.bbox = Rect{xmin, ymin, xmax, ymax};
            fn(loop);
        }
    }
}

// Grid flood fill over a loop's bounding box.
class LoopFill {
  public:
    LoopFill(const std::vector<Complex>& path, const Rect& bbox, int grid) {
        n_ = grid;
        double padx = std::max(bbox.width(), 1e-12) / grid;
        double pady = std::max(bbox.height(), 1e-12) / grid;
        bb_ = Rect{bbox.x0 - padx, bbox.y0 - pady, bbox.x1 + padx, bbox.y1 + pady};
        hx_ = bb_.width() / n_;
        hy_ = bb_.height() / n_;
        state_.assign(static_cast<size_t>(n_) * n_, 0);
        for (size_t i = 0; i + 1 < path.size(); ++i) rasterize(path[i], path[i + 1]);
        flood_outside();
    }

    // 0 = inside, 1 = on path, 2 = outside
    int query(Complex z) const {
        if (!bb_.contains(z)) return 2;
        int cx = cell_x(z.real()), cy = cell_y(z.imag());
        std::uint8_t s = state_[idx(cx, cy)];
        if (s == 1) return 1;
        return s == 2 ? 2 : 0;
    }

  private:
    int cell_x(double x) const {
        return std::min(n_ - 1, std::max(0, static_cast<int>((x - bb_.x0) / hx_)));
    }
    int cell_y(double y) const {
        return std::min(n_ - 1, std::max(0, static_cast<int>((y - bb_.y0) / hy_)));
    }
    size_t idx(int cx, int cy) const {
        return static_cast<size_t>(cy) * n_ + cx;
    }

    void rasterize(Complex a, Complex b) {
        double len = std::hypot(b.real() - a.real(), b.imag() - a.imag());
        double step = 0.45 * std::min(hx_, hy_);
        int m = std::max(1, static_cast<int>(len / step)) + 1;
        for (int i = 0; i <= m; ++i) {
            double u = static_cast<double>(i) / m;
            double x = a.real() + u * (b.real() - a.real());
            double y = a.imag() + u * (b.imag() - a.imag());
            state_[idx(cell_x(x), cell_y(y))] = 1;
        }
    }

    void flood_outside() {
        std::deque<std::pair<int, int>> q;
        auto push = [&](int cx, int cy) {
            size_t i = idx(cx, cy);
            if (state_[i] == 0) {
                state_[i] = 2;
                q.emplace_back(cx, cy);
            }
        };
        for (int c = 0; c < n_; ++c) {
            push(c, 0);
            push(c, n_ - 1);
            push(0, c);
            push(n_ - 1, c);
        }
        while (!q.empty()) {
            auto [cx, cy] = q.front();
            q.pop_front();
            if (cx > 0) push(cx - 1, cy);
            if (cx + 1 < n_) push(cx + 1, cy);
            if (cy > 0) push(cx, cy - 1);
            if (cy + 1 < n_) push(cx, cy + 1);
        }
    }

    Rect bb_;
    int n_;
    double hx_, hy_;
    std::vector<std::uint8_t> state_;
};

// Run fn(replica) over all replicas on a small worker pool; results are
// written into per-replica slots so aggregation order is fixed.
void parallel_replicas(int replicas, const std::function<void(int)>& fn) {
    unsigned hw = std::thread::hardware_concurrency();
    int workers = std::max(1u, std::min<unsigned>(hw, replicas));
    if (workers == 1) {
        for (int r = 0; r < replicas; ++r) fn(r);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int r = next.fetch_add(1); r < replicas; r = next.fetch_add(1))
                fn(r);
        });
    for (auto& th : pool) th.join();
}

Estimate reduce_counts(const std::vector<double>& per_replica, double intensity) {
    Estimate e;
    e.n_replicas = static_cast<int>(per_replica.size());
    if (intensity == 0.0) intensity = 1.0;  // all counts are zero
    double sum = 0.0;
    for (double v : per_replica) sum += v;
    double mean = sum / e.n_replicas / intensity;
    double var = 0.0;
    for (double v : per_replica) {
        double d = v / intensity - mean;
        var += d * d;
    }
    e.mean = mean;
    e.std_error = e.n_replicas > 1
                      ? std::sqrt(var / (e.n_replicas - 1.0) / e.n_replicas)
                      : 0.0;
    return e;
}

// covering event on a prebuilt fill: all of S inside and none of Sc inside
bool covers(const LoopFill& fill, const std::vector<Complex>& S,
            const std::vector<Complex>& Sc) {
    for (Complex z : S)
        if (fill.query(z) != 0) return false;
    for (Complex z : Sc)
        if (fill.query(z) == 0) return false;
    return true;
}

bool bbox_holds_all(const Rect& bb, const std::vector<Complex>& S) {
    for (Complex z : S)
        if (!bb.contains(z)) return false;
    return true;
}

}  // namespace

void SoupConfig::validate() const {
    if (intensity < 0.0) throw config_error("SoupConfig: intensity must be >= 0");
    if (!(t_min > 0.0) || !(t_max > t_min))
        throw config_error("SoupConfig: need 0 < t_min < t_max");
    if (steps_per_loop < 64 || !is_pow2(steps_per_loop))
        throw config_error("SoupConfig: steps_per_loop must be a power of two >= 64");
    if (!(window.width() > 0.0) || !(window.height() > 0.0))
        throw config_error("SoupConfig: degenerate window");
    if (domain == Domain::upper_half_plane && window.y0 < 0.0)
        throw config_error("SoupConfig: upper_half_plane window must have y0 >= 0");
    if (replicas < 1) throw config_error("SoupConfig: replicas must be >= 1");
    if (fill_grid < 64) throw config_error("SoupConfig: fill_grid must be >= 64");
}

double SoupConfig::expected_loop_count() const {
    return intensity * window.area() * (1.0 / t_min - 1.0 / t_max) / (2.0 * kPi);
}

std::vector<LoopSample> sample_soup(const SoupConfig& cfg, std::uint64_t replica) {
    cfg.validate();
    std::vector<LoopSample> out;
    for_each_loop(cfg, replica, nullptr, [&](RawLoop& rl) {
        LoopSample s;
        s.root = rl.root;
        s.duration = rl.duration;
        s.sign = rl.sign;
        s.path = rl.path;
        s.bbox = rl.bbox;
        s.diameter = hull_diameter(rl.path);
        out.push_back(std::move(s));
    });
    return out;
}

bool fill_contains(const LoopSample& loop, Complex z, int grid) {
    if (!loop.bbox.contains(z)) return false;
    LoopFill fill(loop.path, loop.bbox, grid);
    int q = fill.query(z);
    if (q == 1)
        throw domain_error("fill_contains: point lies on the discretized path");
    return q == 0;
}

Estimate estimate_alpha(const SoupConfig& cfg, const std::vector<Complex>& S,
                        const std::vector<Complex>& Sc, double min_diameter) {
    cfg.validate();
    if (S.empty()) throw domain_error("estimate_alpha: S must be nonempty");
    ReachFilter filter;
    filter.reach_all_groups = {S};
    double need = min_diameter;
    for (size_t i = 0; i < S.size(); ++i)
        for (size_t j = i + 1; j < S.size(); ++j)
            need = std::max(need, std::abs(S[i] - S[j]));
    filter.min_diameter = need;
    std::vector<double> counts(cfg.replicas, 0.0);
    parallel_replicas(cfg.replicas, [&](int r) {
        double n = 0.0;
        for_each_loop(cfg, r, &filter, [&](RawLoop& loop) {
            if (!bbox_holds_all(loop.bbox, S)) return;
            if (min_diameter > 0.0) {
                double dx = loop.bbox.width(), dy = loop.bbox.height();
                if (dx * dx + dy * dy < min_diameter * min_diameter) return;
                if (hull_diameter(loop.path) < min_diameter) return;
            }
            LoopFill fill(loop.path, loop.bbox, cfg.fill_grid);
            if (covers(fill, S, Sc)) n += 1.0;
        });
        counts[r] = n;
    });
    return reduce_counts(counts, cfg.intensity);
}

Estimate estimate_alpha_paired(const SoupConfig& cfg, const std::vector<Complex>& S,
                               const std::vector<Complex>& Sc) {
    cfg.validate();
    if (S.empty() || Sc.empty())
        throw domain_error("estimate_alpha_paired: both sets must be nonempty");
    // A qualifying loop must cover all of S or all of Sc.
    ReachFilter filter;
    filter.reach_all_groups = {S, Sc};
    double need_s = 0.0, need_sc = 0.0;
    for (size_t i = 0; i < S.size(); ++i)
        for (size_t j = i + 1; j < S.size(); ++j)
            need_s = std::max(need_s, std::abs(S[i] - S[j]));
    for (size_t i = 0; i < Sc.size(); ++i)
        for (size_t j = i + 1; j < Sc.size(); ++j)
            need_sc = std::max(need_sc, std::abs(Sc[i] - Sc[j]));
    filter.min_diameter = std::min(need_s, need_sc);

    std::vector<double> counts(cfg.replicas, 0.0);
    parallel_replicas(cfg.replicas, [&](int r) {
        double n = 0.0;
        for_each_loop(cfg, r, &filter, [&](RawLoop& loop) {
            bool try_s = bbox_holds_all(loop.bbox, S);
            bool try_sc = bbox_holds_all(loop.bbox, Sc);
            if (!try_s && !try_sc) return;
            LoopFill fill(loop.path, loop.bbox, cfg.fill_grid);
            if (try_s && covers(fill, S, Sc)) n += 1.0;
            else if (try_sc && covers(fill, Sc, S)) n += 1.0;
        });
        counts[r] = n;
    });
    return reduce_counts(counts, cfg.intensity);
}

std::vector<std::vector<Complex>> correlator_replica_samples(
    const SoupConfig& cfg, const std::vector<std::vector<Complex>>& point_sets,
    const ChargeVector& charges) {
    cfg.validate();
    if (std::abs(charges.lambda - cfg.intensity) > 1e-12)
        throw config_error("correlator: ChargeVector.lambda must equal soup intensity");
    std::vector<Complex> all_points;
    for (const auto& ps : point_sets) {
        if (ps.size() != charges.betas.size())
            throw domain_error("correlator: points/charges size mismatch");
        for (Complex z : ps) all_points.push_back(z);
    }
    if (cfg.domain == Domain::plane_box && !charges.conserves_charge())
        throw domain_error("correlator: charge conservation violated "
                           "(plane-domain estimator)");
    ReachFilter filter;
    filter.must_reach_any = all_points;

    std::vector<std::vector<Complex>> out(point_sets.size(),
                                          std::vector<Complex>(cfg.replicas));
    parallel_replicas(cfg.replicas, [&](int r) {
        std::vector<int> N(all_points.size(), 0);
        for_each_loop(cfg, r, &filter, [&](RawLoop& loop) {
            bool any = false;
            for (Complex z : all_points)
                if (loop.bbox.contains(z)) {
                    any = true;
                    break;
                }
            if (!any) return;
            LoopFill fill(loop.path, loop.bbox, cfg.fill_grid);
            for (size_t k = 0; k < all_points.size(); ++k)
                if (fill.query(all_points[k]) == 0) N[k] += loop.sign;
        });
        size_t base = 0;
        for (size_t s = 0; s < point_sets.size(); ++s) {
            double phase = 0.0;
            for (size_t j = 0; j < point_sets[s].size(); ++j)
                phase += charges.betas[j] * N[base + j];
            out[s][r] = Complex(std::cos(phase), std::sin(phase));
            base += point_sets[s].size();
        }
    });
    return out;
}

CorrelatorEstimate estimate_correlator(const SoupConfig& cfg,
                                       const std::vector<Complex>& points,
                                       const ChargeVector& charges) {
    auto samples = correlator_replica_samples(cfg, {points}, charges)[0];
    CorrelatorEstimate e;
    e.n_replicas = static_cast<int>(samples.size());
    Complex sum(0, 0);
    for (Complex v : samples) sum += v;
    Complex mean = sum / static_cast<double>(e.n_replicas);
    double vr = 0, vi = 0;
    for (Complex v : samples) {
        vr += (v.real() - mean.real()) * (v.real() - mean.real());
        vi += (v.imag() - mean.imag()) * (v.imag() - mean.imag());
    }
    e.re_mean = mean.real();
    e.im_mean = mean.imag();
    if (e.n_replicas > 1) {
        e.re_std_error = std::sqrt(vr / (e.n_replicas - 1.0) / e.n_replicas);
        e.im_std_error = std::sqrt(vi / (e.n_replicas - 1.0) / e.n_replicas);
    }
    return e;
}

Estimate estimate_alpha_bar(const SoupConfig& cfg) {
    cfg.validate();
    if (cfg.domain != Domain::upper_half_plane)
        throw config_error("estimate_alpha_bar: upper_half_plane domain required");
    const Complex target(0.0, 1.0);
    ReachFilter filter;
    filter.reach_all_groups = {{target}};
    filter.min_diameter = 1.0;
    std::vector<double> counts(cfg.replicas, 0.0);
    parallel_replicas(cfg.replicas, [&](int r) {
        double n = 0.0;
        for_each_loop(cfg, r, &filter, [&](RawLoop& loop) {
            if (!loop.bbox.contains(target)) return;
            double dx = loop.bbox.width(), dy = loop.bbox.height();
            if (dx * dx + dy * dy < 1.0) return;  // bbox diagonal < 1
            if (hull_diameter(loop.path) < 1.0) return;
            LoopFill fill(loop.path, loop.bbox, cfg.fill_grid);
            if (fill.query(target) == 0) n += 1.0;
        });
        counts[r] = n;
    });
    return reduce_counts(counts, cfg.intensity);
}

}  // namespace bls
