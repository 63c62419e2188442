#include "bls/blocks.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace bls {

namespace blocks_detail {

namespace {

struct VevKey {
    std::vector<int> word;
    bool operator<(const VevKey& o) const { return word < o.word; }
};

double vev_rec(std::vector<int>& w, double h, double c,
               std::map<std::vector<int>, double>& memo) {
    if (w.empty()) return 1.0;
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
    double val = 0.0;
    bool reduced = false;
    for (size_t i = 0; i + 1 < w.size(); ++i) {
        int m = w[i], n = w[i + 1];
        if (m > n) {
            std::vector<int> swapped = w;
            std::swap(swapped[i], swapped[i + 1]);
            val = vev_rec(swapped, h, c, memo);
            std::vector<int> merged;
            merged.reserve(w.size() - 1);
            merged.insert(merged.end(), w.begin(), w.begin() + i);
            merged.push_back(m + n);
            merged.insert(merged.end(), w.begin() + i + 2, w.end());
            val += (m - n) * vev_rec(merged, h, c, memo);
            if (m + n == 0) {
                std::vector<int> dropped;
                dropped.reserve(w.size() - 2);
                dropped.insert(dropped.end(), w.begin(), w.begin() + i);
                dropped.insert(dropped.end(), w.begin() + i + 2, w.end());
                val += c / 12.0 * m * (m * m - 1) * vev_rec(dropped, h, c, memo);
            }
            reduced = true;
            break;
        }
    }
    if (!reduced) {
        // non-decreasing: annihilation unless all generators are L_0
        if (w.front() < 0 || w.back() > 0)
            val = 0.0;
        else
            val = std::pow(h, static_cast<double>(w.size()));
    }
    memo[w] = val;
    return val;
}

}  // namespace

double virasoro_vev(const std::vector<int>& word, double h, double c) {
    std::map<std::vector<int>, double> memo;
    std::vector<int> w = word;
    return vev_rec(w, h, c, memo);
}

std::vector<std::vector<int>> level_partitions(int K, bool vacuum) {
    // partitions of K in non-increasing order; vacuum module: parts >= 2
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    int minpart = vacuum ? 2 : 1;
    std::function<void(int, int)> rec = [&](int rem, int maxp) {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rem, maxp); p >= minpart; --p) {
            cur.push_back(p);
            rec(rem - p, p);
            cur.pop_back();
        }
    };
    rec(K, K);
    return out;
}

double f1_closed_form(const BlockContext& ctx) {
    double h = ctx.internal;
    const auto& d = ctx.external;
    return (h + d[1] - d[0]) * (h + d[2] - d[3]) / (2.0 * h);
}

double gram2_det(double h, double c) {
    return 4.0 * h * (2.0 * h + 1.0) * (4.0 * h + c / 2.0) - 36.0 * h * h;
}

// The printed level-2 form, F_2 = (A + C)/B with B the level-2 Gram
// determinant and A, C the two matrix-element products.
double f2_closed_form(const BlockContext& ctx) {
    double h = ctx.internal, c = ctx.c;
    const auto& d = ctx.external;
    double ap = h + d[1] - d[0];  // h + Delta2 - Delta1
    double a = h + d[2] - d[3];   // h + Delta3 - Delta4
    double A = ap * (ap + 1.0) *
               (a * (a + 1.0) * (4.0 * h + c / 2.0) -
                6.0 * h * (h + 2.0 * d[2] - d[3]));
    double B = gram2_det(h, c);
    double C = (h + 2.0 * d[1] - d[0]) *
               (4.0 * h * (2.0 * h + 1.0) * (h + 2.0 * d[2] - d[3]) -
                6.0 * h * a * (a + 1.0));
    return (A + C) / B;
}

}  // namespace blocks_detail

namespace {

using blocks_detail::level_partitions;
using blocks_detail::virasoro_vev;

constexpr double kVacuumTol = 1e-10;
constexpr double kSingularCond = 1e12;

// <h| D_Y^dag phi_a(1) |h_b> with D_Y = L_{-k1} L_{-k2} ... (k1 >= k2 >= ...):
// each factor contributes (alpha + (k+1) h_a) with alpha advancing by k.
double descendant_matrix_element(const std::vector<int>& part, double h,
                                 double ha, double hb) {
    double alpha = h - ha - hb;
    double v = 1.0;
    for (int k : part) {
        v *= alpha + (k + 1.0) * ha;
        alpha += k;
    }
    return v;
}

double block_level_coefficient(int K, double h, double c,
                               const std::array<double, 4>& d, bool vacuum) {
    auto parts = level_partitions(K, vacuum);
    const int n = static_cast<int>(parts.size());
    if (n == 0) return 0.0;
    Eigen::MatrixXd M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            // word: reversed(Y_i) as positive modes, then Y_j as negatives
            std::vector<int> w;
            for (auto it = parts[i].rbegin(); it != parts[i].rend(); ++it)
                w.push_back(*it);
            for (int k : parts[j]) w.push_back(-k);
            M(i, j) = virasoro_vev(w, h, c);
        }
    Eigen::VectorXd v34(n), v21(n);
    for (int i = 0; i < n; ++i) {
        v34(i) = descendant_matrix_element(parts[i], h, d[2], d[3]);
        v21(i) = descendant_matrix_element(parts[i], h, d[1], d[0]);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double smax = svd.singularValues()(0);
    double smin = svd.singularValues()(n - 1);
    if (!(smin > 0.0) || smax / smin > kSingularCond)
        throw null_state_error("singular Gram matrix at level " + std::to_string(K) +
                                   ", c = " + std::to_string(c),
                               K, c);
    return v21.dot(svd.solve(v34));
}

}  // namespace

std::vector<double> block_coefficients(const BlockContext& ctx, int k_max) {
    if (k_max < 0 || k_max > 3)
        throw domain_error("block_coefficients: K_max must be in [0, 3]");
    bool vacuum = std::abs(ctx.internal) < kVacuumTol;
    std::vector<double> out;
    out.push_back(1.0);
    for (int K = 1; K <= k_max; ++K)
        out.push_back(block_level_coefficient(K, vacuum ? 0.0 : ctx.internal,
                                              ctx.c, ctx.external, vacuum));
    return out;
}

Puiseux2 reduced_series(const ChargeVector& c, int order) {
    if (c.betas.size() != 4)
        throw domain_error("reduced_series: exactly four charges required");
    if (!c.conserves_charge())
        throw domain_error("reduced_series: charge conservation violated");
    Dimensions d = dims(c);
    double b = d.delta_pair[0][3] - d.delta[1] - d.delta[2];
    Puiseux2 a = a_series(order);
    a *= Complex(2.0 * d.delta_tilde, 0.0);
    Puiseux2 r = series_exp(a);
    r = series_mul(r, one_minus_pow(b, false, order));
    r = series_mul(r, one_minus_pow(b, true, order));
    return r;
}

CProductTable extract_c_products(const ChargeVector& c, int max_p) {
    if (max_p < 0 || max_p > 11)
        throw domain_error("extract_c_products: max_p must be in [0, 11] "
                           "(level-3 blocks)");
    const int order = std::max(12, max_p);
    Puiseux2 red = reduced_series(c, order);
    Dimensions d = dims(c);
    double d12 = d.delta_pair[0][1];
    std::array<double, 4> ext{d.delta[0], d.delta[1], d.delta[2], d.delta[3]};

    // Blocks of the p-ladder, F_K(Delta12 + p/3), K <= 3.
    std::map<std::pair<int, int>, double> F;  // (K, p) -> F_K
    auto blockF = [&](int K, int p) {
        auto key = std::make_pair(K, p);
        auto it = F.find(key);
        if (it != F.end()) return it->second;
        BlockContext ctx{c.lambda * 2.0, ext, d12 + p / 3.0};
        double val;
        try {
            val = block_coefficients(ctx, K).back();
        } catch (null_state_error& e) {
            e.p = p;
            throw;
        }
        F[key] = val;
        return val;
    };

    CProductTable table;
    table.max_p = max_p;
    for (int P = 0; P <= max_p; ++P)
        for (int Pp = 0; Pp <= max_p; ++Pp) {
            double acc = red.coeff(P, Pp).real();
            for (int p = P % 3; p <= P; p += 3)
                for (int pp = Pp % 3; pp <= Pp; pp += 3) {
                    if (p == P && pp == Pp) continue;
                    auto it = table.entries.find({p, pp});
                    if (it == table.entries.end() || it->second == 0.0) continue;
                    try {
                        acc -= it->second * blockF((P - p) / 3, p) *
                               blockF((Pp - pp) / 3, pp);
                    } catch (null_state_error& e) {
                        e.p_prime = pp;
                        throw;
                    }
                }
            table.entries[{P, Pp}] = acc;
        }
    return table;
}

double CProductTable::at(int p, int pp) const {
    auto it = entries.find({p, pp});
    if (it == entries.end())
        throw domain_error("CProductTable: entry out of range");
    return it->second;
}

CProductTable special_case_tables(SpecialCase sc, double lambda, int max_p) {
    double beta = sc == SpecialCase::all_pi ? kPi : kPi / 2.0;
    ChargeVector c{{beta, beta, beta, beta}, lambda};
    return extract_c_products(c, max_p);
}

std::vector<NullStatePole> null_state_scan(SpecialCase sc,
                                           const std::vector<double>& lambda_grid,
                                           int max_p) {
    std::vector<NullStatePole> poles;
    if (lambda_grid.size() < 2) return poles;

    std::vector<CProductTable> tables;
    std::vector<bool> ok(lambda_grid.size(), false);
    for (size_t i = 0; i < lambda_grid.size(); ++i) {
        try {
            tables.push_back(special_case_tables(sc, lambda_grid[i], max_p));
            ok[i] = true;
        } catch (const null_state_error&) {
            tables.emplace_back();  // grid point sits on an exact pole
        }
    }

    double beta = sc == SpecialCase::all_pi ? kPi : kPi / 2.0;
    auto d12_of = [&](double lam) {
        double s = std::sin(beta);  // sin((b1+b2)/2) = sin(beta)
        return lam / 5.0 * s * s;
    };

    auto entry_at = [&](size_t i, int p, int pp) { return tables[i].at(p, pp); };

    // median |C| per entry, used as the blow-up reference scale
    for (int p = 0; p <= max_p; ++p)
        for (int pp = 0; pp <= max_p; ++pp) {
            if ((p - pp) % 3 != 0) continue;
            std::vector<double> mags;
            for (size_t i = 0; i < lambda_grid.size(); ++i)
                if (ok[i]) mags.push_back(std::abs(entry_at(i, p, pp)));
            if (mags.size() < 2) continue;
            std::vector<double> sorted = mags;
            std::sort(sorted.begin(), sorted.end());
            double med = sorted[sorted.size() / 2];
            if (med == 0.0) continue;

            for (size_t i = 0; i + 1 < lambda_grid.size(); ++i) {
                if (!ok[i] || !ok[i + 1]) continue;
                double ca = entry_at(i, p, pp), cb = entry_at(i + 1, p, pp);
                if (ca * cb >= 0.0) continue;
                if (std::min(std::abs(ca), std::abs(cb)) < 5.0 * med) continue;
                // bisect 1/C through its zero crossing
                double lo = lambda_grid[i], hi = lambda_grid[i + 1];
                double glo = 1.0 / ca;
                for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
                    double mid = 0.5 * (lo + hi);
                    double g;
                    try {
                        g = 1.0 / special_case_tables(sc, mid, max_p).at(p, pp);
                    } catch (const null_state_error&) {
                        g = 0.0;
                    }
                    if (g == 0.0) {
                        lo = hi = mid;
                        break;
                    }
                    if (g * glo <= 0.0)
                        hi = mid;
                    else {
                        lo = mid;
                        glo = g;
                    }
                }
                NullStatePole pole{};
                pole.lambda_star = 0.5 * (lo + hi);
                pole.p = p;
                pole.p_prime = pp;
                // locate the Gram-determinant root responsible in the bracket
                pole.denominator_root = pole.lambda_star;
                pole.level = 0;
                double bl = lambda_grid[i], bh = lambda_grid[i + 1];
                bool found = false;
                for (int K = 2; K <= 3 && !found; ++K)
                    for (int q = 0; q <= max_p && !found; q += 1) {
                        auto det = [&](double lam) {
                            double h = d12_of(lam) + q / 3.0;
                            if (K == 2) return blocks_detail::gram2_det(h, 2.0 * lam);
                            // level 3 determinant via the Gram matrix itself
                            auto parts = level_partitions(3, false);
                            Eigen::Matrix3d M;
                            for (int a = 0; a < 3; ++a)
                                for (int b2 = 0; b2 < 3; ++b2) {
                                    std::vector<int> w;
                                    for (auto itp = parts[a].rbegin();
                                         itp != parts[a].rend(); ++itp)
                                        w.push_back(*itp);
                                    for (int kk : parts[b2]) w.push_back(-kk);
                                    M(a, b2) = virasoro_vev(w, h, 2.0 * lam);
                                }
                            return M.determinant();
                        };
                        if (det(bl) * det(bh) < 0.0) {
                            double rl = bl, rh = bh;
                            for (int it = 0; it < 80 && rh - rl > 1e-13; ++it) {
                                double mid = 0.5 * (rl + rh);
                                (det(rl) * det(mid) <= 0.0 ? rh : rl) = mid;
                            }
                            pole.denominator_root = 0.5 * (rl + rh);
                            pole.level = K;
                            found = true;
                        }
                    }
                poles.push_back(pole);
            }
        }
    return poles;
}

}  // namespace bls
