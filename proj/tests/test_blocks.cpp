#include <doctest.h>

#include <cmath>

#include "bls/blocks.hpp"
#include "oracles.hpp"

using bls::BlockContext;
using bls::ChargeVector;
using bls::Complex;
using bls::kPi;
using bls::SpecialCase;

namespace {
double mu_const() { return bls::a_cross_constant() / 6.0; }
}  // namespace

TEST_CASE("virasoro vev engine vs hand-computed matrix elements") {
    using bls::blocks_detail::virasoro_vev;
    oracle::SplitMix rng(63);
    for (int i = 0; i < 5; ++i) {
        double h = rng.uniform(0.2, 3.0), c = rng.uniform(0.5, 12.0);
        // level 1 and 2
        CHECK(virasoro_vev({1, -1}, h, c) == doctest::Approx(2 * h).epsilon(1e-13));
        CHECK(virasoro_vev({2, -2}, h, c) ==
              doctest::Approx(4 * h + c / 2).epsilon(1e-13));
        CHECK(virasoro_vev({2, -1, -1}, h, c) == doctest::Approx(6 * h).epsilon(1e-13));
        CHECK(virasoro_vev({1, 1, -1, -1}, h, c) ==
              doctest::Approx(4 * h * (2 * h + 1)).epsilon(1e-13));
        // level 3, basis L_{-3}, L_{-2}L_{-1}, L_{-1}^3
        CHECK(virasoro_vev({3, -3}, h, c) ==
              doctest::Approx(6 * h + 2 * c).epsilon(1e-13));
        CHECK(virasoro_vev({3, -2, -1}, h, c) == doctest::Approx(10 * h).epsilon(1e-13));
        CHECK(virasoro_vev({3, -1, -1, -1}, h, c) ==
              doctest::Approx(24 * h).epsilon(1e-13));
        CHECK(virasoro_vev({1, 2, -2, -1}, h, c) ==
              doctest::Approx(8 * h * h + 8 * h + h * c).epsilon(1e-13));
        CHECK(virasoro_vev({1, 2, -1, -1, -1}, h, c) ==
              doctest::Approx(36 * h * h + 12 * h).epsilon(1e-13));
        CHECK(virasoro_vev({1, 1, 1, -1, -1, -1}, h, c) ==
              doctest::Approx(24 * h * (2 * h + 1) * (h + 1)).epsilon(1e-13));
    }
}

TEST_CASE("block coefficients: printed closed forms") {
    // all external dimensions equal: F_1 = Delta_P / 2
    BlockContext eq{3.7, {0.4, 0.4, 0.4, 0.4}, 0.9};
    auto F = bls::block_coefficients(eq, 1);
    CHECK(F[0] == 1.0);
    CHECK(F[1] == doctest::Approx(0.45).epsilon(1e-12));

    // F_2 at c = 2, Delta_P = 1/3, all external 1/5: hand value 11/90
    BlockContext ctx{2.0, {0.2, 0.2, 0.2, 0.2}, 1.0 / 3.0};
    auto F2 = bls::block_coefficients(ctx, 2);
    CHECK(F2[2] == doctest::Approx(11.0 / 90.0).epsilon(1e-12));
    CHECK(F2[2] ==
          doctest::Approx(bls::blocks_detail::f2_closed_form(ctx)).epsilon(1e-12));
}

TEST_CASE("Gram path equals printed F1, F2 on random draws") {
    oracle::SplitMix rng(65);
    for (int i = 0; i < 100; ++i) {
        BlockContext ctx{rng.uniform(0.4, 20.0),
                         {rng.uniform(0.05, 2.0), rng.uniform(0.05, 2.0),
                          rng.uniform(0.05, 2.0), rng.uniform(0.05, 2.0)},
                         rng.uniform(0.05, 4.0)};
        if (std::abs(bls::blocks_detail::gram2_det(ctx.internal, ctx.c)) < 1e-3)
            continue;
        auto F = bls::block_coefficients(ctx, 2);
        CHECK(std::abs(F[1] - bls::blocks_detail::f1_closed_form(ctx)) < 1e-10);
        CHECK(std::abs(F[2] - bls::blocks_detail::f2_closed_form(ctx)) <
              1e-10 * std::max(1.0, std::abs(F[2])));
    }
}

TEST_CASE("vacuum module block: Ising identity channel") {
    // c = 1/2, external dimensions 1/16: F_1 = 0, F_2 = 1/64
    BlockContext ctx{0.5, {0.0625, 0.0625, 0.0625, 0.0625}, 0.0};
    auto F = bls::block_coefficients(ctx, 2);
    CHECK(F[1] == 0.0);
    CHECK(F[2] == doctest::Approx(1.0 / 64.0).epsilon(1e-12));
}

TEST_CASE("null state error on singular Gram matrix") {
    // level-2 Kac zero: h = 1/3 at c = 14/15 (lambda = 7/15)
    BlockContext ctx{14.0 / 15.0, {0.2, 0.2, 0.2, 0.2}, 1.0 / 3.0};
    CHECK_THROWS_AS(bls::block_coefficients(ctx, 2), bls::null_state_error);
}

TEST_CASE("reduced series structure") {
    ChargeVector c{{0.7, 1.1, 1.9, 2.0 * kPi - 3.7}, 0.83};
    auto d = bls::dims(c);
    auto red = bls::reduced_series(c, 12);
    CHECK(red.coeff(0, 0).real() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(red.coeff(1, 1).real() ==
          doctest::Approx(-2.0 * d.delta_tilde * bls::a_cross_constant())
              .epsilon(1e-12));

    // pointwise agreement with the power-stripped G function
    double x = 0.03;
    double strip = std::exp(-2.0 * (d.delta_pair[0][1] - d.delta[2] - d.delta[3]) *
                            std::log(x));
    double g = bls::g_function({x, 0}, c, bls::GChannel::g21_34);
    Complex series_val = red.eval({x, 0}, {x, 0});
    CHECK(std::abs(series_val.real() - g * strip) < 1e-8);
    CHECK(std::abs(series_val.imag()) < 1e-12);
}

TEST_CASE("extraction: general-charge printed formulas") {
    oracle::SplitMix rng(67);
    for (int trial = 0; trial < 10; ++trial) {
        double lam = rng.uniform(0.3, 1.8);
        double b1 = rng.uniform(0.3, 2.2), b2 = rng.uniform(0.3, 2.2),
               b3 = rng.uniform(0.3, 2.2);
        ChargeVector c{{b1, b2, b3, 2.0 * kPi - b1 - b2 - b3}, lam};
        auto table = bls::extract_c_products(c, 4);
        double mu = mu_const();
        CHECK(table.at(0, 0) == doctest::Approx(1.0).epsilon(1e-10));
        double c11 = -48.0 / 5.0 * mu * lam * std::sin(b1 / 2) * std::sin(b2 / 2) *
                     std::sin(b3 / 2) * std::sin((b1 + b2 + b3) / 2);
        CHECK(table.at(1, 1) == doctest::Approx(c11).epsilon(1e-8));
        CHECK(table.at(2, 2) == doctest::Approx(0.5 * c11 * c11).epsilon(1e-8));
        CHECK(table.at(3, 3) ==
              doctest::Approx(c11 * c11 * c11 / 6.0).epsilon(1e-7));
        CHECK(std::abs(table.at(0, 3)) < 1e-9);
        // off-diagonal spin-3 entry
        double d12 = lam / 10.0 * (1.0 - std::cos(b1 + b2));
        double c14 = 24.0 * mu * lam * lam / 5.0 *
                     (std::cos(b3 / 2) - std::cos(b1 + b2 + 1.5 * b3)) *
                     std::sin(b1 / 2) * std::sin((b1 - b2) / 2) * std::sin(b2 / 2) *
                     std::sin(b3 / 2) / (-10.0 - 30.0 * d12);
        CHECK(table.at(1, 4) == doctest::Approx(c14).epsilon(1e-8));
        CHECK(table.at(4, 1) == doctest::Approx(c14).epsilon(1e-8));
    }
}

TEST_CASE("extraction: deeper printed off-diagonals at one draw") {
    double lam = 0.83, b1 = 0.7, b2 = 1.1, b3 = 1.9;
    ChargeVector c{{b1, b2, b3, 2.0 * kPi - b1 - b2 - b3}, lam};
    auto table = bls::extract_c_products(c, 6);
    double mu = mu_const();
    double s = std::sin(b1 / 2) * std::sin(b2 / 2) * std::sin(b3 / 2) *
               std::sin((b1 + b2 + b3) / 2);
    double c25 = 1152.0 * mu * mu * lam * lam * lam / 25.0 *
                 (std::cos(b1 + b3) - std::cos(b2 + b3)) * s * s /
                 (-20.0 - 3.0 * lam * (1.0 - std::cos(b1 + b2)));
    CHECK(table.at(2, 5) == doctest::Approx(c25).epsilon(1e-8));
    double c36 = -9216.0 * mu * mu * mu * std::pow(lam, 4) / 125.0 *
                 (std::cos(b1 + b3) - std::cos(b2 + b3)) * s * s * s /
                 (-10.0 - lam * (1.0 - std::cos(b1 + b2)));
    CHECK(table.at(3, 6) == doctest::Approx(c36).epsilon(1e-8));
}

TEST_CASE("extraction: sparsity, symmetry, resummation closure") {
    ChargeVector c{{0.9, 1.4, 2.3, 2.0 * kPi - 4.6}, 0.7};
    const int maxp = 7;
    auto table = bls::extract_c_products(c, maxp);
    for (const auto& [key, val] : table.entries) {
        if ((key.first - key.second) % 3 != 0) CHECK(std::abs(val) < 1e-9);
        CHECK(val == doctest::Approx(table.at(key.second, key.first)).epsilon(1e-9));
    }

    // resum the block expansion and compare with the reduced series
    auto d = bls::dims(c);
    auto red = bls::reduced_series(c, maxp);
    for (int P = 0; P <= maxp; ++P)
        for (int Pp = 0; Pp <= maxp; ++Pp) {
            double acc = 0.0;
            for (int p = P % 3; p <= P; p += 3)
                for (int pp = Pp % 3; pp <= Pp; pp += 3) {
                    BlockContext bc{2.0 * c.lambda,
                                    {d.delta[0], d.delta[1], d.delta[2], d.delta[3]},
                                    d.delta_pair[0][1] + p / 3.0};
                    BlockContext bcp = bc;
                    bcp.internal = d.delta_pair[0][1] + pp / 3.0;
                    double fm = bls::block_coefficients(bc, (P - p) / 3).back();
                    double fn = bls::block_coefficients(bcp, (Pp - pp) / 3).back();
                    acc += table.at(p, pp) * fm * fn;
                }
            CHECK(std::abs(acc - red.coeff(P, Pp).real()) < 1e-9);
        }
}

TEST_CASE("special case tables: all pi") {
    double lam = 0.83;
    auto t = bls::special_case_tables(SpecialCase::all_pi, lam, 9);
    double mu = mu_const();
    double c11sq = 48.0 / 5.0 * lam * mu;
    double fact = 1.0;
    for (int n = 0; n <= 6; ++n) {
        if (n > 0) fact *= n;
        CHECK(t.at(n, n) == doctest::Approx(std::pow(c11sq, n) / fact).epsilon(1e-7));
    }
    CHECK(std::abs(t.at(6, 0)) < 1e-9);
    CHECK(t.at(7, 1) ==
          doctest::Approx(-192.0 / 875.0 * lam * lam * mu / (15.0 * lam - 7.0))
              .epsilon(1e-8));
    CHECK(t.at(8, 2) == doctest::Approx(288.0 / 4375.0 * (161.0 * lam - 50.0) /
                                        (21.0 * lam + 2.0) * lam * lam * mu * mu)
                            .epsilon(1e-8));
    CHECK(t.at(9, 3) ==
          doctest::Approx(1536.0 / 21875.0 * (59.0 * lam - 25.0) / (lam + 1.0) *
                          std::pow(lam, 3) * std::pow(mu, 3))
              .epsilon(1e-8));
    double c77 = 768.0 * mu * std::pow(lam, 3) / 19140625.0 *
                 (125.0 / std::pow(7.0 - 15.0 * lam, 2) +
                  37158912.0 * std::pow(mu, 6) * std::pow(lam, 4));
    CHECK(t.at(7, 7) == doctest::Approx(c77).epsilon(1e-7));
}

TEST_CASE("special case tables: all pi/2") {
    double lam = 0.83;
    auto t = bls::special_case_tables(SpecialCase::all_half_pi, lam, 9);
    double mu = mu_const();
    double c11 = -12.0 / 5.0 * lam * mu;
    double fact = 1.0;
    for (int n = 0; n <= 5; ++n) {
        if (n > 0) fact *= n;
        CHECK(t.at(n, n) == doctest::Approx(std::pow(c11, n) / fact).epsilon(1e-7));
    }
    CHECK(t.at(6, 6) == doctest::Approx(lam * lam / 1250000.0 *
                                        (125.0 + 331776.0 * std::pow(mu, 6) *
                                                     std::pow(lam, 4)))
                            .epsilon(1e-7));
    CHECK(t.at(6, 0) == doctest::Approx(-lam / 100.0).epsilon(1e-9));
    CHECK(t.at(7, 1) ==
          doctest::Approx(3.0 * lam * lam * mu / 1750.0 *
                          (2268.0 * lam * lam + 5835.0 * lam - 1450.0) /
                          (162.0 * lam * lam + 390.0 * lam - 175.0))
              .epsilon(1e-8));
    CHECK(t.at(8, 2) ==
          doctest::Approx(-9.0 * lam * lam * mu * mu / 4375.0 *
                          (1134.0 * std::pow(lam, 3) + 5835.0 * lam * lam +
                           2350.0 * lam + 1250.0) /
                          (81.0 * lam * lam + 390.0 * lam + 25.0))
              .epsilon(1e-8));
    CHECK(t.at(9, 3) ==
          doctest::Approx(36.0 * std::pow(lam, 3) * std::pow(mu, 3) / 21875.0 *
                          (252.0 * std::pow(lam, 3) + 1945.0 * lam * lam +
                           2050.0 * lam + 1250.0) /
                          (18.0 * lam * lam + 130.0 * lam + 75.0))
              .epsilon(1e-8));
}

TEST_CASE("null state scan") {
    std::vector<double> grid;
    for (int i = 0; i <= 15; ++i) grid.push_back(0.4 + 0.15 * i / 15.0);
    auto poles = bls::null_state_scan(SpecialCase::all_pi, grid, 7);
    bool found = false;
    for (const auto& p : poles)
        if (p.p == 7 && p.p_prime == 1) {
            found = true;
            CHECK(std::abs(p.lambda_star - 7.0 / 15.0) < 1e-3);
            CHECK(p.denominator_root == doctest::Approx(7.0 / 15.0).epsilon(1e-9));
            CHECK(p.level == 2);
        }
    CHECK(found);

    // no pole of (7,1) below lambda = 0.4
    std::vector<double> low;
    for (int i = 0; i <= 10; ++i) low.push_back(0.1 + 0.3 * i / 10.0);
    for (const auto& p : bls::null_state_scan(SpecialCase::all_pi, low, 7))
        CHECK(!(p.p == 7 && p.p_prime == 1));

    // the diverging operator sits at total dimension 7/3 when beta = pi
    double d71 = 7.0 / 15.0 / 10.0 * (1.0 - std::cos(2.0 * kPi)) + 7.0 / 3.0;
    CHECK(d71 == doctest::Approx(7.0 / 3.0));
}

TEST_CASE("extraction bounds") {
    ChargeVector c{{kPi, kPi, kPi, kPi}, 1.0};
    CHECK_THROWS_AS(bls::extract_c_products(c, 12), bls::domain_error);
    ChargeVector bad{{1.0, 1.0, 1.0, 1.0}, 1.0};
    CHECK_THROWS_AS(bls::extract_c_products(bad, 3), bls::domain_error);
}
