// Command-line surface for the loop-soup correlator library: closed-form
// correlators, conformal-block tables, Monte Carlo estimators, and the
// closed-form identity suite.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bls/blocks.hpp"
#include "bls/correlators.hpp"
#include "bls/manifest.hpp"
#include "bls/montecarlo.hpp"
#include "bls/specfun.hpp"
#include "bls/weights.hpp"

using nlohmann::json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitCheckFailed = 3;

std::vector<bls::Complex> parse_points(const std::string& s) {
    std::vector<bls::Complex> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        double re = 0, im = 0;
        char comma = 0;
        std::stringstream ps(item);
        if (!(ps >> re >> comma >> im) || comma != ',')
            throw bls::config_error("bad point '" + item + "', expected re,im");
        out.emplace_back(re, im);
    }
    return out;
}

std::vector<double> parse_reals(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw bls::config_error("cannot open output file " + path);
    f << text;
}

json manifest_json(const bls::RunManifest& m) {
    return json{{"command", m.command}, {"config_hash", m.config_hash}};
}

// ---------------------------------------------------------------- corr ----

int cmd_corr(const std::string& points_s, const std::string& betas_s,
             double lambda, const std::string& domain, const std::string& format,
             const std::string& out_path) {
    auto points = parse_points(points_s);
    auto betas = parse_reals(betas_s);
    if (points.size() != betas.size())
        throw bls::config_error("points and betas must have equal length");
    bls::ChargeVector charges{betas, lambda};

    double value = 0.0;
    if (domain == "half-plane") {
        switch (points.size()) {
            case 1:
                value = bls::one_point_halfplane(points[0], betas[0], lambda);
                break;
            case 2:
                value = bls::two_point_halfplane(
                    bls::HalfPlanePair(points[0], points[1]), charges);
                break;
            default:
                throw bls::config_error(
                    "half-plane correlators support 1 or 2 points");
        }
    } else if (domain == "plane") {
        switch (points.size()) {
            case 2:
                value = bls::two_point_plane(points[0], points[1], charges);
                break;
            case 3:
                value = bls::three_point_plane(points[0], points[1], points[2],
                                               charges);
                break;
            case 4:
                value = bls::four_point_plane(
                    {points[0], points[1], points[2], points[3]}, charges);
                break;
            default:
                throw bls::config_error("plane correlators support 2-4 points");
        }
    } else {
        throw bls::config_error("domain must be half-plane or plane");
    }

    auto manifest = bls::RunManifest::make(
        "corr", {{"points", points_s},
                 {"betas", betas_s},
                 {"lambda", std::to_string(lambda)},
                 {"domain", domain}});
    std::clog << "manifest " << manifest.config_hash << " at "
              << manifest.timestamp << "\n";
    std::ostringstream os;
    if (format == "csv") {
        os << "# manifest " << manifest.config_hash << "\n";
        os << "n_points,domain,value\n";
        os.precision(17);
        os << points.size() << "," << domain << "," << value << "\n";
    } else {
        json j = {{"schema", 1},
                  {"manifest", manifest_json(manifest)},
                  {"quantity", "correlator"},
                  {"domain", domain},
                  {"n_points", points.size()},
                  {"value", value}};
        os << j.dump(2) << "\n";
    }
    write_text(out_path, os.str());
    return 0;
}

// -------------------------------------------------------------- blocks ----

int cmd_blocks(const std::string& case_s, double lambda, const std::string& betas_s,
               int max_p, const std::string& scan_s, const std::string& out_path,
               const std::string& sidecar_path) {
    bls::CProductTable table;
    bls::SpecialCase sc = bls::SpecialCase::all_pi;
    bool special = true;
    if (case_s == "pi") {
        sc = bls::SpecialCase::all_pi;
        table = bls::special_case_tables(sc, lambda, max_p);
    } else if (case_s == "pi2") {
        sc = bls::SpecialCase::all_half_pi;
        table = bls::special_case_tables(sc, lambda, max_p);
    } else if (case_s == "general") {
        special = false;
        auto betas = parse_reals(betas_s);
        if (betas.size() != 4)
            throw bls::config_error("general case needs exactly four betas");
        table = bls::extract_c_products(bls::ChargeVector{betas, lambda}, max_p);
    } else {
        throw bls::config_error("case must be general, pi, or pi2");
    }

    auto manifest = bls::RunManifest::make(
        "blocks", {{"case", case_s},
                   {"lambda", std::to_string(lambda)},
                   {"betas", betas_s},
                   {"max_p", std::to_string(max_p)}});
    std::clog << "manifest " << manifest.config_hash << " at "
              << manifest.timestamp << "\n";

    std::ostringstream os;
    os << "# manifest " << manifest.config_hash << "\n";
    os << "p,p_prime,value\n";
    os.precision(17);
    for (const auto& [key, value] : table.entries) {
        if ((key.first - key.second) % 3 != 0) continue;  // spin not 0 mod 3
        os << key.first << "," << key.second << "," << value << "\n";
    }
    write_text(out_path, os.str());

    json poles = json::array();
    if (!scan_s.empty()) {
        if (!special)
            throw bls::config_error("--scan requires --case pi or pi2");
        double a = 0, b = 0;
        int n = 0;
        char c1 = 0, c2 = 0;
        std::stringstream ss(scan_s);
        if (!(ss >> a >> c1 >> b >> c2 >> n) || c1 != ':' || c2 != ':' || n < 2)
            throw bls::config_error("--scan expects a:b:n with n >= 2");
        std::vector<double> grid(n);
        for (int i = 0; i < n; ++i) grid[i] = a + (b - a) * i / (n - 1);
        for (const auto& pole : bls::null_state_scan(sc, grid, max_p))
            poles.push_back({{"lambda_star", pole.lambda_star},
                             {"p", pole.p},
                             {"p_prime", pole.p_prime},
                             {"denominator_root", pole.denominator_root},
                             {"level", pole.level}});
    }
    json sidecar = {{"schema", 1},
                    {"manifest", manifest_json(manifest)},
                    {"null_state_poles", poles}};
    if (!sidecar_path.empty()) write_text(sidecar_path, sidecar.dump(2) + "\n");
    return 0;
}

// ------------------------------------------------------------------ mc ----

bls::SoupConfig read_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw bls::config_error("cannot open config file " + path);
    bls::SoupConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) continue;
        try {
            if (key == "intensity") cfg.intensity = std::stod(val);
            else if (key == "domain") {
                if (val == "upper_half_plane") cfg.domain = bls::Domain::upper_half_plane;
                else if (val == "box") cfg.domain = bls::Domain::plane_box;
                else throw bls::config_error("domain must be upper_half_plane or box");
            } else if (key == "t_min") cfg.t_min = std::stod(val);
            else if (key == "t_max") cfg.t_max = std::stod(val);
            else if (key == "steps_per_loop") cfg.steps_per_loop = std::stoi(val);
            else if (key == "window") {
                std::stringstream ws(val);
                if (!(ws >> cfg.window.x0 >> cfg.window.y0 >> cfg.window.x1 >> cfg.window.y1))
                    throw bls::config_error("window expects: x0 y0 x1 y1");
            } else if (key == "seed") cfg.seed = std::stoull(val);
            else if (key == "replicas") cfg.replicas = std::stoi(val);
            else if (key == "fill_grid") cfg.fill_grid = std::stoi(val);
            else throw bls::config_error("unknown config key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw bls::config_error("bad value for '" + key + "' at line " +
                                    std::to_string(lineno));
        }
    }
    cfg.validate();
    return cfg;
}

json record(const std::string& quantity, double mean, double stderr_, int n,
            const std::string& hash) {
    return json{{"schema", 1},      {"quantity", quantity}, {"mean", mean},
                {"stderr", stderr_}, {"n_replicas", n},      {"config_hash", hash}};
}

struct CheckResult {
    std::string name;
    double value, target, tolerance;
    bool pass;
};

// (a) alpha_S(13|24) on the unit square vs -(1/5) A(1/2)
CheckResult check_alpha_square(const bls::SoupConfig& cfg, json& records,
                               const std::string& hash) {
    std::vector<bls::Complex> S{{0, 0}, {1, 1}}, Sc{{1, 0}, {0, 1}};
    auto est = bls::estimate_alpha_paired(cfg, S, Sc);
    records.push_back(record("alpha_s_13_24_unit_square", est.mean, est.std_error,
                             est.n_replicas, hash));
    double target = -bls::a_of_x(bls::Complex(0.5, 0)) / 5.0;
    double tol = std::max(3.0 * est.std_error, 0.05 * std::abs(target));
    return {"alpha-square", est.mean, target, tol,
            std::abs(est.mean - target) <= tol};
}

// (b) Nacu-Werner difference: alpha(z1|z2) - alpha(z1|z3), |z12|/|z13| = 1/e
CheckResult check_nacu_werner(const bls::SoupConfig& cfg, json& records,
                              const std::string& hash) {
    bls::Complex z1(0, 0), z2(1, 0), z3(std::exp(1.0), 0);
    auto a12 = bls::estimate_alpha(cfg, {z1}, {z2});
    auto a13 = bls::estimate_alpha(cfg, {z1}, {z3});
    double diff = a12.mean - a13.mean;
    double se = std::hypot(a12.std_error, a13.std_error);
    records.push_back(record("nacu_werner_log_difference", diff, se,
                             a12.n_replicas, hash));
    double tol = 3.0 * se;
    return {"nacu-werner", diff, -0.2, tol, std::abs(diff + 0.2) <= tol};
}

// (c) pair weight alpha_H(i, 2i) vs the closed form
CheckResult check_pair_h(const bls::SoupConfig& cfg, json& records,
                         const std::string& hash) {
    auto est = bls::estimate_alpha(cfg, {{0, 1}, {0, 2}}, {});
    records.push_back(record("pair_weight_H_i_2i", est.mean, est.std_error,
                             est.n_replicas, hash));
    double target =
        bls::pair_weight_halfplane(bls::HalfPlanePair({0, 1}, {0, 2}));
    double tol = std::max(3.0 * est.std_error, 0.05 * std::abs(target));
    return {"pair-h", est.mean, target, tol, std::abs(est.mean - target) <= tol};
}

// (d)+(e) half-plane two-point ratio and vanishing imaginary parts
std::vector<CheckResult> check_two_point_ratio(const bls::SoupConfig& cfg,
                                               json& records,
                                               const std::string& hash) {
    double beta = bls::kPi;
    bls::ChargeVector charges{{beta, beta}, cfg.intensity};
    std::vector<bls::Complex> pa{{-0.25, 1}, {0.25, 1}};   // separation 0.5
    std::vector<bls::Complex> pb{{-0.5, 1}, {0.5, 1}};     // separation 1.0
    auto samples = bls::correlator_replica_samples(cfg, {pa, pb}, charges);
    const int n = static_cast<int>(samples[0].size());

    // jackknife over replicas for the ratio of means
    bls::Complex suma(0, 0), sumb(0, 0);
    for (int r = 0; r < n; ++r) {
        suma += samples[0][r];
        sumb += samples[1][r];
    }
    double ratio = suma.real() / sumb.real();
    double jsum = 0, jsq = 0;
    for (int r = 0; r < n; ++r) {
        double ja = (suma.real() - samples[0][r].real()) / (n - 1);
        double jb = (sumb.real() - samples[1][r].real()) / (n - 1);
        double jr = ja / jb;
        jsum += jr;
        jsq += jr * jr;
    }
    double jmean = jsum / n;
    double se = std::sqrt((n - 1.0) / n * std::max(0.0, jsq - n * jmean * jmean));
    records.push_back(record("two_point_ratio_H", ratio, se, n, hash));

    double target =
        bls::two_point_halfplane(bls::HalfPlanePair(pa[0], pa[1]), charges) /
        bls::two_point_halfplane(bls::HalfPlanePair(pb[0], pb[1]), charges);
    double tol = std::max(3.0 * se, 0.05 * std::abs(target));
    std::vector<CheckResult> out;
    out.push_back({"two-point-ratio", ratio, target, tol,
                   std::abs(ratio - target) <= tol});

    // imaginary parts statistically zero
    for (int s = 0; s < 2; ++s) {
        double im = 0, im2 = 0;
        for (int r = 0; r < n; ++r) im += samples[s][r].imag();
        im /= n;
        for (int r = 0; r < n; ++r) {
            double d = samples[s][r].imag() - im;
            im2 += d * d;
        }
        double ise = std::sqrt(im2 / (n - 1.0) / n);
        records.push_back(record("two_point_imag_" + std::to_string(s), im, ise,
                                 n, hash));
        out.push_back({"imag-zero-" + std::to_string(s), im, 0.0, 3.0 * ise,
                       std::abs(im) <= 3.0 * ise});
    }
    return out;
}

int cmd_mc(const std::string& config_path, const std::string& check_s,
           const std::string& estimate_s, const std::string& points_s,
           const std::string& betas_s, const std::string& out_path) {
    bls::SoupConfig cfg = read_config(config_path);
    auto manifest = bls::RunManifest::make(
        "mc", {{"config", config_path},
               {"check", check_s},
               {"estimate", estimate_s},
               {"seed", std::to_string(cfg.seed)},
               {"replicas", std::to_string(cfg.replicas)}});
    std::clog << "manifest " << manifest.config_hash << " at "
              << manifest.timestamp << "\n";
    json records = json::array();
    std::vector<CheckResult> checks;

    if (!estimate_s.empty()) {
        if (estimate_s == "alpha-bar") {
            auto est = bls::estimate_alpha_bar(cfg);
            records.push_back(record("alpha_bar", est.mean, est.std_error,
                                     est.n_replicas, manifest.config_hash));
        } else if (estimate_s == "correlator") {
            auto points = parse_points(points_s);
            bls::ChargeVector charges{parse_reals(betas_s), cfg.intensity};
            auto est = bls::estimate_correlator(cfg, points, charges);
            records.push_back(record("correlator_re", est.re_mean, est.re_std_error,
                                     est.n_replicas, manifest.config_hash));
            records.push_back(record("correlator_im", est.im_mean, est.im_std_error,
                                     est.n_replicas, manifest.config_hash));
        } else if (estimate_s == "alpha") {
            auto pts = parse_points(points_s);  // first point covered, rest avoided
            if (pts.empty()) throw bls::config_error("--points required");
            std::vector<bls::Complex> S{pts[0]}, Sc(pts.begin() + 1, pts.end());
            auto est = bls::estimate_alpha(cfg, S, Sc);
            records.push_back(record("alpha", est.mean, est.std_error,
                                     est.n_replicas, manifest.config_hash));
        } else {
            throw bls::config_error("--estimate must be alpha, alpha-bar, or correlator");
        }
    }

    if (!check_s.empty()) {
        if (check_s == "alpha-square" || check_s == "all")
            checks.push_back(check_alpha_square(cfg, records, manifest.config_hash));
        if (check_s == "nacu-werner" || check_s == "all")
            checks.push_back(check_nacu_werner(cfg, records, manifest.config_hash));
        if (check_s == "pair-h" || check_s == "all")
            checks.push_back(check_pair_h(cfg, records, manifest.config_hash));
        if (check_s == "two-point-ratio" || check_s == "all") {
            auto more = check_two_point_ratio(cfg, records, manifest.config_hash);
            checks.insert(checks.end(), more.begin(), more.end());
        }
        if (checks.empty())
            throw bls::config_error("unknown --check '" + check_s + "'");
    }

    json out = {{"schema", 1},
                {"manifest", manifest_json(manifest)},
                {"records", records}};
    bool all_pass = true;
    if (!checks.empty()) {
        json jchecks = json::array();
        for (const auto& c : checks) {
            all_pass = all_pass && c.pass;
            jchecks.push_back({{"name", c.name},
                               {"value", c.value},
                               {"target", c.target},
                               {"tolerance", c.tolerance},
                               {"pass", c.pass}});
        }
        out["checks"] = jchecks;
    }
    write_text(out_path, out.dump(2) + "\n");
    return all_pass ? 0 : kExitCheckFailed;
}

// -------------------------------------------------------------- verify ----

struct Identity {
    std::string name;
    double max_residual = 0.0;
    double tolerance;
};

double perturbed_a(bls::Complex x, double mu_eps) {
    double a = bls::a_of_x(x);
    if (mu_eps == 0.0) return a;
    bls::Complex f2 = bls::hyp2f1({2.0 / 3.0, 0}, {1, 0}, {4.0 / 3.0, 0}, x);
    double cross = std::pow(std::abs(x * (1.0 - x)), 2.0 / 3.0) * std::norm(f2);
    return a - bls::a_cross_constant() * mu_eps * cross;
}

double g_chan(bls::Complex x, const bls::Dimensions& d, int chan, double mu_eps) {
    double px, pom;
    const auto& D = d.delta;
    const auto& P = d.delta_pair;
    if (chan == 0) {
        px = P[0][1] - D[2] - D[3];
        pom = P[0][3] - D[1] - D[2];
    } else if (chan == 1) {
        px = P[0][3] - D[1] - D[2];
        pom = P[0][1] - D[2] - D[3];
    } else {
        px = P[0][2] - D[0] - D[2];
        pom = P[0][3] - D[1] - D[2];
    }
    return std::exp(2.0 * px * std::log(std::abs(x)) +
                    2.0 * pom * std::log(std::abs(1.0 - x)) +
                    2.0 * d.delta_tilde * perturbed_a(x, mu_eps));
}

int cmd_verify(double mu_eps, const std::string& out_path) {
    std::vector<Identity> ids;

    // pair-weight equality of the two hypergeometric routes
    {
        Identity id{"pair_weight_sigma_vs_eta_route", 0, 1e-9};
        for (int i = 1; i <= 10; ++i)
            for (int j = 1; j <= 10; ++j) {
                bls::HalfPlanePair p(bls::Complex(0.13 * i, 0.37 + 0.11 * j),
                                     bls::Complex(0.61 - 0.07 * j, 1.01 + 0.23 * i));
                double r = std::abs(bls::pair_weight_halfplane(p) -
                                    bls::pair_weight_halfplane_eta_form(p));
                id.max_residual = std::max(id.max_residual, r);
            }
        ids.push_back(id);
    }
    // (1-sigma) 3F2(...;1-sigma) -> 2 pi / sqrt 3
    {
        Identity id{"thin_limit_2pi_over_sqrt3", 0, 1e-5};
        double sigma = 1e-6;
        double v = (1.0 - sigma) *
                   bls::hyp3f2_special({1.0 - sigma, 0}).real();
        id.max_residual = std::abs(v - bls::kTwoPiOverSqrt3);
        ids.push_back(id);
    }
    // A(x) - A(1/x) + ln|x| = 0
    {
        Identity id{"a_inversion_identity", 0, 1e-9};
        for (int i = 0; i < 200; ++i) {
            double r = 0.15 + 0.55 * (i % 20) / 19.0;
            double th = 0.3 + (bls::kPi - 0.6) * (i / 20) / 9.0;
            bls::Complex x = std::polar(r, (i % 2) ? th : -th);
            double res = std::abs(perturbed_a(x, mu_eps) - perturbed_a(1.0 / x, mu_eps) +
                                  std::log(std::abs(x)));
            id.max_residual = std::max(id.max_residual, res);
        }
        ids.push_back(id);
    }
    // A -> 0 at the degenerate cross-ratios
    {
        Identity id{"a_vanishes_at_0_and_1", 0, 1e-4};
        id.max_residual = std::max(std::abs(bls::a_of_x({1e-6, 0})),
                                   std::abs(bls::a_of_x({1.0 - 1e-6, 0})));
        ids.push_back(id);
    }
    // crossing relations of the G functions
    {
        Identity id{"crossing_relations", 0, 1e-9};
        const double charge_sets[5][4] = {{bls::kPi, bls::kPi, bls::kPi, bls::kPi},
                                          {0.7, 1.1, 1.9, 0.0},
                                          {2.1, -0.6, 0.9, 0.0},
                                          {0.3, 0.3, 0.3, 0.0},
                                          {1.4, 2.2, -1.0, 0.0}};
        for (auto& row : charge_sets) {
            std::vector<double> betas(row, row + 4);
            double s = betas[0] + betas[1] + betas[2];
            if (std::abs(std::remainder(s + betas[3], 2 * bls::kPi)) > 1e-12)
                betas[3] = 2 * bls::kPi - s;
            bls::ChargeVector c{betas, 0.83};
            bls::Dimensions d = bls::dims(c);
            for (int i = 0; i < 50; ++i) {
                double r = 0.2 + 0.5 * (i % 10) / 9.0;
                double th = 0.4 + 2.2 * (i / 10) / 4.0;
                bls::Complex x = std::polar(r, th);
                double g1 = g_chan(x, d, 0, mu_eps);
                double g2 = g_chan(1.0 - x, d, 1, mu_eps);
                double g3 = std::exp(-4.0 * d.delta[2] * std::log(std::abs(x))) *
                            g_chan(1.0 / x, d, 2, mu_eps);
                double res = std::abs(g1 - g2) / std::abs(g1) +
                             std::abs(g1 - g3) / std::abs(g1);
                id.max_residual = std::max(id.max_residual, res);
            }
        }
        ids.push_back(id);
    }
    // deep-bulk limit of the half-plane two-point function
    {
        Identity id{"bulk_limit_ratio", 0, 0.1};
        bls::ChargeVector c{{1.3, 2 * bls::kPi - 1.3}, 1.0};
        bls::Dimensions d = bls::dims(c);
        double plane = bls::two_point_plane({0.3, 0}, {-0.4, 0.2}, c);
        double res_prev = 0;
        for (double t : {1e3, 1e4}) {
            bls::HalfPlanePair p(bls::Complex(0.3, t), bls::Complex(-0.4, 0.2 + t));
            double v = bls::two_point_halfplane(p, c) *
                       std::exp(2.0 * bls::kPi / std::sqrt(3.0) *
                                (d.delta[0] + d.delta[1]));
            double res = std::abs(v - plane) / plane;
            if (res_prev > 0) id.max_residual = res / res_prev;  // must shrink 10x
            res_prev = res;
        }
        ids.push_back(id);
    }

    auto manifest = bls::RunManifest::make(
        "verify", {{"perturb_mu", std::to_string(mu_eps)}});
    std::clog << "manifest " << manifest.config_hash << " at "
              << manifest.timestamp << "\n";
    bool all = true;
    json jids = json::array();
    for (const auto& id : ids) {
        bool pass = id.max_residual <= id.tolerance;
        all = all && pass;
        jids.push_back({{"name", id.name},
                        {"max_residual", id.max_residual},
                        {"tolerance", id.tolerance},
                        {"pass", pass}});
    }
    json out = {{"schema", 1},
                {"manifest", manifest_json(manifest)},
                {"identities", jids},
                {"all_pass", all}};
    write_text(out_path, out.dump(2) + "\n");
    return all ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Brownian loop soup correlators, conformal blocks, and Monte Carlo"};
    app.require_subcommand(1);

    std::string points, betas, domain = "plane", format = "json", out_path;
    double lambda = 1.0;
    auto* corr = app.add_subcommand("corr", "closed-form correlation functions");
    corr->add_option("--points", points, "semicolon-separated re,im pairs")->required();
    corr->add_option("--betas", betas, "comma-separated charges")->required();
    corr->add_option("--lambda", lambda, "soup intensity");
    corr->add_option("--domain", domain, "half-plane or plane");
    corr->add_option("--out", format, "json or csv");
    corr->add_option("--out-file", out_path, "output path (default stdout)");

    std::string case_s = "general", scan_s, sidecar_path, betas_b;
    double lambda_b = 1.0;
    int max_p = 7;
    auto* blocks = app.add_subcommand("blocks", "three-point coefficient tables");
    blocks->add_option("--case", case_s, "general, pi, or pi2");
    blocks->add_option("--lambda", lambda_b, "soup intensity");
    blocks->add_option("--betas", betas_b, "four charges (general case)");
    blocks->add_option("--max-p", max_p, "largest p in the table");
    blocks->add_option("--scan", scan_s, "lambda scan a:b:n for null-state poles");
    blocks->add_option("--out-file", out_path, "CSV output path (default stdout)");
    blocks->add_option("--sidecar", sidecar_path, "JSON sidecar for pole report");

    std::string config_path, check_s, estimate_s, mc_points, mc_betas;
    auto* mc = app.add_subcommand("mc", "Monte Carlo estimators");
    mc->add_option("--config", config_path, "soup config file")->required();
    mc->add_option("--check", check_s,
                   "alpha-square, nacu-werner, pair-h, two-point-ratio, or all");
    mc->add_option("--estimate", estimate_s, "alpha, alpha-bar, or correlator");
    mc->add_option("--points", mc_points, "points for --estimate");
    mc->add_option("--betas", mc_betas, "charges for --estimate correlator");
    mc->add_option("--out", out_path, "output path (default stdout)");

    double mu_eps = 0.0;
    auto* verify = app.add_subcommand("verify", "closed-form identity suite");
    verify->add_option("--perturb-mu", mu_eps,
                       "test hook: relative perturbation of the block constant");
    verify->add_option("--out", out_path, "output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (corr->parsed())
            return cmd_corr(points, betas, lambda, domain, format, out_path);
        if (blocks->parsed())
            return cmd_blocks(case_s, lambda_b, betas_b, max_p, scan_s, out_path,
                              sidecar_path);
        if (mc->parsed())
            return cmd_mc(config_path, check_s, estimate_s, mc_points, mc_betas,
                          out_path);
        if (verify->parsed()) return cmd_verify(mu_eps, out_path);
    } catch (const bls::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const bls::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return 0;
}
