#pragma once

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "bls/correlators.hpp"
#include "bls/series.hpp"
#include "bls/types.hpp"

namespace bls {

/// Parameters of one Virasoro block: central charge c = 2 lambda, the four
/// external dimensions, and the internal dimension Delta_P.
struct BlockContext {
    double c;
    std::array<double, 4> external;  // Delta_1..Delta_4
    double internal;                 // Delta_P
};

/// Coefficients F_0..F_Kmax of the s-channel block, from level-K Gram
/// matrices of Virasoro descendants.  K_max <= 3.  At Delta_P = 0 the
/// vacuum module (no L_{-1} descendants) is used.  Throws null_state_error
/// when a Gram matrix is singular (condition number > 1e12).
std::vector<double> block_coefficients(const BlockContext& ctx, int k_max);

/// Map from (p, p') to the extracted three-point coefficient product.
struct CProductTable {
    std::map<std::pair<int, int>, double> entries;
    int max_p = 0;
    double at(int p, int pp) const;
};

/// Puiseux series of the |x|,|1-x| power-stripped G^{21}_{34}: the factor
/// x^(Delta12-Delta3-Delta4) (and conjugate) is removed so the constant
/// term is 1.
Puiseux2 reduced_series(const ChargeVector& c, int order);

/// Triangular extraction of the C34 C12 products against the conformal
/// block expansion, for all (p, p') up to max_p.
CProductTable extract_c_products(const ChargeVector& c, int max_p);

enum class SpecialCase { all_pi, all_half_pi };

/// extract_c_products specialized to beta_i = pi or pi/2 for all i.
CProductTable special_case_tables(SpecialCase sc, double lambda, int max_p);

struct NullStatePole {
    double lambda_star;     // bisected pole location of the coefficient
    int p, p_prime;         // the diverging table entry
    double denominator_root;  // root of the offending Gram determinant
    int level;              // Gram level at the root
};

/// Scan a lambda grid for divergences of extracted coefficients and locate
/// the Gram-determinant roots responsible.
std::vector<NullStatePole> null_state_scan(SpecialCase sc,
                                           const std::vector<double>& lambda_grid,
                                           int max_p);

namespace blocks_detail {

/// <h| L_{n1} ... L_{nr} |h> by commutator normal ordering.
double virasoro_vev(const std::vector<int>& word, double h, double c);

/// Gram matrix of level-K descendants (partition basis, parts >= 2 for the
/// vacuum module).
std::vector<std::vector<int>> level_partitions(int K, bool vacuum);

/// Printed closed forms for F_1 and F_2 (oracle for the Gram path).
double f1_closed_form(const BlockContext& ctx);
double f2_closed_form(const BlockContext& ctx);

/// det of the level-2 Gram matrix, 4h(2h+1)(4h+c/2) - 36h^2.
double gram2_det(double h, double c);

}  // namespace blocks_detail

}  // namespace bls
