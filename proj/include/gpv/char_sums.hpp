#pragma once

// Cube coset structure of F_{p^2}^x and the character-sum tables
//   c(m)       = sum_{b in F(1)}       e(m*b/p),   c(0) = (p-2)/3
//   c_gamma(m) = sum_{b in F_gamma(1)} e(m*b/p),   c_gamma(0) = (p+1)/3
// where F(1) = {b : (1,b) is a cube} and F_gamma(1) is the fiber of the
// coset of u, the first non-cube among (1,1),(1,2),.... Tables are computed
// with Rader's prime-length FFT; index 0 is pinned to its exact constant.

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "gpv/fft.hpp"
#include "gpv/field.hpp"

namespace gpv {

enum class Kind { main, gamma };

inline const char* kind_name(Kind k) { return k == Kind::main ? "main" : "gamma"; }

struct invariant_breach : std::runtime_error {
    u64 offending_s;
    invariant_breach(const std::string& msg, u64 s)
        : std::runtime_error(msg), offending_s(s) {}
};

struct CubeCosetData {
    PrimeModulus pm;
    std::vector<u64> fiber_main;   // F(1)
    std::vector<u64> fiber_gamma;  // F_gamma(1)
    QuadExtElement coset_rep;      // the chosen u, recorded for provenance
};

inline CubeCosetData cube_cosets(const PrimeModulus& pm) {
    if (pm.p % 3 != 2)
        throw unsupported_congruence("cube_cosets: requires p = 2 mod 3, got p = " +
                                     std::to_string(pm.p));
    CubeCosetData out{pm, {}, {}, {}};
    std::vector<bool> cube(pm.p);
    for (u64 b = 0; b < pm.p; ++b) {
        cube[b] = is_cube({1, b}, pm);
        if (cube[b]) out.fiber_main.push_back(b);
    }
    u64 ub = 1;
    while (cube[ub]) ++ub;  // exists: the cube fiber has (p-2)/3 < p-1 elements
    out.coset_rep = {1, ub};
    // (1,b) lies in u*cubes iff (1,b)*u^2 is a cube (u^3 is itself a cube)
    const QuadExtElement u2 = qe_mul(out.coset_rep, out.coset_rep, pm);
    for (u64 b = 0; b < pm.p; ++b) {
        if (is_cube(qe_mul({1, b}, u2, pm), pm)) out.fiber_gamma.push_back(b);
    }
    return out;
}

struct CharTable {
    u64 p;
    Kind kind;
    std::vector<cdouble> values;  // length p, index m
};

inline CharTable char_table_from_cosets(const CubeCosetData& cosets, Kind kind) {
    const u64 p = cosets.pm.p;
    std::vector<cdouble> ind(p, 0.0);
    const auto& fiber = kind == Kind::main ? cosets.fiber_main : cosets.fiber_gamma;
    for (u64 b : fiber) ind[b] = 1.0;
    CharTable t{p, kind, rader_dft(ind, p)};
    // c(0) is a convention, not the sum formula
    t.values[0] = kind == Kind::main ? double(p - 2) / 3.0 : double(p + 1) / 3.0;
    return t;
}

inline CharTable char_table(const PrimeModulus& pm, Kind kind) {
    return char_table_from_cosets(cube_cosets(pm), kind);
}

struct WeilResult {
    double max_ratio;  // max_{s != 0} |c(s)| / sqrt(p)
    u64 argmax_s;
};

// Checks the |c(s)| <= (4/3) sqrt(p) bound over s != 0.
inline WeilResult verify_weil(const CharTable& table) {
    if (table.kind != Kind::main)
        throw std::invalid_argument("verify_weil: the (4/3)sqrt(p) bound is for the main table");
    WeilResult r{0.0, 1};
    const double sp = std::sqrt(double(table.p));
    for (u64 s = 1; s < table.p; ++s) {
        const double ratio = std::abs(table.values[s]) / sp;
        if (ratio > r.max_ratio) {
            r.max_ratio = ratio;
            r.argmax_s = s;
        }
    }
    const double tol = 1e-9 * double(table.p);
    if (r.max_ratio > 4.0 / 3.0 + tol)
        throw invariant_breach("verify_weil: |c(s)| exceeds (4/3)sqrt(p) at s = " +
                                   std::to_string(r.argmax_s),
                               r.argmax_s);
    return r;
}

}  // namespace gpv
