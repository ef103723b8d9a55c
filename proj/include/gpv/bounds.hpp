#pragma once

// Closed-form inequalities and chained numeric bounds: |log q| vs log|j|,
// Faltings-height comparison, the effective-surjectivity p-bound, the
// O(p^{1/4}) stage bound on x = |log|q||, and the final x/p bounds that feed
// the sieve. Double precision throughout; the margins in the inequalities
// dwarf rounding error, and every solved bound is re-checked by substitution.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>

#include "gpv/char_sums.hpp"

namespace gpv {

struct solver_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Interval {
    double lo;
    double hi;
};

// Bracket for x = |log|q|| in terms of |j|, tau in the fundamental domain.
// Always: x <= log(|j| + 970.8). For |j| >= 3500 the bracket tightens to
// log|j| - log 2 <= x <= log|j| + 0.245.
inline Interval logq_vs_logj(double j_abs) {
    if (j_abs <= 0) throw std::domain_error("logq_vs_logj: |j| must be positive");
    double lo = 0.0;
    double hi = std::log(j_abs + 970.8);
    if (j_abs >= 3500.0) {
        lo = std::log(j_abs) - std::log(2.0);
        hi = std::min(hi, std::log(j_abs) + 0.245);
    }
    return {lo, hi};
}

// Bracket for the Faltings height given x = |log|q|| (log|q| = -x < 0):
//   h_F > x/12 - (1/2)log x - (1/2)log 2 - 2e^{-x}/(1-e^{-x})        always
//   h_F < x/12 - (1/2)log x - (1/2)log 2 + pi^2/(3x)                 j integral
// The upper bound requires j in Z; without it hi is +infinity.
inline Interval faltings_bounds(double logq_abs, bool integral_j) {
    if (logq_abs <= 0) throw std::domain_error("faltings_bounds: |log q| must be positive");
    const double x = logq_abs;
    const double common = x / 12.0 - 0.5 * std::log(x) - 0.5 * std::log(2.0);
    const double q = std::exp(-x);
    Interval out{common - 2.0 * q / (1.0 - q),
                 integral_j ? common + std::numbers::pi * std::numbers::pi / (3.0 * x)
                            : std::numeric_limits<double>::infinity()};
    return out;
}

namespace detail {
inline double surjectivity_rhs(double p, double h_f, double im_tau) {
    return 2530.0 * (h_f + 2.0 * std::log(p) + 1.5 * std::log(im_tau) + 1.94);
}
}  // namespace detail

// Largest integer p with p < 2530(h_F + 2 log p + (3/2)log(Im tau) + 1.94),
// the |log|q|| >= 30 branch of the surjectivity theorem. Fixed-point
// iteration from p = 100, then a downward integer scan; the right side grows
// logarithmically, so iteration converges monotonically.
inline u64 surjectivity_pmax(double h_f, double im_tau) {
    if (im_tau < 30.0 / (2.0 * std::numbers::pi))
        throw std::domain_error("surjectivity_pmax: Im tau below the |log q| >= 30 branch");
    double p = 100.0;
    bool converged = false;
    for (int i = 0; i < 100; ++i) {
        const double nxt = detail::surjectivity_rhs(p, h_f, im_tau);
        if (nxt <= 0)
            throw solver_error("surjectivity_pmax: right side non-positive; no bound");
        if (std::abs(nxt - p) < 0.25) {
            p = nxt;
            converged = true;
            break;
        }
        p = nxt;
    }
    if (!converged) throw solver_error("surjectivity_pmax: no convergence in 100 iterations");
    u64 n = static_cast<u64>(p) + 2;
    while (n > 1 && !(double(n) < detail::surjectivity_rhs(double(n), h_f, im_tau))) --n;
    return n;
}

// x-stage bound |log|q|| <= (2 sqrt(2) pi 101)/(10 sqrt(102)) * p^{1/4} + 1.65.
inline double weil_stage_x(u64 p) {
    if (p <= 100) throw std::domain_error("weil_stage_x: requires p > 100");
    const double c = 2.0 * std::sqrt(2.0) * std::numbers::pi * 101.0 / (10.0 * std::sqrt(102.0));
    return c * std::pow(double(p), 0.25) + 1.65;
}

namespace detail {
// The chained condition of the p < 103000 corollary at a given p:
// x from the stage bound (>= 30 for the surjectivity branch), h_F from the
// integral-j upper bound, Im tau = x/(2 pi).
inline bool pipeline_condition(u64 p, double h_f_slack = 0.0) {
    const double x = std::max(30.0, weil_stage_x(p));
    const double h_upper = faltings_bounds(x, true).hi + h_f_slack;
    const double im_tau = x / (2.0 * std::numbers::pi);
    return double(p) < surjectivity_rhs(double(p), h_upper, im_tau);
}
}  // namespace detail

// Largest p = 2 mod 3, p > 100 consistent with the chained bounds. With the
// x-stage disabled the chain has no finite solution (h_F is unbounded), so
// nullopt is returned.
inline std::optional<u64> pipeline_pmax(bool with_weil_stage = true) {
    if (!with_weil_stage) return std::nullopt;
    u64 lo = 101, hi = 101;
    if (!detail::pipeline_condition(lo))
        throw solver_error("pipeline_pmax: condition fails at p = 101");
    while (detail::pipeline_condition(hi)) {
        lo = hi;
        hi *= 2;
        if (hi > (u64(1) << 40)) throw solver_error("pipeline_pmax: no crossing found");
    }
    while (hi - lo > 1) {
        const u64 mid = lo + (hi - lo) / 2;
        (detail::pipeline_condition(mid) ? lo : hi) = mid;
    }
    u64 p = lo;
    while (p % 3 != 2) --p;  // condition is monotone below the crossing
    return p;
}

// |log|R|| <= 3 C p sqrt(pi)/sqrt(x) * 1.28 + (5/3) pi^2 e^{-x} p sqrt(p)
//             + 2(p+1) pi^2 / (3 p x),
// with the last coefficient 2 replaced by 1 for the gamma variant.
inline double abel_logR_bound(u64 p, double x, double C, Kind kind) {
    if (x < 30.0)
        throw std::domain_error("abel_logR_bound: hypothesis x >= 30 violated");
    if (p <= 100) throw std::domain_error("abel_logR_bound: requires p > 100");
    const double pi = std::numbers::pi;
    const double pd = double(p);
    const double lead = 3.0 * C * pd * std::sqrt(pi) / std::sqrt(x) * 1.28;
    const double mid = (5.0 / 3.0) * pi * pi * std::exp(-x) * pd * std::sqrt(pd);
    const double last = (kind == Kind::main ? 2.0 : 1.0) * (pd + 1.0) * pi * pi / (3.0 * pd * x);
    return lead + mid + last;
}

// Largest x in [30, 200] with ((p^2-1)/(12p)) x <= 3 log p + |log R_gamma|
// bound, evaluated at the worst case p = 101; bisection to 1e-9.
inline double final_x_bound(double C_gamma) {
    const u64 p = 101;
    auto holds = [&](double x) {
        const double lhs = (double(p) * double(p) - 1.0) / (12.0 * double(p)) * x;
        const double rhs = 3.0 * std::log(double(p)) + abel_logR_bound(p, x, C_gamma, Kind::gamma);
        return lhs <= rhs;
    };
    if (!holds(30.0)) throw solver_error("final_x_bound: inequality already fails at x = 30");
    if (holds(200.0)) throw solver_error("final_x_bound: no crossing below x = 200");
    double lo = 30.0, hi = 200.0;
    while (hi - lo > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        (holds(mid) ? lo : hi) = mid;
    }
    return lo;
}

struct BoundReport {
    u64 p_max_pipeline;
    double x_final;
    u64 p_max_final;
    double C_used;
    double C_gamma_used;
};

// Full bound pipeline: p_max from the chained corollary, x from the final
// Abel-summation stage, and p_max_final = floor(2^{1/4} e^{x/4}) from
// p^4 <= |j| <= 2 e^x. Asserts the published envelopes.
inline BoundReport bounds_pipeline(double C = 4.25, double C_gamma = 2.81) {
    BoundReport rep{};
    rep.C_used = C;
    rep.C_gamma_used = C_gamma;
    rep.p_max_pipeline = pipeline_pmax().value();
    rep.x_final = final_x_bound(C_gamma);
    rep.p_max_final = static_cast<u64>(std::floor(std::pow(2.0, 0.25) * std::exp(rep.x_final / 4.0)));
    if (!(rep.p_max_pipeline < 103000))
        throw solver_error("bounds_pipeline: p_max_pipeline >= 103000");
    if (!(rep.x_final < 39.0)) throw solver_error("bounds_pipeline: x_final >= 39");
    if (!(rep.p_max_final < 20400)) throw solver_error("bounds_pipeline: p_max_final >= 20400");
    return rep;
}

}  // namespace gpv
