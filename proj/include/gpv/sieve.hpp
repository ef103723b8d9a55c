#pragma once

// The terminating sieve: enumerate candidate j-invariants j = p^d c^3 with
// p = 2,5 mod 9, 100 < p < 20400, d in {4,5}, 0 < |c| <= (2 e^x)^{1/3} p^{-d/3},
// and for each find a witness prime ell where the Frobenius roots of
// t^2 - a_ell t + ell are not cubes in F_{p^2}^x.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

#include "gpv/field.hpp"
#include "gpv/primes.hpp"

namespace gpv {

struct Candidate {
    u64 p;
    int d;   // 4 or 5
    i64 c;   // nonzero
    i64 j;   // p^d c^3, |j| <= 2e39 fits in 64 bits
};

namespace detail {
// floor of the c-interval half-width (2 e^x)^{1/3} p^{-d/3}, fixed up with
// exact integer comparisons of c^3 p^d against T = 2 e^x in long double.
inline i64 c_half_width(u64 p, int d, double x_bound) {
    const long double T = 2.0L * std::exp(static_cast<long double>(x_bound));
    long double pd = 1.0L;
    for (int i = 0; i < d; ++i) pd *= static_cast<long double>(p);
    if (pd > T) return 0;
    i64 c = static_cast<i64>(std::floor(std::cbrt(2.0 * std::exp(x_bound)) /
                                        std::pow(double(p), double(d) / 3.0)));
    auto fits = [&](i64 v) {
        if (v <= 0) return true;
        const long double v3 = static_cast<long double>(v) * v * v;
        return v3 * pd <= T;
    };
    while (!fits(c)) --c;
    while (fits(c + 1)) ++c;
    return c;
}
}  // namespace detail

// Deterministic order: p ascending, d ascending, c ascending (skipping 0).
inline std::vector<Candidate> enumerate_candidates(double x_bound = 39.0,
                                                   u64 p_lo = 100, u64 p_hi = 20400) {
    std::vector<Candidate> out;
    for (u64 p : primes_in_classes_mod9(p_hi)) {
        if (p <= p_lo) continue;
        for (int d = 4; d <= 5; ++d) {
            const i64 cmax = detail::c_half_width(p, d, x_bound);
            if (cmax < 1) continue;
            i64 pd = 1;
            for (int i = 0; i < d; ++i) pd *= i64(p);
            for (i64 c = -cmax; c <= cmax; ++c) {
                if (c == 0) continue;
                out.push_back({p, d, c, pd * c * c * c});
            }
        }
    }
    return out;
}

struct CurveModEll {
    u64 A;
    u64 B;
    bool bad_reduction;  // model singular: j = 0 or 1728 mod ell
};

// Standard model y^2 = x^3 + 3j(1728-j)x + 2j(1728-j)^2 with j reduced
// mod ell by modular exponentiation; coefficients never leave 64 bits.
inline CurveModEll curve_mod_ell(u64 p, int d, i64 c, u64 ell) {
    if (ell == 2 || ell == 3 || ell == p)
        throw std::invalid_argument("curve_mod_ell: ell must avoid {2, 3, p}");
    const u64 jbar = mul_mod(pow_mod(p % ell, u64(d), ell),
                             pow_mod(mod_signed(c, ell), 3, ell), ell);
    if (jbar == 0 || jbar == 1728 % ell) return {0, 0, true};
    const u64 r = sub_mod(1728 % ell, jbar, ell);
    const u64 A = mul_mod(3 % ell, mul_mod(jbar, r, ell), ell);
    const u64 B = mul_mod(2 % ell, mul_mod(jbar, mul_mod(r, r, ell), ell), ell);
    return {A, B, false};
}

// Same model from a j-invariant given directly (test plumbing).
inline CurveModEll curve_mod_ell_from_j(i64 j, u64 ell) {
    if (ell == 2 || ell == 3)
        throw std::invalid_argument("curve_mod_ell_from_j: ell must avoid {2, 3}");
    const u64 jbar = mod_signed(j, ell);
    if (jbar == 0 || jbar == 1728 % ell) return {0, 0, true};
    const u64 r = sub_mod(1728 % ell, jbar, ell);
    return {mul_mod(3 % ell, mul_mod(jbar, r, ell), ell),
            mul_mod(2 % ell, mul_mod(jbar, mul_mod(r, r, ell), ell), ell), false};
}

// |E(F_ell)| = ell + 1 + sum_x chi(x^3 + Ax + B), chi the quadratic
// character with chi(0) = 0; includes the point at infinity.
inline u64 count_points(u64 A, u64 B, u64 ell) {
    const u64 disc_part = add_mod(mul_mod(4 % ell, mul_mod(A, mul_mod(A, A, ell), ell), ell),
                                  mul_mod(27 % ell, mul_mod(B, B, ell), ell), ell);
    if (disc_part == 0) throw std::domain_error("count_points: singular curve");
    std::vector<signed char> chi(ell, -1);
    chi[0] = 0;
    for (u64 t = 1; t < ell; ++t) chi[mul_mod(t, t, ell)] = 1;
    i64 sum = 0;
    for (u64 x = 0; x < ell; ++x) {
        const u64 v = add_mod(mul_mod(x, mul_mod(x, x, ell), ell),
                              add_mod(mul_mod(A, x, ell), B, ell), ell);
        sum += chi[v];
    }
    const i64 n = i64(ell) + 1 + sum;
    const i64 a = i64(ell) + 1 - n;
    if (double(a) * double(a) > 4.0 * double(ell))
        throw std::runtime_error("count_points: Hasse bound violated (arithmetic bug)");
    return u64(n);
}

// Roots of t^2 - a_ell t + ell over F_{p^2}: both are cubes? Roots are
// nonzero since their product is ell != 0 mod p. The two roots are either
// both in F_p (disc a square: automatic cubes, checked anyway) or conjugate
// over F_p (equal cube class), so testing one suffices; we test both when
// they are rational. Each computed root is verified against the polynomial.
inline bool frobenius_roots_are_cubes(i64 a_ell, u64 ell, const PrimeModulus& pm) {
    const u64 p = pm.p;
    if (ell % p == 0)
        throw std::invalid_argument("frobenius_roots_are_cubes: ell = 0 mod p");
    const u64 a = mod_signed(a_ell, p);
    const u64 lm = ell % p;
    const u64 disc = sub_mod(mul_mod(a, a, p), mul_mod(4 % p, lm, p), p);
    const u64 inv2 = pow_mod(2, p - 2, p);

    auto check_root = [&](const QuadExtElement& lam) {
        // lam^2 - a lam + ell must vanish exactly
        const QuadExtElement sq = qe_mul(lam, lam, pm);
        const u64 ra = sub_mod(add_mod(sq.a, lm, p), mul_mod(a, lam.a, p), p);
        const u64 rb = sub_mod(sq.b, mul_mod(a, lam.b, p), p);
        if (ra != 0 || rb != 0)
            throw std::runtime_error("frobenius_roots_are_cubes: root verification failed");
    };

    const SquareClass cls = is_square_fp(disc, pm);
    if (cls == SquareClass::zero) {
        const QuadExtElement lam{mul_mod(a, inv2, p), 0};
        check_root(lam);
        return is_cube(lam, pm);
    }
    if (cls == SquareClass::square) {
        const u64 s = sqrt_mod(disc, pm);
        const QuadExtElement l1{mul_mod(add_mod(a, s, p), inv2, p), 0};
        const QuadExtElement l2{mul_mod(sub_mod(a, s, p), inv2, p), 0};
        check_root(l1);
        check_root(l2);
        return is_cube(l1, pm) && is_cube(l2, pm);
    }
    // disc a non-residue: disc = eps w^2 is solvable, root (a/2, w/2)
    const u64 w = sqrt_mod(mul_mod(disc, pow_mod(pm.epsilon, p - 2, p), p), pm);
    const QuadExtElement lam{mul_mod(a, inv2, p), mul_mod(w, inv2, p)};
    check_root(lam);
    return is_cube(lam, pm);  // conjugate root shares the cube class
}

enum class VerdictStatus { ruled_out, not_ruled_out };

struct Verdict {
    Candidate cand;
    u64 witness_ell = 0;
    i64 a_ell = 0;
    VerdictStatus status = VerdictStatus::not_ruled_out;
};

// Loops ell = 5, 7, 11, ... <= ell_max, skipping ell = p and bad reduction;
// stops at the first ell whose Frobenius roots are not cubes.
inline Verdict rule_out(const Candidate& cand, u64 ell_max = 500) {
    PrimeModulus pm(cand.p);
    Verdict v{cand};
    for (u64 ell : sieve_primes(ell_max + 1)) {
        if (ell < 5 || ell == cand.p) continue;
        const CurveModEll curve = curve_mod_ell(cand.p, cand.d, cand.c, ell);
        if (curve.bad_reduction) continue;
        const i64 a = i64(ell) + 1 - i64(count_points(curve.A, curve.B, ell));
        if (!frobenius_roots_are_cubes(a, ell, pm)) {
            v.witness_ell = ell;
            v.a_ell = a;
            v.status = VerdictStatus::ruled_out;
            return v;
        }
    }
    return v;
}

struct SieveSummary {
    u64 candidates = 0;
    u64 ruled_out = 0;
    u64 max_witness_ell = 0;
};

// Candidates are independent; verdicts land at their candidate's index, so
// the output order never depends on scheduling.
inline std::vector<Verdict> run_sieve(const std::vector<Candidate>& cands,
                                      u64 ell_max = 500, unsigned workers = 1) {
    if (workers < 1) workers = 1;
    std::vector<Verdict> verdicts(cands.size());
    const std::vector<u64> ells = sieve_primes(ell_max + 1);
    std::atomic<std::size_t> next{0};

    auto work = [&]() {
        u64 cached_p = 0;
        PrimeModulus pm(5);  // replaced on first use
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cands.size()) return;
            const Candidate& cand = cands[i];
            if (cand.p != cached_p) {
                pm = PrimeModulus(cand.p);
                cached_p = cand.p;
            }
            Verdict v{cand};
            for (u64 ell : ells) {
                if (ell < 5 || ell == cand.p) continue;
                const CurveModEll curve = curve_mod_ell(cand.p, cand.d, cand.c, ell);
                if (curve.bad_reduction) continue;
                const i64 a = i64(ell) + 1 - i64(count_points(curve.A, curve.B, ell));
                if (!frobenius_roots_are_cubes(a, ell, pm)) {
                    v.witness_ell = ell;
                    v.a_ell = a;
                    v.status = VerdictStatus::ruled_out;
                    break;
                }
            }
            verdicts[i] = v;
        }
    };

    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    return verdicts;
}

inline SieveSummary summarise(const std::vector<Verdict>& verdicts) {
    SieveSummary s;
    s.candidates = verdicts.size();
    for (const auto& v : verdicts) {
        if (v.status == VerdictStatus::ruled_out) {
            ++s.ruled_out;
            s.max_witness_ell = std::max(s.max_witness_ell, v.witness_ell);
        }
    }
    return s;
}

}  // namespace gpv
