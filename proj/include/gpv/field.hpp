#pragma once

// Arithmetic in F_p and its quadratic extension F_{p^2} = F_p(sqrt(eps)),
// where eps is the least positive quadratic non-residue mod p. All residues
// are kept canonical in [0, p). Intermediate products go through 128-bit
// integers; every modulus in the pipeline is below 2^20, so plain
// reduce-after-multiply is exact with a wide margin.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gpv {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

struct invalid_modulus : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct zero_element : std::domain_error {
    using std::domain_error::domain_error;
};
struct unsupported_congruence : std::domain_error {
    using std::domain_error::domain_error;
};

inline u64 add_mod(u64 a, u64 b, u64 p) {
    u64 s = a + b;
    return s >= p ? s - p : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 p) { return a >= b ? a - b : a + p - b; }

inline u64 mul_mod(u64 a, u64 b, u64 p) {
    return static_cast<u64>(static_cast<u128>(a) * b % p);
}

inline u64 pow_mod(u64 base, u64 e, u64 p) {
    u64 r = 1 % p;
    base %= p;
    while (e) {
        if (e & 1) r = mul_mod(r, base, p);
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    return r;
}

// Reduces a signed value into [0, p).
inline u64 mod_signed(i64 n, u64 p) {
    i64 r = n % static_cast<i64>(p);
    if (r < 0) r += static_cast<i64>(p);
    return static_cast<u64>(r);
}

inline bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 d : {2ull, 3ull, 5ull}) {
        if (n % d == 0) return n == d;
    }
    // trial division with a 2,3-wheel; all pipeline moduli are < 2^20
    for (u64 d = 7; d * d <= n; d += 6) {
        if (n % d == 0 || n % (d + 4) == 0) return false;
    }
    return true;
}

// Smallest n >= 2 with n^((p-1)/2) = -1 mod p.
inline u64 least_nonresidue(u64 p) {
    if (p <= 2 || !is_prime_u64(p))
        throw invalid_modulus("least_nonresidue: modulus must be an odd prime, got " +
                              std::to_string(p));
    for (u64 n = 2; n < p; ++n) {
        if (pow_mod(n, (p - 1) / 2, p) == p - 1) return n;
    }
    throw invalid_modulus("least_nonresidue: no non-residue found (impossible for odd prime)");
}

struct PrimeModulus {
    u64 p;
    u64 epsilon;  // least positive quadratic non-residue mod p

    explicit PrimeModulus(u64 prime) : p(prime), epsilon(least_nonresidue(prime)) {}
};

enum class SquareClass { zero, square, nonsquare };

// Euler criterion with a separate outcome for n = 0.
inline SquareClass is_square_fp(u64 n, const PrimeModulus& pm) {
    n %= pm.p;
    if (n == 0) return SquareClass::zero;
    return pow_mod(n, (pm.p - 1) / 2, pm.p) == 1 ? SquareClass::square
                                                 : SquareClass::nonsquare;
}

// Tonelli-Shanks. pre: n is a nonzero square mod p.
inline u64 sqrt_mod(u64 n, const PrimeModulus& pm) {
    const u64 p = pm.p;
    n %= p;
    if (n == 0) return 0;
    if (p % 4 == 3) return pow_mod(n, (p + 1) / 4, p);
    u64 q = p - 1, s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    u64 z = pm.epsilon;  // any non-residue works
    u64 m = s;
    u64 c = pow_mod(z, q, p);
    u64 t = pow_mod(n, q, p);
    u64 r = pow_mod(n, (q + 1) / 2, p);
    while (t != 1) {
        u64 i = 0, tt = t;
        while (tt != 1) { tt = mul_mod(tt, tt, p); ++i; }
        u64 b = pow_mod(c, u64(1) << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    return r;
}

// a + b*sqrt(eps), with (a1+b1*sqrt(eps))(a2+b2*sqrt(eps)) =
// (a1a2 + eps*b1b2) + (a1b2 + a2b1)*sqrt(eps).
struct QuadExtElement {
    u64 a = 0;
    u64 b = 0;

    friend bool operator==(const QuadExtElement&, const QuadExtElement&) = default;
};

inline QuadExtElement qe_one() { return {1, 0}; }

inline bool qe_is_zero(const QuadExtElement& x) { return x.a == 0 && x.b == 0; }

inline QuadExtElement qe_mul(const QuadExtElement& x, const QuadExtElement& y,
                             const PrimeModulus& pm) {
    const u64 p = pm.p;
    return {add_mod(mul_mod(x.a, y.a, p), mul_mod(pm.epsilon, mul_mod(x.b, y.b, p), p), p),
            add_mod(mul_mod(x.a, y.b, p), mul_mod(x.b, y.a, p), p)};
}

inline QuadExtElement qe_pow(QuadExtElement x, u64 e, const PrimeModulus& pm) {
    QuadExtElement r = qe_one();
    while (e) {
        if (e & 1) r = qe_mul(r, x, pm);
        x = qe_mul(x, x, pm);
        e >>= 1;
    }
    return r;
}

// Norm a^2 - eps*b^2; vanishes only at zero since eps is a non-residue.
inline u64 qe_norm(const QuadExtElement& x, const PrimeModulus& pm) {
    return sub_mod(mul_mod(x.a, x.a, pm.p),
                   mul_mod(pm.epsilon, mul_mod(x.b, x.b, pm.p), pm.p), pm.p);
}

// x is a cube in F_{p^2}^x iff x^((p^2-1)/3) = 1. Requires p = 2 mod 3 so
// that 3 divides p^2 - 1 and the cube subgroup has index 3.
inline bool is_cube(const QuadExtElement& x, const PrimeModulus& pm) {
    if (qe_is_zero(x)) throw zero_element("is_cube: zero element has no cube class");
    if (pm.p % 3 != 2)
        throw unsupported_congruence("is_cube: requires p = 2 mod 3, got p = " +
                                     std::to_string(pm.p));
    const u64 e = (pm.p * pm.p - 1) / 3;
    return qe_pow(x, e, pm) == qe_one();
}

}  // namespace gpv
