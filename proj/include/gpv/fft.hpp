#pragma once

// Radix-2 complex FFT and Rader's prime-length DFT. The prime-length
// transform of length p is reduced to a cyclic convolution of length p-1,
// zero-padded to a power of two >= 2(p-1)-1. The DFT kernel here is
// e(+k*b/p) = exp(+2*pi*i*k*b/p), matching the character-sum convention.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "gpv/field.hpp"

namespace gpv {

using cdouble = std::complex<double>;

inline std::size_t next_pow2(std::size_t n) {
    std::size_t l = 1;
    while (l < n) l <<= 1;
    return l;
}

// In-place iterative radix-2 FFT; size must be a power of two.
inline void fft_pow2(std::vector<cdouble>& a, bool invert) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2 * std::numbers::pi / double(len) * (invert ? -1 : 1);
        const cdouble wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cdouble w(1);
            for (std::size_t k = 0; k < len / 2; ++k) {
                cdouble u = a[i + k];
                cdouble v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (invert) {
        for (auto& z : a) z /= double(n);
    }
}

// Smallest generator of (Z/p)^x.
inline u64 primitive_root(u64 p) {
    u64 phi = p - 1;
    std::vector<u64> factors;
    u64 n = phi;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            factors.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) factors.push_back(n);
    for (u64 g = 2; g < p; ++g) {
        bool ok = true;
        for (u64 f : factors) {
            if (pow_mod(g, phi / f, p) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw invalid_modulus("primitive_root: none found; modulus not prime?");
}

// X[k] = sum_b x[b] exp(+2*pi*i*k*b/p) for k = 0..p-1, p prime.
// Rader: with g a generator, X[g^m] - x[0] is the length-(p-1) cyclic
// convolution of a[n] = x[g^{-n}] with w[j] = exp(+2*pi*i*g^j/p).
inline std::vector<cdouble> rader_dft(const std::vector<cdouble>& x, u64 p) {
    const std::size_t N = p - 1;
    const u64 g = primitive_root(p);
    const u64 ginv = pow_mod(g, p - 2, p);

    std::vector<u64> gpow(N), gipow(N);
    gpow[0] = gipow[0] = 1;
    for (std::size_t i = 1; i < N; ++i) {
        gpow[i] = mul_mod(gpow[i - 1], g, p);
        gipow[i] = mul_mod(gipow[i - 1], ginv, p);
    }

    const std::size_t L = next_pow2(2 * N - 1);
    std::vector<cdouble> A(L), B(L);
    for (std::size_t n = 0; n < N; ++n) A[n] = x[gipow[n]];
    // kernel wrapped so that linear convolution of length L realises the
    // cyclic convolution: B[j] = w[j] and B[L-t] = w[N-t]
    for (std::size_t j = 0; j < N; ++j) {
        const double ang = 2 * std::numbers::pi * double(gpow[j]) / double(p);
        B[j] = cdouble(std::cos(ang), std::sin(ang));
    }
    for (std::size_t t = 1; t < N; ++t) B[L - t] = B[N - t];

    fft_pow2(A, false);
    fft_pow2(B, false);
    for (std::size_t i = 0; i < L; ++i) A[i] *= B[i];
    fft_pow2(A, true);

    std::vector<cdouble> X(p);
    cdouble total = 0;
    for (u64 b = 0; b < p; ++b) total += x[b];
    X[0] = total;
    for (std::size_t m = 0; m < N; ++m) X[gpow[m]] = x[0] + A[m];
    return X;
}

}  // namespace gpv
