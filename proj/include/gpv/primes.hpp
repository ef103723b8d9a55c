#pragma once

// Prime enumeration helpers. A plain sieve of Eratosthenes is cheap at every
// cutoff the pipeline uses (M <= ~10^6); congruence filtering happens after
// sieving.

#include <cstdint>
#include <vector>

#include "gpv/field.hpp"

namespace gpv {

inline std::vector<u64> sieve_primes(u64 limit) {
    std::vector<u64> out;
    if (limit < 3) return out;
    std::vector<bool> composite(limit, false);
    for (u64 n = 2; n < limit; ++n) {
        if (composite[n]) continue;
        out.push_back(n);
        for (u64 m = n * n; m < limit; m += n) composite[m] = true;
    }
    return out;
}

// Primes p < limit with p mod 9 in classes, starting at p >= 5.
inline std::vector<u64> primes_in_classes_mod9(u64 limit,
                                               const std::vector<u64>& classes = {2, 5}) {
    std::vector<u64> out;
    for (u64 p : sieve_primes(limit)) {
        if (p < 5) continue;
        for (u64 c : classes) {
            if (p % 9 == c) {
                out.push_back(p);
                break;
            }
        }
    }
    return out;
}

}  // namespace gpv
