#pragma once

// Smallest-prime-factor sieve shared by the synthetic sampler and the moment
// accumulators (prime enumeration, factorization, squarefree detection).

#include "icm/common.hpp"

#include <cstdint>
#include <vector>

namespace icm {

// spf[n] = smallest prime factor of n (spf[0] = spf[1] = 0), n <= X.
inline std::vector<std::int32_t> smallest_prime_factor(long long X) {
    if (X < 1 || X > 100000000LL) throw Error("smallest_prime_factor: X out of range");
    std::vector<std::int32_t> spf(static_cast<std::size_t>(X) + 1, 0);
    for (long long i = 2; i <= X; ++i) {
        if (spf[i] == 0) {
            for (long long j = i; j <= X; j += i)
                if (spf[j] == 0) spf[j] = static_cast<std::int32_t>(i);
        }
    }
    return spf;
}

inline std::vector<long long> primes_up_to(const std::vector<std::int32_t>& spf) {
    std::vector<long long> ps;
    for (long long n = 2; n < static_cast<long long>(spf.size()); ++n)
        if (spf[n] == n) ps.push_back(n);
    return ps;
}

// Distinct prime factors if n is squarefree; empty optional otherwise.
inline bool squarefree_factor(const std::vector<std::int32_t>& spf, long long n,
                              std::vector<long long>& out) {
    out.clear();
    while (n > 1) {
        long long p = spf[static_cast<std::size_t>(n)];
        n /= p;
        if (n % p == 0) return false;
        out.push_back(p);
    }
    return true;
}

}  // namespace icm
