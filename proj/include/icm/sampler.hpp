#pragma once

// Synthetic coefficient streams on squarefree integers: each prime gets an
// i.i.d. Frobenius conjugacy class with probability |C|/|G|, and coefficients
// extend multiplicatively from the per-class values of induced characters.

#include "icm/chartheory.hpp"
#include "icm/common.hpp"
#include "icm/sieve.hpp"

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace icm {

struct FrobeniusAssignment {
    const GaloisFrame* frame = nullptr;
    long long X = 0;
    std::uint64_t seed = 0;
    std::vector<std::int32_t> spf;   // smallest prime factors up to X
    std::vector<std::uint16_t> cls;  // cls[p] = conjugacy class of Frob p (primes only)
};

// Deterministic, unbiased weighted class draw per prime.
inline FrobeniusAssignment assign(const GaloisFrame& F, long long X, std::uint64_t seed) {
    if (X < 1 || X > 100000000LL) throw Error("assign: X out of range");
    FrobeniusAssignment A;
    A.frame = &F;
    A.X = X;
    A.seed = seed;
    A.spf = smallest_prime_factor(X);
    A.cls.assign(static_cast<std::size_t>(X) + 1, 0);

    const auto& classes = F.G.conjugacy_classes();
    std::vector<std::uint64_t> cumulative;
    std::uint64_t total = 0;
    for (const auto& c : classes) {
        total += static_cast<std::uint64_t>(c.size());
        cumulative.push_back(total);
    }
    std::mt19937_64 rng(seed);
    // rejection sampling keeps the draw exactly uniform on [0, |G|)
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % total;
    for (long long p = 2; p <= X; ++p) {
        if (A.spf[static_cast<std::size_t>(p)] != p) continue;
        std::uint64_t u;
        do {
            u = rng();
        } while (u >= limit);
        std::uint64_t r = u % total;
        std::uint16_t k = 0;
        while (cumulative[k] <= r) ++k;
        A.cls[static_cast<std::size_t>(p)] = k;
    }
    return A;
}

// Applies fn(n, prod of class_values over the primes of n) to every
// squarefree n <= xmax.  T is complex<double>, double, or an integer type.
template <typename T, typename Fn>
void synthetic_stream(const FrobeniusAssignment& A, const std::vector<T>& class_values,
                      long long xmax, Fn&& fn) {
    if (xmax > A.X) throw DomainExceeded("synthetic_stream: xmax beyond the assignment bound");
    std::vector<long long> pf;
    for (long long n = 1; n <= xmax; ++n) {
        if (!squarefree_factor(A.spf, n, pf)) continue;
        T v = T(1);
        for (long long p : pf) v *= class_values[A.cls[static_cast<std::size_t>(p)]];
        fn(n, v);
    }
}

// Numeric per-class values of an induced character.
inline std::vector<std::complex<double>> induced_values_numeric(const GaloisFrame& F,
                                                                const DualCharacter& chi) {
    ClassFunction ind = induce(F, chi);
    std::vector<std::complex<double>> vals;
    vals.reserve(ind.values.size());
    for (const auto& v : ind.values) vals.push_back(v.numeric());
    return vals;
}

// Per-class values of a(sigma, p): the character sum
// (1/|N|) sum_chi conj(chi(sigma)) chi_ind(C), computed exactly and
// cross-checked against a direct coset count
// #{gH : g^{-1} c g in H with image sigma in N}.
inline std::vector<long long> class_coeff_values(const GaloisFrame& F, int sigma) {
    if (sigma < 0 || sigma >= static_cast<int>(F.N.order()))
        throw Error("class_coeff_values: sigma out of range");
    const auto& classes = F.G.conjugacy_classes();
    std::size_t nc = classes.size();

    // route (i): exact character sum
    std::vector<Cyclotomic> acc(nc);
    for (const auto& chi : dual_group(F.N)) {
        Cyclotomic cv = chi_value(F.N, chi, sigma).conj();
        ClassFunction ind = induce(F, chi);
        for (std::size_t c = 0; c < nc; ++c) acc[c] += cv * ind.values[c];
    }
    std::vector<long long> by_chars(nc);
    for (std::size_t c = 0; c < nc; ++c) {
        Rat r = acc[c].rational() / Rat(F.N.order());
        Int num = numerator(r);
        if (denominator(r) != 1 || num < 0)
            throw CrossCheckMismatch("class_coeff_values: character sum is not a nonnegative integer");
        by_chars[c] = static_cast<long long>(num);
    }

    // route (ii): coset count (well defined on classes since N is abelian)
    std::vector<int> coset_reps;
    {
        std::vector<char> seen(F.G.order(), 0);
        for (int g = 0; g < F.G.order(); ++g) {
            if (seen[g]) continue;
            coset_reps.push_back(g);
            for (int h : F.H.members) seen[F.G.mul(g, h)] = 1;
        }
    }
    for (std::size_t c = 0; c < nc; ++c) {
        int rep = classes[c].representative;
        long long count = 0;
        for (int g : coset_reps) {
            int conj = F.G.mul(F.G.inv(g), F.G.mul(rep, g));
            if (F.to_N[conj] == sigma) ++count;
        }
        if (count != by_chars[c])
            throw CrossCheckMismatch("class_coeff_values: coset count disagrees with character sum");
    }
    return by_chars;
}

// Coefficient arrays over squarefree n (0 elsewhere).
inline std::vector<std::complex<double>> synthetic_char_coeffs(const FrobeniusAssignment& A,
                                                               const DualCharacter& chi,
                                                               long long xmax) {
    auto vals = induced_values_numeric(*A.frame, chi);
    std::vector<std::complex<double>> out(static_cast<std::size_t>(xmax) + 1, 0.0);
    synthetic_stream(A, vals, xmax,
                     [&](long long n, std::complex<double> v) { out[static_cast<std::size_t>(n)] = v; });
    return out;
}

inline std::vector<long long> synthetic_class_coeffs(const FrobeniusAssignment& A, int sigma,
                                                     long long xmax) {
    auto vals = class_coeff_values(*A.frame, sigma);
    std::vector<long long> out(static_cast<std::size_t>(xmax) + 1, 0);
    synthetic_stream(A, vals, xmax,
                     [&](long long n, long long v) { out[static_cast<std::size_t>(n)] = v; });
    return out;
}

}  // namespace icm
