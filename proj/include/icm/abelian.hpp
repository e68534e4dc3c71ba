#pragma once

// Invariant-factor decomposition of a finite abelian group given by an
// abstract multiplication law on indices 0..n-1.
//
// The decomposition splits into p-primary components and greedily picks an
// element of maximal order in each; quotient bases are lifted back using the
// maximal-order property.  Group sizes here are at most a few hundred, so the
// final exponent-vector table is filled by exhaustive enumeration.

#include "icm/common.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

namespace icm {

struct AbelianStructure {
    // d1 | d2 | ... | dr, product = group order (factors of 1 omitted; empty
    // for the trivial group)
    std::vector<long> invariant_factors;
    std::vector<int> factor_gens;                // generator element per factor
    std::vector<std::vector<long>> exps;         // element -> exponent vector
    std::map<std::vector<long>, int> from_exps;  // exponent vector -> element
    int identity = 0;

    long order() const {
        long n = 1;
        for (long d : invariant_factors) n *= d;
        return n;
    }

    long exponent() const {
        return invariant_factors.empty() ? 1 : invariant_factors.back();
    }

    long element_order(int e) const {
        long o = 1;
        for (std::size_t i = 0; i < invariant_factors.size(); ++i) {
            long d = invariant_factors[i];
            long v = exps[e][i];
            if (v != 0) o = std::lcm(o, d / std::gcd(d, v));
        }
        return o;
    }
};

namespace detail {

using Mul = std::function<int(int, int)>;

inline int pow_elem(const Mul& mul, int id, int x, long e) {
    int acc = id, base = x;
    while (e) {
        if (e & 1) acc = mul(acc, base);
        base = mul(base, base);
        e >>= 1;
    }
    return acc;
}

inline long elem_order(const Mul& mul, int id, int x) {
    long o = 1;
    int cur = x;
    while (cur != id) {
        cur = mul(cur, x);
        ++o;
    }
    return o;
}

// Basis of an abelian p-group given as an element list (indices into the
// ambient set).  Returns basis elements with non-increasing orders.
inline std::vector<int> p_group_basis(const Mul& mul, int id, std::vector<int> elems, long p) {
    if (elems.size() <= 1) return {};
    std::sort(elems.begin(), elems.end());
    // maximal-order element, smallest index tie-break
    int a = elems[0];
    long max_ord = 1;
    for (int e : elems) {
        long o = elem_order(mul, id, e);
        if (o > max_ord) {
            max_ord = o;
            a = e;
        }
    }
    // cyclic subgroup <a>
    std::map<int, long> in_a;  // element -> discrete log base a
    {
        int cur = id;
        for (long k = 0; k < max_ord; ++k) {
            in_a[cur] = k;
            cur = mul(cur, a);
        }
    }
    if (static_cast<long>(elems.size()) == max_ord) return {a};

    // quotient by <a>: coset representative = minimal element of the coset
    std::map<int, int> coset_rep;
    std::vector<int> reps;
    for (int e : elems) {
        if (coset_rep.count(e)) continue;
        // coset e*<a>
        std::vector<int> coset;
        int cur = e;
        for (long k = 0; k < max_ord; ++k) {
            coset.push_back(cur);
            cur = mul(cur, a);
        }
        int rep = *std::min_element(coset.begin(), coset.end());
        for (int c : coset) coset_rep[c] = rep;
        reps.push_back(rep);
    }
    Mul qmul = [&](int x, int y) { return coset_rep.at(mul(x, y)); };
    int qid = coset_rep.at(id);
    std::vector<int> qbasis = p_group_basis(qmul, qid, reps, p);

    // lift each quotient basis element b: if b has order p^k in the quotient,
    // then b^{p^k} = a^t with p^k | t, and b * a^{-t/p^k} lifts with order p^k
    std::vector<int> basis{a};
    for (int b : qbasis) {
        long k_ord = elem_order(qmul, qid, coset_rep.at(b));
        int bp = pow_elem(mul, id, b, k_ord);
        long t = in_a.at(bp);
        if (t % k_ord != 0) throw Error("p_group_basis: lift divisibility failed");
        long s = t / k_ord;  // divisible since ord(a) is the group exponent
        int a_inv_s = pow_elem(mul, id, a, ((max_ord - s % max_ord) % max_ord));
        basis.push_back(mul(b, a_inv_s));
    }
    return basis;
}

}  // namespace detail

// n: number of elements (indices 0..n-1); mul: group law; id: identity index.
// Throws NotAbelian if the law is not commutative.
inline AbelianStructure abelian_structure(int n, const detail::Mul& mul, int id) {
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (mul(a, b) != mul(b, a)) throw NotAbelian("group law is not commutative");

    AbelianStructure A;
    A.identity = id;
    if (n == 1) {
        A.exps.assign(1, {});
        A.from_exps[{}] = 0;
        return A;
    }

    // prime factors of n
    std::vector<long> primes;
    {
        long m = n;
        for (long p = 2; p * p <= m; ++p)
            if (m % p == 0) {
                primes.push_back(p);
                while (m % p == 0) m /= p;
            }
        if (m > 1) primes.push_back(m);
    }

    // elementary divisors per prime: (p, exponent e, generator)
    std::map<long, std::vector<std::pair<long, int>>> per_prime;  // p -> [(p^e, gen)] descending
    for (long p : primes) {
        std::vector<int> component;
        for (int e = 0; e < n; ++e) {
            long o = detail::elem_order(mul, id, e);
            bool ppower = true;
            while (o > 1) {
                if (o % p != 0) {
                    ppower = false;
                    break;
                }
                o /= p;
            }
            if (ppower) component.push_back(e);
        }
        std::vector<int> basis = detail::p_group_basis(mul, id, component, p);
        std::vector<std::pair<long, int>> divs;
        for (int b : basis) divs.emplace_back(detail::elem_order(mul, id, b), b);
        std::sort(divs.rbegin(), divs.rend());
        per_prime[p] = std::move(divs);
    }

    // combine into invariant factors d1 | d2 | ... (build from the largest down)
    std::size_t rank = 0;
    for (auto& [p, divs] : per_prime) rank = std::max(rank, divs.size());
    std::vector<long> factors_desc;
    std::vector<int> gens_desc;
    for (std::size_t j = 0; j < rank; ++j) {
        long d = 1;
        int g = id;
        for (auto& [p, divs] : per_prime) {
            if (j < divs.size()) {
                d *= divs[j].first;
                g = mul(g, divs[j].second);
            }
        }
        factors_desc.push_back(d);
        gens_desc.push_back(g);
    }
    A.invariant_factors.assign(factors_desc.rbegin(), factors_desc.rend());
    A.factor_gens.assign(gens_desc.rbegin(), gens_desc.rend());

    // exponent table by enumeration; also validates that the basis spans
    std::vector<long> v(A.invariant_factors.size(), 0);
    A.exps.assign(n, {});
    long count = 0;
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int cur) {
        if (i == A.invariant_factors.size()) {
            if (A.from_exps.count(v)) throw Error("abelian_structure: basis does not span");
            A.exps[cur] = v;
            A.from_exps[v] = cur;
            ++count;
            return;
        }
        int acc = cur;
        for (long k = 0; k < A.invariant_factors[i]; ++k) {
            v[i] = k;
            rec(i + 1, acc);
            acc = mul(acc, A.factor_gens[i]);
        }
        v[i] = 0;
    };
    rec(0, id);
    if (count != n || A.order() != n)
        throw Error("abelian_structure: decomposition order mismatch");
    return A;
}

}  // namespace icm
