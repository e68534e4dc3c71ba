#pragma once

// q-expansions of eta products prod_i eta(m_i z)^{e_i}.  Each factor
// eta(mz) = q^{m/24} prod (1 - q^{mn}) is expanded with Euler's pentagonal
// number theorem and the factors are convolved exactly.

#include "icm/common.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace icm {

// Coefficients c[n] of q^n, 0 <= n <= X, of the eta product given by
// `levels` = list of (m, exponent).  The fractional power q^{sum m*e/24}
// must collapse to an integer offset; otherwise NonIntegralWeightOffset.
inline std::vector<long long> eta_product_coeffs(
    const std::vector<std::pair<long, long>>& levels, long long X) {
    if (X < 0 || X > 10000000LL) throw Error("eta_product_coeffs: X out of range");
    long long weight24 = 0;
    for (auto [m, e] : levels) {
        if (m < 1 || e < 1) throw Error("eta_product_coeffs: levels must be positive");
        weight24 += m * e;
    }
    if (weight24 % 24 != 0)
        throw NonIntegralWeightOffset("eta product q-exponent is not an integer");
    long long offset = weight24 / 24;

    std::vector<long long> c(static_cast<std::size_t>(X) + 1, 0);
    if (offset > X) return c;
    c[static_cast<std::size_t>(offset)] = 1;

    for (auto [m, e] : levels) {
        // sparse pentagonal series for prod (1 - q^{m n}):
        // sum over j != 0 of (-1)^j q^{m j(3j-1)/2}, plus the constant 1
        std::vector<std::pair<long long, int>> pent{{0, 1}};
        for (long long j = 1;; ++j) {
            long long g1 = m * j * (3 * j - 1) / 2;
            long long g2 = m * j * (3 * j + 1) / 2;
            if (g1 > X && g2 > X) break;
            int sign = (j % 2 == 0) ? 1 : -1;
            if (g1 <= X) pent.emplace_back(g1, sign);
            if (g2 <= X) pent.emplace_back(g2, sign);
        }
        for (long k = 0; k < e; ++k) {
            std::vector<long long> next(c.size(), 0);
            for (auto [g, s] : pent)
                for (std::size_t n = static_cast<std::size_t>(g); n < c.size(); ++n)
                    next[n] += s * c[n - static_cast<std::size_t>(g)];
            c = std::move(next);
        }
    }
    return c;
}

}  // namespace icm
