#pragma once

// Partial sums S(x) = sum_{n<=x} |a(n)|^power over a geometric checkpoint
// grid, with domain filters, plus two exponent estimators for the predicted
// rho in S(x) ~ c x (log x)^{rho-1}:
//   - log-fit: least squares of log(S/x) against log log x, rho = slope + 1
//   - dirichlet-fit: slope of log F(1+eps) against log(1/eps) with the
//     Dirichlet series F truncated at X
// Desk-scale log log x windows are short, so callers should always compare
// both estimators; tolerances live with the callers.

#include "icm/common.hpp"
#include "icm/sieve.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace icm {

enum class DomainFilter { All, Squarefree, CoprimeF };

inline std::string filter_name(DomainFilter f) {
    switch (f) {
        case DomainFilter::All: return "all";
        case DomainFilter::Squarefree: return "squarefree";
        case DomainFilter::CoprimeF: return "coprime-f";
    }
    return "?";
}

struct MomentSeries {
    std::vector<long long> xs;  // strictly increasing checkpoints
    std::vector<double> S;      // partial sums at the checkpoints
    DomainFilter domain = DomainFilter::All;
    double power = 1.0;  // exponent applied to |a(n)|: 2*beta, or integer k
    std::string source;
};

struct ExponentEstimate {
    double rho_hat = 0.0;
    double stderr_ = 0.0;
    std::string method;  // "log-fit" or "dirichlet-fit"
};

inline std::vector<long long> geometric_grid(long long xmin = 1 << 14, long long xmax = 1 << 20,
                                             double ratio = 2.0) {
    if (xmin < 2 || xmax < xmin || ratio <= 1.0) throw Error("geometric_grid: bad parameters");
    std::vector<long long> xs;
    double x = static_cast<double>(xmin);
    for (;;) {
        long long xi = static_cast<long long>(x + 0.5);
        if (xi > xmax) break;
        if (xs.empty() || xi > xs.back()) xs.push_back(xi);
        x *= ratio;
    }
    if (xs.empty() || xs.back() != xmax) xs.push_back(xmax);
    return xs;
}

namespace detail {

inline bool in_domain(long long n, DomainFilter filter, const std::vector<std::int32_t>* spf,
                      long long f) {
    switch (filter) {
        case DomainFilter::All:
            return true;
        case DomainFilter::Squarefree: {
            static thread_local std::vector<long long> pf;
            return squarefree_factor(*spf, n, pf);
        }
        case DomainFilter::CoprimeF:
            return std::gcd(n, f) == 1;
    }
    return true;
}

}  // namespace detail

// Exact integer accumulation: |coeffs[n]|^k summed in arbitrary precision,
// reported as double at each checkpoint.
inline MomentSeries partial_sums(const std::vector<long long>& coeffs, long k,
                                 const std::vector<long long>& grid, DomainFilter filter,
                                 const std::vector<std::int32_t>* spf = nullptr, long long f = 1,
                                 std::string source = "") {
    if (grid.empty() || grid.back() > static_cast<long long>(coeffs.size()) - 1)
        throw DomainExceeded("partial_sums: grid exceeds the coefficient range");
    if (filter == DomainFilter::Squarefree && !spf)
        throw Error("partial_sums: squarefree filter needs a prime-factor sieve");
    MomentSeries out;
    out.domain = filter;
    out.power = static_cast<double>(k);
    out.source = std::move(source);
    Int acc = 0;
    std::size_t gi = 0;
    for (long long n = 1; n <= grid.back(); ++n) {
        if (detail::in_domain(n, filter, spf, f)) {
            Int v = coeffs[static_cast<std::size_t>(n)];
            if (v < 0) v = -v;
            Int term = 1;
            for (long i = 0; i < k; ++i) term *= v;
            acc += term;
        }
        while (gi < grid.size() && n == grid[gi]) {
            out.xs.push_back(n);
            out.S.push_back(static_cast<double>(acc));
            ++gi;
        }
    }
    return out;
}

// Floating path: |abs_coeffs[n]|^power with compensated (Kahan) summation.
inline MomentSeries partial_sums(const std::vector<double>& abs_coeffs, double power,
                                 const std::vector<long long>& grid, DomainFilter filter,
                                 const std::vector<std::int32_t>* spf = nullptr, long long f = 1,
                                 std::string source = "") {
    if (grid.empty() || grid.back() > static_cast<long long>(abs_coeffs.size()) - 1)
        throw DomainExceeded("partial_sums: grid exceeds the coefficient range");
    if (filter == DomainFilter::Squarefree && !spf)
        throw Error("partial_sums: squarefree filter needs a prime-factor sieve");
    MomentSeries out;
    out.domain = filter;
    out.power = power;
    out.source = std::move(source);
    double acc = 0.0, comp = 0.0;
    std::size_t gi = 0;
    for (long long n = 1; n <= grid.back(); ++n) {
        if (detail::in_domain(n, filter, spf, f)) {
            double a = std::abs(abs_coeffs[static_cast<std::size_t>(n)]);
            double term = (a == 0.0) ? 0.0 : std::pow(a, power);
            double y = term - comp;
            double t = acc + y;
            comp = (t - acc) - y;
            acc = t;
        }
        while (gi < grid.size() && n == grid[gi]) {
            out.xs.push_back(n);
            out.S.push_back(acc);
            ++gi;
        }
    }
    return out;
}

namespace detail {

struct LineFit {
    double slope, stderr_;
};

inline LineFit least_squares(const std::vector<double>& t, const std::vector<double>& y) {
    std::size_t n = t.size();
    double tbar = 0, ybar = 0;
    for (std::size_t i = 0; i < n; ++i) tbar += t[i], ybar += y[i];
    tbar /= n;
    ybar /= n;
    double stt = 0, sty = 0;
    for (std::size_t i = 0; i < n; ++i) {
        stt += (t[i] - tbar) * (t[i] - tbar);
        sty += (t[i] - tbar) * (y[i] - ybar);
    }
    double slope = sty / stt;
    double rss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = y[i] - ybar - slope * (t[i] - tbar);
        rss += r * r;
    }
    double se = (n > 2) ? std::sqrt(rss / static_cast<double>(n - 2) / stt) : 0.0;
    return {slope, se};
}

}  // namespace detail

// rho_hat = 1 + slope of log(S(x)/x) vs log log x.  Requires at least six
// positive checkpoints spanning two doublings of x.
inline ExponentEstimate fit_log_exponent(const MomentSeries& series) {
    std::vector<double> t, y;
    for (std::size_t i = 0; i < series.xs.size(); ++i) {
        if (series.S[i] <= 0) continue;
        double x = static_cast<double>(series.xs[i]);
        t.push_back(std::log(std::log(x)));
        y.push_back(std::log(series.S[i] / x));
    }
    if (y.empty()) throw ZeroSeries("fit_log_exponent: series has no positive checkpoints");
    if (y.size() < 6) throw InsufficientSpan("fit_log_exponent: need at least 6 checkpoints");
    double xlo = std::exp(std::exp(t.front())), xhi = std::exp(std::exp(t.back()));
    if (xhi < 4.0 * xlo)
        throw InsufficientSpan("fit_log_exponent: checkpoints must span two doublings of x");
    auto fit = detail::least_squares(t, y);
    return {1.0 + fit.slope, fit.stderr_, "log-fit"};
}

// rho_hat = slope of log F(1+eps) vs log(1/eps), with
// F(s) = sum |a(n)|^power n^{-s} truncated at n = X.  The truncation is only
// trustworthy for eps >= 3/log X, enforced on the smallest grid point.
inline ExponentEstimate dirichlet_exponent(const std::vector<double>& abs_coeffs, double power,
                                           const std::vector<double>& eps_grid,
                                           DomainFilter filter = DomainFilter::All,
                                           const std::vector<std::int32_t>* spf = nullptr,
                                           long long f = 1) {
    long long X = static_cast<long long>(abs_coeffs.size()) - 1;
    if (X < 2 || eps_grid.size() < 2) throw Error("dirichlet_exponent: need X >= 2 and >= 2 eps");
    for (double e : eps_grid)
        if (e < 3.0 / std::log(static_cast<double>(X)))
            throw EpsilonTooSmall("dirichlet_exponent: eps below 3/log X truncation threshold");
    std::vector<double> t, y;
    for (double eps : eps_grid) {
        double acc = 0.0, comp = 0.0;
        for (long long n = 1; n <= X; ++n) {
            if (!detail::in_domain(n, filter, spf, f)) continue;
            double a = std::abs(abs_coeffs[static_cast<std::size_t>(n)]);
            if (a == 0.0) continue;
            double term = std::pow(a, power) * std::pow(static_cast<double>(n), -(1.0 + eps));
            double u = term - comp;
            double s = acc + u;
            comp = (s - acc) - u;
            acc = s;
        }
        if (acc <= 0.0) throw ZeroSeries("dirichlet_exponent: truncated series vanishes");
        t.push_back(std::log(1.0 / eps));
        y.push_back(std::log(acc));
    }
    auto fit = detail::least_squares(t, y);
    return {fit.slope, fit.stderr_, "dirichlet-fit"};
}

}  // namespace icm
