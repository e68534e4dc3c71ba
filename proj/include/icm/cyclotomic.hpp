#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_m).
//
// An element is stored as a rational coefficient vector against the power
// basis 1, z, ..., z^{phi(m)-1}, reduced modulo the m-th cyclotomic
// polynomial Phi_m.  Reduction is canonical, so equality of values is
// equality of coefficient vectors.  Mixed-conductor operations lift both
// operands to the lcm of their conductors; no conductor minimization is
// attempted.

#include "icm/common.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <vector>

namespace icm {

namespace detail {

// Phi_m as a monic integer polynomial, computed by exact division of
// x^m - 1 by the lower-order cyclotomic polynomials.  Cached per conductor;
// the fill is idempotent so concurrent initialization is safe under the lock.
inline const std::vector<Int>& cyclotomic_poly(long m) {
    static std::map<long, std::vector<Int>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);

    auto compute = [](auto&& self, long mm) -> const std::vector<Int>& {
        auto it = cache.find(mm);
        if (it != cache.end()) return it->second;
        // numerator x^mm - 1
        std::vector<Int> num(mm + 1, 0);
        num[0] = -1;
        num[mm] = 1;
        for (long d = 1; d < mm; ++d) {
            if (mm % d != 0) continue;
            const std::vector<Int>& phi_d = self(self, d);
            // exact division num /= phi_d (both monic-ish, phi_d monic)
            std::vector<Int> quot(num.size() - phi_d.size() + 1, 0);
            std::vector<Int> rem = num;
            for (long k = static_cast<long>(quot.size()) - 1; k >= 0; --k) {
                Int c = rem[k + phi_d.size() - 1];
                quot[k] = c;
                if (c != 0) {
                    for (std::size_t j = 0; j < phi_d.size(); ++j)
                        rem[k + j] -= c * phi_d[j];
                }
            }
            num = std::move(quot);
        }
        return cache.emplace(mm, std::move(num)).first->second;
    };
    return compute(compute, m);
}

inline long phi_degree(long m) {
    return static_cast<long>(cyclotomic_poly(m).size()) - 1;
}

}  // namespace detail

class Cyclotomic {
public:
    Cyclotomic() : m_(1), c_(1, Rat(0)) {}

    explicit Cyclotomic(const Rat& r) : m_(1), c_(1, r) {}
    explicit Cyclotomic(long n) : m_(1), c_(1, Rat(n)) {}

    // zeta_m^k
    static Cyclotomic root_of_unity(long m, long k) {
        if (m < 1) throw Error("root_of_unity: conductor must be positive");
        k %= m;
        if (k < 0) k += m;
        std::vector<Rat> raw(m, Rat(0));
        raw[k] = 1;
        return from_power_coeffs(m, raw);
    }

    long conductor() const { return m_; }
    const std::vector<Rat>& coeffs() const { return c_; }

    bool is_zero() const {
        return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return r == 0; });
    }

    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    // Throws NotInteger-style error when the value has nonzero higher terms.
    Rat rational() const {
        if (!is_rational()) throw NotInteger("cyclotomic value is not rational");
        return c_[0];
    }

    Cyclotomic lifted(long M) const {
        if (M == m_) return *this;
        if (M % m_ != 0) throw Error("lifted: target conductor not a multiple");
        long step = M / m_;
        std::vector<Rat> raw(M, Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) raw[i * step] = c_[i];
        return from_power_coeffs(M, raw);
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        long M = std::lcm(a.m_, b.m_);
        Cyclotomic x = a.lifted(M), y = b.lifted(M);
        for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }

    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
        return a + (-b);
    }

    Cyclotomic operator-() const {
        Cyclotomic x = *this;
        for (auto& v : x.c_) v = -v;
        return x;
    }

    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        long M = std::lcm(a.m_, b.m_);
        Cyclotomic x = a.lifted(M), y = b.lifted(M);
        std::vector<Rat> prod(x.c_.size() + y.c_.size() - 1, Rat(0));
        for (std::size_t i = 0; i < x.c_.size(); ++i) {
            if (x.c_[i] == 0) continue;
            for (std::size_t j = 0; j < y.c_.size(); ++j) {
                if (y.c_[j] == 0) continue;
                prod[i + j] += x.c_[i] * y.c_[j];
            }
        }
        return from_power_coeffs(M, prod);
    }

    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

    Cyclotomic scale(const Rat& r) const {
        Cyclotomic x = *this;
        for (auto& v : x.c_) v *= r;
        return x;
    }

    Cyclotomic conj() const {
        std::vector<Rat> raw(m_, Rat(0));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            long e = (i == 0) ? 0 : (m_ - static_cast<long>(i));
            raw[e] += c_[i];
        }
        return from_power_coeffs(m_, raw);
    }

    Cyclotomic abs_square() const { return (*this) * conj(); }

    Cyclotomic pow(unsigned long e) const {
        Cyclotomic acc(Rat(1)), base = *this;
        while (e) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        long M = std::lcm(a.m_, b.m_);
        return a.lifted(M).c_ == b.lifted(M).c_;
    }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    std::complex<double> numeric() const {
        std::complex<double> s(0.0, 0.0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            double arg = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(m_);
            s += to_double(c_[i]) * std::complex<double>(std::cos(arg), std::sin(arg));
        }
        return s;
    }

    // "c0 + c1*z^1 + ... @ m"
    std::string str() const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (!first) os << " + ";
            os << c_[i];
            if (i > 0) os << "*z^" << i;
            first = false;
        }
        if (first) os << "0";
        os << " @ " << m_;
        return os.str();
    }

    static Cyclotomic parse(const std::string& s) {
        auto at = s.find('@');
        if (at == std::string::npos) throw Error("cyclotomic parse: missing conductor");
        long m = std::stol(s.substr(at + 1));
        Cyclotomic out = root_of_unity(m, 0).scale(Rat(0));
        std::string body = s.substr(0, at);
        std::size_t pos = 0;
        while (pos < body.size()) {
            while (pos < body.size() && (body[pos] == ' ' || body[pos] == '+')) ++pos;
            if (pos >= body.size()) break;
            std::size_t end = body.find('+', pos);
            std::string term = body.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
            pos = (end == std::string::npos) ? body.size() : end;
            long e = 0;
            std::string coeff = term;
            auto star = term.find("*z^");
            if (star != std::string::npos) {
                coeff = term.substr(0, star);
                e = std::stol(term.substr(star + 3));
            }
            // trim
            coeff.erase(coeff.find_last_not_of(" \t") + 1);
            coeff.erase(0, coeff.find_first_not_of(" \t"));
            Rat r(coeff);
            out += root_of_unity(m, e).scale(r);
        }
        return out;
    }

private:
    // raw: coefficients against powers z^0..z^{len-1}, possibly unreduced.
    static Cyclotomic from_power_coeffs(long m, std::vector<Rat> raw) {
        const std::vector<Int>& phi = detail::cyclotomic_poly(m);
        long deg = static_cast<long>(phi.size()) - 1;
        if (static_cast<long>(raw.size()) < deg) raw.resize(deg, Rat(0));
        // reduce mod Phi_m (monic)
        for (long k = static_cast<long>(raw.size()) - 1; k >= deg; --k) {
            Rat c = raw[k];
            if (c == 0) continue;
            raw[k] = 0;
            for (long j = 0; j < deg; ++j) raw[k - deg + j] -= c * Rat(phi[j]);
        }
        raw.resize(deg);
        Cyclotomic x;
        x.m_ = m;
        x.c_ = std::move(raw);
        return x;
    }

    long m_;
    std::vector<Rat> c_;
};

// True iff v = 0 or v^t is real for some 1 <= t <= 2m; returns the witness t.
// This is the exact test behind the real-times-root-of-unity condition on
// induced character values.
inline std::optional<long> real_times_root_of_unity(const Cyclotomic& v) {
    if (v.is_zero()) return 1;
    long bound = 2 * v.conductor();
    Cyclotomic p(Rat(1));
    for (long t = 1; t <= bound; ++t) {
        p *= v;
        if (p == p.conj()) return t;
    }
    return std::nullopt;
}

}  // namespace icm
