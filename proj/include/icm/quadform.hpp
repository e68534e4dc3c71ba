#pragma once

// Exact imaginary-quadratic ground truth: reduced binary quadratic forms,
// Gauss composition, the form class group (fundamental or not), representation
// counts r_g(n), per-class ideal counts a(sigma,n), character coefficients
// a(chi,n) and cuspidal projections a_cusp(sigma,n).
//
// Per-class counts are defined through form counts, a(sigma,n) = r_g(n)/w on
// gcd(n,f) = 1; other n are outside the table's domain.

#include "icm/abelian.hpp"
#include "icm/chartheory.hpp"
#include "icm/common.hpp"
#include "icm/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace icm {

// Kronecker symbol (a|n) for n >= 1.
inline int kronecker(long long a, long long n) {
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) sign = -sign;
    }
    int r = sign;
    while (n % 2 == 0) {
        n /= 2;
        if (a % 2 == 0) return 0;
        long long am8 = ((a % 8) + 8) % 8;
        if (am8 == 3 || am8 == 5) r = -r;
    }
    a %= n;
    if (a < 0) a += n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long long nm8 = n % 8;
            if (nm8 == 3 || nm8 == 5) r = -r;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) r = -r;
        a %= n;
    }
    return n == 1 ? r : 0;
}

struct QuadDiscriminant {
    long long D;   // full discriminant, negative, 0 or 1 mod 4
    long long D0;  // fundamental part
    long long f;   // conductor: D = D0 * f^2
    int w;         // units in the order: 6, 4 or 2

    explicit QuadDiscriminant(long long d) : D(d) {
        if (D >= 0) throw Error("discriminant must be negative");
        long long m = ((D % 4) + 4) % 4;
        if (m != 0 && m != 1) throw Error("discriminant must be 0 or 1 mod 4");
        // strip square factors to reach the fundamental discriminant
        long long n = -D, sq = 1;
        for (long long p = 2; p * p <= n; ++p)
            while (n % (p * p) == 0) {
                n /= p * p;
                sq *= p;
            }
        // n is now squarefree; candidate D0 = -n or -4n
        long long cand = -n;
        if (((cand % 4) + 4) % 4 == 1) {
            D0 = cand;
        } else {
            D0 = 4 * cand;
            if (sq % 2 != 0) throw Error("invalid discriminant factorization");
            sq /= 2;
        }
        f = sq;
        if (D0 * f * f != D) throw Error("internal: conductor factorization failed");
        w = (D == -3) ? 6 : (D == -4) ? 4 : 2;
    }
};

struct QuadForm {
    long long a = 1, b = 0, c = 0;

    long long disc() const { return b * b - 4 * a * c; }
    long long eval(long long x, long long y) const { return a * x * x + b * x * y + c * y * y; }
    bool is_reduced() const {
        return std::abs(b) <= a && a <= c && (b >= 0 || (std::abs(b) < a && a < c));
    }
    bool is_primitive() const { return std::gcd(std::gcd(a, b), c) == 1; }
    QuadForm inverse() const { return QuadForm{a, -b, c}; }
    auto operator<=>(const QuadForm&) const = default;
};

namespace detail {

// Reduction core, generic over the coefficient type so that composition can
// reduce oversized intermediates in arbitrary precision.
template <typename T>
void reduce_triple(T& a, T& b, T& c) {
    for (;;) {
        // normalize: -a < b <= a
        if (b > a || b <= -a) {
            T k = (a - b) / (2 * a);  // choose b + 2ak in (-a, a]
            while (b + 2 * a * k > a) --k;
            while (b + 2 * a * k <= -a) ++k;
            c += k * (b + a * k);
            b += 2 * a * k;
        }
        if (a > c) {
            std::swap(a, c);
            b = -b;
            continue;
        }
        break;
    }
    if (a == c && b < 0) b = -b;
}

}  // namespace detail

// Standard reduction by alternating normalization and flips.
inline QuadForm reduce(QuadForm g) {
    if (g.a <= 0 || g.disc() >= 0) throw Error("reduce: not a positive definite form");
    detail::reduce_triple(g.a, g.b, g.c);
    return g;
}

// All reduced primitive forms of discriminant D, sorted by (a, b, c).
inline std::vector<QuadForm> enumerate_reduced(const QuadDiscriminant& disc) {
    std::vector<QuadForm> forms;
    long long D = disc.D;
    long long amax = static_cast<long long>(std::sqrt(static_cast<double>(-D) / 3.0)) + 1;
    for (long long a = 1; a <= amax; ++a)
        for (long long b = -a + 1; b <= a; ++b) {
            long long num = b * b - D;
            if (num % (4 * a) != 0) continue;
            long long c = num / (4 * a);
            QuadForm g{a, b, c};
            if (g.is_reduced() && g.is_primitive()) forms.push_back(g);
        }
    std::sort(forms.begin(), forms.end());
    return forms;
}

inline QuadForm principal_form(const QuadDiscriminant& disc) {
    long long D = disc.D;
    if (((D % 4) + 4) % 4 == 0) return QuadForm{1, 0, -D / 4};
    return QuadForm{1, 1, (1 - D) / 4};
}

namespace detail {

// Extended gcd: returns g and x, y with a*x + b*y = g.
template <typename T>
T ext_gcd(T a, T b, T& x, T& y) {
    if (b == 0) {
        x = (a >= 0) ? 1 : -1;
        y = 0;
        return a >= 0 ? a : T(-a);
    }
    T x1, y1;
    T g = ext_gcd<T>(b, T(a % b), x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

// Coefficient triple in arbitrary precision, for composition intermediates.
struct BigForm {
    Int a, b, c;
};

// Replace g by an equivalent form whose leading coefficient is coprime to M.
// Per prime p | M pick (x,y) in {(1,0),(0,1),(1,1)} with p not dividing
// g(x,y); CRT the choices together, strip gcd(x,y), and rotate the form so
// that (x,y) becomes the first basis vector.
inline BigForm with_leading_coprime_to(const QuadForm& g, long long M) {
    if (std::gcd(g.a, M) == 1) return BigForm{g.a, g.b, g.c};
    long long x = 0, y = 0, mod = 1;
    long long rest = M;
    for (long long p = 2; p * p <= rest || rest > 1; ++p) {
        if (p * p > rest) p = rest;
        if (rest % p != 0) continue;
        while (rest % p == 0) rest /= p;
        long long xp, yp;
        if (g.a % p != 0) {
            xp = 1, yp = 0;
        } else if (g.c % p != 0) {
            xp = 0, yp = 1;
        } else {
            xp = 1, yp = 1;  // value a+b+c = b mod p, nonzero by primitivity
        }
        // CRT: move (x,y) mod `mod` to (xp,yp) mod p
        long long inv, tmp;
        ext_gcd(mod % p, p, inv, tmp);
        inv = ((inv % p) + p) % p;
        long long tx = ((xp - x) % p + p) % p * inv % p;
        long long ty = ((yp - y) % p + p) % p * inv % p;
        x += mod * tx;
        y += mod * ty;
        mod *= p;
    }
    long long d = std::gcd(x, y);
    if (d > 1) {
        x /= d;
        y /= d;
    }
    if (x == 0 && y == 0) throw Error("with_leading_coprime_to: no representation found");
    // unimodular completion: columns (x,y),(p,q) with x*q - y*p = 1
    long long q, p;
    long long gg = ext_gcd<long long>(x, y, q, p);
    if (gg != 1) throw Error("with_leading_coprime_to: representation not primitive");
    p = -p;  // x*q - y*p = 1
    // transformed coefficients can exceed 64 bits before reduction
    Int A(g.a), B(g.b), C(g.c), X(x), Y(y), P(p), Q(q);
    BigForm h;
    h.a = A * X * X + B * X * Y + C * Y * Y;
    h.c = A * P * P + B * P * Q + C * Q * Q;
    h.b = 2 * (A * X * P + C * Y * Q) + B * (X * Q + Y * P);
    if (h.b * h.b - 4 * h.a * h.c != Int(g.disc()))
        throw Error("with_leading_coprime_to: transform broke the discriminant");
    if (gcd(h.a, Int(M)) != 1) throw Error("with_leading_coprime_to: preconditioning failed");
    return h;
}

}  // namespace detail

// Gauss composition (Dirichlet form): precondition f1 so that its leading
// coefficient is coprime to 2*a2*|D|, then solve for a concordant middle
// coefficient by CRT and reduce the composite.
inline QuadForm compose(const QuadForm& f1, const QuadForm& f2, const QuadDiscriminant& disc) {
    long long D = disc.D;
    if (f1.disc() != D || f2.disc() != D) throw Error("compose: discriminant mismatch");
    if (!f1.is_primitive() || !f2.is_primitive()) throw Error("compose: forms must be primitive");
    detail::BigForm g1 = detail::with_leading_coprime_to(f1, 2 * f2.a * (-D));
    Int a1 = g1.a, a2 = f2.a;
    // B = b1 mod 2a1, B = b2 mod 2a2; solvable since gcd(a1, 2a2) = 1
    Int inv, tmp;
    detail::ext_gcd<Int>(Int((a1 % a2 + a2) % a2), a2, inv, tmp);
    inv = ((inv % a2) + a2) % a2;
    Int k = ((Int(f2.b) - g1.b) % (2 * a2) + 2 * a2) % (2 * a2);
    if (k % 2 != 0) throw Error("compose: parity mismatch");
    Int t = (k / 2) % a2 * inv % a2;
    Int B = g1.b + 2 * a1 * t;
    Int A = a1 * a2;
    if ((B * B - D) % (4 * A) != 0) throw Error("compose: concordance failed");
    Int C = (B * B - D) / (4 * A);
    detail::reduce_triple(A, B, C);
    // a reduced form has a <= sqrt(|D|/3), so coefficients fit comfortably
    return QuadForm{static_cast<long long>(A), static_cast<long long>(B),
                    static_cast<long long>(C)};
}

struct FormClassGroup {
    QuadDiscriminant disc;
    std::vector<QuadForm> forms;          // sorted by (a,b,c); class index = position
    std::vector<std::vector<int>> table;  // composition table on class indices
    int identity = 0;
    AbelianStructure structure;

    int h() const { return static_cast<int>(forms.size()); }
    int index_of(const QuadForm& g) const {
        QuadForm r = reduce(g);
        auto it = std::lower_bound(forms.begin(), forms.end(), r);
        if (it == forms.end() || *it != r) throw Error("form class group: unknown form");
        return static_cast<int>(it - forms.begin());
    }
    int mul(int i, int j) const { return table[i][j]; }
};

inline FormClassGroup form_class_group(const QuadDiscriminant& disc) {
    FormClassGroup G{disc, enumerate_reduced(disc), {}, 0, {}};
    int h = G.h();
    G.identity = G.index_of(principal_form(disc));
    G.table.assign(h, std::vector<int>(h, 0));
    for (int i = 0; i < h; ++i)
        for (int j = 0; j <= i; ++j) {
            int k = G.index_of(compose(G.forms[i], G.forms[j], disc));
            G.table[i][j] = G.table[j][i] = k;
        }
    G.structure = abelian_structure(
        h, [&](int a, int b) { return G.table[a][b]; }, G.identity);
    return G;
}

inline FormClassGroup form_class_group(long long D) { return form_class_group(QuadDiscriminant(D)); }

// r_g(n) for 1 <= n <= X by lattice enumeration over the ellipse g(x,y) <= X.
inline std::vector<std::uint32_t> count_representations(const QuadForm& g, long long X) {
    if (X < 1) throw Error("count_representations: X must be >= 1");
    long long D = g.disc();
    std::vector<std::uint32_t> r(static_cast<std::size_t>(X) + 1, 0);
    double ybound = 2.0 * std::sqrt(static_cast<double>(g.a) * X / static_cast<double>(-D));
    long long ymax = static_cast<long long>(ybound) + 1;
    for (long long y = -ymax; y <= ymax; ++y) {
        // a x^2 + (b y) x + (c y^2 - X) <= 0
        double disc_x = static_cast<double>(g.b * y) * (g.b * y) -
                        4.0 * g.a * (static_cast<double>(g.c) * y * y - X);
        if (disc_x < 0) continue;
        double s = std::sqrt(disc_x);
        long long x0 = static_cast<long long>(std::floor((-g.b * y - s) / (2.0 * g.a))) - 1;
        long long x1 = static_cast<long long>(std::ceil((-g.b * y + s) / (2.0 * g.a))) + 1;
        for (long long x = x0; x <= x1; ++x) {
            long long n = g.eval(x, y);
            if (n >= 1 && n <= X) ++r[static_cast<std::size_t>(n)];
        }
    }
    return r;
}

struct CoefficientTable {
    QuadDiscriminant disc;
    long long X = 0;
    FormClassGroup group;
    // per-class arrays indexed [class][n], n = 0..X; a[.][n] meaningful only
    // on gcd(n, f) = 1, r[.][n] for all n
    std::vector<std::vector<std::uint32_t>> r;
    std::vector<std::vector<std::uint32_t>> a;

    bool in_domain(long long n) const {
        return n >= 1 && n <= X && std::gcd(n, disc.f) == 1;
    }
};

inline CoefficientTable ideal_class_counts(const QuadDiscriminant& disc, long long X) {
    FormClassGroup G = form_class_group(disc);
    if (static_cast<long long>(G.h()) * (X + 1) > 100000000LL)
        throw Error("ideal_class_counts: table exceeds the cell budget");
    CoefficientTable T{disc, X, std::move(G), {}, {}};
    int h = T.group.h();
    T.r.resize(h);
    T.a.resize(h);
    for (int i = 0; i < h; ++i) {
        T.r[i] = count_representations(T.group.forms[i], X);
        T.a[i].assign(static_cast<std::size_t>(X) + 1, 0);
        for (long long n = 1; n <= X; ++n) {
            if (std::gcd(n, disc.f) != 1) continue;
            std::uint32_t rv = T.r[i][static_cast<std::size_t>(n)];
            if (rv % disc.w != 0)
                throw NonIntegral("ideal_class_counts: r_g(n) not divisible by the unit count");
            T.a[i][static_cast<std::size_t>(n)] = rv / disc.w;
        }
    }
    return T;
}

inline CoefficientTable ideal_class_counts(long long D, long long X) {
    return ideal_class_counts(QuadDiscriminant(D), X);
}

// a(chi,n) = sum_sigma chi(sigma) a(sigma,n), exact cyclotomic; real by the
// sigma <-> sigma^{-1} symmetry (asserted).
inline std::vector<Cyclotomic> char_coefficients(const CoefficientTable& T,
                                                 const DualCharacter& chi) {
    const AbelianStructure& A = T.group.structure;
    int h = T.group.h();
    std::vector<Cyclotomic> vals(h);
    for (int s = 0; s < h; ++s) vals[s] = chi_value(A, chi, s);
    std::vector<Cyclotomic> out(static_cast<std::size_t>(T.X) + 1);
    for (long long n = 1; n <= T.X; ++n) {
        if (!T.in_domain(n)) continue;
        Cyclotomic acc;
        for (int s = 0; s < h; ++s) {
            std::uint32_t an = T.a[s][static_cast<std::size_t>(n)];
            if (an) acc += vals[s].scale(Rat(an));
        }
        if (!(acc == acc.conj()))
            throw CrossCheckMismatch("char_coefficients: a(chi,n) is not real");
        out[static_cast<std::size_t>(n)] = std::move(acc);
    }
    return out;
}

// a_cusp(sigma,n) = a(sigma,n) - (1/h) sum over real chi of chi(sigma) a(chi,n);
// exact rational with denominator dividing h.
inline std::vector<Rat> cusp_coefficients(const CoefficientTable& T, int sigma) {
    const AbelianStructure& A = T.group.structure;
    int h = T.group.h();
    if (sigma < 0 || sigma >= h) throw Error("cusp_coefficients: class index out of range");
    std::vector<DualCharacter> chars = dual_group(A);
    std::vector<Rat> out(static_cast<std::size_t>(T.X) + 1, Rat(0));
    for (long long n = 1; n <= T.X; ++n) {
        if (!T.in_domain(n)) continue;
        Rat acc = Rat(T.a[sigma][static_cast<std::size_t>(n)]);
        for (const auto& chi : chars) {
            if (chi.order > 2) continue;  // keep only real characters
            Cyclotomic cv = chi_value(A, chi, sigma);  // +1 or -1
            Rat sign = cv.rational();
            Cyclotomic achn;
            for (int s = 0; s < h; ++s) {
                std::uint32_t an = T.a[s][static_cast<std::size_t>(n)];
                if (an) achn += chi_value(A, chi, s).scale(Rat(an));
            }
            acc -= sign * achn.rational() / h;
        }
        out[static_cast<std::size_t>(n)] = acc;
    }
    return out;
}

}  // namespace icm
