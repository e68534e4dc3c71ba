#pragma once

// Characters of the abelian subquotient N = H/Ksub, their lifts and induced
// class functions on G, the moment exponents rho(chi,beta), rho(beta), joint
// exponents, the extremal set, and the cuspidal classification (Q-action on
// the dual, orbits, rho_cusp, the real-times-root-of-unity condition).
//
// The frame (G, H, Ksub) plays the role of (Gal(M/Q), Gal(M/K), Gal(M/L)):
// N is the ideal class group of K and the induced character of chi in N^ is
//
//   chi^ind(C) = ([G:H]/|C|) * sum_{h in H cap C} chi(h mod Ksub),
//
// which carries all exponent information through
//
//   rho(chi,beta) = (1/|G|) sum_C |C| |chi^ind(C)|^{2 beta}.

#include "icm/abelian.hpp"
#include "icm/cyclotomic.hpp"
#include "icm/permgroup.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

namespace icm {

struct GaloisFrame {
    FiniteGroup G;
    Subgroup H;
    Subgroup Ksub;
    AbelianStructure N;
    std::vector<int> to_N;    // G element index -> N element index (H members only, else -1)
    std::vector<int> n_lift;  // N element index -> coset representative in G
    bool section3 = false;    // Ksub trivial and H normal in G
    std::vector<int> q_reps;  // coset representatives of H in G (section3), identity coset first

    // H and Ksub point back into the frame's own G, so copies and moves must
    // re-anchor those parent pointers.
    GaloisFrame() = default;
    GaloisFrame(const GaloisFrame& o) { *this = o; }
    GaloisFrame(GaloisFrame&& o) noexcept { *this = std::move(o); }
    GaloisFrame& operator=(const GaloisFrame& o) {
        if (this == &o) return *this;
        G = o.G;
        H = o.H;
        Ksub = o.Ksub;
        N = o.N;
        to_N = o.to_N;
        n_lift = o.n_lift;
        section3 = o.section3;
        q_reps = o.q_reps;
        H.parent = &G;
        Ksub.parent = &G;
        return *this;
    }
    GaloisFrame& operator=(GaloisFrame&& o) noexcept {
        if (this == &o) return *this;
        G = std::move(o.G);
        H = std::move(o.H);
        Ksub = std::move(o.Ksub);
        N = std::move(o.N);
        to_N = std::move(o.to_N);
        n_lift = std::move(o.n_lift);
        section3 = o.section3;
        q_reps = std::move(o.q_reps);
        H.parent = &G;
        Ksub.parent = &G;
        return *this;
    }

    int index_GH() const { return H.index(); }

    // class index of (a lift of) sigma in N
    int class_of_sigma(int sigma) const { return G.class_of(n_lift[sigma]); }

    static GaloisFrame build(FiniteGroup group, Subgroup h, Subgroup ksub) {
        GaloisFrame F;
        F.G = std::move(group);
        // re-anchor subgroup parent pointers onto the stored copy
        F.H = std::move(h);
        F.Ksub = std::move(ksub);
        F.H.parent = &F.G;
        F.Ksub.parent = &F.G;

        for (int k : F.Ksub.members)
            if (!F.H.contains(k)) throw NotNormal("frame: Ksub is not contained in H");
        if (!is_normal(F.Ksub, F.H)) throw NotNormal("frame: Ksub is not normal in H");

        // cosets of Ksub in H
        std::vector<int> coset_of(F.G.order(), -1);
        std::vector<int> reps;
        for (int h0 : F.H.members) {
            if (coset_of[h0] >= 0) continue;
            int c = static_cast<int>(reps.size());
            int rep = h0;
            for (int k : F.Ksub.members) {
                int e = F.G.mul(h0, k);
                coset_of[e] = c;
                rep = std::min(rep, e);
            }
            reps.push_back(rep);
        }
        auto mul = [&](int a, int b) {
            return coset_of[F.G.mul(reps[a], reps[b])];
        };
        int id_coset = coset_of[F.G.identity()];
        F.N = abelian_structure(static_cast<int>(reps.size()), mul, id_coset);
        F.to_N = std::move(coset_of);
        F.n_lift = std::move(reps);

        F.section3 = (F.Ksub.order() == 1) && F.H.is_normal_in_parent();
        if (F.section3) {
            std::vector<char> seen(F.G.order(), 0);
            F.q_reps.push_back(F.G.identity());
            for (int h0 : F.H.members) seen[h0] = 1;
            for (int g = 0; g < F.G.order(); ++g) {
                if (seen[g]) continue;
                F.q_reps.push_back(g);
                for (int h0 : F.H.members) seen[F.G.mul(g, h0)] = 1;
            }
        }
        return F;
    }
};

struct DualCharacter {
    std::vector<long> exps;  // e_i mod d_i against the invariant factors
    long order = 1;

    bool is_trivial() const {
        return std::all_of(exps.begin(), exps.end(), [](long e) { return e == 0; });
    }
    auto operator<=>(const DualCharacter&) const = default;
};

inline DualCharacter make_character(const AbelianStructure& A, std::vector<long> exps) {
    DualCharacter chi;
    chi.order = 1;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        long d = A.invariant_factors[i];
        exps[i] = ((exps[i] % d) + d) % d;
        if (exps[i] != 0) chi.order = std::lcm(chi.order, d / std::gcd(d, exps[i]));
    }
    chi.exps = std::move(exps);
    return chi;
}

// All |N| characters in lexicographic exponent-vector order; trivial first.
inline std::vector<DualCharacter> dual_group(const AbelianStructure& A) {
    std::vector<DualCharacter> out;
    std::vector<long> v(A.invariant_factors.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == v.size()) {
            out.push_back(make_character(A, v));
            return;
        }
        for (long k = 0; k < A.invariant_factors[i]; ++k) {
            v[i] = k;
            rec(i + 1);
        }
        v[i] = 0;
    };
    rec(0);
    return out;
}

inline std::vector<DualCharacter> dual_group(const GaloisFrame& F) { return dual_group(F.N); }

// chi evaluated at an element of N, as an exact root of unity.
inline Cyclotomic chi_value(const AbelianStructure& A, const DualCharacter& chi, int elem) {
    long m = A.exponent();
    long e = 0;
    for (std::size_t i = 0; i < chi.exps.size(); ++i) {
        long d = A.invariant_factors[i];
        e = (e + chi.exps[i] * A.exps[elem][i] % d * (m / d)) % m;
    }
    return Cyclotomic::root_of_unity(m, e);
}

inline DualCharacter conj_character(const AbelianStructure& A, const DualCharacter& chi) {
    std::vector<long> e = chi.exps;
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = -e[i];
    return make_character(A, std::move(e));
}

inline DualCharacter mul_characters(const AbelianStructure& A, const DualCharacter& a,
                                    const DualCharacter& b) {
    std::vector<long> e = a.exps;
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += b.exps[i];
    return make_character(A, std::move(e));
}

struct ClassFunction {
    const GaloisFrame* frame = nullptr;
    std::vector<Cyclotomic> values;  // indexed by conjugacy classes of G
};

// chi~^ind(C) = ([G:H]/|C|) sum_{h in H cap C} chi(h mod Ksub), exact.
inline ClassFunction induce(const GaloisFrame& F, const DualCharacter& chi) {
    const auto& classes = F.G.conjugacy_classes();
    ClassFunction f;
    f.frame = &F;
    f.values.reserve(classes.size());
    Rat index_gh(F.index_GH());
    for (const auto& C : classes) {
        Cyclotomic s;
        for (int e : C.members)
            if (F.H.contains(e)) s += chi_value(F.N, chi, F.to_N[e]);
        f.values.push_back(s.scale(index_gh / Rat(C.size())));
    }
    return f;
}

// <f1,f2>_G = (1/|G|) sum_C |C| f1(C) conj(f2(C)), exact.
inline Cyclotomic inner_product(const ClassFunction& f1, const ClassFunction& f2) {
    if (f1.frame != f2.frame) throw Error("inner_product: class functions on different frames");
    const auto& classes = f1.frame->G.conjugacy_classes();
    Cyclotomic s;
    for (std::size_t i = 0; i < classes.size(); ++i)
        s += (f1.values[i] * f2.values[i].conj()).scale(Rat(classes[i].size()));
    return s.scale(Rat(1, f1.frame->G.order()));
}

namespace detail {

// |C|-indexed abs-squares of a class function, as exact rationals when they
// are rational (e.g. 2cos(2 pi/5) squared is not); nullopt otherwise.
inline std::optional<std::vector<Rat>> abs_square_profile(const ClassFunction& f) {
    std::vector<Rat> out;
    out.reserve(f.values.size());
    for (const auto& v : f.values) {
        Cyclotomic a2 = v.abs_square();
        if (!a2.is_rational()) return std::nullopt;
        out.push_back(a2.rational());
    }
    return out;
}

inline std::optional<Rat> rational_sqrt(const Rat& r) {
    if (r < 0) return std::nullopt;
    if (r == 0) return Rat(0);
    Int num = boost::multiprecision::numerator(r);
    Int den = boost::multiprecision::denominator(r);
    Int sn = boost::multiprecision::sqrt(num);
    Int sd = boost::multiprecision::sqrt(den);
    if (sn * sn != num || sd * sd != den) return std::nullopt;
    return Rat(sn, sd);
}

inline Rat rat_pow(const Rat& base, long e) {
    Rat acc(1), b = base;
    while (e) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

inline bool is_integral(const Rat& b) {
    return boost::multiprecision::denominator(b) == 1;
}

}  // namespace detail

// Exact rho(chi,beta) = sum_C (|C|/|G|) |chi^ind(C)|^{2 beta}.  Available
// when beta is a positive integer, or a half-integer with every |value|^2 a
// rational square.
inline std::optional<Rat> rho_char_exact(const GaloisFrame& F, const ClassFunction& ind,
                                         const Rat& beta) {
    Rat two_beta = beta * 2;
    if (!detail::is_integral(two_beta) || beta <= 0) return std::nullopt;
    long k = static_cast<long>(two_beta);  // 2*beta
    auto a2 = detail::abs_square_profile(ind);
    if (!a2) return std::nullopt;
    const auto& classes = F.G.conjugacy_classes();
    Rat s(0);
    for (std::size_t i = 0; i < classes.size(); ++i) {
        Rat term;
        if (k % 2 == 0) {
            term = detail::rat_pow((*a2)[i], k / 2);
        } else {
            auto r = detail::rational_sqrt((*a2)[i]);
            if (!r) return std::nullopt;
            term = detail::rat_pow(*r, k);
        }
        s += term * Rat(classes[i].size());
    }
    return s / Rat(F.G.order());
}

inline double rho_char_numeric(const GaloisFrame& F, const ClassFunction& ind, double beta) {
    const auto& classes = F.G.conjugacy_classes();
    double s = 0;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        Cyclotomic sq = ind.values[i].abs_square();
        double a2 = sq.is_rational() ? to_double(sq.rational()) : sq.numeric().real();
        s += classes[i].size() * (a2 > 1e-12 ? std::pow(a2, beta) : 0.0);
    }
    return s / F.G.order();
}

inline ClassFunction induce_trivial(const GaloisFrame& F) {
    return induce(F, make_character(F.N, std::vector<long>(F.N.invariant_factors.size(), 0)));
}

// rho(beta) = (1/|G|) sum_C |C| ([G:H]|H cap C|/|C|)^{2 beta}; exact whenever
// 2*beta is a nonnegative integer (the base is a nonnegative rational).
inline std::optional<Rat> rho_max_exact(const GaloisFrame& F, const Rat& beta) {
    Rat two_beta = beta * 2;
    if (!detail::is_integral(two_beta) || beta <= 0) return std::nullopt;
    long k = static_cast<long>(two_beta);
    const auto& classes = F.G.conjugacy_classes();
    Rat s(0);
    for (const auto& C : classes) {
        long hc = 0;
        for (int e : C.members)
            if (F.H.contains(e)) ++hc;
        Rat t = Rat(F.index_GH() * hc) / Rat(C.size());
        s += detail::rat_pow(t, k) * Rat(C.size());
    }
    return s / Rat(F.G.order());
}

inline double rho_max_numeric(const GaloisFrame& F, double beta) {
    const auto& classes = F.G.conjugacy_classes();
    double s = 0;
    for (const auto& C : classes) {
        long hc = 0;
        for (int e : C.members)
            if (F.H.contains(e)) ++hc;
        double t = static_cast<double>(F.index_GH()) * hc / C.size();
        s += C.size() * (t > 0 ? std::pow(t * t, beta) : 0.0);
    }
    return s / F.G.order();
}

// X = { chi : |chi^ind(C)| = |1^ind(C)| for all C }, by exact comparison.
// Independent of beta.
inline std::vector<int> extremal_set(const GaloisFrame& F,
                                     const std::vector<DualCharacter>& chars,
                                     const std::vector<ClassFunction>& induced) {
    ClassFunction triv = induce_trivial(F);
    auto ref = detail::abs_square_profile(triv);
    if (!ref) throw NotInteger("extremal_set: trivial induction profile not rational");
    std::vector<int> out;
    for (std::size_t i = 0; i < chars.size(); ++i) {
        auto a2 = detail::abs_square_profile(induced[i]);
        if (a2 && *a2 == *ref) out.push_back(static_cast<int>(i));
    }
    return out;
}

// rho(chi_1,...,chi_k) = (1/|G|) sum_C |C| chi_1^ind(C)...chi_k^ind(C).
// The paper guarantees a nonnegative integer; anything else is an arithmetic
// bug and throws NotInteger.
inline long rho_joint(const GaloisFrame& F, const std::vector<ClassFunction>& tuple) {
    const auto& classes = F.G.conjugacy_classes();
    Cyclotomic s;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        Cyclotomic prod(Rat(1));
        for (const auto& f : tuple) prod *= f.values[i];
        s += prod.scale(Rat(classes[i].size()));
    }
    s = s.scale(Rat(1, F.G.order()));
    if (!s.is_rational()) throw NotInteger("rho_joint: value not rational");
    Rat r = s.rational();
    if (!detail::is_integral(r) || r < 0) throw NotInteger("rho_joint: value not a nonnegative integer");
    return static_cast<long>(Int(boost::multiprecision::numerator(r)));
}

// (tau chi)(h) = chi(tau~^{-1} h tau~); tau is an index into frame.q_reps.
inline DualCharacter q_action(const GaloisFrame& F, int tau, const DualCharacter& chi) {
    if (!F.section3) throw NotSection3Frame("q_action: N is not normal in G with trivial Ksub");
    int t = F.q_reps[tau];
    int tinv = F.G.inv(t);
    long m = F.N.exponent();
    std::vector<long> new_exps(chi.exps.size(), 0);
    for (std::size_t j = 0; j < F.N.invariant_factors.size(); ++j) {
        long d = F.N.invariant_factors[j];
        int gen = F.N.factor_gens[j];
        int conj = F.G.mul(tinv, F.G.mul(F.n_lift[gen], t));
        int img = F.to_N[conj];
        if (img < 0) throw NotSection3Frame("q_action: conjugate left H");
        // chi at img, as an exponent of zeta_m; then re-expressed mod d_j
        long e = 0;
        for (std::size_t i = 0; i < chi.exps.size(); ++i) {
            long di = F.N.invariant_factors[i];
            e = (e + chi.exps[i] * F.N.exps[img][i] % di * (m / di)) % m;
        }
        // chi'(gen_j) = zeta_m^e must be a d_j-th root: e*(d_j/m) integral
        if ((e * d) % m != 0) throw Error("q_action: exponent not compatible with factor order");
        new_exps[j] = (e * d / m) % d;
    }
    return make_character(F.N, std::move(new_exps));
}

struct CuspidalReport {
    std::vector<DualCharacter> chars;          // full dual in enumeration order
    std::vector<ClassFunction> induced;        // per character
    std::vector<int> cuspidal;                 // indices with chi^ind irreducible
    std::vector<std::vector<int>> orbits;      // Q-orbits on the cuspidal set
    std::vector<int> reps;                     // lexicographically minimal representative per orbit

    struct SigmaRow {
        int sigma = 0;
        bool vanishes = false;
        std::vector<std::optional<double>> rho_cusp;  // per beta grid point
        std::vector<bool> star_star;                  // per beta grid point
    };
    std::vector<SigmaRow> per_sigma;
    std::vector<Rat> beta_grid;
};

namespace detail {

inline std::vector<int> cuspidal_characters(const GaloisFrame& F,
                                            const std::vector<DualCharacter>& chars,
                                            const std::vector<ClassFunction>& induced) {
    std::vector<int> out;
    for (std::size_t i = 0; i < chars.size(); ++i) {
        bool fixed = false;
        for (std::size_t t = 1; t < F.q_reps.size(); ++t)
            if (q_action(F, static_cast<int>(t), chars[i]) == chars[i]) {
                fixed = true;
                break;
            }
        // cross-validate against <chi^ind, chi^ind> = 1
        Cyclotomic ip = inner_product(induced[i], induced[i]);
        bool irreducible = (ip == Cyclotomic(Rat(1)));
        if (irreducible == fixed)
            throw CrossCheckMismatch("cuspidal test: orbit criterion disagrees with norm");
        if (irreducible) out.push_back(static_cast<int>(i));
    }
    return out;
}

}  // namespace detail

// N^0, its Q-orbits and representatives.  Requires a section-3 frame.
inline CuspidalReport cuspidal_report(const GaloisFrame& F, const std::vector<Rat>& beta_grid) {
    if (!F.section3) throw NotSection3Frame("cuspidal_report: frame lacks normal N");
    CuspidalReport R;
    R.beta_grid = beta_grid;
    R.chars = dual_group(F);
    for (const auto& chi : R.chars) R.induced.push_back(induce(F, chi));
    R.cuspidal = detail::cuspidal_characters(F, R.chars, R.induced);

    std::vector<char> seen(R.chars.size(), 0);
    std::map<DualCharacter, int> char_index;
    for (std::size_t i = 0; i < R.chars.size(); ++i) char_index[R.chars[i]] = static_cast<int>(i);
    for (int c : R.cuspidal) {
        if (seen[c]) continue;
        std::vector<int> orbit;
        for (std::size_t t = 0; t < F.q_reps.size(); ++t) {
            int j = char_index.at(q_action(F, static_cast<int>(t), R.chars[c]));
            if (!seen[j]) {
                seen[j] = 1;
                orbit.push_back(j);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        R.orbits.push_back(orbit);
        // lexicographic minimality coincides with the smallest enumeration index
        R.reps.push_back(orbit.front());
    }
    if (!R.orbits.empty() && R.cuspidal.size() % F.q_reps.size() == 0) {
        // Q acts without fixed points on N^0
        if (R.orbits.size() != R.cuspidal.size() / F.q_reps.size())
            throw CrossCheckMismatch("cuspidal orbits: k != |N^0|/|Q|");
    }

    long nN = F.N.order();
    for (int sigma = 0; sigma < nN; ++sigma) {
        CuspidalReport::SigmaRow row;
        row.sigma = sigma;
        int cls = F.class_of_sigma(sigma);
        std::vector<int> eligible;
        for (int r : R.reps)
            if (!R.induced[r].values[cls].is_zero()) eligible.push_back(r);
        row.vanishes = eligible.empty();
        for (const Rat& beta : beta_grid) {
            if (eligible.empty()) {
                row.rho_cusp.emplace_back(std::nullopt);
                row.star_star.push_back(true);  // vacuously
                continue;
            }
            double best = -1;
            std::vector<double> vals;
            for (int r : eligible) {
                auto ex = rho_char_exact(F, R.induced[r], beta);
                double v = ex ? to_double(*ex) : rho_char_numeric(F, R.induced[r], to_double(beta));
                vals.push_back(v);
                best = std::max(best, v);
            }
            row.rho_cusp.emplace_back(best);
            // X_{sigma,beta}: maximizers at this beta; ties all reported
            bool ok = true;
            for (std::size_t i = 0; i < eligible.size(); ++i) {
                if (vals[i] < best - 1e-9) continue;
                for (const auto& v : R.induced[eligible[i]].values)
                    if (!real_times_root_of_unity(v)) {
                        ok = false;
                        break;
                    }
                if (!ok) break;
            }
            row.star_star.push_back(ok);
        }
        R.per_sigma.push_back(std::move(row));
    }
    return R;
}

inline bool cusp_vanishes(const CuspidalReport& R, int sigma) {
    return R.per_sigma[sigma].vanishes;
}

// Exact rho_cusp(sigma,beta) when every eligible representative admits the
// exact exponent path; nullopt when the cuspidal projection vanishes at sigma.
inline std::optional<Rat> rho_cusp_exact(const GaloisFrame& F, const CuspidalReport& R,
                                         int sigma, const Rat& beta) {
    int cls = F.class_of_sigma(sigma);
    std::optional<Rat> best;
    for (int r : R.reps) {
        if (R.induced[r].values[cls].is_zero()) continue;
        auto v = rho_char_exact(F, R.induced[r], beta);
        if (!v) throw Error("rho_cusp_exact: no exact path at this beta");
        if (!best || *v > *best) best = *v;
    }
    return best;
}

// rho(chi,beta) in the Galois case, straight from class-group data:
// (1/(|A||Q|)) sum_A |l(chi,A)|^{2 beta} with l(chi,A) = sum_tau chi(A^tau).
// `action` lists one permutation of A's elements per tau in Q; each must be a
// group automorphism.
inline double rho_galois_action(const AbelianStructure& A,
                                const std::vector<std::vector<int>>& action,
                                const DualCharacter& chi, double beta) {
    long n = A.order();
    auto mul = [&](int x, int y) {
        std::vector<long> v = A.exps[x];
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = (v[i] + A.exps[y][i]) % A.invariant_factors[i];
        return A.from_exps.at(v);
    };
    for (const auto& perm : action) {
        if (static_cast<long>(perm.size()) != n || perm[A.identity] != A.identity)
            throw NotAutomorphism("rho_galois_action: action does not fix identity");
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (perm[mul(x, y)] != mul(perm[x], perm[y]))
                    throw NotAutomorphism("rho_galois_action: action is not by automorphisms");
    }
    double s = 0;
    for (int a = 0; a < n; ++a) {
        Cyclotomic l;
        for (const auto& perm : action) l += chi_value(A, chi, perm[a]);
        double a2 = to_double(l.abs_square().rational());
        s += (a2 > 0) ? std::pow(a2, beta) : 0.0;
    }
    return s / (static_cast<double>(n) * action.size());
}

}  // namespace icm
