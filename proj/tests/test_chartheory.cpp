#include "icm/chartheory.hpp"
#include "icm/fixtures.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

using namespace icm;

namespace {

// frames under test that expose the full section-3 machinery
std::vector<std::string> section3_names() { return {"c7c3", "cubic-c3", "cubic-v4"}; }

Rat rat_pow(Rat b, long e) {
    Rat r(1);
    for (long i = 0; i < e; ++i) r *= b;
    return r;
}

// closed forms from the worked examples, as functions of beta
double s3_rho(double beta) { return (1 + std::pow(3.0, 2 * beta - 1)) / 2; }
double s4_rho(double beta) {
    return (8 + 6 * std::pow(2.0, 2 * beta) + std::pow(4.0, 2 * beta)) / 24;
}
double c7c3_rho_cusp(double beta) {
    return (std::pow(3.0, 2 * beta - 1) + std::pow(2.0, 1 + beta)) / 7;
}

int coset_index(const GaloisFrame& F, int g) {
    for (std::size_t t = 0; t < F.q_reps.size(); ++t)
        if (F.H.contains(F.G.mul(F.G.inv(F.q_reps[t]), g))) return static_cast<int>(t);
    throw Error("coset_index: not found");
}

}  // namespace

TEST_CASE("dual group enumeration") {
    GaloisFrame c3 = build_frame(builtin_fixture("cubic-c3"));
    auto d3 = dual_group(c3);
    REQUIRE(d3.size() == 3);
    CHECK(d3[0].order == 1);
    CHECK(d3[1].order == 3);
    CHECK(d3[2].order == 3);
    CHECK(d3[0].is_trivial());

    GaloisFrame v4 = build_frame(builtin_fixture("cubic-v4"));
    auto d4 = dual_group(v4);
    REQUIRE(d4.size() == 4);
    for (const auto& c : d4) CHECK(c.order <= 2);

    GaloisFrame s4 = build_frame(builtin_fixture("s4-deg12"));
    CHECK(dual_group(s4).size() == 3);
}

TEST_CASE("characters are exact homomorphisms") {
    GaloisFrame F = build_frame(builtin_fixture("c7c3"));
    auto chars = dual_group(F);
    for (const auto& chi : chars) {
        CHECK(chi_value(F.N, chi, static_cast<int>(F.N.identity)) == Cyclotomic(1));
        for (int a = 0; a < 7; ++a)
            for (int b = 0; b < 7; ++b) {
                std::vector<long> v{(F.N.exps[a][0] + F.N.exps[b][0]) % 7};
                int ab = F.N.from_exps.at(v);
                CHECK(chi_value(F.N, chi, ab) ==
                      chi_value(F.N, chi, a) * chi_value(F.N, chi, b));
            }
    }
}

TEST_CASE("induction of the trivial character is the permutation character") {
    for (const char* name : {"s3-nongalois", "s4-deg12", "c7c3", "cubic-v4"}) {
        GaloisFrame F = build_frame(builtin_fixture(name));
        ClassFunction triv = induce_trivial(F);
        const auto& classes = F.G.conjugacy_classes();
        for (std::size_t c = 0; c < classes.size(); ++c) {
            long hc = 0;
            for (int e : classes[c].members)
                if (F.H.contains(e)) ++hc;
            Rat expect = Rat(F.index_GH() * hc) / Rat(classes[c].size());
            CHECK(triv.values[c] == Cyclotomic(expect));
        }
        // identity class value = [G:H]
        CHECK(triv.values[F.G.class_of(F.G.identity())] == Cyclotomic(F.index_GH()));
    }
}

TEST_CASE("order-21 frame: induced values of an order-7 character") {
    GaloisFrame F = build_frame(builtin_fixture("c7c3"));
    auto chars = dual_group(F);
    DualCharacter chi = chars[1];
    REQUIRE(chi.order == 7);
    ClassFunction ind = induce(F, chi);
    const auto& classes = F.G.conjugacy_classes();
    REQUIRE(classes.size() == 5);

    std::vector<Cyclotomic> size3_values;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        if (classes[c].size() == 1) CHECK(ind.values[c] == Cyclotomic(3));
        if (classes[c].size() == 7) CHECK(ind.values[c].is_zero());
        if (classes[c].size() == 3) size3_values.push_back(ind.values[c]);
    }
    REQUIRE(size3_values.size() == 2);
    // the two values are (-1 +- sqrt(-7))/2: conjugate roots of v^2 + v + 2
    Cyclotomic v = size3_values[0];
    CHECK(v * v + v + Cyclotomic(2) == Cyclotomic(0));
    CHECK(size3_values[1] == v.conj());
    CHECK((v == Cyclotomic::root_of_unity(7, 1) + Cyclotomic::root_of_unity(7, 2) +
                    Cyclotomic::root_of_unity(7, 4) ||
           v == Cyclotomic::root_of_unity(7, 3) + Cyclotomic::root_of_unity(7, 5) +
                    Cyclotomic::root_of_unity(7, 6)));
}

TEST_CASE("quadratic frame: induced value is 2cos(2 pi j / m)") {
    GaloisFrame F = quad_frame(form_class_group(-23));
    auto chars = dual_group(F);
    DualCharacter chi = chars[1];
    REQUIRE(chi.order == 3);
    ClassFunction ind = induce(F, chi);
    for (int sigma = 0; sigma < 3; ++sigma) {
        Cyclotomic expect = chi_value(F.N, chi, sigma) + chi_value(F.N, chi, sigma).conj();
        CHECK(ind.values[F.class_of_sigma(sigma)] == expect);
    }
    // nontrivial sigma: 2cos(2 pi/3) = -1
    CHECK(ind.values[F.class_of_sigma(1)] == Cyclotomic(-1));
}

TEST_CASE("inner products") {
    GaloisFrame S3 = build_frame(builtin_fixture("s3-nongalois"));
    ClassFunction t = induce_trivial(S3);
    CHECK(inner_product(t, t) == Cyclotomic(2));

    GaloisFrame F = build_frame(builtin_fixture("c7c3"));
    auto chars = dual_group(F);
    for (std::size_t i = 1; i < chars.size(); ++i) {
        ClassFunction ind = induce(F, chars[i]);
        CHECK(inner_product(ind, ind) == Cyclotomic(1));
    }
}

TEST_CASE("inner product counts fixing tau: every pair, every section-3 fixture") {
    std::vector<GaloisFrame> frames;
    for (const auto& n : section3_names()) frames.push_back(build_frame(builtin_fixture(n)));
    frames.push_back(quad_frame(form_class_group(-23)));
    frames.push_back(quad_frame(form_class_group(-39)));
    for (const auto& F : frames) {
        auto chars = dual_group(F);
        std::vector<ClassFunction> ind;
        for (const auto& c : chars) ind.push_back(induce(F, c));
        for (std::size_t i = 0; i < chars.size(); ++i)
            for (std::size_t j = 0; j < chars.size(); ++j) {
                long count = 0;
                for (std::size_t tau = 0; tau < F.q_reps.size(); ++tau)
                    if (q_action(F, static_cast<int>(tau), chars[j]) == chars[i]) ++count;
                CHECK(inner_product(ind[i], ind[j]) == Cyclotomic(count));
            }
    }
}

TEST_CASE("Frobenius reciprocity at the implemented level") {
    for (const char* name : {"c7c3", "s4-deg12"}) {
        GaloisFrame F = build_frame(builtin_fixture(name));
        auto chars = dual_group(F);
        const auto& classes = F.G.conjugacy_classes();
        for (const auto& chi : chars) {
            ClassFunction ind = induce(F, chi);
            for (std::size_t c = 0; c < classes.size(); ++c) {
                // class indicator as a class function
                ClassFunction phi;
                phi.frame = &F;
                phi.values.assign(classes.size(), Cyclotomic(0));
                phi.values[c] = Cyclotomic(1);
                Cyclotomic lhs = inner_product(ind, phi);
                Cyclotomic rhs;
                for (int e : classes[c].members)
                    if (F.H.contains(e)) rhs += chi_value(F.N, chi, F.to_N[e]);
                rhs = rhs.scale(Rat(1, F.H.order()));
                CHECK(lhs == rhs);
            }
        }
    }
}

TEST_CASE("rho_char worked values") {
    GaloisFrame Q23 = quad_frame(form_class_group(-23));
    auto q_chars = dual_group(Q23);
    ClassFunction q_ind = induce(Q23, q_chars[1]);
    CHECK(rho_char_exact(Q23, q_ind, Rat(1)) == Rat(1));

    GaloisFrame F = build_frame(builtin_fixture("c7c3"));
    auto chars = dual_group(F);
    ClassFunction ind = induce(F, chars[1]);
    CHECK(rho_char_exact(F, ind, Rat(1)) == Rat(1));

    // trivial chi at beta = 1/2 gives exactly 1 on every fixture
    for (const auto& name : builtin_fixture_names()) {
        GaloisFrame G = build_frame(builtin_fixture(name));
        ClassFunction t = induce_trivial(G);
        CHECK(rho_char_exact(G, t, Rat(1, 2)) == Rat(1));
    }
}

TEST_CASE("rho_max closed forms, exact and numeric") {
    GaloisFrame S3 = build_frame(builtin_fixture("s3-nongalois"));
    GaloisFrame S4 = build_frame(builtin_fixture("s4-deg12"));
    std::vector<Rat> betas{Rat(1, 2), Rat(1), Rat(3, 2), Rat(2), Rat(3)};
    for (const Rat& b : betas) {
        long k = static_cast<long>(Rat(2) * b);  // 2 beta
        // (1 + 3^{2b-1})/2 = (3 + 3^{2b})/6
        CHECK(rho_max_exact(S3, b) == (Rat(3) + rat_pow(Rat(3), k)) / 6);
        CHECK(rho_max_exact(S4, b) ==
              (Rat(8) + Rat(6) * rat_pow(Rat(2), k) + rat_pow(Rat(4), k)) / 24);
    }
    CHECK(rho_max_exact(S3, Rat(1)) == Rat(2));
    CHECK(rho_max_exact(S4, Rat(1)) == Rat(2));

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> bdist(0.01, 4.0);
    for (int i = 0; i < 20; ++i) {
        double b = bdist(rng);
        CHECK(std::abs(rho_max_numeric(S3, b) - s3_rho(b)) < 1e-9);
        CHECK(std::abs(rho_max_numeric(S4, b) - s4_rho(b)) < 1e-9);
    }

    // Galois-type frames: [G:H]^{2 beta - 1}
    for (const char* name : {"c7c3", "cubic-c3", "cubic-v4"}) {
        GaloisFrame F = build_frame(builtin_fixture(name));
        for (const Rat& b : {Rat(1), Rat(2)}) {
            long k = static_cast<long>(Rat(2) * b);
            CHECK(rho_max_exact(F, b) == rat_pow(Rat(F.index_GH()), k) / Rat(F.index_GH()));
        }
    }
    GaloisFrame Q = quad_frame(form_class_group(-23));
    CHECK(rho_max_exact(Q, Rat(1)) == Rat(2));

    // rho(1/2) = 1 on every fixture
    for (const auto& name : builtin_fixture_names())
        CHECK(rho_max_exact(build_frame(builtin_fixture(name)), Rat(1, 2)) == Rat(1));
}

TEST_CASE("extremal set and the bound rho(chi,beta) <= rho(beta)") {
    std::vector<GaloisFrame> frames;
    for (const auto& n : builtin_fixture_names()) frames.push_back(build_frame(builtin_fixture(n)));
    frames.push_back(quad_frame(form_class_group(-23)));
    for (const auto& F : frames) {
        auto chars = dual_group(F);
        std::vector<ClassFunction> ind;
        for (const auto& c : chars) ind.push_back(induce(F, c));
        std::vector<int> X = extremal_set(F, chars, ind);
        CHECK(!X.empty());
        CHECK(X[0] == 0);  // trivial character always extremal
        for (double beta : {0.5, 1.0, 1.5, 2.0, 3.0}) {
            double rmax = rho_max_numeric(F, beta);
            for (std::size_t i = 0; i < chars.size(); ++i) {
                double r = rho_char_numeric(F, ind[i], beta);
                CHECK(r <= rmax + 1e-9);
                bool in_X = std::find(X.begin(), X.end(), static_cast<int>(i)) != X.end();
                CHECK((std::abs(r - rmax) < 1e-9) == in_X);
            }
        }
    }
    // cubic example 1: every character extremal; example 2: only the trivial one
    GaloisFrame C3 = build_frame(builtin_fixture("cubic-c3"));
    auto c3_chars = dual_group(C3);
    std::vector<ClassFunction> c3_ind;
    for (const auto& c : c3_chars) c3_ind.push_back(induce(C3, c));
    CHECK(extremal_set(C3, c3_chars, c3_ind) == std::vector<int>{0, 1, 2});

    GaloisFrame V4 = build_frame(builtin_fixture("cubic-v4"));
    auto v4_chars = dual_group(V4);
    std::vector<ClassFunction> v4_ind;
    for (const auto& c : v4_chars) v4_ind.push_back(induce(V4, c));
    CHECK(extremal_set(V4, v4_chars, v4_ind) == std::vector<int>{0});
}

TEST_CASE("rho_joint definitional identities") {
    GaloisFrame F = build_frame(builtin_fixture("c7c3"));
    auto chars = dual_group(F);
    std::vector<ClassFunction> ind;
    for (const auto& c : chars) ind.push_back(induce(F, c));

    // (chi, conj chi) reproduces the norm
    for (std::size_t i = 0; i < chars.size(); ++i) {
        ClassFunction cind = induce(F, conj_character(F.N, chars[i]));
        long j = rho_joint(F, {ind[i], cind});
        Cyclotomic ip = inner_product(ind[i], ind[i]);
        CHECK(Cyclotomic(j) == ip);
    }

    // (chi, chi) with chi of order 7: conj(chi) = chi^6 is not in the orbit
    // {chi, chi^2, chi^4}, so the unconjugated pairing vanishes
    CHECK(rho_joint(F, {ind[1], ind[1]}) == 0);
    CHECK(rho_joint(F, {ind[1], ind[6]}) == 1);

    // k copies of the trivial induction match rho_max at beta = k/2
    for (const auto& name : builtin_fixture_names()) {
        GaloisFrame G = build_frame(builtin_fixture(name));
        ClassFunction t = induce_trivial(G);
        for (int k = 1; k <= 3; ++k) {
            std::vector<ClassFunction> tuple(k, t);
            CHECK(Rat(rho_joint(G, tuple)) == rho_max_exact(G, Rat(k, 2)));
        }
    }
}

TEST_CASE("q_action is a group action and preserves induction") {
    std::vector<GaloisFrame> frames;
    for (const auto& n : section3_names()) frames.push_back(build_frame(builtin_fixture(n)));
    frames.push_back(quad_frame(form_class_group(-39)));
    for (const auto& F : frames) {
        auto chars = dual_group(F);
        for (const auto& chi : chars) {
            // identity acts trivially
            CHECK(q_action(F, 0, chi) == chi);
            for (std::size_t t1 = 0; t1 < F.q_reps.size(); ++t1)
                for (std::size_t t2 = 0; t2 < F.q_reps.size(); ++t2) {
                    int t12 = coset_index(F, F.G.mul(F.q_reps[t1], F.q_reps[t2]));
                    CHECK(q_action(F, t12, chi) ==
                          q_action(F, static_cast<int>(t1),
                                   q_action(F, static_cast<int>(t2), chi)));
                }
            // induced class function is orbit invariant
            ClassFunction a = induce(F, chi);
            for (std::size_t t = 0; t < F.q_reps.size(); ++t) {
                ClassFunction b = induce(F, q_action(F, static_cast<int>(t), chi));
                for (std::size_t c = 0; c < a.values.size(); ++c)
                    CHECK(a.values[c] == b.values[c]);
            }
        }
    }
    GaloisFrame S3 = build_frame(builtin_fixture("s3-nongalois"));
    CHECK_THROWS_AS(q_action(S3, 0, dual_group(S3)[0]), NotSection3Frame);
}

TEST_CASE("cuspidal classification on the worked examples") {
    // quadratic-type frame: cuspidal iff order > 2
    GaloisFrame Q39 = quad_frame(form_class_group(-39));
    CuspidalReport R39 = cuspidal_report(Q39, {Rat(1)});
    auto chars39 = dual_group(Q39);
    std::vector<int> expect39;
    for (std::size_t i = 0; i < chars39.size(); ++i)
        if (chars39[i].order > 2) expect39.push_back(static_cast<int>(i));
    CHECK(R39.cuspidal == expect39);
    REQUIRE(R39.orbits.size() == 1);

    // cubic example 2: three nontrivial characters, a single orbit
    GaloisFrame V4 = build_frame(builtin_fixture("cubic-v4"));
    CuspidalReport R4 = cuspidal_report(V4, {Rat(1)});
    CHECK(R4.cuspidal == std::vector<int>{1, 2, 3});
    REQUIRE(R4.orbits.size() == 1);
    CHECK(R4.orbits[0] == std::vector<int>{1, 2, 3});

    // cubic example 1: the action is trivial, no cuspidal characters
    GaloisFrame C3 = build_frame(builtin_fixture("cubic-c3"));
    CuspidalReport R3 = cuspidal_report(C3, {Rat(1)});
    CHECK(R3.cuspidal.empty());

    // order-21 fixture: six cuspidal characters in two orbits of three
    GaloisFrame F = build_frame(builtin_fixture("c7c3"));
    CuspidalReport R = cuspidal_report(F, {Rat(1)});
    CHECK(R.cuspidal.size() == 6);
    REQUIRE(R.orbits.size() == 2);
    CHECK(R.orbits[0].size() == 3);
    CHECK(R.orbits[1].size() == 3);
}

TEST_CASE("cusp vanishing: order-4 class in a Z/4 class group") {
    GaloisFrame Q39 = quad_frame(form_class_group(-39));
    CuspidalReport R = cuspidal_report(Q39, {Rat(1)});
    for (int sigma = 0; sigma < 4; ++sigma) {
        long ord = Q39.N.element_order(sigma);
        CHECK(cusp_vanishes(R, sigma) == (ord == 4));
    }
}

TEST_CASE("order-21 rho_cusp closed form and condition (**)") {
    GaloisFrame F = build_frame(builtin_fixture("c7c3"));
    std::vector<Rat> grid{Rat(1), Rat(2), Rat(3)};
    CuspidalReport R = cuspidal_report(F, grid);
    for (int sigma = 0; sigma < 7; ++sigma) {
        CHECK(!cusp_vanishes(R, sigma));
        for (std::size_t b = 0; b < grid.size(); ++b) {
            long k = static_cast<long>(Rat(2) * grid[b]);
            Rat expect = (rat_pow(Rat(3), k) / 3 + rat_pow(Rat(2), 1 + k / 2)) / 7;
            CHECK(rho_cusp_exact(F, R, sigma, grid[b]) == expect);
            REQUIRE(R.per_sigma[sigma].rho_cusp[b].has_value());
            CHECK(std::abs(*R.per_sigma[sigma].rho_cusp[b] -
                           c7c3_rho_cusp(to_double(grid[b]))) < 1e-9);
        }
    }
    // (-1 +- sqrt(-7))/2 is not real-times-root-of-unity: (**) fails
    CuspidalReport Rf = cuspidal_report(F, {Rat(3, 4)});
    for (int sigma = 0; sigma < 7; ++sigma) CHECK(!Rf.per_sigma[sigma].star_star[0]);
}

TEST_CASE("noncusp_max_lemma by brute force: max joint exponent forces the extremal set") {
    for (const auto& name : builtin_fixture_names()) {
        GaloisFrame F = build_frame(builtin_fixture(name));
        auto chars = dual_group(F);
        REQUIRE(chars.size() <= 16);
        std::vector<ClassFunction> ind;
        for (const auto& c : chars) ind.push_back(induce(F, c));
        std::vector<int> X = extremal_set(F, chars, ind);
        auto in_X = [&](int i) { return std::find(X.begin(), X.end(), i) != X.end(); };

        std::size_t n = chars.size();
        for (int k = 1; k <= 3; ++k) {
            std::vector<int> tuple(k, 0);
            for (;;) {
                std::vector<ClassFunction> fs;
                DualCharacter prod = chars[0];
                bool all_X = true;
                for (int i : tuple) {
                    fs.push_back(ind[i]);
                    prod = mul_characters(F.N, prod, chars[i]);
                    all_X = all_X && in_X(i);
                }
                long j = rho_joint(F, fs);
                bool at_max = (Rat(j) == rho_max_exact(F, Rat(k, 2)));
                if (at_max) {
                    CHECK(all_X);
                    CHECK(prod.is_trivial());
                }
                // next tuple
                int pos = k - 1;
                while (pos >= 0 && tuple[pos] + 1 == static_cast<int>(n)) tuple[pos--] = 0;
                if (pos < 0) break;
                ++tuple[pos];
            }
        }
    }
}

TEST_CASE("Hoelder equality on the order-21 cuspidal set forces equal products") {
    GaloisFrame F = build_frame(builtin_fixture("c7c3"));
    CuspidalReport R = cuspidal_report(F, {Rat(1)});
    const auto& cusp = R.cuspidal;
    auto conj_ind = [&](int i) { return induce(F, conj_character(F.N, R.chars[i])); };
    for (int a1 : cusp)
        for (int a2 : cusp)
            for (int b1 : cusp)
                for (int b2 : cusp) {
                    long J = rho_joint(F, {R.induced[a1], R.induced[a2], conj_ind(b1), conj_ind(b2)});
                    long Ma = rho_joint(F, {R.induced[a1], R.induced[a2], conj_ind(a1), conj_ind(a2)});
                    long Mb = rho_joint(F, {R.induced[b1], R.induced[b2], conj_ind(b1), conj_ind(b2)});
                    CHECK(J * J <= Ma * Mb);  // Cauchy-Schwarz
                    if (J * J == Ma * Mb) {
                        // equality forces the products to coincide classwise
                        for (std::size_t c = 0; c < R.induced[a1].values.size(); ++c)
                            CHECK(R.induced[a1].values[c] * R.induced[a2].values[c] ==
                                  R.induced[b1].values[c] * R.induced[b2].values[c]);
                    }
                }
}

TEST_CASE("rho from class-group data with an explicit Galois action") {
    // cubic example 1: A = Z/3, Q = C3 acting trivially
    auto mul3 = [](int a, int b) { return (a + b) % 3; };
    AbelianStructure A3 = abelian_structure(3, mul3, 0);
    std::vector<std::vector<int>> trivial_action{{0, 1, 2}, {0, 1, 2}, {0, 1, 2}};
    for (const auto& chi : dual_group(A3))
        CHECK(std::abs(rho_galois_action(A3, trivial_action, chi, 1.0) - 3.0) < 1e-12);

    // cubic example 2: A = Z/2 x Z/2, generator acting as (0 1; 1 1)
    auto mul4 = [](int a, int b) { return a ^ b; };
    AbelianStructure A4 = abelian_structure(4, mul4, 0);
    // build tau on exponent vectors: (a,b) -> (b, a+b)
    std::vector<int> tau(4);
    for (int e = 0; e < 4; ++e) {
        std::vector<long> v = A4.exps[e];
        std::vector<long> w{v[1], (v[0] + v[1]) % 2};
        tau[e] = A4.from_exps.at(w);
    }
    std::vector<int> tau2(4), id{0, 1, 2, 3};
    for (int e = 0; e < 4; ++e) tau2[e] = tau[tau[e]];
    std::vector<std::vector<int>> action{id, tau, tau2};
    auto chars4 = dual_group(A4);
    CHECK(std::abs(rho_galois_action(A4, action, chars4[0], 1.0) - 3.0) < 1e-12);
    for (std::size_t i = 1; i < chars4.size(); ++i)
        CHECK(std::abs(rho_galois_action(A4, action, chars4[i], 1.0) - 1.0) < 1e-12);

    // trivial chi, any beta: |Q|^{2 beta - 1}
    for (double beta : {0.5, 1.0, 2.0})
        CHECK(std::abs(rho_galois_action(A4, action, chars4[0], beta) -
                       std::pow(3.0, 2 * beta - 1)) < 1e-9);

    // non-automorphism rejected (does not fix the identity)
    std::vector<std::vector<int>> bad{{1, 0, 3, 2}};
    CHECK_THROWS_AS(rho_galois_action(A4, bad, chars4[1], 1.0), NotAutomorphism);
}

TEST_CASE("agreement between frame induction and the Galois-action formula") {
    // the order-12 frame realizes the same class-group data as the explicit
    // (Z/2)^2 action above: rho values must match
    GaloisFrame F = build_frame(builtin_fixture("cubic-v4"));
    auto chars = dual_group(F);
    for (std::size_t i = 0; i < chars.size(); ++i) {
        ClassFunction ind = induce(F, chars[i]);
        double r = rho_char_numeric(F, ind, 1.0);
        CHECK((std::abs(r - 3.0) < 1e-9 || std::abs(r - 1.0) < 1e-9));
        if (chars[i].is_trivial()) CHECK(std::abs(r - 3.0) < 1e-9);
    }
}
