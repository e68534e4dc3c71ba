#include "icm/fixtures.hpp"
#include "icm/sampler.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace icm;

namespace {

GaloisFrame trivial_frame() {
    FiniteGroup G = FiniteGroup::closure({Permutation::identity(1)});
    Subgroup H = whole_group(G);
    Subgroup K = trivial_subgroup(G);
    return GaloisFrame::build(std::move(G), std::move(H), std::move(K));
}

GaloisFrame c7_abelian_frame() {
    FiniteGroup G = FiniteGroup::closure({Permutation::from_cycles(7, {{0, 1, 2, 3, 4, 5, 6}})});
    Subgroup H = whole_group(G);
    Subgroup K = trivial_subgroup(G);
    return GaloisFrame::build(std::move(G), std::move(H), std::move(K));
}

}  // namespace

TEST_CASE("trivial group maps every prime to the identity class") {
    GaloisFrame F = trivial_frame();
    FrobeniusAssignment A = assign(F, 1000, 42);
    for (long long p = 2; p <= 1000; ++p)
        if (A.spf[p] == p) CHECK(A.cls[p] == 0);
}

TEST_CASE("class frequencies follow |C|/|G| within 3 sigma") {
    GaloisFrame F = build_frame(builtin_fixture("s3-nongalois"));
    FrobeniusAssignment A = assign(F, 1000000, 20260824);
    const auto& classes = F.G.conjugacy_classes();
    std::vector<long long> counts(classes.size(), 0);
    long long nprimes = 0;
    for (long long p = 2; p <= A.X; ++p)
        if (A.spf[p] == p) {
            ++counts[A.cls[p]];
            ++nprimes;
        }
    for (std::size_t c = 0; c < classes.size(); ++c) {
        double prob = static_cast<double>(classes[c].size()) / F.G.order();
        double mean = prob * nprimes;
        double sigma = std::sqrt(nprimes * prob * (1 - prob));
        CHECK(std::abs(counts[c] - mean) <= 3 * sigma);
    }
}

TEST_CASE("assignments are deterministic in the seed") {
    GaloisFrame F = build_frame(builtin_fixture("c7c3"));
    FrobeniusAssignment a = assign(F, 20000, 7);
    FrobeniusAssignment b = assign(F, 20000, 7);
    FrobeniusAssignment c = assign(F, 20000, 8);
    CHECK(a.cls == b.cls);
    CHECK(a.cls != c.cls);
}

TEST_CASE("class coefficient values: abelian H = G case") {
    GaloisFrame F = c7_abelian_frame();
    // classes of an abelian group are singletons; a(sigma, C) = [C == {sigma}]
    for (int sigma = 0; sigma < 7; ++sigma) {
        auto vals = class_coeff_values(F, sigma);
        for (std::size_t c = 0; c < vals.size(); ++c) {
            int rep = F.G.conjugacy_classes()[c].representative;
            CHECK(vals[c] == (F.to_N[rep] == sigma ? 1 : 0));
        }
    }
}

TEST_CASE("class coefficient values: S3 coset counts") {
    GaloisFrame F = build_frame(builtin_fixture("s3-nongalois"));
    auto vals = class_coeff_values(F, 0);  // N is trivial
    const auto& classes = F.G.conjugacy_classes();
    for (std::size_t c = 0; c < classes.size(); ++c) {
        int size = classes[c].size();
        if (size == 1) CHECK(vals[c] == 3);  // identity: all three cosets fix
        if (size == 3) CHECK(vals[c] == 1);  // transpositions
        if (size == 2) CHECK(vals[c] == 0);  // 3-cycles avoid H
    }
}

TEST_CASE("summing class coefficients recovers the trivial induced value") {
    for (const char* name : {"c7c3", "cubic-v4", "s4-deg12"}) {
        GaloisFrame F = build_frame(builtin_fixture(name));
        ClassFunction triv = induce_trivial(F);
        std::size_t nc = F.G.conjugacy_classes().size();
        std::vector<long long> totals(nc, 0);
        for (long sigma = 0; sigma < F.N.order(); ++sigma) {
            auto vals = class_coeff_values(F, static_cast<int>(sigma));
            for (std::size_t c = 0; c < nc; ++c) {
                CHECK(vals[c] >= 0);
                totals[c] += vals[c];
            }
        }
        for (std::size_t c = 0; c < nc; ++c)
            CHECK(Cyclotomic(totals[c]) == triv.values[c]);
    }
}

TEST_CASE("synthetic streams are multiplicative and consistent at primes") {
    GaloisFrame F = build_frame(builtin_fixture("c7c3"));
    FrobeniusAssignment A = assign(F, 130000, 11);

    // class-coefficient stream at primes matches the per-class table
    auto vals = class_coeff_values(F, 2);
    auto coeffs = synthetic_class_coeffs(A, 2, A.X);
    long long checked = 0;
    for (long long p = 2; p <= A.X && checked < 10000; ++p)
        if (A.spf[p] == p) {
            CHECK(coeffs[p] == vals[A.cls[p]]);
            ++checked;
        }
    CHECK(checked == 10000);

    // multiplicativity over coprime squarefree pairs
    for (long long p : {2LL, 3LL, 5LL, 11LL, 101LL})
        for (long long q : {7LL, 13LL, 19LL, 997LL})
            CHECK(coeffs[p * q] == coeffs[p] * coeffs[q]);

    // character stream: primes carry the induced value, squarefree products multiply
    auto chars = dual_group(F.N);
    auto cc = synthetic_char_coeffs(A, chars[1], A.X);
    auto ind = induced_values_numeric(F, chars[1]);
    CHECK(std::abs(cc[1] - 1.0) < 1e-12);
    for (long long p : {2LL, 3LL, 5LL, 7LL, 11LL, 13LL})
        CHECK(std::abs(cc[p] - ind[A.cls[p]]) < 1e-12);
    CHECK(std::abs(cc[6] - cc[2] * cc[3]) < 1e-12);
    CHECK(std::abs(cc[12]) == 0.0);  // non-squarefree entries stay zero
}

TEST_CASE("streams refuse to run past the assignment bound") {
    GaloisFrame F = trivial_frame();
    FrobeniusAssignment A = assign(F, 100, 1);
    CHECK_THROWS_AS(synthetic_class_coeffs(A, 0, 200), DomainExceeded);
}
