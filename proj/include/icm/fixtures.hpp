#pragma once

// Built-in group fixtures and the JSON fixture schema.
//
// A fixture describes a frame (G, H, Ksub) by a degree, generator images,
// and symbolic specs for H and Ksub:
//   H:    {"type":"point_membership","points":[...]}   g in H iff g(0) in points
//         {"type":"generated","generators":[[...],...]}
//   Ksub: {"type":"stabilizer","point":p} | {"type":"trivial"}
//         | {"type":"generated","generators":[...]}
// Points are 0-indexed in files (one less than cycle notation on paper).

#include "icm/chartheory.hpp"
#include "icm/common.hpp"
#include "icm/permgroup.hpp"
#include "icm/quadform.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace icm {

struct SubgroupSpec {
    std::string type;                         // point_membership | generated | stabilizer | trivial
    std::vector<int> points;                  // point_membership
    int point = 0;                            // stabilizer
    std::vector<std::vector<int>> generators; // generated (image arrays)
};

struct FixtureSpec {
    std::string name;
    int degree = 0;
    std::vector<std::vector<int>> generators;  // image arrays
    SubgroupSpec H;
    SubgroupSpec Ksub;
};

namespace detail {

inline Subgroup resolve_subgroup(const FiniteGroup& G, const SubgroupSpec& spec) {
    if (spec.type == "trivial") return trivial_subgroup(G);
    if (spec.type == "stabilizer") return point_stabilizer(G, spec.point);
    if (spec.type == "point_membership") {
        return subgroup_from_predicate(G, [&](const Permutation& p) {
            for (int q : spec.points)
                if (p(0) == q) return true;
            return false;
        });
    }
    if (spec.type == "generated") {
        std::vector<int> idx;
        for (const auto& img : spec.generators) idx.push_back(G.index_of(Permutation{img}));
        return subgroup_generated(G, idx);
    }
    throw BadFixture("unknown subgroup spec type: " + spec.type);
}

}  // namespace detail

inline GaloisFrame build_frame(const FixtureSpec& spec) {
    std::vector<Permutation> gens;
    for (const auto& img : spec.generators) {
        if (static_cast<int>(img.size()) != spec.degree)
            throw BadFixture("generator degree mismatch in fixture " + spec.name);
        gens.push_back(Permutation{img});
    }
    FiniteGroup G = FiniteGroup::closure(gens);
    Subgroup H = detail::resolve_subgroup(G, spec.H);
    Subgroup K = detail::resolve_subgroup(G, spec.Ksub);
    return GaloisFrame::build(std::move(G), std::move(H), std::move(K));
}

// ---------------------------------------------------------------------------
// JSON schema
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const SubgroupSpec& s) {
    nlohmann::json j;
    j["type"] = s.type;
    if (s.type == "point_membership") j["points"] = s.points;
    if (s.type == "stabilizer") j["point"] = s.point;
    if (s.type == "generated") j["generators"] = s.generators;
    return j;
}

inline SubgroupSpec subgroup_spec_from_json(const nlohmann::json& j) {
    SubgroupSpec s;
    s.type = j.at("type").get<std::string>();
    if (s.type == "point_membership") s.points = j.at("points").get<std::vector<int>>();
    else if (s.type == "stabilizer") s.point = j.at("point").get<int>();
    else if (s.type == "generated") s.generators = j.at("generators").get<std::vector<std::vector<int>>>();
    else if (s.type != "trivial") throw BadFixture("unknown subgroup spec type: " + s.type);
    return s;
}

inline nlohmann::json to_json(const FixtureSpec& f) {
    nlohmann::json j;
    j["name"] = f.name;
    j["degree"] = f.degree;
    j["generators"] = f.generators;
    j["H"] = to_json(f.H);
    j["Ksub"] = to_json(f.Ksub);
    return j;
}

inline FixtureSpec fixture_from_json(const nlohmann::json& j) {
    FixtureSpec f;
    f.name = j.value("name", "");
    f.degree = j.at("degree").get<int>();
    f.generators = j.at("generators").get<std::vector<std::vector<int>>>();
    f.H = subgroup_spec_from_json(j.at("H"));
    f.Ksub = subgroup_spec_from_json(j.at("Ksub"));
    return f;
}

// ---------------------------------------------------------------------------
// Built-ins
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<int> cycles_to_images(int degree, const std::vector<std::vector<int>>& cycles) {
    return Permutation::from_cycles(degree, cycles).images;
}

}  // namespace detail

inline std::vector<std::string> builtin_fixture_names() {
    return {"s3-nongalois", "s4-deg12", "c7c3", "cubic-c3", "cubic-v4"};
}

inline FixtureSpec builtin_fixture(const std::string& name) {
    using detail::cycles_to_images;
    FixtureSpec f;
    f.name = name;
    if (name == "s3-nongalois") {
        // S3 with H a point stabilizer of order 2; class number 1, so the
        // abelian subquotient is trivial (Ksub = H)
        f.degree = 3;
        f.generators = {cycles_to_images(3, {{0, 1}}), cycles_to_images(3, {{0, 1, 2}})};
        f.H = {"point_membership", {0}, 0, {}};
        f.Ksub = {"generated", {}, 0, {cycles_to_images(3, {{1, 2}})}};
        return f;
    }
    if (name == "s4-deg12") {
        // Galois group of order 648 on the 12 roots of
        // x^12-x^11+x^10-x^9-x^7+x^6-4x^5-3x^4+3x^3+7x^2+4x+1; H consists of
        // the elements sending root 0 into the block {0,5,8}; N = H/Stab(0)
        // has order 3 (the class group)
        f.degree = 12;
        f.generators = {
            cycles_to_images(12, {{1, 11}, {3, 6}, {7, 9}}),
            cycles_to_images(12, {{1, 2, 3}, {4, 9, 6}, {7, 10, 11}}),
            cycles_to_images(12, {{2, 4, 10}, {3, 11, 9}}),
            cycles_to_images(12, {{1, 6, 7}, {3, 11, 9}}),
            cycles_to_images(12, {{0, 4}, {1, 3}, {2, 8}, {5, 10}, {6, 9}, {7, 11}}),
            cycles_to_images(12, {{0, 6}, {1, 8}, {2, 3}, {4, 9}, {5, 7}, {10, 11}}),
            cycles_to_images(12, {{0, 5, 8}, {1, 7, 6}, {2, 10, 4}, {3, 9, 11}}),
        };
        f.H = {"point_membership", {0, 5, 8}, 0, {}};
        f.Ksub = {"stabilizer", {}, 0, {}};
        return f;
    }
    if (name == "c7c3") {
        // order 21 = C7 : C3; H = C7, N = C7, Q = C3
        f.degree = 7;
        f.generators = {cycles_to_images(7, {{0, 1, 2, 3, 4, 5, 6}}),
                        cycles_to_images(7, {{1, 2, 4}, {3, 6, 5}})};
        f.H = {"generated", {}, 0, {cycles_to_images(7, {{0, 1, 2, 3, 4, 5, 6}})}};
        f.Ksub = {"trivial", {}, 0, {}};
        return f;
    }
    if (name == "cubic-c3") {
        // cyclic cubic field with class group Z/3 and trivial Galois action
        // on it: G = C3 x C3, H = first factor
        f.degree = 6;
        f.generators = {cycles_to_images(6, {{0, 1, 2}}), cycles_to_images(6, {{3, 4, 5}})};
        f.H = {"generated", {}, 0, {cycles_to_images(6, {{0, 1, 2}})}};
        f.Ksub = {"trivial", {}, 0, {}};
        return f;
    }
    if (name == "cubic-v4") {
        // cyclic cubic field with class group (Z/2)^2 and the Galois action
        // permuting the three non-principal classes: G = A4, H = V4
        f.degree = 4;
        f.generators = {cycles_to_images(4, {{0, 1, 2}}), cycles_to_images(4, {{0, 1}, {2, 3}})};
        f.H = {"generated", {}, 0,
               {cycles_to_images(4, {{0, 1}, {2, 3}}), cycles_to_images(4, {{0, 2}, {1, 3}})}};
        f.Ksub = {"trivial", {}, 0, {}};
        return f;
    }
    throw BadFixture("unknown fixture: " + name);
}

// Frame of an imaginary quadratic field: the generalized dihedral group
// N : C2 (inversion action) in its left-regular representation on 2h points,
// with H the translation subgroup, Ksub trivial, so the frame's N is the
// form class group.
inline GaloisFrame quad_frame(const FormClassGroup& cls) {
    int h = cls.h();
    int n = 2 * h;
    // element (eps, t) at index eps*h + t acts by x -> t + (-1)^eps x
    auto mul = [&](int e1, int e2) {
        int eps1 = e1 / h, t1 = e1 % h, eps2 = e2 / h, t2 = e2 % h;
        int t2adj = eps1 ? cls.structure.from_exps.at([&] {
            // inverse of t2 in the class group
            std::vector<long> inv_e = cls.structure.exps[t2];
            for (std::size_t i = 0; i < inv_e.size(); ++i)
                inv_e[i] = (cls.structure.invariant_factors[i] - inv_e[i]) %
                           cls.structure.invariant_factors[i];
            return inv_e;
        }()) : t2;
        return ((eps1 + eps2) % 2) * h + cls.mul(t1, t2adj);
    };
    int id = cls.identity;
    // left-regular permutations of a generating set
    std::vector<Permutation> gens;
    auto perm_of = [&](int e) {
        Permutation p;
        p.images.resize(n);
        for (int x = 0; x < n; ++x) p.images[x] = mul(e, x);
        return p;
    };
    for (int g : cls.structure.factor_gens) gens.push_back(perm_of(g));
    gens.push_back(perm_of(h + id));  // the flip
    if (gens.empty()) gens.push_back(Permutation::identity(n));
    FiniteGroup G = FiniteGroup::closure(gens);
    // translations are the elements keeping the identity point on sheet 0
    Subgroup H = subgroup_from_predicate(G, [&](const Permutation& p) { return p(id) < h; });
    Subgroup K = trivial_subgroup(G);
    return GaloisFrame::build(std::move(G), std::move(H), std::move(K));
}

}  // namespace icm
