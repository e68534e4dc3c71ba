#pragma once

// Exact finite permutation-group engine.
//
// Groups are realized as complete element lists over Omega = {0,...,n-1},
// generated by breadth-first closure from generators (lexicographic
// tie-break), so identical input always yields identical element and class
// orderings.  Element identity is the index into that list.  Everything is
// immutable after construction.

#include "icm/common.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

namespace icm {

struct Permutation {
    std::vector<int> images;

    static Permutation identity(int degree) {
        Permutation p;
        p.images.resize(degree);
        for (int i = 0; i < degree; ++i) p.images[i] = i;
        return p;
    }

    // Builds a permutation from disjoint cycles over 0-indexed points.
    static Permutation from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
        Permutation p = identity(degree);
        for (const auto& cyc : cycles)
            for (std::size_t i = 0; i < cyc.size(); ++i)
                p.images[cyc[i]] = cyc[(i + 1) % cyc.size()];
        return p;
    }

    int degree() const { return static_cast<int>(images.size()); }
    int operator()(int pt) const { return images[pt]; }

    bool is_valid() const {
        std::vector<char> seen(images.size(), 0);
        for (int v : images) {
            if (v < 0 || v >= degree() || seen[v]) return false;
            seen[v] = 1;
        }
        return true;
    }

    // (a*b)(x) = a(b(x))
    friend Permutation operator*(const Permutation& a, const Permutation& b) {
        Permutation p;
        p.images.resize(a.images.size());
        for (int i = 0; i < a.degree(); ++i) p.images[i] = a.images[b.images[i]];
        return p;
    }

    Permutation inverse() const {
        Permutation p;
        p.images.resize(images.size());
        for (int i = 0; i < degree(); ++i) p.images[images[i]] = i;
        return p;
    }

    auto operator<=>(const Permutation&) const = default;
};

struct ConjugacyClass {
    int representative = 0;       // minimal element index
    std::vector<int> members;     // sorted element indices
    int size() const { return static_cast<int>(members.size()); }
};

class FiniteGroup {
public:
    static FiniteGroup closure(std::vector<Permutation> generators,
                               std::size_t order_guard = 100000) {
        if (generators.empty()) throw Error("closure: need at least one generator");
        int deg = generators.front().degree();
        for (const auto& g : generators) {
            if (g.degree() != deg) throw DegreeMismatch("closure: generators have mixed degrees");
            if (!g.is_valid()) throw Error("closure: generator is not a bijection");
        }
        std::sort(generators.begin(), generators.end());
        generators.erase(std::unique(generators.begin(), generators.end()), generators.end());

        FiniteGroup G;
        G.degree_ = deg;
        auto add = [&](const Permutation& p) -> bool {
            auto [it, fresh] = G.index_.try_emplace(p, static_cast<int>(G.elems_.size()));
            if (fresh) {
                G.elems_.push_back(p);
                if (G.elems_.size() > order_guard)
                    throw OrderBound("closure: group order exceeds guard");
            }
            return fresh;
        };
        add(Permutation::identity(deg));
        for (const auto& g : generators) add(g);
        // breadth-first: frontier grows in discovery order
        for (std::size_t head = 0; head < G.elems_.size(); ++head) {
            Permutation cur = G.elems_[head];
            for (const auto& g : generators) add(cur * g);
        }
        for (const auto& g : generators) G.gens_.push_back(G.index_.at(g));
        G.id_ = G.index_.at(Permutation::identity(deg));
        G.build_tables();
        return G;
    }

    int degree() const { return degree_; }
    int order() const { return static_cast<int>(elems_.size()); }
    int identity() const { return id_; }
    const std::vector<Permutation>& elements() const { return elems_; }
    const std::vector<int>& generator_indices() const { return gens_; }
    const Permutation& perm(int i) const { return elems_[i]; }

    int mul(int a, int b) const { return mult_[a * order() + b]; }
    int inv(int a) const { return inv_[a]; }
    int index_of(const Permutation& p) const {
        auto it = index_.find(p);
        if (it == index_.end()) throw Error("element not in group");
        return it->second;
    }
    bool contains(const Permutation& p) const { return index_.count(p) != 0; }

    // Conjugacy classes by direct orbit expansion, ordered by minimal element
    // index; members sorted.
    const std::vector<ConjugacyClass>& conjugacy_classes() const {
        if (classes_.empty()) {
            std::vector<int> cls_of(order(), -1);
            for (int i = 0; i < order(); ++i) {
                if (cls_of[i] >= 0) continue;
                ConjugacyClass c;
                c.representative = i;
                std::vector<int> queue{i};
                cls_of[i] = static_cast<int>(classes_.size());
                while (!queue.empty()) {
                    int x = queue.back();
                    queue.pop_back();
                    c.members.push_back(x);
                    for (int g = 0; g < order(); ++g) {
                        int y = mul(inv(g), mul(x, g));
                        if (cls_of[y] < 0) {
                            cls_of[y] = cls_of[i];
                            queue.push_back(y);
                        }
                    }
                }
                std::sort(c.members.begin(), c.members.end());
                classes_.push_back(std::move(c));
            }
        }
        return classes_;
    }

    int class_of(int elem) const {
        const auto& cls = conjugacy_classes();
        for (std::size_t i = 0; i < cls.size(); ++i)
            if (std::binary_search(cls[i].members.begin(), cls[i].members.end(), elem))
                return static_cast<int>(i);
        throw Error("class_of: element index out of range");
    }

private:
    void build_tables() {
        int n = order();
        mult_.assign(static_cast<std::size_t>(n) * n, 0);
        inv_.assign(n, 0);
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b)
                mult_[static_cast<std::size_t>(a) * n + b] = index_.at(elems_[a] * elems_[b]);
            inv_[a] = index_.at(elems_[a].inverse());
        }
    }

    int degree_ = 0;
    int id_ = 0;
    std::vector<Permutation> elems_;
    std::map<Permutation, int> index_;
    std::vector<int> gens_;
    std::vector<int> mult_;
    std::vector<int> inv_;
    mutable std::vector<ConjugacyClass> classes_;
};

struct Subgroup {
    const FiniteGroup* parent = nullptr;
    std::vector<int> members;      // sorted element indices
    std::vector<char> mask;        // parent->order() sized membership mask

    int order() const { return static_cast<int>(members.size()); }
    int index() const { return parent->order() / order(); }
    bool contains(int e) const { return mask[e] != 0; }

    bool is_normal_in_parent() const {
        for (int g = 0; g < parent->order(); ++g)
            for (int h : members)
                if (!contains(parent->mul(parent->inv(g), parent->mul(h, g)))) return false;
        return true;
    }
};

namespace detail {

inline Subgroup make_subgroup(const FiniteGroup& G, std::vector<int> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    Subgroup S;
    S.parent = &G;
    S.mask.assign(G.order(), 0);
    for (int m : members) S.mask[m] = 1;
    S.members = std::move(members);
    // subgroup test
    if (!S.contains(G.identity())) throw NotClosed("subgroup: identity missing");
    for (int a : S.members)
        for (int b : S.members)
            if (!S.contains(G.mul(a, b))) throw NotClosed("subgroup: set not closed");
    for (int a : S.members)
        if (!S.contains(G.inv(a))) throw NotClosed("subgroup: set not inverse-closed");
    if (G.order() % S.order() != 0) throw NotClosed("subgroup: order does not divide");
    return S;
}

}  // namespace detail

inline Subgroup subgroup_from_predicate(const FiniteGroup& G,
                                        const std::function<bool(const Permutation&)>& pred) {
    std::vector<int> members;
    for (int i = 0; i < G.order(); ++i)
        if (pred(G.perm(i))) members.push_back(i);
    return detail::make_subgroup(G, std::move(members));
}

inline Subgroup subgroup_generated(const FiniteGroup& G, const std::vector<int>& gen_indices) {
    std::vector<int> members{G.identity()};
    std::vector<char> seen(G.order(), 0);
    seen[G.identity()] = 1;
    for (std::size_t head = 0; head < members.size(); ++head)
        for (int g : gen_indices) {
            int y = G.mul(members[head], g);
            if (!seen[y]) {
                seen[y] = 1;
                members.push_back(y);
            }
        }
    return detail::make_subgroup(G, std::move(members));
}

inline Subgroup point_stabilizer(const FiniteGroup& G, int point) {
    return subgroup_from_predicate(G, [point](const Permutation& p) { return p(point) == point; });
}

inline Subgroup trivial_subgroup(const FiniteGroup& G) {
    return detail::make_subgroup(G, {G.identity()});
}

inline Subgroup whole_group(const FiniteGroup& G) {
    std::vector<int> all(G.order());
    for (int i = 0; i < G.order(); ++i) all[i] = i;
    return detail::make_subgroup(G, std::move(all));
}

inline bool is_normal(const Subgroup& K, const Subgroup& H) {
    // K normal in H; both subgroups of the same parent, K <= H assumed checked by caller
    const FiniteGroup& G = *H.parent;
    for (int h : H.members)
        for (int k : K.members)
            if (!K.contains(G.mul(G.inv(h), G.mul(k, h)))) return false;
    return true;
}

}  // namespace icm
