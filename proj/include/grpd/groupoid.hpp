#pragma once

#include "grpd/simplicial.hpp"

#include <functional>
#include <numeric>
#include <optional>

namespace grpd {

/// Finite groupoid. Arrows compose in diagrammatic order: (g, h) is composable
/// iff target(g) == source(h), and compose(g, h) runs from source(g) to target(h).
struct FiniteGroupoid {
    static constexpr size_t none = SIZE_MAX;

    size_t objects = 0;
    std::vector<size_t> source;
    std::vector<size_t> target;
    std::vector<std::vector<size_t>> composition;  // [g][h], none when not composable
    std::vector<size_t> identity;                  // object -> arrow
    std::vector<size_t> inverse;                   // arrow -> arrow
    std::vector<std::string> object_names;
    std::vector<std::string> arrow_names;
    bool proper = true;  // vacuous for finite models

    size_t arrows() const { return source.size(); }
    size_t compose(size_t g, size_t h) const { return composition[g][h]; }
    bool composable(size_t g, size_t h) const { return target[g] == source[h]; }

    std::string arrow_name(size_t g) const {
        return g < arrow_names.size() ? arrow_names[g] : "a" + std::to_string(g);
    }
};

inline ValidationReport validate_groupoid(const FiniteGroupoid& g) {
    ValidationReport rep;
    const size_t n = g.arrows();
    auto nm = [&](size_t a) { return g.arrow_name(a); };
    if (g.target.size() != n || g.inverse.size() != n || g.composition.size() != n) {
        rep.add("table sizes disagree with the arrow count");
        return rep;
    }
    if (g.identity.size() != g.objects) {
        rep.add("identity table size differs from object count");
        return rep;
    }
    for (size_t a = 0; a < n; ++a) {
        if (g.source[a] >= g.objects || g.target[a] >= g.objects) rep.add("arrow " + nm(a) + " has an invalid endpoint");
        if (g.composition[a].size() != n) rep.add("composition row of " + nm(a) + " has wrong length");
        if (g.inverse[a] >= n) rep.add("inverse of " + nm(a) + " out of range");
    }
    for (size_t x = 0; x < g.objects; ++x)
        if (g.identity[x] >= n) rep.add("identity of object " + std::to_string(x) + " out of range");
    if (!rep.ok()) return rep;
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            size_t c = g.composition[a][b];
            if (g.composable(a, b)) {
                if (c >= n) {
                    rep.add("composition undefined on composable pair (" + nm(a) + ", " + nm(b) + ")");
                } else if (g.source[c] != g.source[a] || g.target[c] != g.target[b]) {
                    rep.add("composite of (" + nm(a) + ", " + nm(b) + ") has wrong endpoints");
                }
            } else if (c != FiniteGroupoid::none) {
                rep.add("composition defined on non-composable pair (" + nm(a) + ", " + nm(b) + ")");
            }
        }
    if (!rep.ok()) return rep;
    for (size_t x = 0; x < g.objects; ++x) {
        size_t e = g.identity[x];
        if (g.source[e] != x || g.target[e] != x) rep.add("identity of object " + std::to_string(x) + " is not a loop at it");
    }
    if (!rep.ok()) return rep;
    for (size_t a = 0; a < n; ++a) {
        if (g.compose(g.identity[g.source[a]], a) != a || g.compose(a, g.identity[g.target[a]]) != a)
            rep.add("identity law fails for " + nm(a));
        size_t i = g.inverse[a];
        if (g.source[i] != g.target[a] || g.target[i] != g.source[a]) {
            rep.add("inverse of " + nm(a) + " has wrong endpoints");
            continue;
        }
        if (g.compose(a, i) != g.identity[g.source[a]])
            rep.add("inverse law g.g^-1 = id fails for " + nm(a));
        if (g.compose(i, a) != g.identity[g.target[a]])
            rep.add("inverse law g^-1.g = id fails for " + nm(a));
    }
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            if (!g.composable(a, b)) continue;
            for (size_t c = 0; c < n; ++c) {
                if (!g.composable(b, c)) continue;
                if (g.compose(g.compose(a, b), c) != g.compose(a, g.compose(b, c)))
                    rep.add("associativity fails on (" + nm(a) + ", " + nm(b) + ", " + nm(c) + ")");
            }
        }
    return rep;
}

/// One-object groupoid from a group multiplication table; element 0 is the unit.
inline FiniteGroupoid group_groupoid(const std::vector<std::vector<size_t>>& mult) {
    FiniteGroupoid g;
    const size_t n = mult.size();
    g.objects = 1;
    g.source.assign(n, 0);
    g.target.assign(n, 0);
    g.composition = mult;
    g.identity = {0};
    g.inverse.assign(n, FiniteGroupoid::none);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            if (mult[a][b] == 0) g.inverse[a] = b;
    g.object_names = {"*"};
    return g;
}

inline FiniteGroupoid cyclic_group(size_t m) {
    std::vector<std::vector<size_t>> mult(m, std::vector<size_t>(m));
    for (size_t a = 0; a < m; ++a)
        for (size_t b = 0; b < m; ++b) mult[a][b] = (a + b) % m;
    auto g = group_groupoid(mult);
    for (size_t a = 0; a < m; ++a) g.arrow_names.push_back(std::to_string(a));
    return g;
}

/// Symmetric group on k letters; element 0 is the identity permutation.
inline FiniteGroupoid symmetric_group(size_t k) {
    std::vector<std::vector<size_t>> perms;
    std::vector<size_t> p(k);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<size_t>, size_t> index;
    for (size_t i = 0; i < perms.size(); ++i) index[perms[i]] = i;
    const size_t n = perms.size();
    std::vector<std::vector<size_t>> mult(n, std::vector<size_t>(n));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            // a then b
            std::vector<size_t> c(k);
            for (size_t i = 0; i < k; ++i) c[i] = perms[b][perms[a][i]];
            mult[a][b] = index.at(c);
        }
    auto g = group_groupoid(mult);
    for (const auto& q : perms) {
        std::string s;
        for (size_t v : q) s += std::to_string(v);
        g.arrow_names.push_back(s);
    }
    return g;
}

/// Arrows are all ordered pairs (i, j), i -> j.
inline FiniteGroupoid pair_groupoid(size_t n) {
    FiniteGroupoid g;
    g.objects = n;
    auto id = [n](size_t i, size_t j) { return i * n + j; };
    const size_t arrows = n * n;
    g.source.resize(arrows);
    g.target.resize(arrows);
    g.inverse.resize(arrows);
    g.composition.assign(arrows, std::vector<size_t>(arrows, FiniteGroupoid::none));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            size_t a = id(i, j);
            g.source[a] = i;
            g.target[a] = j;
            g.inverse[a] = id(j, i);
            g.arrow_names.push_back(std::to_string(i) + ">" + std::to_string(j));
            for (size_t k = 0; k < n; ++k) g.composition[a][id(j, k)] = id(i, k);
        }
    for (size_t i = 0; i < n; ++i) g.identity.push_back(id(i, i));
    return g;
}

/// Only identity arrows.
inline FiniteGroupoid unit_groupoid(size_t n) {
    FiniteGroupoid g;
    g.objects = n;
    g.source.resize(n);
    g.target.resize(n);
    g.inverse.resize(n);
    g.identity.resize(n);
    g.composition.assign(n, std::vector<size_t>(n, FiniteGroupoid::none));
    for (size_t i = 0; i < n; ++i) {
        g.source[i] = g.target[i] = g.inverse[i] = g.identity[i] = i;
        g.composition[i][i] = i;
    }
    return g;
}

/// Inertia groupoid: objects are loops, arrows (loop c, arrow h) with s(h) = s(c),
/// from c to h^-1 c h. Returned as the transformation groupoid of conjugation.
inline FiniteGroupoid inertia(const FiniteGroupoid& g) {
    auto rep = validate_groupoid(g);
    if (!rep.ok()) throw Error(ErrorKind::Validation, "inertia: invalid groupoid: " + rep.violations.front());
    std::vector<size_t> loops;
    std::vector<size_t> loop_index(g.arrows(), FiniteGroupoid::none);
    for (size_t a = 0; a < g.arrows(); ++a)
        if (g.source[a] == g.target[a]) {
            loop_index[a] = loops.size();
            loops.push_back(a);
        }
    FiniteGroupoid out;
    out.objects = loops.size();
    for (size_t c : loops) out.object_names.push_back(g.arrow_name(c));
    std::vector<std::pair<size_t, size_t>> arrows;  // (loop, h)
    std::map<std::pair<size_t, size_t>, size_t> index;
    for (size_t li = 0; li < loops.size(); ++li)
        for (size_t h = 0; h < g.arrows(); ++h)
            if (g.source[h] == g.source[loops[li]]) {
                index[{li, h}] = arrows.size();
                arrows.push_back({li, h});
            }
    auto conj = [&](size_t c, size_t h) { return g.compose(g.compose(g.inverse[h], c), h); };
    const size_t n = arrows.size();
    out.source.resize(n);
    out.target.resize(n);
    out.inverse.resize(n);
    out.composition.assign(n, std::vector<size_t>(n, FiniteGroupoid::none));
    for (size_t a = 0; a < n; ++a) {
        auto [li, h] = arrows[a];
        out.source[a] = li;
        out.target[a] = loop_index[conj(loops[li], h)];
        out.arrow_names.push_back("(" + g.arrow_name(loops[li]) + "," + g.arrow_name(h) + ")");
    }
    for (size_t a = 0; a < n; ++a) {
        auto [li, h] = arrows[a];
        out.inverse[a] = index.at({out.target[a], g.inverse[h]});
        for (size_t b = 0; b < n; ++b) {
            if (out.target[a] != out.source[b]) continue;
            out.composition[a][b] = index.at({li, g.compose(h, arrows[b].second)});
        }
    }
    for (size_t li = 0; li < loops.size(); ++li) out.identity.push_back(index.at({li, g.identity[g.source[loops[li]]]}));
    return out;
}

/// Connected components with their automorphism group orders.
struct ComponentSummary {
    std::vector<size_t> objects;
    size_t automorphisms = 0;
};

inline std::vector<ComponentSummary> components(const FiniteGroupoid& g) {
    std::vector<size_t> comp(g.objects, FiniteGroupoid::none);
    std::vector<ComponentSummary> out;
    for (size_t x = 0; x < g.objects; ++x) {
        if (comp[x] != FiniteGroupoid::none) continue;
        ComponentSummary c;
        for (size_t a = 0; a < g.arrows(); ++a)
            if (g.source[a] == x) {
                size_t y = g.target[a];
                if (comp[y] == FiniteGroupoid::none) {
                    comp[y] = out.size();
                    c.objects.push_back(y);
                }
                if (y == x) ++c.automorphisms;
            }
        std::sort(c.objects.begin(), c.objects.end());
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace grpd
