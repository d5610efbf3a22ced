#pragma once

#include "grpd/groupoid.hpp"

namespace grpd {

/// Levelwise map between simplicial sets: map[s][x].
using LevelMap = std::vector<std::vector<size_t>>;

/// Truncated simplicial diagram X_0..X_R of simplicial sets (a bisimplicial set
/// cut off at nerve level R). faces[r][i] : X_r -> X_{r-1}, degens[r][i] : X_r -> X_{r+1}.
class NerveDiagram {
public:
    NerveDiagram() = default;
    NerveDiagram(std::vector<SimplicialSet> levels, std::vector<std::vector<LevelMap>> faces,
                 std::vector<std::vector<LevelMap>> degens)
        : levels_(std::move(levels)), faces_(std::move(faces)), degens_(std::move(degens)) {
        finalize();
    }

    size_t cutoff() const { return levels_.empty() ? 0 : levels_.size() - 1; }
    bool empty() const { return levels_.empty(); }
    const SimplicialSet& level(size_t r) const { return levels_[r]; }
    /// Largest internal simplicial level stored.
    size_t internal_top() const {
        size_t t = 0;
        for (const auto& l : levels_) t = std::max(t, l.top());
        return t;
    }

    size_t face(size_t r, size_t i, size_t s, size_t x) const { return faces_[r][i][s][x]; }
    size_t degeneracy(size_t r, size_t i, size_t s, size_t x) const { return degens_[r][i][s][x]; }

    /// In the image of some nerve-direction degeneracy.
    bool r_degenerate(size_t r, size_t s, size_t x) const { return r_degenerate_[r][s][x]; }

    /// Simplices nondegenerate in both directions, the basis of normalized cochains A^{r,s}.
    const std::vector<size_t>& basis(size_t r, size_t s) const {
        static const std::vector<size_t> empty;
        if (r >= basis_.size() || s >= basis_[r].size()) return empty;
        return basis_[r][s];
    }
    /// Position of (r, s, x) in basis(r, s), or SIZE_MAX when degenerate.
    size_t basis_position(size_t r, size_t s, size_t x) const {
        if (r >= position_.size() || s >= position_[r].size()) return SIZE_MAX;
        return position_[r][s][x];
    }

    /// Simplex counts per nerve level at internal level 0.
    std::vector<size_t> level_sizes(size_t s = 0) const {
        std::vector<size_t> out;
        for (const auto& l : levels_) out.push_back(l.size(s));
        return out;
    }

    ValidationReport check() const {
        ValidationReport rep;
        const size_t R = cutoff();
        for (size_t r = 0; r <= R; ++r) rep.merge(levels_[r].check_identities(), "X_" + std::to_string(r) + ": ");
        if (!rep.ok()) return rep;
        auto bad = [&](const std::string& w, size_t r, size_t s, size_t x) {
            rep.add(w + " fails at X_" + std::to_string(r) + " level " + std::to_string(s) + " simplex " + std::to_string(x));
        };
        for (size_t r = 0; r <= R; ++r) {
            const auto& X = levels_[r];
            for (size_t s = 0; s <= X.top(); ++s)
                for (size_t x = 0; x < X.size(s); ++x) {
                    // nerve-direction identities
                    for (size_t j = 1; r >= 2 && j <= r; ++j)
                        for (size_t i = 0; i < j; ++i)
                            if (face(r - 1, i, s, face(r, j, s, x)) != face(r - 1, j - 1, s, face(r, i, s, x)))
                                bad("eps" + std::to_string(i) + " eps" + std::to_string(j), r, s, x);
                    for (size_t j = 0; r < R && j <= r; ++j) {
                        size_t y = degeneracy(r, j, s, x);
                        for (size_t i = 0; i <= r + 1; ++i) {
                            size_t lhs = face(r + 1, i, s, y), rhs;
                            if (i == j || i == j + 1)
                                rhs = x;
                            else if (i < j)
                                rhs = degeneracy(r - 1, j - 1, s, face(r, i, s, x));
                            else
                                rhs = degeneracy(r - 1, j, s, face(r, i - 1, s, x));
                            if (lhs != rhs) bad("eps" + std::to_string(i) + " eta" + std::to_string(j), r, s, x);
                        }
                        for (size_t i = 0; r + 1 < R && i <= j; ++i)
                            if (degeneracy(r + 1, i, s, y) != degeneracy(r + 1, j + 1, s, degeneracy(r, i, s, x)))
                                bad("eta" + std::to_string(i) + " eta" + std::to_string(j), r, s, x);
                    }
                    // compatibility with the internal structure
                    for (size_t i = 0; r > 0 && i <= r; ++i) {
                        for (size_t k = 0; s > 0 && k <= s; ++k)
                            if (levels_[r - 1].face(s, k, face(r, i, s, x)) != face(r, i, s - 1, X.face(s, k, x)))
                                bad("eps" + std::to_string(i) + " vs d" + std::to_string(k), r, s, x);
                        for (size_t k = 0; s < X.top() && k <= s; ++k)
                            if (levels_[r - 1].degeneracy(s, k, face(r, i, s, x)) !=
                                face(r, i, s + 1, X.degeneracy(s, k, x)))
                                bad("eps" + std::to_string(i) + " vs s" + std::to_string(k), r, s, x);
                    }
                    for (size_t i = 0; r < R && i <= r; ++i)
                        for (size_t k = 0; s > 0 && k <= s; ++k)
                            if (levels_[r + 1].face(s, k, degeneracy(r, i, s, x)) != degeneracy(r, i, s - 1, X.face(s, k, x)))
                                bad("eta" + std::to_string(i) + " vs d" + std::to_string(k), r, s, x);
                }
        }
        return rep;
    }

    /// Restriction to nerve levels 0..R'.
    NerveDiagram truncated(size_t new_cutoff) const {
        if (new_cutoff > cutoff()) throw Error(ErrorKind::Cutoff, "truncated: cutoff exceeds stored levels");
        std::vector<SimplicialSet> lv(levels_.begin(), levels_.begin() + new_cutoff + 1);
        std::vector<std::vector<LevelMap>> f(faces_.begin(), faces_.begin() + new_cutoff + 1);
        std::vector<std::vector<LevelMap>> d(degens_.begin(), degens_.begin() + new_cutoff + 1);
        d[new_cutoff].clear();
        return NerveDiagram(std::move(lv), std::move(f), std::move(d));
    }

    bool operator==(const NerveDiagram& o) const {
        if (levels_.size() != o.levels_.size()) return false;
        for (size_t r = 0; r < levels_.size(); ++r)
            if (levels_[r].sizes() != o.levels_[r].sizes()) return false;
        return faces_ == o.faces_ && degens_ == o.degens_;
    }

private:
    void finalize() {
        const size_t n = levels_.size();
        r_degenerate_.assign(n, {});
        basis_.assign(n, {});
        position_.assign(n, {});
        for (size_t r = 0; r < n; ++r) {
            const auto& X = levels_[r];
            r_degenerate_[r].resize(X.top() + 1);
            for (size_t s = 0; s <= X.top(); ++s) r_degenerate_[r][s].assign(X.size(s), false);
        }
        for (size_t r = 0; r + 1 < n; ++r)
            for (const auto& map : degens_[r])
                for (size_t s = 0; s < map.size(); ++s)
                    for (size_t y : map[s]) r_degenerate_[r + 1][s][y] = true;
        for (size_t r = 0; r < n; ++r) {
            const auto& X = levels_[r];
            basis_[r].resize(X.top() + 1);
            position_[r].resize(X.top() + 1);
            for (size_t s = 0; s <= X.top(); ++s) {
                position_[r][s].assign(X.size(s), SIZE_MAX);
                for (size_t x : X.nondegenerate(s))
                    if (!r_degenerate_[r][s][x]) {
                        position_[r][s][x] = basis_[r][s].size();
                        basis_[r][s].push_back(x);
                    }
            }
        }
    }

    std::vector<SimplicialSet> levels_;
    std::vector<std::vector<LevelMap>> faces_;
    std::vector<std::vector<LevelMap>> degens_;
    std::vector<std::vector<std::vector<bool>>> r_degenerate_;
    std::vector<std::vector<std::vector<size_t>>> basis_;
    std::vector<std::vector<std::vector<size_t>>> position_;
};

/// Levelwise simplicial map between nerve diagrams: maps[r][s][x].
struct NerveMorphism {
    std::vector<LevelMap> maps;

    size_t operator()(size_t r, size_t s, size_t x) const { return maps[r][s][x]; }

    static NerveMorphism identity(const NerveDiagram& n) {
        NerveMorphism m;
        for (size_t r = 0; r <= n.cutoff(); ++r) {
            LevelMap lm;
            for (size_t s = 0; s <= n.level(r).top(); ++s) {
                std::vector<size_t> v(n.level(r).size(s));
                std::iota(v.begin(), v.end(), 0);
                lm.push_back(std::move(v));
            }
            m.maps.push_back(std::move(lm));
        }
        return m;
    }

    /// this after other
    NerveMorphism after(const NerveMorphism& other) const {
        NerveMorphism m = other;
        for (size_t r = 0; r < m.maps.size(); ++r)
            for (size_t s = 0; s < m.maps[r].size(); ++s)
                for (auto& x : m.maps[r][s]) x = maps[r][s][x];
        return m;
    }
};

inline ValidationReport check_morphism(const NerveMorphism& f, const NerveDiagram& src, const NerveDiagram& dst) {
    ValidationReport rep;
    if (f.maps.size() != src.cutoff() + 1 || dst.cutoff() < src.cutoff()) {
        rep.add("morphism level count does not match the diagrams");
        return rep;
    }
    for (size_t r = 0; r <= src.cutoff(); ++r) {
        const auto& X = src.level(r);
        const auto& Y = dst.level(r);
        if (f.maps[r].size() != X.top() + 1 || Y.top() < X.top()) {
            rep.add("morphism internal levels mismatch at X_" + std::to_string(r));
            return rep;
        }
        for (size_t s = 0; s <= X.top(); ++s)
            for (size_t x = 0; x < X.size(s); ++x) {
                size_t y = f(r, s, x);
                auto where = " at X_" + std::to_string(r) + " level " + std::to_string(s) + " simplex " + std::to_string(x);
                if (y >= Y.size(s)) {
                    rep.add("image out of range" + where);
                    continue;
                }
                for (size_t k = 0; s > 0 && k <= s; ++k)
                    if (Y.face(s, k, y) != f(r, s - 1, X.face(s, k, x))) rep.add("does not commute with d" + std::to_string(k) + where);
                for (size_t k = 0; s < X.top() && k <= s; ++k)
                    if (Y.degeneracy(s, k, y) != f(r, s + 1, X.degeneracy(s, k, x)))
                        rep.add("does not commute with s" + std::to_string(k) + where);
                for (size_t i = 0; r > 0 && i <= r; ++i)
                    if (dst.face(r, i, s, y) != f(r - 1, s, src.face(r, i, s, x)))
                        rep.add("does not commute with eps" + std::to_string(i) + where);
                for (size_t i = 0; r < src.cutoff() && i <= r; ++i)
                    if (dst.degeneracy(r, i, s, y) != f(r + 1, s, src.degeneracy(r, i, s, x)))
                        rep.add("does not commute with eta" + std::to_string(i) + where);
            }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Constructors.

/// Nerve of a finite groupoid: X_r = composable r-tuples (discrete), X_0 = objects.
inline NerveDiagram nerve(const FiniteGroupoid& g, size_t cutoff) {
    auto rep = validate_groupoid(g);
    if (!rep.ok()) throw Error(ErrorKind::Validation, "nerve: invalid groupoid: " + rep.violations.front());
    std::vector<std::vector<std::vector<size_t>>> tuples(cutoff + 1);
    std::vector<std::map<std::vector<size_t>, size_t>> index(cutoff + 1);
    for (size_t x = 0; x < g.objects; ++x) {
        index[0][{x}] = tuples[0].size();
        tuples[0].push_back({x});  // objects are stored as 1-tuples of object ids
    }
    for (size_t r = 1; r <= cutoff; ++r)
        for (const auto& t : tuples[r - 1])
            for (size_t h = 0; h < g.arrows(); ++h) {
                if (r == 1 ? g.source[h] != t[0] : g.target[t.back()] != g.source[h]) continue;
                std::vector<size_t> nt = r == 1 ? std::vector<size_t>{} : t;
                nt.push_back(h);
                index[r][nt] = tuples[r].size();
                tuples[r].push_back(std::move(nt));
            }
    std::vector<SimplicialSet> levels;
    for (size_t r = 0; r <= cutoff; ++r) levels.push_back(SimplicialSet::discrete(tuples[r].size()));
    std::vector<std::vector<LevelMap>> faces(cutoff + 1), degens(cutoff + 1);
    auto object_at = [&](const std::vector<size_t>& t, size_t r, size_t i) {
        // x_0 = s(g_1), x_i = t(g_i)
        if (r == 0) return t[0];
        return i == 0 ? g.source[t[0]] : g.target[t[i - 1]];
    };
    for (size_t r = 1; r <= cutoff; ++r) {
        faces[r].assign(r + 1, LevelMap(1, std::vector<size_t>(tuples[r].size())));
        for (size_t x = 0; x < tuples[r].size(); ++x) {
            const auto& t = tuples[r][x];
            for (size_t i = 0; i <= r; ++i) {
                std::vector<size_t> f;
                if (r == 1) {
                    f = {i == 0 ? g.target[t[0]] : g.source[t[0]]};
                } else if (i == 0) {
                    f.assign(t.begin() + 1, t.end());
                } else if (i == r) {
                    f.assign(t.begin(), t.end() - 1);
                } else {
                    f.assign(t.begin(), t.begin() + (i - 1));
                    f.push_back(g.compose(t[i - 1], t[i]));
                    f.insert(f.end(), t.begin() + i + 1, t.end());
                }
                faces[r][i][0][x] = index[r - 1].at(f);
            }
        }
    }
    for (size_t r = 0; r < cutoff; ++r) {
        degens[r].assign(r + 1, LevelMap(1, std::vector<size_t>(tuples[r].size())));
        for (size_t x = 0; x < tuples[r].size(); ++x) {
            const auto& t = tuples[r][x];
            for (size_t i = 0; i <= r; ++i) {
                size_t e = g.identity[object_at(t, r, i)];
                std::vector<size_t> d;
                if (r == 0) {
                    d = {e};
                } else {
                    d = t;
                    d.insert(d.begin() + i, e);
                }
                degens[r][i][0][x] = index[r + 1].at(d);
            }
        }
    }
    return NerveDiagram(std::move(levels), std::move(faces), std::move(degens));
}

/// Cover of a simplicial set by sub simplicial sets; membership[piece][level][simplex].
struct Cover {
    SimplicialSet base;
    std::vector<std::vector<std::vector<bool>>> pieces;

    /// Pieces given by member simplices (any level); closed under degeneracies.
    static Cover from_members(SimplicialSet base, const std::vector<std::vector<std::pair<size_t, size_t>>>& members) {
        Cover c;
        for (const auto& list : members) {
            std::vector<std::vector<bool>> nondeg_in(base.top() + 1);
            for (size_t s = 0; s <= base.top(); ++s) nondeg_in[s].assign(base.size(s), false);
            for (auto [s, x] : list) {
                if (s > base.top() || x >= base.size(s)) throw Error(ErrorKind::Validation, "cover: member out of range");
                auto [rs, rx] = base.root(s, x);
                nondeg_in[rs][rx] = true;
            }
            std::vector<std::vector<bool>> piece(base.top() + 1);
            for (size_t s = 0; s <= base.top(); ++s) {
                piece[s].assign(base.size(s), false);
                for (size_t x = 0; x < base.size(s); ++x) {
                    auto [rs, rx] = base.root(s, x);
                    piece[s][x] = nondeg_in[rs][rx];
                }
            }
            c.pieces.push_back(std::move(piece));
        }
        c.base = std::move(base);
        return c;
    }

    /// For a base built from a simplicial complex: piece i = all simplices with vertices in vertex_sets[i].
    static Cover spanned(SimplicialSet base, const std::vector<std::vector<size_t>>& vertex_sets) {
        const auto& vt = base.vertex_tuples();
        if (vt.empty()) throw Error(ErrorKind::Validation, "cover: base has no vertex labels");
        Cover c;
        for (const auto& vs : vertex_sets) {
            std::set<size_t> allowed(vs.begin(), vs.end());
            std::vector<std::vector<bool>> piece(base.top() + 1);
            for (size_t s = 0; s <= base.top(); ++s) {
                piece[s].assign(base.size(s), false);
                for (size_t x = 0; x < base.size(s); ++x)
                    piece[s][x] = std::all_of(vt[s][x].begin(), vt[s][x].end(), [&](size_t v) { return allowed.count(v) > 0; });
            }
            c.pieces.push_back(std::move(piece));
        }
        c.base = std::move(base);
        return c;
    }

    static Cover trivial(SimplicialSet base) {
        Cover c;
        std::vector<std::vector<bool>> all(base.top() + 1);
        for (size_t s = 0; s <= base.top(); ++s) all[s].assign(base.size(s), true);
        c.pieces.push_back(std::move(all));
        c.base = std::move(base);
        return c;
    }

    ValidationReport validate() const {
        ValidationReport rep;
        for (size_t p = 0; p < pieces.size(); ++p)
            for (size_t s = 0; s <= base.top(); ++s)
                for (size_t x = 0; x < base.size(s); ++x) {
                    if (!pieces[p][s][x]) continue;
                    for (size_t k = 0; s > 0 && k <= s; ++k)
                        if (!pieces[p][s - 1][base.face(s, k, x)])
                            rep.add("piece " + std::to_string(p) + " is not face-closed at level " + std::to_string(s) +
                                    " simplex " + std::to_string(x));
                    for (size_t k = 0; s < base.top() && k <= s; ++k)
                        if (!pieces[p][s + 1][base.degeneracy(s, k, x)])
                            rep.add("piece " + std::to_string(p) + " is not degeneracy-closed at level " + std::to_string(s) +
                                    " simplex " + std::to_string(x));
                }
        for (size_t s = 0; s <= base.top(); ++s)
            for (size_t x = 0; x < base.size(s); ++x) {
                bool covered = false;
                for (const auto& p : pieces) covered = covered || p[s][x];
                if (!covered) rep.add("simplex " + std::to_string(x) + " at level " + std::to_string(s) + " is not covered");
            }
        return rep;
    }
};

/// Cech nerve: X_r = disjoint union over (i_0..i_r) of U_{i_0} cap ... cap U_{i_r}.
inline NerveDiagram cech_nerve(const Cover& cover, size_t cutoff) {
    auto rep = cover.validate();
    if (!rep.ok()) throw Error(ErrorKind::Validation, "cech_nerve: " + rep.violations.front());
    const auto& B = cover.base;
    const size_t P = cover.pieces.size(), top = B.top();
    // component of tuple t at nerve level r: tuples encoded base P, lexicographic
    struct Level {
        std::vector<std::vector<size_t>> tuples;
        std::vector<std::vector<std::vector<size_t>>> local;  // [tuple][s][x] -> index or SIZE_MAX
        std::vector<std::vector<std::pair<size_t, size_t>>> elems;  // [s] -> (tuple, base simplex)
    };
    std::vector<Level> L(cutoff + 1);
    for (size_t r = 0; r <= cutoff; ++r) {
        auto& lv = L[r];
        std::vector<size_t> t(r + 1, 0);
        lv.elems.assign(top + 1, {});
        for (;;) {
            lv.tuples.push_back(t);
            std::vector<std::vector<size_t>> loc(top + 1);
            for (size_t s = 0; s <= top; ++s) {
                loc[s].assign(B.size(s), SIZE_MAX);
                for (size_t x = 0; x < B.size(s); ++x) {
                    bool in = true;
                    for (size_t i : t) in = in && cover.pieces[i][s][x];
                    if (in) {
                        loc[s][x] = lv.elems[s].size();
                        lv.elems[s].push_back({lv.tuples.size() - 1, x});
                    }
                }
            }
            lv.local.push_back(std::move(loc));
            size_t k = r + 1;
            while (k > 0 && t[k - 1] + 1 == P) t[--k] = 0;
            if (k == 0) break;
            ++t[k - 1];
        }
    }
    auto tuple_id = [P](const std::vector<size_t>& t) {
        size_t id = 0;
        for (size_t i : t) id = id * P + i;
        return id;
    };
    std::vector<SimplicialSet> levels;
    for (size_t r = 0; r <= cutoff; ++r) {
        std::vector<size_t> sizes;
        for (size_t s = 0; s <= top; ++s) sizes.push_back(L[r].elems[s].size());
        SimplicialSet X(sizes);
        for (size_t s = 0; s <= top; ++s)
            for (size_t e = 0; e < sizes[s]; ++e) {
                auto [ti, x] = L[r].elems[s][e];
                for (size_t k = 0; s > 0 && k <= s; ++k) X.set_face(s, k, e, L[r].local[ti][s - 1][B.face(s, k, x)]);
                for (size_t k = 0; s < top && k <= s; ++k) X.set_degeneracy(s, k, e, L[r].local[ti][s + 1][B.degeneracy(s, k, x)]);
            }
        X.finalize();
        levels.push_back(std::move(X));
    }
    std::vector<std::vector<LevelMap>> faces(cutoff + 1), degens(cutoff + 1);
    for (size_t r = 0; r <= cutoff; ++r) {
        if (r > 0) faces[r].assign(r + 1, LevelMap(top + 1));
        if (r < cutoff) degens[r].assign(r + 1, LevelMap(top + 1));
        for (size_t s = 0; s <= top; ++s) {
            for (size_t i = 0; r > 0 && i <= r; ++i) faces[r][i][s].resize(L[r].elems[s].size());
            for (size_t i = 0; r < cutoff && i <= r; ++i) degens[r][i][s].resize(L[r].elems[s].size());
            for (size_t e = 0; e < L[r].elems[s].size(); ++e) {
                auto [ti, x] = L[r].elems[s][e];
                const auto& t = L[r].tuples[ti];
                for (size_t i = 0; r > 0 && i <= r; ++i) {
                    auto f = t;
                    f.erase(f.begin() + i);
                    faces[r][i][s][e] = L[r - 1].local[tuple_id(f)][s][x];
                }
                for (size_t i = 0; r < cutoff && i <= r; ++i) {
                    auto d = t;
                    d.insert(d.begin() + i, t[i]);
                    degens[r][i][s][e] = L[r + 1].local[tuple_id(d)][s][x];
                }
            }
        }
    }
    return NerveDiagram(std::move(levels), std::move(faces), std::move(degens));
}

/// The constant diagram X_r = space (the unit groupoid of a space).
inline NerveDiagram constant_nerve(const SimplicialSet& space, size_t cutoff) {
    return cech_nerve(Cover::trivial(space), cutoff);
}

/// Simplicial left action of a one-object groupoid: action[g] is a levelwise map of the space.
/// Must satisfy action[compose(g, h)] = action[h] o action[g].
using GroupAction = std::vector<LevelMap>;

inline ValidationReport validate_action(const FiniteGroupoid& group, const SimplicialSet& space, const GroupAction& act) {
    ValidationReport rep;
    if (group.objects != 1) rep.add("acting groupoid must have one object");
    if (act.size() != group.arrows()) rep.add("action table size differs from group order");
    if (!rep.ok()) return rep;
    for (size_t g = 0; g < act.size(); ++g) {
        if (act[g].size() != space.top() + 1) {
            rep.add("action of " + group.arrow_name(g) + " has wrong level count");
            continue;
        }
        for (size_t s = 0; s <= space.top(); ++s)
            for (size_t x = 0; x < space.size(s); ++x) {
                size_t y = act[g][s][x];
                if (y >= space.size(s)) {
                    rep.add("action of " + group.arrow_name(g) + " out of range");
                    return rep;
                }
                for (size_t k = 0; s > 0 && k <= s; ++k)
                    if (space.face(s, k, y) != act[g][s - 1][space.face(s, k, x)])
                        rep.add("action of " + group.arrow_name(g) + " is not simplicial (d" + std::to_string(k) + ")");
                for (size_t k = 0; s < space.top() && k <= s; ++k)
                    if (space.degeneracy(s, k, y) != act[g][s + 1][space.degeneracy(s, k, x)])
                        rep.add("action of " + group.arrow_name(g) + " is not simplicial (s" + std::to_string(k) + ")");
            }
    }
    if (!rep.ok()) return rep;
    for (size_t s = 0; s <= space.top(); ++s)
        for (size_t x = 0; x < space.size(s); ++x) {
            if (act[group.identity[0]][s][x] != x) rep.add("unit does not act trivially");
            for (size_t g = 0; g < act.size(); ++g)
                for (size_t h = 0; h < act.size(); ++h)
                    if (act[group.compose(g, h)][s][x] != act[h][s][act[g][s][x]])
                        rep.add("action is not a homomorphism on (" + group.arrow_name(g) + ", " + group.arrow_name(h) + ")");
        }
    return rep;
}

/// Nerve of the transformation groupoid: X_r = G^r x space; (g_1..g_r; x) is the
/// chain x -> g_1 x -> g_2 g_1 x -> ...
inline NerveDiagram action_nerve(const FiniteGroupoid& group, const SimplicialSet& space, const GroupAction& act,
                                 size_t cutoff) {
    auto grep = validate_groupoid(group);
    if (!grep.ok()) throw Error(ErrorKind::Validation, "action_nerve: invalid group: " + grep.violations.front());
    auto rep = validate_action(group, space, act);
    if (!rep.ok()) throw Error(ErrorKind::Validation, "action_nerve: " + rep.violations.front());
    const size_t G = group.arrows(), top = space.top();
    const size_t e = group.identity[0];
    auto pow = [G](size_t r) {
        size_t p = 1;
        for (size_t i = 0; i < r; ++i) p *= G;
        return p;
    };
    auto decode = [G](size_t code, size_t r) {
        std::vector<size_t> t(r);
        for (size_t i = r; i-- > 0;) {
            t[i] = code % G;
            code /= G;
        }
        return t;
    };
    auto encode = [G](const std::vector<size_t>& t) {
        size_t c = 0;
        for (size_t g : t) c = c * G + g;
        return c;
    };
    std::vector<SimplicialSet> levels;
    for (size_t r = 0; r <= cutoff; ++r) {
        const size_t n = pow(r);
        std::vector<size_t> sizes;
        for (size_t s = 0; s <= top; ++s) sizes.push_back(n * space.size(s));
        SimplicialSet X(sizes);
        for (size_t s = 0; s <= top; ++s)
            for (size_t code = 0; code < n; ++code)
                for (size_t x = 0; x < space.size(s); ++x) {
                    size_t id = code * space.size(s) + x;
                    for (size_t k = 0; s > 0 && k <= s; ++k) X.set_face(s, k, id, code * space.size(s - 1) + space.face(s, k, x));
                    for (size_t k = 0; s < top && k <= s; ++k)
                        X.set_degeneracy(s, k, id, code * space.size(s + 1) + space.degeneracy(s, k, x));
                }
        X.finalize();
        levels.push_back(std::move(X));
    }
    std::vector<std::vector<LevelMap>> faces(cutoff + 1), degens(cutoff + 1);
    for (size_t r = 0; r <= cutoff; ++r) {
        if (r > 0) faces[r].assign(r + 1, LevelMap(top + 1));
        if (r < cutoff) degens[r].assign(r + 1, LevelMap(top + 1));
        for (size_t s = 0; s <= top; ++s) {
            const size_t m = space.size(s);
            for (size_t i = 0; r > 0 && i <= r; ++i) faces[r][i][s].resize(pow(r) * m);
            for (size_t i = 0; r < cutoff && i <= r; ++i) degens[r][i][s].resize(pow(r) * m);
            for (size_t code = 0; code < pow(r); ++code) {
                auto t = decode(code, r);
                for (size_t x = 0; x < m; ++x) {
                    size_t id = code * m + x;
                    for (size_t i = 0; r > 0 && i <= r; ++i) {
                        auto f = t;
                        size_t y = x;
                        if (i == 0) {
                            y = act[t[0]][s][x];
                            f.erase(f.begin());
                        } else if (i == r) {
                            f.pop_back();
                        } else {
                            f[i - 1] = group.compose(t[i - 1], t[i]);
                            f.erase(f.begin() + i);
                        }
                        faces[r][i][s][id] = encode(f) * m + y;
                    }
                    for (size_t i = 0; r < cutoff && i <= r; ++i) {
                        auto d = t;
                        d.insert(d.begin() + i, e);
                        degens[r][i][s][id] = encode(d) * m + x;
                    }
                }
            }
        }
    }
    return NerveDiagram(std::move(levels), std::move(faces), std::move(degens));
}

/// Nerve morphism induced by a functor between groupoids (object and arrow maps).
inline NerveMorphism functor_morphism(const FiniteGroupoid& src, const FiniteGroupoid& dst, const std::vector<size_t>& on_objects,
                                      const std::vector<size_t>& on_arrows, size_t cutoff) {
    if (on_objects.size() != src.objects || on_arrows.size() != src.arrows())
        throw Error(ErrorKind::Validation, "functor_morphism: map sizes do not match the source");
    for (size_t a = 0; a < src.arrows(); ++a) {
        size_t fa = on_arrows[a];
        if (fa >= dst.arrows() || dst.source[fa] != on_objects[src.source[a]] || dst.target[fa] != on_objects[src.target[a]])
            throw Error(ErrorKind::Validation, "functor_morphism: arrow " + src.arrow_name(a) + " has the wrong endpoints");
        for (size_t b = 0; b < src.arrows(); ++b)
            if (src.composable(a, b) && on_arrows[src.compose(a, b)] != dst.compose(fa, on_arrows[b]))
                throw Error(ErrorKind::Validation, "functor_morphism: composition not preserved");
    }
    // rebuild the tuple enumeration of both nerves
    auto enumerate = [](const FiniteGroupoid& g, size_t R) {
        std::vector<std::vector<std::vector<size_t>>> tuples(R + 1);
        for (size_t x = 0; x < g.objects; ++x) tuples[0].push_back({x});
        for (size_t r = 1; r <= R; ++r)
            for (const auto& t : tuples[r - 1])
                for (size_t h = 0; h < g.arrows(); ++h) {
                    if (r == 1 ? g.source[h] != t[0] : g.target[t.back()] != g.source[h]) continue;
                    std::vector<size_t> nt = r == 1 ? std::vector<size_t>{} : t;
                    nt.push_back(h);
                    tuples[r].push_back(std::move(nt));
                }
        return tuples;
    };
    auto st = enumerate(src, cutoff);
    auto dt = enumerate(dst, cutoff);
    NerveMorphism m;
    for (size_t r = 0; r <= cutoff; ++r) {
        std::map<std::vector<size_t>, size_t> index;
        for (size_t i = 0; i < dt[r].size(); ++i) index[dt[r][i]] = i;
        std::vector<size_t> lm;
        for (const auto& t : st[r]) {
            std::vector<size_t> img;
            for (size_t a : t) img.push_back(r == 0 ? on_objects[a] : on_arrows[a]);
            auto it = index.find(img);
            if (it == index.end()) throw Error(ErrorKind::Validation, "functor_morphism: not a functor");
            lm.push_back(it->second);
        }
        m.maps.push_back({std::move(lm)});
    }
    return m;
}

/// Refinement map from the Cech nerve of `fine` to that of `coarse` (same base), given
/// a piece assignment with fine piece i contained in coarse piece assign[i].
inline NerveMorphism refinement_morphism(const Cover& fine, const Cover& coarse, const std::vector<size_t>& assign,
                                         const NerveDiagram& fine_nerve, const NerveDiagram& coarse_nerve) {
    const size_t P = fine.pieces.size(), Q = coarse.pieces.size();
    for (size_t i = 0; i < P; ++i)
        for (size_t s = 0; s <= fine.base.top(); ++s)
            for (size_t x = 0; x < fine.base.size(s); ++x)
                if (fine.pieces[i][s][x] && !coarse.pieces[assign[i]][s][x])
                    throw Error(ErrorKind::Validation, "refinement: piece not contained in its assigned piece");
    NerveMorphism m;
    const auto& B = fine.base;
    for (size_t r = 0; r <= fine_nerve.cutoff(); ++r) {
        LevelMap lm(B.top() + 1);
        // enumerate in the cech_nerve order: tuples lexicographic, then base simplices
        for (size_t s = 0; s <= B.top(); ++s) {
            std::vector<size_t> t(r + 1, 0);
            // running index in the coarse level for each coarse tuple
            std::map<std::vector<size_t>, std::vector<size_t>> coarse_local;
            auto coarse_index = [&](const std::vector<size_t>& ct, size_t x) {
                auto it = coarse_local.find(ct);
                if (it == coarse_local.end()) {
                    // offset of tuple ct within coarse level r: count members of earlier tuples
                    std::vector<size_t> loc(B.size(s), SIZE_MAX);
                    size_t offset = 0;
                    std::vector<size_t> u(r + 1, 0);
                    for (;;) {
                        bool same = (u == ct);
                        for (size_t y = 0; y < B.size(s); ++y) {
                            bool in = true;
                            for (size_t i : u) in = in && coarse.pieces[i][s][y];
                            if (in) {
                                if (same) loc[y] = offset;
                                ++offset;
                            }
                        }
                        if (same) break;
                        size_t k = r + 1;
                        while (k > 0 && u[k - 1] + 1 == Q) u[--k] = 0;
                        if (k == 0) break;
                        ++u[k - 1];
                    }
                    it = coarse_local.emplace(ct, std::move(loc)).first;
                }
                return it->second[x];
            };
            for (;;) {
                std::vector<size_t> ct;
                for (size_t i : t) ct.push_back(assign[i]);
                for (size_t x = 0; x < B.size(s); ++x) {
                    bool in = true;
                    for (size_t i : t) in = in && fine.pieces[i][s][x];
                    if (in) lm[s].push_back(coarse_index(ct, x));
                }
                size_t k = r + 1;
                while (k > 0 && t[k - 1] + 1 == P) t[--k] = 0;
                if (k == 0) break;
                ++t[k - 1];
            }
        }
        m.maps.push_back(std::move(lm));
    }
    auto rep = check_morphism(m, fine_nerve, coarse_nerve);
    if (!rep.ok()) throw Error(ErrorKind::Internal, "refinement_morphism: " + rep.violations.front());
    return m;
}

}  // namespace grpd
