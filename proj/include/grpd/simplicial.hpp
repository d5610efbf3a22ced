#pragma once

#include "grpd/arith.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace grpd {

struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
    void add(std::string v) { violations.push_back(std::move(v)); }
    void merge(const ValidationReport& o, const std::string& prefix = "") {
        for (const auto& v : o.violations) violations.push_back(prefix + v);
    }
};

/// Finite simplicial set truncated at level top(); every simplex above top is
/// understood to be degenerate.
class SimplicialSet {
public:
    SimplicialSet() : sizes_{0}, faces_(1), degens_(1) {}

    /// sizes[n] simplices at level n; tables filled via set_face / set_degeneracy.
    explicit SimplicialSet(std::vector<size_t> sizes) : sizes_(std::move(sizes)) {
        if (sizes_.empty()) sizes_.push_back(0);
        faces_.resize(sizes_.size());
        degens_.resize(sizes_.size());
        for (size_t n = 0; n < sizes_.size(); ++n) {
            faces_[n].assign(n == 0 ? 0 : n + 1, std::vector<size_t>(sizes_[n], 0));
            degens_[n].assign(n + 1 < sizes_.size() ? n + 1 : 0, std::vector<size_t>(sizes_[n], 0));
        }
        finalize();
    }

    static SimplicialSet discrete(size_t points) { return SimplicialSet({points}); }

    /// Ordered simplicial set of a simplicial complex on vertices 0..n-1 (ordered by index).
    /// Level k holds all nondecreasing (k+1)-tuples spanning a face; top = max facet dimension.
    static SimplicialSet from_complex(size_t vertices, const std::vector<std::vector<size_t>>& facets) {
        std::set<std::vector<size_t>> faces;
        size_t dim = 0;
        for (auto f : facets) {
            std::sort(f.begin(), f.end());
            f.erase(std::unique(f.begin(), f.end()), f.end());
            for (size_t v : f)
                if (v >= vertices) throw Error(ErrorKind::Validation, "from_complex: vertex out of range");
            if (f.empty()) continue;
            dim = std::max(dim, f.size() - 1);
            for (size_t mask = 1; mask < (size_t(1) << f.size()); ++mask) {
                std::vector<size_t> s;
                for (size_t i = 0; i < f.size(); ++i)
                    if (mask >> i & 1) s.push_back(f[i]);
                faces.insert(s);
            }
        }
        for (size_t v = 0; v < vertices; ++v) faces.insert({v});
        std::vector<std::vector<std::vector<size_t>>> levels(dim + 1);
        std::vector<std::map<std::vector<size_t>, size_t>> index(dim + 1);
        for (size_t n = 0; n <= dim; ++n) {
            // all nondecreasing (n+1)-tuples whose support is a face
            std::vector<size_t> t(n + 1, 0);
            for (;;) {
                std::vector<size_t> support(t);
                support.erase(std::unique(support.begin(), support.end()), support.end());
                if (faces.count(support)) {
                    index[n][t] = levels[n].size();
                    levels[n].push_back(t);
                }
                size_t k = n + 1;
                while (k > 0 && t[k - 1] + 1 >= vertices) --k;
                if (k == 0) break;
                ++t[k - 1];
                for (size_t j = k; j <= n; ++j) t[j] = t[k - 1];
            }
        }
        std::vector<size_t> sizes;
        for (const auto& l : levels) sizes.push_back(l.size());
        SimplicialSet s(sizes);
        for (size_t n = 0; n <= dim; ++n)
            for (size_t x = 0; x < levels[n].size(); ++x) {
                const auto& t = levels[n][x];
                for (size_t i = 0; n > 0 && i <= n; ++i) {
                    auto f = t;
                    f.erase(f.begin() + i);
                    s.faces_[n][i][x] = index[n - 1].at(f);
                }
                for (size_t i = 0; n < dim && i <= n; ++i) {
                    auto d = t;
                    d.insert(d.begin() + i, t[i]);
                    s.degens_[n][i][x] = index[n + 1].at(d);
                }
            }
        s.vertex_tuples_ = levels;
        s.finalize();
        return s;
    }

    size_t top() const { return sizes_.size() - 1; }
    size_t size(size_t n) const { return n < sizes_.size() ? sizes_[n] : 0; }
    const std::vector<size_t>& sizes() const { return sizes_; }

    size_t face(size_t n, size_t i, size_t x) const { return faces_[n][i][x]; }
    size_t degeneracy(size_t n, size_t i, size_t x) const { return degens_[n][i][x]; }
    void set_face(size_t n, size_t i, size_t x, size_t y) { faces_[n][i][x] = y; }
    void set_degeneracy(size_t n, size_t i, size_t x, size_t y) { degens_[n][i][x] = y; }

    bool is_degenerate(size_t n, size_t x) const { return degenerate_[n][x]; }
    const std::vector<size_t>& nondegenerate(size_t n) const {
        static const std::vector<size_t> empty;
        return n < nondeg_.size() ? nondeg_[n] : empty;
    }

    /// Vertex tuples when built from a simplicial complex; empty otherwise.
    const std::vector<std::vector<std::vector<size_t>>>& vertex_tuples() const { return vertex_tuples_; }

    /// Recomputes degeneracy marks after the tables were edited.
    void finalize() {
        degenerate_.assign(sizes_.size(), {});
        nondeg_.assign(sizes_.size(), {});
        degen_source_.assign(sizes_.size(), {});
        for (size_t n = 0; n < sizes_.size(); ++n) {
            degenerate_[n].assign(sizes_[n], false);
            degen_source_[n].assign(sizes_[n], 0);
        }
        for (size_t n = 0; n + 1 < sizes_.size(); ++n)
            for (const auto& table : degens_[n])
                for (size_t x = 0; x < table.size(); ++x)
                    if (table[x] < sizes_[n + 1]) {
                        degenerate_[n + 1][table[x]] = true;
                        degen_source_[n + 1][table[x]] = x;
                    }
        for (size_t n = 0; n < sizes_.size(); ++n)
            for (size_t x = 0; x < sizes_[n]; ++x)
                if (!degenerate_[n][x]) nondeg_[n].push_back(x);
    }

    ValidationReport check_identities() const {
        ValidationReport rep;
        auto bad = [&](const std::string& what, size_t n, size_t x) {
            rep.add(what + " fails at level " + std::to_string(n) + " simplex " + std::to_string(x));
        };
        for (size_t n = 0; n <= top(); ++n) {
            for (size_t i = 0; n > 0 && i <= n; ++i)
                for (size_t x = 0; x < sizes_[n]; ++x)
                    if (faces_[n][i][x] >= sizes_[n - 1]) bad("face range d" + std::to_string(i), n, x);
            for (size_t i = 0; n < top() && i <= n; ++i)
                for (size_t x = 0; x < sizes_[n]; ++x)
                    if (degens_[n][i][x] >= sizes_[n + 1]) bad("degeneracy range s" + std::to_string(i), n, x);
        }
        if (!rep.ok()) return rep;
        for (size_t n = 2; n <= top(); ++n)
            for (size_t x = 0; x < sizes_[n]; ++x)
                for (size_t j = 1; j <= n; ++j)
                    for (size_t i = 0; i < j; ++i)
                        if (face(n - 1, i, face(n, j, x)) != face(n - 1, j - 1, face(n, i, x)))
                            bad("d" + std::to_string(i) + "d" + std::to_string(j), n, x);
        for (size_t n = 0; n < top(); ++n)
            for (size_t x = 0; x < sizes_[n]; ++x)
                for (size_t j = 0; j <= n; ++j) {
                    size_t y = degeneracy(n, j, x);
                    for (size_t i = 0; i <= n + 1; ++i) {
                        size_t lhs = face(n + 1, i, y);
                        size_t rhs;
                        if (i == j || i == j + 1) {
                            rhs = x;
                        } else if (i < j) {
                            rhs = degeneracy(n - 1, j - 1, face(n, i, x));
                        } else {
                            rhs = degeneracy(n - 1, j, face(n, i - 1, x));
                        }
                        if (lhs != rhs) bad("d" + std::to_string(i) + "s" + std::to_string(j), n, x);
                    }
                    for (size_t i = 0; n + 1 < top() && i <= j; ++i)
                        if (degeneracy(n + 1, i, y) != degeneracy(n + 1, j + 1, degeneracy(n, i, x)))
                            bad("s" + std::to_string(i) + "s" + std::to_string(j), n, x);
                }
        return rep;
    }

    /// Sub simplicial set on the marked simplices (must be closed under faces and
    /// degeneracies). old_to_new[n][x] is SIZE_MAX for simplices not kept.
    SimplicialSet restrict_to(const std::vector<std::vector<bool>>& keep,
                              std::vector<std::vector<size_t>>* old_to_new = nullptr) const {
        std::vector<std::vector<size_t>> map(sizes_.size());
        std::vector<size_t> sizes(sizes_.size(), 0);
        for (size_t n = 0; n < sizes_.size(); ++n) {
            map[n].assign(sizes_[n], SIZE_MAX);
            for (size_t x = 0; x < sizes_[n]; ++x)
                if (keep[n][x]) map[n][x] = sizes[n]++;
        }
        SimplicialSet s(sizes);
        for (size_t n = 0; n < sizes_.size(); ++n)
            for (size_t x = 0; x < sizes_[n]; ++x) {
                if (!keep[n][x]) continue;
                size_t nx = map[n][x];
                for (size_t i = 0; n > 0 && i <= n; ++i) s.faces_[n][i][nx] = map[n - 1][faces_[n][i][x]];
                for (size_t i = 0; n < top() && i <= n; ++i) s.degens_[n][i][nx] = map[n + 1][degens_[n][i][x]];
            }
        if (!vertex_tuples_.empty()) {
            s.vertex_tuples_.resize(sizes_.size());
            for (size_t n = 0; n < sizes_.size(); ++n)
                for (size_t x = 0; x < sizes_[n]; ++x)
                    if (keep[n][x]) s.vertex_tuples_[n].push_back(vertex_tuples_[n][x]);
        }
        s.finalize();
        if (old_to_new) *old_to_new = std::move(map);
        return s;
    }

    /// Nondegenerate simplex of which x is an iterated degeneracy.
    std::pair<size_t, size_t> root(size_t n, size_t x) const {
        while (degenerate_[n][x]) {
            x = degen_source_[n][x];
            --n;
        }
        return {n, x};
    }

private:
    std::vector<size_t> sizes_;
    // faces_[n][i][x], n >= 1; degens_[n][i][x], n < top
    std::vector<std::vector<std::vector<size_t>>> faces_;
    std::vector<std::vector<std::vector<size_t>>> degens_;
    std::vector<std::vector<bool>> degenerate_;
    std::vector<std::vector<size_t>> degen_source_;
    std::vector<std::vector<size_t>> nondeg_;
    std::vector<std::vector<std::vector<size_t>>> vertex_tuples_;
};

}  // namespace grpd
