#pragma once

#include "grpd/matrix.hpp"

#include <map>
#include <set>

namespace grpd {

/// U * M * V = D with D diagonal, d_1 | d_2 | ... , U and V unimodular.
struct SmithForm {
    ZMatrix diagonal;
    ZMatrix U;
    ZMatrix V;
    ZMatrix U_inverse;
    std::vector<Integer> divisors;  // nonzero diagonal entries, positive

    size_t rank() const { return divisors.size(); }
};

namespace detail {

/// Row operation applied to M and U, inverse tracked on Uinv (row op on U, column op on Uinv).
struct SmithWork {
    ZMatrix m, u, uinv, v;
    bool track;

    void row_swap(size_t a, size_t b) {
        m.swap_rows(a, b);
        if (track) {
            u.swap_rows(a, b);
            uinv.swap_cols(a, b);
        }
    }
    void col_swap(size_t a, size_t b) {
        m.swap_cols(a, b);
        if (track) v.swap_cols(a, b);
    }
    // row[dst] += f row[src]
    void row_add(size_t dst, size_t src, const Integer& f) {
        m.add_row(dst, src, f);
        if (track) {
            u.add_row(dst, src, f);
            uinv.add_col(src, dst, -f);
        }
    }
    void col_add(size_t dst, size_t src, const Integer& f) {
        m.add_col(dst, src, f);
        if (track) v.add_col(dst, src, f);
    }
    void row_negate(size_t r) {
        for (size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
        if (track) {
            for (size_t j = 0; j < u.cols(); ++j) u(r, j) = -u(r, j);
            for (size_t i = 0; i < uinv.rows(); ++i) uinv(i, r) = -uinv(i, r);
        }
    }
};

inline Integer fdiv(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

}  // namespace detail

inline SmithForm smith_normal_form(const ZMatrix& input, bool with_transforms = true) {
    detail::SmithWork w{input, {}, {}, {}, with_transforms};
    const size_t rows = input.rows(), cols = input.cols();
    if (with_transforms) {
        w.u = ZMatrix::identity(rows);
        w.uinv = ZMatrix::identity(rows);
        w.v = ZMatrix::identity(cols);
    }
    auto& m = w.m;
    size_t t = 0;
    for (; t < std::min(rows, cols); ++t) {
        // smallest nonzero entry of the trailing block as pivot
        for (;;) {
            size_t pi = rows, pj = cols;
            for (size_t i = t; i < rows; ++i)
                for (size_t j = t; j < cols; ++j)
                    if (m(i, j) != 0 && (pi == rows || abs(m(i, j)) < abs(m(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == rows) goto done;
            w.row_swap(t, pi);
            w.col_swap(t, pj);
            bool clean = true;
            for (size_t i = t + 1; i < rows; ++i)
                if (m(i, t) != 0) {
                    Integer q = detail::fdiv(m(i, t), m(t, t));
                    w.row_add(i, t, -q);
                    if (m(i, t) != 0) clean = false;
                }
            for (size_t j = t + 1; j < cols; ++j)
                if (m(t, j) != 0) {
                    Integer q = detail::fdiv(m(t, j), m(t, t));
                    w.col_add(j, t, -q);
                    if (m(t, j) != 0) clean = false;
                }
            if (!clean) continue;
            // divisibility of the trailing block by the pivot
            bool divides = true;
            for (size_t i = t + 1; i < rows && divides; ++i)
                for (size_t j = t + 1; j < cols; ++j)
                    if (m(i, j) % m(t, t) != 0) {
                        w.row_add(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (m(t, t) < 0) w.row_negate(t);
    }
done:
    SmithForm out;
    for (size_t i = 0; i < std::min(rows, cols); ++i)
        if (m(i, i) != 0) out.divisors.push_back(m(i, i));
    out.diagonal = std::move(w.m);
    out.U = std::move(w.u);
    out.U_inverse = std::move(w.uinv);
    out.V = std::move(w.v);
    return out;
}

/// Result of eliminating all unit pivots from an integer matrix.
struct UnitReduction {
    size_t unit_pivots = 0;
    ZMatrix remainder;
};

/// Repeatedly eliminates +-1 entries with unimodular row and column operations.
/// The invariant factors of the input are unit_pivots ones followed by those of the remainder.
inline UnitReduction eliminate_unit_pivots(const SparseMatrix& a) {
    if (!a.is_integral()) throw Error(ErrorKind::Internal, "eliminate_unit_pivots: non-integral matrix");
    const size_t rows = a.rows(), cols = a.cols();
    std::vector<std::map<size_t, Integer>> row(rows);
    std::vector<std::set<size_t>> col(cols);
    for (size_t j = 0; j < cols; ++j)
        for (const auto& [i, v] : a.column(j)) {
            row[i][j] = v.get_num();
            col[j].insert(i);
        }
    std::vector<bool> row_alive(rows, true), col_alive(cols, true);
    UnitReduction out;
    for (;;) {
        size_t best_r = rows, best_c = cols, best_cost = SIZE_MAX;
        for (size_t i = 0; i < rows; ++i) {
            if (!row_alive[i]) continue;
            for (const auto& [j, v] : row[i])
                if (v == 1 || v == -1) {
                    size_t cost = (row[i].size() - 1) * (col[j].size() - 1);
                    if (cost < best_cost) {
                        best_cost = cost;
                        best_r = i;
                        best_c = j;
                    }
                }
            if (best_cost == 0) break;
        }
        if (best_r == rows) break;
        const Integer pivot = row[best_r][best_c];
        std::vector<size_t> targets(col[best_c].begin(), col[best_c].end());
        for (size_t i : targets) {
            if (i == best_r) continue;
            Integer f = -row[i][best_c] * pivot;  // pivot^-1 == pivot
            for (const auto& [j, v] : row[best_r]) {
                Integer& x = row[i][j];
                x += f * v;
                if (x == 0) {
                    row[i].erase(j);
                    col[j].erase(i);
                } else {
                    col[j].insert(i);
                }
            }
        }
        for (const auto& [j, v] : row[best_r]) col[j].erase(best_r);
        row[best_r].clear();
        row_alive[best_r] = false;
        col_alive[best_c] = false;
        ++out.unit_pivots;
    }
    std::vector<size_t> rmap, cmap(cols, SIZE_MAX);
    size_t nc = 0;
    for (size_t j = 0; j < cols; ++j)
        if (col_alive[j]) cmap[j] = nc++;
    for (size_t i = 0; i < rows; ++i)
        if (row_alive[i] && !row[i].empty()) rmap.push_back(i);
    out.remainder = ZMatrix(rmap.size(), nc);
    for (size_t r = 0; r < rmap.size(); ++r)
        for (const auto& [j, v] : row[rmap[r]]) out.remainder(r, cmap[j]) = v;
    return out;
}

/// Nonzero invariant factors (including units) without transforms.
inline std::vector<Integer> invariant_factors(const SparseMatrix& a) {
    auto red = eliminate_unit_pivots(a);
    std::vector<Integer> out(red.unit_pivots, Integer(1));
    auto snf = smith_normal_form(red.remainder, false);
    out.insert(out.end(), snf.divisors.begin(), snf.divisors.end());
    return out;
}

/// Exact rank over Q of a sparse rational matrix (column reduction by lowest nonzero row).
inline size_t sparse_rank(const SparseMatrix& a) {
    if (a.is_integral()) {
        auto red = eliminate_unit_pivots(a);
        return red.unit_pivots + rank(to_rational(red.remainder));
    }
    std::map<size_t, std::vector<SparseMatrix::Entry>> by_low;
    size_t r = 0;
    for (size_t j = 0; j < a.cols(); ++j) {
        std::vector<SparseMatrix::Entry> c = a.column(j);
        while (!c.empty()) {
            auto it = by_low.find(c.back().first);
            if (it == by_low.end()) break;
            Rational f = -c.back().second / it->second.back().second;
            std::map<size_t, Rational> acc(c.begin(), c.end());
            for (const auto& [i, v] : it->second) {
                acc[i] += f * v;
                if (acc[i] == 0) acc.erase(i);
            }
            c.assign(acc.begin(), acc.end());
        }
        if (!c.empty()) {
            by_low[c.back().first] = std::move(c);
            ++r;
        }
    }
    return r;
}

}  // namespace grpd
