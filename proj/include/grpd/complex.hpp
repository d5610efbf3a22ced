#pragma once

#include "grpd/mixed.hpp"
#include "grpd/simplicial.hpp"

#include <climits>

namespace grpd {

enum class Ring { Integers, Rationals, RationalsModOne };

inline std::string ring_name(Ring r) {
    switch (r) {
        case Ring::Integers: return "Z";
        case Ring::Rationals: return "Q";
        case Ring::RationalsModOne: return "Q/Z";
    }
    return "?";
}

/// Cochain complex C^0 -> C^1 -> ... -> C^top of finite free modules.
/// diffs[k] : C^k -> C^{k+1}; the last one maps to zero.
struct FreeComplex {
    std::vector<size_t> dims;
    std::vector<SparseMatrix> diffs;
    Ring ring = Ring::Rationals;
    long guaranteed_hi = LONG_MAX;  // cohomology is exact in degrees <= guaranteed_hi

    FreeComplex() = default;
    explicit FreeComplex(std::vector<size_t> d, Ring r = Ring::Rationals) : dims(std::move(d)), ring(r) {
        for (size_t k = 0; k < dims.size(); ++k) diffs.emplace_back(k + 1 < dims.size() ? dims[k + 1] : 0, dims[k]);
    }

    size_t top() const { return dims.empty() ? 0 : dims.size() - 1; }
    size_t degrees() const { return dims.size(); }
    size_t dim(long k) const { return k >= 0 && size_t(k) < dims.size() ? dims[k] : 0; }

    /// d : C^k -> C^{k+1}, zero matrix of the right shape outside the stored range.
    SparseMatrix diff(long k) const {
        if (k >= 0 && size_t(k) < diffs.size()) return diffs[k];
        return SparseMatrix(dim(k + 1), dim(k));
    }
    QMatrix dense_diff(long k) const { return diff(k).dense(); }

    QVector apply_d(long k, const QVector& x) const { return diff(k) * x; }

    ValidationReport check() const {
        ValidationReport rep;
        if (diffs.size() != dims.size()) {
            rep.add("differential count differs from degree count");
            return rep;
        }
        for (size_t k = 0; k < dims.size(); ++k) {
            if (diffs[k].cols() != dims[k] || diffs[k].rows() != dim(k + 1))
                rep.add("differential " + std::to_string(k) + " has the wrong shape");
            if (ring == Ring::Integers && !diffs[k].is_integral())
                rep.add("differential " + std::to_string(k) + " is not integral");
        }
        if (!rep.ok()) return rep;
        for (size_t k = 0; k + 1 < dims.size(); ++k)
            if (!(diffs[k + 1] * diffs[k]).is_zero()) rep.add("d" + std::to_string(k + 1) + " d" + std::to_string(k) + " != 0");
        return rep;
    }
};

/// Degreewise maps f^k : A^k -> B^k.
struct ChainMap {
    std::vector<SparseMatrix> maps;

    SparseMatrix at(long k, const FreeComplex& src, const FreeComplex& dst) const {
        if (k >= 0 && size_t(k) < maps.size()) return maps[k];
        return SparseMatrix(dst.dim(k), src.dim(k));
    }

    static ChainMap identity(const FreeComplex& c) {
        ChainMap f;
        for (size_t n : c.dims) {
            SparseMatrix m(n, n);
            for (size_t i = 0; i < n; ++i) m.add(i, i, 1);
            f.maps.push_back(std::move(m));
        }
        return f;
    }
    static ChainMap zero(const FreeComplex& src, const FreeComplex& dst) {
        ChainMap f;
        for (size_t k = 0; k < src.degrees(); ++k) f.maps.emplace_back(dst.dim(k), src.dim(k));
        return f;
    }
};

inline ValidationReport check_chain_map(const ChainMap& f, const FreeComplex& a, const FreeComplex& b) {
    ValidationReport rep;
    const size_t n = std::max(a.degrees(), b.degrees());
    for (size_t k = 0; k < n; ++k) {
        auto fk = f.at(k, a, b);
        if (fk.rows() != b.dim(k) || fk.cols() != a.dim(k)) {
            rep.add("map in degree " + std::to_string(k) + " has the wrong shape");
            continue;
        }
        auto lhs = b.diff(k) * fk;
        auto rhs = f.at(k + 1, a, b) * a.diff(k);
        if (!(lhs.dense() == rhs.dense())) rep.add("square in degree " + std::to_string(k) + " does not commute");
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Cohomology over Z and Q.

struct CohomologyGroup {
    size_t degree = 0;
    Ring ring = Ring::Integers;
    size_t free_rank = 0;               // over Q: the dimension
    std::vector<Integer> torsion;       // invariant factors > 1
    std::vector<QVector> free_generators;
    std::vector<QVector> torsion_generators;
    bool guaranteed = true;

    MixedGroup as_mixed() const {
        MixedGroup g;
        if (ring == Ring::Rationals)
            g.q_rank = free_rank;
        else
            g.z_rank = free_rank;
        g.torsion = torsion;
        return g;
    }
    std::string str() const { return as_mixed().str(); }
};

namespace detail {

/// Integer kernel basis (columns) of an integer matrix via Smith form.
inline ZMatrix integer_kernel(const ZMatrix& m) {
    auto snf = smith_normal_form(m, true);
    const size_t r = snf.rank();
    ZMatrix k(m.cols(), m.cols() - r);
    for (size_t j = r; j < m.cols(); ++j)
        for (size_t i = 0; i < m.cols(); ++i) k(i, j - r) = snf.V(i, j);
    return k;
}

}  // namespace detail

/// Coordinates of integral cocycles in the generator basis of H^k(C; Z).
struct IntegralCoordinates {
    ZMatrix kernel;                 // columns: integer basis of Z^k
    ZMatrix to_smith;               // U' : kernel coordinates -> Smith coordinates
    std::vector<Integer> diagonal;  // Smith diagonal of the boundary lattice, padded with 0
    size_t first_generator = 0;     // Smith coordinates below this index are killed (unit divisors)

    /// Coordinates of a cocycle in the generators (torsion entries reduced mod their order).
    ZVector operator()(const QVector& x) const {
        auto c = solve(to_rational(kernel), x);
        if (!c) throw Error(ErrorKind::Internal, "coordinates: not a cocycle");
        ZVector kc(c->size());
        for (size_t i = 0; i < c->size(); ++i) {
            if (!is_integral((*c)[i])) throw Error(ErrorKind::Internal, "coordinates: not an integral cocycle");
            kc[i] = (*c)[i].get_num();
        }
        ZVector out;
        for (size_t i = first_generator; i < to_smith.rows(); ++i) {
            Integer v = 0;
            for (size_t j = 0; j < kc.size(); ++j) v += to_smith(i, j) * kc[j];
            if (diagonal[i] != 0) {
                v %= diagonal[i];
                if (v < 0) v += diagonal[i];
            }
            out.push_back(v);
        }
        return out;
    }
};

/// H^k over Z with generators and a coordinate map (dense; desk-scale complexes).
inline CohomologyGroup integral_cohomology(const FreeComplex& c, size_t k, IntegralCoordinates* coords = nullptr) {
    CohomologyGroup h;
    h.degree = k;
    h.ring = Ring::Integers;
    h.guaranteed = long(k) <= c.guaranteed_hi;
    ZMatrix dk = to_integer(c.dense_diff(k));
    ZMatrix kern = detail::integer_kernel(dk);
    const size_t kd = kern.cols();
    ZMatrix prev = to_integer(c.dense_diff(long(k) - 1));
    // boundaries in kernel coordinates
    QMatrix kq = to_rational(kern);
    ZMatrix bc(kd, prev.cols());
    if (kd > 0 && prev.cols() > 0) {
        auto sol = solve(kq, to_rational(prev));
        if (!sol) throw Error(ErrorKind::Internal, "integral_cohomology: d^2 != 0");
        bc = to_integer(*sol);
    }
    auto snf = smith_normal_form(bc, true);
    std::vector<Integer> diag(kd, Integer(0));
    for (size_t i = 0; i < std::min(kd, bc.cols()); ++i) diag[i] = snf.diagonal(i, i);
    // generator i corresponds to column i of kernel * U^{-1}
    ZMatrix gens = kern * snf.U_inverse;
    size_t first = 0;
    while (first < kd && diag[first] == 1) ++first;
    for (size_t i = first; i < kd; ++i) {
        QVector g(kern.rows());
        for (size_t r = 0; r < kern.rows(); ++r) g[r] = Rational(gens(r, i));
        if (diag[i] == 0) {
            ++h.free_rank;
            h.free_generators.push_back(std::move(g));
        } else {
            h.torsion.push_back(diag[i]);
            h.torsion_generators.push_back(std::move(g));
        }
    }
    if (coords) {
        coords->kernel = std::move(kern);
        coords->to_smith = snf.U;
        coords->diagonal = diag;
        coords->first_generator = first;
    }
    return h;
}

/// H^k over Q with a basis of cocycles independent modulo coboundaries.
inline CohomologyGroup rational_cohomology(const FreeComplex& c, size_t k) {
    CohomologyGroup h;
    h.degree = k;
    h.ring = Ring::Rationals;
    h.guaranteed = long(k) <= c.guaranteed_hi;
    QMatrix kern = kernel_basis(c.dense_diff(k));
    QMatrix bnd = column_space(c.dense_diff(long(k) - 1));
    if (bnd.rows() == 0) bnd = QMatrix(c.dim(k), 0);
    QMatrix all = hcat(bnd, kern);
    auto piv = independent_columns(all);
    for (size_t p : piv)
        if (p >= bnd.cols()) h.free_generators.push_back(all.column(p));
    h.free_rank = h.free_generators.size();
    return h;
}

/// Ranks and invariant factors only (sparse; scales to larger complexes).
inline CohomologyGroup cohomology_invariants(const FreeComplex& c, size_t k) {
    CohomologyGroup h;
    h.degree = k;
    h.ring = c.ring == Ring::Rationals ? Ring::Rationals : Ring::Integers;
    h.guaranteed = long(k) <= c.guaranteed_hi;
    size_t rk = sparse_rank(c.diff(k));
    if (c.ring == Ring::Rationals || !c.diff(long(k) - 1).is_integral()) {
        size_t rp = sparse_rank(c.diff(long(k) - 1));
        h.free_rank = c.dim(k) - rk - rp;
        return h;
    }
    auto inv = invariant_factors(c.diff(long(k) - 1));
    h.free_rank = c.dim(k) - rk - inv.size();
    for (const auto& d : inv)
        if (d > 1) h.torsion.push_back(d);
    h.torsion = normalize_torsion(h.torsion);
    return h;
}

/// All degrees 0..top; degrees above guaranteed_hi are marked.
inline std::vector<CohomologyGroup> cohomology(const FreeComplex& c) {
    std::vector<CohomologyGroup> out;
    for (size_t k = 0; k < c.degrees(); ++k) out.push_back(cohomology_invariants(c, k));
    return out;
}

/// Throws a cutoff error when degree k lies outside the guaranteed window.
inline void require_window(const FreeComplex& c, size_t k) {
    if (long(k) > c.guaranteed_hi)
        throw Error(ErrorKind::Cutoff, "degree " + std::to_string(k) + " exceeds the guaranteed window (<= " +
                                           std::to_string(c.guaranteed_hi) + "); raise the cutoff");
}

// ---------------------------------------------------------------------------
// Cones, truncations, filtrations.

struct Cone {
    FreeComplex complex;
    ChainMap inclusion;   // B[-1] -> cone, b |-> (0, b); degree n of the map is from B^{n-1}
    ChainMap projection;  // cone -> A
};

/// cone^n = A^n + B^{n-1}, d(a, b) = (d a, f(a) - d b).
inline Cone mapping_cone(const ChainMap& f, const FreeComplex& a, const FreeComplex& b) {
    auto rep = check_chain_map(f, a, b);
    if (!rep.ok()) throw Error(ErrorKind::Validation, "mapping_cone: " + rep.violations.front());
    const size_t n = std::max(a.degrees(), b.degrees() + 1);
    std::vector<size_t> dims(n);
    for (size_t k = 0; k < n; ++k) dims[k] = a.dim(k) + b.dim(long(k) - 1);
    Cone out;
    out.complex = FreeComplex(dims, a.ring == Ring::Integers && b.ring == Ring::Integers ? Ring::Integers : Ring::Rationals);
    out.complex.guaranteed_hi = std::min(a.guaranteed_hi, b.guaranteed_hi);
    for (size_t k = 0; k < n; ++k) {
        const size_t na = a.dim(k), nb = b.dim(long(k) - 1);
        const size_t ma = a.dim(k + 1);
        auto& d = out.complex.diffs[k];
        auto da = a.diff(k), db = b.diff(long(k) - 1), fk = f.at(k, a, b);
        for (size_t j = 0; j < na; ++j) {
            for (const auto& [i, v] : da.column(j)) d.add(i, j, v);
            for (const auto& [i, v] : fk.column(j)) d.add(ma + i, j, v);
        }
        for (size_t j = 0; j < nb; ++j)
            for (const auto& [i, v] : db.column(j)) d.add(ma + i, na + j, -v);
        SparseMatrix inc(dims[k], nb), proj(na, dims[k]);
        for (size_t j = 0; j < nb; ++j) inc.add(na + j, j, 1);
        for (size_t j = 0; j < na; ++j) proj.add(j, j, 1);
        out.inclusion.maps.push_back(std::move(inc));
        out.projection.maps.push_back(std::move(proj));
    }
    return out;
}

/// Keep degrees >= p (at_or_above) or < p; other degrees become zero.
inline FreeComplex truncate(const FreeComplex& c, size_t p, bool at_or_above) {
    auto keep = [&](size_t k) { return at_or_above ? k >= p : k < p; };
    std::vector<size_t> dims(c.degrees());
    for (size_t k = 0; k < dims.size(); ++k) dims[k] = keep(k) ? c.dims[k] : 0;
    FreeComplex out(dims, c.ring);
    out.guaranteed_hi = c.guaranteed_hi;
    for (size_t k = 0; k + 1 < dims.size(); ++k)
        if (keep(k) && keep(k + 1)) out.diffs[k] = c.diffs[k];
    return out;
}

/// Decreasing filtration by differential-stable subspaces: span(r, k) spans F^r C^k.
struct Filtration {
    std::string name;
    std::vector<std::vector<QMatrix>> spans;  // [r][k]; r beyond the stored range gives zero

    QMatrix span(size_t r, size_t k, const FreeComplex& c) const {
        if (r < spans.size() && k < spans[r].size()) return spans[r][k];
        return QMatrix(c.dim(k), 0);
    }

    /// Filtration bete: F^r C^k = C^k for k >= r, zero otherwise.
    static Filtration bete(const FreeComplex& c) {
        Filtration f{"sigma", {}};
        for (size_t r = 0; r <= c.degrees(); ++r) {
            std::vector<QMatrix> row;
            for (size_t k = 0; k < c.degrees(); ++k) row.push_back(k >= r ? QMatrix::identity(c.dims[k]) : QMatrix(c.dims[k], 0));
            f.spans.push_back(std::move(row));
        }
        return f;
    }

    /// Filtration by a grading of the basis: F^r C^k = span of basis elements with weight >= r.
    static Filtration by_weight(const FreeComplex& c, const std::vector<std::vector<size_t>>& weight, size_t max_weight,
                                std::string name) {
        Filtration f{std::move(name), {}};
        for (size_t r = 0; r <= max_weight + 1; ++r) {
            std::vector<QMatrix> row;
            for (size_t k = 0; k < c.degrees(); ++k) {
                std::vector<QVector> cols;
                for (size_t i = 0; i < c.dims[k]; ++i)
                    if (weight[k][i] >= r) {
                        QVector e(c.dims[k], Rational(0));
                        e[i] = 1;
                        cols.push_back(std::move(e));
                    }
                row.push_back(QMatrix::from_columns(c.dims[k], cols));
            }
            f.spans.push_back(std::move(row));
        }
        return f;
    }

    /// The trivial filtration F^r = C for every r.
    static Filtration whole(const FreeComplex& c, size_t max_r) {
        Filtration f{"whole", {}};
        for (size_t r = 0; r <= max_r; ++r) {
            std::vector<QMatrix> row;
            for (size_t k = 0; k < c.degrees(); ++k) row.push_back(QMatrix::identity(c.dims[k]));
            f.spans.push_back(std::move(row));
        }
        return f;
    }

    /// The filtration shifted: (F[s])^r = F^{r+s}.
    Filtration shifted(size_t s) const {
        Filtration f{name, {}};
        for (size_t r = s; r < spans.size(); ++r) f.spans.push_back(spans[r]);
        return f;
    }
};

inline bool span_contains(const QMatrix& big, const QMatrix& small) {
    if (small.cols() == 0) return true;
    if (big.cols() == 0) return small.is_zero();
    return solve(big, small).has_value();
}

inline ValidationReport validate_filtration(const FreeComplex& c, const Filtration& f) {
    ValidationReport rep;
    for (size_t k = 0; k < c.degrees(); ++k)
        if (rank(f.span(0, k, c)) != c.dims[k]) rep.add("F^0 is not the whole complex in degree " + std::to_string(k));
    for (size_t r = 0; r < f.spans.size(); ++r)
        for (size_t k = 0; k < c.degrees(); ++k) {
            QMatrix s = f.span(r, k, c);
            if (s.rows() != c.dims[k]) {
                rep.add("F^" + std::to_string(r) + " degree " + std::to_string(k) + " has the wrong ambient dimension");
                continue;
            }
            if (!span_contains(f.span(r, k, c), f.span(r + 1, k, c)))
                rep.add("F^" + std::to_string(r + 1) + " not contained in F^" + std::to_string(r) + " in degree " + std::to_string(k));
            QMatrix ds = c.dense_diff(k) * s;
            if (!span_contains(f.span(r, k + 1, c), ds)) {
                // witness: first column leaving the subspace
                for (size_t j = 0; j < ds.cols(); ++j)
                    if (!span_contains(f.span(r, k + 1, c), select_columns(ds, {j}))) {
                        rep.add("F^" + std::to_string(r) + " not differential-stable in degree " + std::to_string(k) +
                                ": spanning vector " + std::to_string(j) + " leaves it");
                        break;
                    }
            }
        }
    return rep;
}

/// 0 -> F^r -> C -> C / F^r -> 0 with induced differentials.
struct FiltrationPieces {
    FreeComplex sub;
    FreeComplex quotient;
    std::vector<QMatrix> sub_basis;    // columns: basis of F^r C^k in ambient coordinates
    std::vector<QMatrix> quotient_map; // C^k -> quotient coordinates
};

inline FiltrationPieces filtration_pieces(const FreeComplex& c, const Filtration& f, size_t r) {
    FiltrationPieces out;
    std::vector<size_t> sd, qd;
    for (size_t k = 0; k < c.degrees(); ++k) {
        QMatrix b = column_space(f.span(r, k, c));
        if (b.rows() != c.dims[k]) b = QMatrix(c.dims[k], 0);
        QMatrix p = projection_killing(b, c.dims[k]);
        sd.push_back(b.cols());
        qd.push_back(p.rows());
        out.sub_basis.push_back(std::move(b));
        out.quotient_map.push_back(std::move(p));
    }
    out.sub = FreeComplex(sd, Ring::Rationals);
    out.quotient = FreeComplex(qd, Ring::Rationals);
    out.sub.guaranteed_hi = out.quotient.guaranteed_hi = c.guaranteed_hi;
    for (size_t k = 0; k + 1 < c.degrees(); ++k) {
        QMatrix d = c.dense_diff(k);
        // sub: solve B_{k+1} X = d B_k
        if (sd[k] > 0) {
            QMatrix img = d * out.sub_basis[k];
            QMatrix x(sd[k + 1], sd[k]);
            if (!img.is_zero()) {
                auto sol = sd[k + 1] ? solve(out.sub_basis[k + 1], img) : std::nullopt;
                if (!sol) throw Error(ErrorKind::Validation, "filtration_pieces: F^" + std::to_string(r) + " not differential-stable in degree " + std::to_string(k));
                x = *sol;
            }
            out.sub.diffs[k] = SparseMatrix::from_dense(x);
        }
        // quotient: choose a section of the projection, push d through
        if (qd[k] > 0) {
            const QMatrix& p = out.quotient_map[k];
            auto sec = solve(p, QMatrix::identity(qd[k]));
            out.quotient.diffs[k] = SparseMatrix::from_dense(out.quotient_map[k + 1] * (d * *sec));
        }
    }
    return out;
}

/// Induced map on rational cohomology in degree k, in the generator bases of rational_cohomology.
inline QMatrix induced_map(const ChainMap& f, const FreeComplex& a, const FreeComplex& b, size_t k) {
    auto ha = rational_cohomology(a, k);
    auto hb = rational_cohomology(b, k);
    QMatrix bnd = column_space(b.dense_diff(long(k) - 1));
    if (bnd.rows() != b.dim(k)) bnd = QMatrix(b.dim(k), 0);
    QMatrix basis = hcat(QMatrix::from_columns(b.dim(k), hb.free_generators), bnd);
    QMatrix out(hb.free_rank, ha.free_rank);
    auto fk = f.at(k, a, b);
    for (size_t j = 0; j < ha.free_rank; ++j) {
        auto img = fk * ha.free_generators[j];
        auto sol = solve(basis, img);
        if (!sol) throw Error(ErrorKind::Internal, "induced_map: image is not a cocycle");
        for (size_t i = 0; i < hb.free_rank; ++i) out(i, j) = (*sol)[i];
    }
    return out;
}

/// Induced map on integral cohomology in degree k, in the generator bases of
/// integral_cohomology (torsion coordinates reduced mod their order).
inline ZMatrix induced_map_integral(const ChainMap& f, const FreeComplex& a, const FreeComplex& b, size_t k) {
    auto ha = integral_cohomology(a, k);
    IntegralCoordinates cb;
    auto hb = integral_cohomology(b, k, &cb);
    auto fk = f.at(k, a, b);
    std::vector<QVector> gens = ha.free_generators;
    gens.insert(gens.end(), ha.torsion_generators.begin(), ha.torsion_generators.end());
    const size_t rows = hb.free_rank + hb.torsion.size();
    ZMatrix out(rows, gens.size());
    for (size_t j = 0; j < gens.size(); ++j) {
        auto c = cb(fk * gens[j]);
        // coordinate order of cb: torsion (ascending divisor) first, then free; reorder free first
        for (size_t i = 0; i < hb.torsion.size(); ++i) out(hb.free_rank + i, j) = c[i];
        for (size_t i = 0; i < hb.free_rank; ++i) out(i, j) = c[hb.torsion.size() + i];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Complexes of subquotients M^k / N^k of Q^{n_k}: covers Z, Q, Q/Z coefficients,
// filtered pieces, quotients and mixed cones in one exact model.

inline MixedSubgroup full_lattice(size_t n) {
    std::vector<QVector> g;
    for (size_t i = 0; i < n; ++i) {
        QVector e(n, Rational(0));
        e[i] = 1;
        g.push_back(std::move(e));
    }
    return MixedSubgroup::lattice(n, std::move(g));
}

inline MixedSubgroup full_space(size_t n) {
    std::vector<QVector> g;
    for (size_t i = 0; i < n; ++i) {
        QVector e(n, Rational(0));
        e[i] = 1;
        g.push_back(std::move(e));
    }
    return MixedSubgroup::space(n, std::move(g));
}

inline MixedSubgroup space_of(const QMatrix& span) {
    return MixedSubgroup::space(span.rows(), span.columns());
}

/// a + b inside Q^{n_a + n_b}.
inline MixedSubgroup direct_sum(const MixedSubgroup& a, const MixedSubgroup& b) {
    const size_t na = a.ambient(), nb = b.ambient();
    auto embed = [&](const QVector& v, size_t off) {
        QVector w(na + nb, Rational(0));
        for (size_t i = 0; i < v.size(); ++i) w[off + i] = v[i];
        return w;
    };
    std::vector<QVector> l, s;
    for (const auto& v : a.lattice_generators()) l.push_back(embed(v, 0));
    for (const auto& v : b.lattice_generators()) l.push_back(embed(v, na));
    for (const auto& v : a.space_generators()) s.push_back(embed(v, 0));
    for (const auto& v : b.space_generators()) s.push_back(embed(v, na));
    return {na + nb, std::move(l), std::move(s)};
}

struct ModComplex {
    FreeComplex c;                  // rational ambient complex
    std::vector<MixedSubgroup> M;   // cochain groups are M^k / N^k
    std::vector<MixedSubgroup> N;

    size_t degrees() const { return c.degrees(); }
    MixedSubgroup m(long k) const { return k >= 0 && size_t(k) < M.size() ? M[k] : MixedSubgroup::zero(c.dim(k)); }
    MixedSubgroup n(long k) const { return k >= 0 && size_t(k) < N.size() ? N[k] : MixedSubgroup::zero(c.dim(k)); }

    static ModComplex with_coefficients(const FreeComplex& c, Ring ring) {
        ModComplex out{c, {}, {}};
        for (size_t k = 0; k < c.degrees(); ++k) {
            size_t n = c.dims[k];
            out.M.push_back(ring == Ring::Integers ? full_lattice(n) : full_space(n));
            out.N.push_back(ring == Ring::RationalsModOne ? full_lattice(n) : MixedSubgroup::zero(n));
        }
        return out;
    }
    static ModComplex zero_on(const FreeComplex& c) {
        ModComplex out{c, {}, {}};
        for (size_t k = 0; k < c.degrees(); ++k) {
            out.M.push_back(MixedSubgroup::zero(c.dims[k]));
            out.N.push_back(MixedSubgroup::zero(c.dims[k]));
        }
        return out;
    }

    /// {x in M^k : d x in N^{k+1}}
    MixedSubgroup cocycles(size_t k) const { return preimage(m(k), c.dense_diff(k), n(long(k) + 1)); }
    /// N^k + d M^{k-1}
    MixedSubgroup coboundaries(size_t k) const { return n(k) + m(long(k) - 1).image(c.dense_diff(long(k) - 1)); }
    MixedGroup cohomology(size_t k) const { return cocycles(k).quotient_invariants(coboundaries(k)); }

    /// Checks d M subset M and d N subset N.
    ValidationReport check() const {
        ValidationReport rep = c.check();
        for (size_t k = 0; k < degrees(); ++k) {
            auto d = c.dense_diff(k);
            if (!m(long(k) + 1).contains(m(k).image(d))) rep.add("d does not preserve M in degree " + std::to_string(k));
            if (!n(long(k) + 1).contains(n(k).image(d))) rep.add("d does not preserve N in degree " + std::to_string(k));
            if (!m(k).contains(n(k))) rep.add("N not contained in M in degree " + std::to_string(k));
        }
        return rep;
    }
};

/// Chain map between subquotient complexes given by rational matrices.
inline ModComplex mod_cone(const ChainMap& f, const ModComplex& a, const ModComplex& b) {
    auto cone = mapping_cone(f, a.c, b.c);
    ModComplex out{cone.complex, {}, {}};
    for (size_t k = 0; k < cone.complex.degrees(); ++k) {
        out.M.push_back(direct_sum(a.m(k), b.m(long(k) - 1)));
        out.N.push_back(direct_sum(a.n(k), b.n(long(k) - 1)));
    }
    return out;
}

/// Graded pieces of H^j(cone f) from the long exact sequence:
/// 0 -> coker(H^{j-1}A -> H^{j-1}B) -> H^j(cone) -> ker(H^j A -> H^j B) -> 0.
struct ConePieces {
    MixedGroup sub;
    MixedGroup quotient;
    MixedGroup total;
};

inline ConePieces cone_pieces(const ChainMap& f, const ModComplex& a, const ModComplex& b, size_t j) {
    ConePieces out;
    if (j > 0) {
        const size_t k = j - 1;
        auto fk = f.at(k, a.c, b.c).dense();
        auto img = a.cocycles(k).image(fk);
        out.sub = b.cocycles(k).quotient_invariants(b.coboundaries(k) + img);
    }
    auto fj = f.at(j, a.c, b.c).dense();
    auto ker = preimage(a.cocycles(j), fj, b.coboundaries(j));
    out.quotient = ker.quotient_invariants(a.coboundaries(j));
    out.total = assemble(out.sub, out.quotient);
    return out;
}

/// Exactness of  H(P) --alpha--> H(Q) --beta--> H(S)  at H(Q), all as subquotients.
inline bool exact_at(const MixedSubgroup& zp, const QMatrix& alpha, const MixedSubgroup& zq, const MixedSubgroup& bq,
                     const QMatrix& beta, const MixedSubgroup& bs) {
    auto image = zp.image(alpha) + bq;
    auto kernel = preimage(zq, beta, bs);
    return image == kernel;
}

inline QMatrix zero_matrix(size_t rows, size_t cols) { return QMatrix(rows, cols); }

/// Checks image = kernel at the three nodes H^j(cone), H^j(A), H^j(B) for j in [lo, hi].
inline ValidationReport cone_les_exactness(const ChainMap& f, const ModComplex& a, const ModComplex& b, size_t lo, size_t hi) {
    ValidationReport rep;
    auto cone = mod_cone(f, a, b);
    for (size_t j = lo; j <= hi && j < cone.degrees(); ++j) {
        const size_t na = a.c.dim(j), nb = b.c.dim(j), nbm = b.c.dim(long(j) - 1);
        QMatrix proj(na, na + nbm), inc_prev(na + nbm, nbm), inc_next(a.c.dim(j + 1) + nb, nb);
        for (size_t i = 0; i < na; ++i) proj(i, i) = 1;
        for (size_t i = 0; i < nbm; ++i) inc_prev(na + i, i) = 1;
        for (size_t i = 0; i < nb; ++i) inc_next(a.c.dim(j + 1) + i, i) = 1;
        auto fj = f.at(j, a.c, b.c).dense();
        // at H^j(cone): H^{j-1}(B) -> H^j(cone) -> H^j(A)
        bool ok = j > 0 ? exact_at(b.cocycles(j - 1), inc_prev, cone.cocycles(j), cone.coboundaries(j), proj, a.coboundaries(j))
                        : preimage(cone.cocycles(0), proj, a.coboundaries(0)) == cone.coboundaries(0);
        if (!ok) rep.add("not exact at H^" + std::to_string(j) + "(cone)");
        // at H^j(A): H^j(cone) -> H^j(A) -> H^j(B)
        if (!exact_at(cone.cocycles(j), proj, a.cocycles(j), a.coboundaries(j), fj, b.coboundaries(j)))
            rep.add("not exact at H^" + std::to_string(j) + "(A)");
        // at H^j(B): H^j(A) -> H^j(B) -> H^{j+1}(cone)
        if (!exact_at(a.cocycles(j), fj, b.cocycles(j), b.coboundaries(j), inc_next, cone.coboundaries(j + 1)))
            rep.add("not exact at H^" + std::to_string(j) + "(B)");
    }
    return rep;
}

/// H^k(C; Q/Z) from the Bockstein sequence of 0 -> Z -> Q -> Q/Z -> 0:
/// graded pieces coker(H^k Z -> H^k Q) and ker(H^{k+1} Z -> H^{k+1} Q).
inline std::vector<MixedGroup> qz_cohomology(const FreeComplex& c_int) {
    if (!c_int.check().ok()) throw Error(ErrorKind::Validation, "qz_cohomology: not a complex");
    for (const auto& d : c_int.diffs)
        if (!d.is_integral()) throw Error(ErrorKind::Validation, "qz_cohomology: complex is not integral");
    auto z = ModComplex::with_coefficients(c_int, Ring::Integers);
    auto q = ModComplex::with_coefficients(c_int, Ring::Rationals);
    std::vector<MixedGroup> out;
    for (size_t k = 0; k < c_int.degrees(); ++k) {
        MixedGroup sub = q.cocycles(k).quotient_invariants(q.coboundaries(k) + z.cocycles(k));
        MixedGroup quot;
        if (k + 1 < c_int.degrees()) {
            auto ker = intersect(z.cocycles(k + 1), q.coboundaries(k + 1));
            quot = ker.quotient_invariants(z.coboundaries(k + 1));
        }
        out.push_back(assemble(sub, quot));
    }
    return out;
}

/// Invariants of H^k(C; Q/Z) by universal coefficients: (Q/Z)^{rank H^k} plus tors H^{k+1}.
/// Sparse, so usable where qz_cohomology's dense subgroup arithmetic is too slow.
inline MixedGroup qz_invariants(const FreeComplex& c_int, size_t k) {
    MixedGroup g;
    g.qz_rank = cohomology_invariants(c_int, k).free_rank;
    if (k + 1 < c_int.degrees()) g.torsion = cohomology_invariants(c_int, k + 1).torsion;
    return g;
}

}  // namespace grpd
