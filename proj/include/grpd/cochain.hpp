#pragma once

#include "grpd/complex.hpp"
#include "grpd/nerve.hpp"

#include <memory>

namespace grpd {

enum class LatticeTag { Zero, Integers, Rationals };

inline std::string lattice_name(LatticeTag l) {
    switch (l) {
        case LatticeTag::Zero: return "0";
        case LatticeTag::Integers: return "Z";
        case LatticeTag::Rationals: return "Q";
    }
    return "?";
}

struct CoefficientSpec {
    Ring ring = Ring::Integers;
    LatticeTag lattice = LatticeTag::Integers;

    ValidationReport validate() const {
        ValidationReport rep;
        if (ring == Ring::RationalsModOne && lattice != LatticeTag::Integers)
            rep.add("Q/Z coefficients require the lattice Z");
        return rep;
    }
    bool operator==(const CoefficientSpec&) const = default;
};

/// A^{r,s}: normalized s-cochains of X_r.  delta' : A^{r,s} -> A^{r+1,s} (alternating sum of
/// eps_i^*), delta'' : A^{r,s} -> A^{r,s+1} (internal coboundary).  They commute.
class DoubleComplex {
public:
    DoubleComplex(std::shared_ptr<const NerveDiagram> nerve, CoefficientSpec coeff)
        : nerve_(std::move(nerve)), coeff_(coeff) {
        auto rep = coeff_.validate();
        if (!rep.ok()) throw Error(ErrorKind::Validation, rep.violations.front());
        const auto& N = *nerve_;
        const size_t R = N.cutoff(), S = N.internal_top();
        dprime_.assign(R + 1, std::vector<SparseMatrix>(S + 1));
        ddprime_.assign(R + 1, std::vector<SparseMatrix>(S + 1));
        for (size_t r = 0; r <= R; ++r)
            for (size_t s = 0; s <= S; ++s) {
                // delta'
                SparseMatrix dp(r < R ? dim(r + 1, s) : 0, dim(r, s));
                if (r < R)
                    for (size_t row = 0; row < dim(r + 1, s); ++row) {
                        size_t y = N.basis(r + 1, s)[row];
                        for (size_t i = 0; i <= r + 1; ++i) {
                            size_t col = N.basis_position(r, s, N.face(r + 1, i, s, y));
                            if (col != SIZE_MAX) dp.add(row, col, i % 2 ? -1 : 1);
                        }
                    }
                dprime_[r][s] = std::move(dp);
                // delta''
                SparseMatrix dd(s < S ? dim(r, s + 1) : 0, dim(r, s));
                if (s < S && s < N.level(r).top())
                    for (size_t row = 0; row < dim(r, s + 1); ++row) {
                        size_t y = N.basis(r, s + 1)[row];
                        for (size_t i = 0; i <= s + 1; ++i) {
                            size_t col = N.basis_position(r, s, N.level(r).face(s + 1, i, y));
                            if (col != SIZE_MAX) dd.add(row, col, i % 2 ? -1 : 1);
                        }
                    }
                ddprime_[r][s] = std::move(dd);
            }
    }

    const NerveDiagram& nerve() const { return *nerve_; }
    std::shared_ptr<const NerveDiagram> nerve_ptr() const { return nerve_; }
    const CoefficientSpec& coefficients() const { return coeff_; }
    size_t cutoff() const { return nerve_->cutoff(); }
    size_t internal_top() const { return nerve_->internal_top(); }
    size_t dim(size_t r, size_t s) const { return nerve_->basis(r, s).size(); }

    const SparseMatrix& delta_prime(size_t r, size_t s) const { return dprime_[r][s]; }
    const SparseMatrix& delta_dprime(size_t r, size_t s) const { return ddprime_[r][s]; }

    ValidationReport check() const {
        ValidationReport rep;
        const size_t R = cutoff(), S = internal_top();
        for (size_t r = 0; r <= R; ++r)
            for (size_t s = 0; s <= S; ++s) {
                auto at = " at (" + std::to_string(r) + "," + std::to_string(s) + ")";
                if (r + 1 < R + 1 && r + 2 <= R && !(dprime_[r + 1][s] * dprime_[r][s]).is_zero()) rep.add("delta' delta' != 0" + at);
                if (s + 2 <= S && !(ddprime_[r][s + 1] * ddprime_[r][s]).is_zero()) rep.add("delta'' delta'' != 0" + at);
                if (r < R && s < S && !((ddprime_[r + 1][s] * dprime_[r][s]).dense() == (dprime_[r][s + 1] * ddprime_[r][s]).dense()))
                    rep.add("delta' and delta'' do not commute" + at);
            }
        return rep;
    }

private:
    std::shared_ptr<const NerveDiagram> nerve_;
    CoefficientSpec coeff_;
    std::vector<std::vector<SparseMatrix>> dprime_;
    std::vector<std::vector<SparseMatrix>> ddprime_;
};

struct BasisLabel {
    size_t r = 0, s = 0, x = 0;  // simplex x of X_r at internal level s
    bool operator==(const BasisLabel&) const = default;
};

/// Total complex: C^k = sum_{r+s=k} A^{r,s}, D = delta' + (-1)^r delta''.
struct TotalComplex {
    FreeComplex complex;
    std::vector<std::vector<BasisLabel>> labels;           // per degree
    std::vector<std::vector<size_t>> block_offset;         // [k][r] start of A^{r,k-r} in C^k
    std::shared_ptr<const NerveDiagram> nerve;
    CoefficientSpec coeff;

    size_t degrees() const { return complex.degrees(); }
    size_t dim(long k) const { return complex.dim(k); }
    size_t cutoff() const { return nerve->cutoff(); }

    /// Position in C^{r+s} of the simplex x in X_r level s, or SIZE_MAX when degenerate.
    size_t index(size_t r, size_t s, size_t x) const {
        size_t k = r + s;
        if (k >= degrees() || r > cutoff() || s > nerve->level(r).top()) return SIZE_MAX;
        size_t p = nerve->basis_position(r, s, x);
        return p == SIZE_MAX ? SIZE_MAX : block_offset[k][r] + p;
    }

    /// Column index r of each basis element, the weight of the column filtration.
    std::vector<std::vector<size_t>> column_weights() const {
        std::vector<std::vector<size_t>> w;
        for (const auto& l : labels) {
            std::vector<size_t> v;
            for (const auto& b : l) v.push_back(b.r);
            w.push_back(std::move(v));
        }
        return w;
    }
};

inline TotalComplex total_complex(const DoubleComplex& dc) {
    TotalComplex t;
    t.nerve = dc.nerve_ptr();
    t.coeff = dc.coefficients();
    const size_t R = dc.cutoff(), S = dc.internal_top();
    const size_t top = R + S;
    std::vector<size_t> dims(top + 1, 0);
    t.labels.resize(top + 1);
    t.block_offset.assign(top + 1, std::vector<size_t>(R + 1, 0));
    for (size_t k = 0; k <= top; ++k)
        for (size_t r = 0; r <= std::min(k, R); ++r) {
            t.block_offset[k][r] = dims[k];
            size_t s = k - r;
            if (s > S) continue;
            for (size_t x : dc.nerve().basis(r, s)) t.labels[k].push_back({r, s, x});
            dims[k] += dc.dim(r, s);
        }
    Ring ring = dc.coefficients().ring;
    t.complex = FreeComplex(dims, ring == Ring::Rationals ? Ring::Rationals : Ring::Integers);
    t.complex.guaranteed_hi = long(R) - 1;
    for (size_t k = 0; k < top; ++k) {
        auto& d = t.complex.diffs[k];
        for (size_t r = 0; r <= std::min(k, R); ++r) {
            size_t s = k - r;
            if (s > S) continue;
            size_t col0 = t.block_offset[k][r];
            if (r < R) {
                size_t row0 = t.block_offset[k + 1][r + 1];
                const auto& m = dc.delta_prime(r, s);
                for (size_t j = 0; j < m.cols(); ++j)
                    for (const auto& [i, v] : m.column(j)) d.add(row0 + i, col0 + j, v);
            }
            if (s < S) {
                size_t row0 = t.block_offset[k + 1][r];
                const auto& m = dc.delta_dprime(r, s);
                for (size_t j = 0; j < m.cols(); ++j)
                    for (const auto& [i, v] : m.column(j)) d.add(row0 + i, col0 + j, r % 2 ? -v : v);
            }
        }
    }
    return t;
}

/// Convenience: nerve -> double complex -> total complex.
inline TotalComplex total_complex(const NerveDiagram& n, CoefficientSpec coeff = {}) {
    return total_complex(DoubleComplex(std::make_shared<const NerveDiagram>(n), coeff));
}

/// Element of C^degree of a total complex, rational coordinates in the label basis.
struct TotalCochain {
    size_t degree = 0;
    QVector coords;

    static TotalCochain zero(const TotalComplex& t, size_t k) { return {k, QVector(t.dim(k), Rational(0))}; }
    static TotalCochain unit(const TotalComplex& t) {
        // 1 on every basis element of A^{0,0}
        auto u = zero(t, 0);
        for (size_t i = 0; i < u.coords.size(); ++i) u.coords[i] = 1;
        return u;
    }

    bool is_zero() const { return grpd::is_zero(coords); }
    bool is_integral() const { return grpd::is_integral(coords); }
    bool operator==(const TotalCochain& o) const { return degree == o.degree && coords == o.coords; }

    TotalCochain operator+(const TotalCochain& o) const {
        check_same(o);
        return {degree, add(coords, o.coords)};
    }
    TotalCochain operator-(const TotalCochain& o) const {
        check_same(o);
        return {degree, sub(coords, o.coords)};
    }
    TotalCochain operator-() const { return {degree, scale(Rational(-1), coords)}; }
    friend TotalCochain operator*(const Rational& s, const TotalCochain& a) { return {a.degree, scale(s, a.coords)}; }

    /// Value on the basis element labelled (r, s, x); zero on degenerate simplices.
    Rational value(const TotalComplex& t, size_t r, size_t s, size_t x) const {
        size_t i = t.index(r, s, x);
        return i == SIZE_MAX ? Rational(0) : coords[i];
    }

    /// Component in A^{r, degree - r} (zero elsewhere).
    TotalCochain component(const TotalComplex& t, size_t r) const {
        TotalCochain out = *this;
        for (size_t i = 0; i < coords.size(); ++i)
            if (t.labels[degree][i].r != r) out.coords[i] = 0;
        return out;
    }

private:
    void check_same(const TotalCochain& o) const {
        if (degree != o.degree || coords.size() != o.coords.size())
            throw Error(ErrorKind::Internal, "cochain degree mismatch");
    }
};

inline TotalCochain D(const TotalComplex& t, const TotalCochain& a) {
    return {a.degree + 1, t.complex.apply_d(a.degree, a.coords)};
}

/// Cup product: (a u b)(y) = sum (-1)^{q r} a(front_{p,q} y) b(back_{r,s} y) over
/// a in A^{p,q}, b in A^{r,s}; fronts/backs taken in both simplicial directions.
inline TotalCochain cup(const TotalComplex& t, const TotalCochain& a, const TotalCochain& b) {
    const size_t m = a.degree, n = b.degree, k = m + n;
    if (k >= t.degrees()) return {k, {}};
    const auto& N = *t.nerve;
    TotalCochain out = TotalCochain::zero(t, k);
    for (size_t idx = 0; idx < t.dim(k); ++idx) {
        const auto& lab = t.labels[k][idx];
        const size_t R = lab.r, S = lab.s;
        Rational acc = 0;
        for (size_t p = 0; p <= std::min(R, m); ++p) {
            const size_t q = m - p;
            if (q > S) continue;
            const size_t r = R - p, s = S - q;
            // front: drop the last R-p arrows, then the last S-q internal vertices
            size_t f = lab.x;
            for (size_t rr = R; rr > p; --rr) f = N.face(rr, rr, S, f);
            for (size_t ss = S; ss > q; --ss) f = N.level(p).face(ss, ss, f);
            Rational av = a.value(t, p, q, f);
            if (av == 0) continue;
            size_t g = lab.x;
            for (size_t rr = R; rr > r; --rr) g = N.face(rr, 0, S, g);
            for (size_t ss = S; ss > s; --ss) g = N.level(r).face(ss, 0, g);
            Rational bv = b.value(t, r, s, g);
            if (bv == 0) continue;
            if ((q * r) % 2)
                acc -= av * bv;
            else
                acc += av * bv;
        }
        out.coords[idx] = acc;
    }
    return out;
}

/// a^{u k}, with a^{u 0} the unit.
inline TotalCochain cup_power(const TotalComplex& t, const TotalCochain& a, size_t k) {
    TotalCochain out = TotalCochain::unit(t);
    for (size_t i = 0; i < k; ++i) out = cup(t, out, a);
    return out;
}

/// Pullback along a nerve morphism src -> dst.
inline TotalCochain pullback(const NerveMorphism& f, const TotalComplex& src, const TotalComplex& dst, const TotalCochain& a) {
    TotalCochain out = TotalCochain::zero(src, a.degree);
    for (size_t i = 0; i < out.coords.size(); ++i) {
        const auto& lab = src.labels[a.degree][i];
        out.coords[i] = a.value(dst, lab.r, lab.s, f(lab.r, lab.s, lab.x));
    }
    return out;
}

/// Cochain-level chain map of a nerve morphism (pullback in every degree).
inline ChainMap pullback_map(const NerveMorphism& f, const TotalComplex& src, const TotalComplex& dst) {
    ChainMap out;
    for (size_t k = 0; k < src.degrees(); ++k) {
        SparseMatrix m(src.dim(k), dst.dim(k));
        for (size_t i = 0; i < src.dim(k); ++i) {
            const auto& lab = src.labels[k][i];
            size_t j = dst.index(lab.r, lab.s, f(lab.r, lab.s, lab.x));
            if (j != SIZE_MAX) m.add(i, j, 1);
        }
        out.maps.push_back(std::move(m));
    }
    return out;
}

}  // namespace grpd
