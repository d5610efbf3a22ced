#pragma once

#include "grpd/smith.hpp"

#include <ostream>
#include <sstream>

namespace grpd {

/// Structured abelian group  Q^q_rank + (Q/Z)^qz_rank + torsion + Z^z_rank.
///
/// Values computed from long exact sequences are associated-graded data; the
/// extension_resolved flag is set only when at most one graded piece is nonzero.
struct MixedGroup {
    size_t q_rank = 0;
    size_t qz_rank = 0;
    std::vector<Integer> torsion;  // invariant factors > 1, each dividing the next
    size_t z_rank = 0;
    bool extension_resolved = true;

    bool is_zero() const { return q_rank == 0 && qz_rank == 0 && torsion.empty() && z_rank == 0; }

    /// Same isomorphism invariants (ignores the flag).
    bool same_invariants(const MixedGroup& o) const {
        return q_rank == o.q_rank && qz_rank == o.qz_rank && torsion == o.torsion && z_rank == o.z_rank;
    }
    bool operator==(const MixedGroup& o) const {
        return same_invariants(o) && extension_resolved == o.extension_resolved;
    }

    std::string str() const {
        std::ostringstream os;
        bool first = true;
        auto part = [&](const std::string& s) {
            os << (first ? "" : " + ") << s;
            first = false;
        };
        if (z_rank) part(z_rank == 1 ? "Z" : "Z^" + std::to_string(z_rank));
        for (const auto& t : torsion) part("Z/" + t.get_str());
        if (q_rank) part(q_rank == 1 ? "Q" : "Q^" + std::to_string(q_rank));
        if (qz_rank) part(qz_rank == 1 ? "Q/Z" : "(Q/Z)^" + std::to_string(qz_rank));
        if (first) os << "0";
        return os.str();
    }
};

inline std::ostream& operator<<(std::ostream& os, const MixedGroup& g) { return os << g.str(); }

/// Invariant factors (>1) of the direct sum of cyclic groups Z/d_i.
inline std::vector<Integer> normalize_torsion(const std::vector<Integer>& ds) {
    std::vector<Integer> nz;
    for (const auto& d : ds)
        if (abs(d) > 1) nz.push_back(abs(d));
    if (nz.empty()) return {};
    ZMatrix m(nz.size(), nz.size());
    for (size_t i = 0; i < nz.size(); ++i) m(i, i) = nz[i];
    std::vector<Integer> out;
    for (const auto& d : smith_normal_form(m, false).divisors)
        if (d > 1) out.push_back(d);
    return out;
}

/// Total invariants of an extension with the given graded pieces.
inline MixedGroup assemble(const MixedGroup& sub, const MixedGroup& quotient) {
    MixedGroup g;
    g.q_rank = sub.q_rank + quotient.q_rank;
    g.qz_rank = sub.qz_rank + quotient.qz_rank;
    g.z_rank = sub.z_rank + quotient.z_rank;
    auto t = sub.torsion;
    t.insert(t.end(), quotient.torsion.begin(), quotient.torsion.end());
    g.torsion = normalize_torsion(t);
    g.extension_resolved = sub.is_zero() || quotient.is_zero();
    return g;
}

/// Projection Q^n -> Q^m whose kernel is exactly the span of the given columns.
inline QMatrix projection_killing(const QMatrix& span, size_t n) {
    if (span.cols() == 0) return QMatrix::identity(n);
    return kernel_basis(span.transpose()).transpose();
}

/// Subgroup of Q^n of the form  Z<lattice generators> + Q<space generators>.
///
/// Canonical data: a projection P killing the space part, and a Smith form of
/// the (denominator-cleared) projected lattice generators.
class MixedSubgroup {
public:
    struct Witness {
        ZVector lattice_coeffs;  // w.r.t. the lattice generators
        QVector space_coeffs;    // w.r.t. the space generators
    };

    MixedSubgroup() = default;
    MixedSubgroup(size_t n, std::vector<QVector> lattice, std::vector<QVector> space)
        : n_(n), lattice_(std::move(lattice)), space_(std::move(space)) {
        QMatrix s = QMatrix::from_columns(n_, space_);
        space_basis_ = column_space(s);
        proj_ = projection_killing(space_basis_, n_);
        QMatrix pg(proj_.rows(), lattice_.size());
        for (size_t j = 0; j < lattice_.size(); ++j) {
            auto c = proj_ * lattice_[j];
            for (size_t i = 0; i < c.size(); ++i) pg(i, j) = c[i];
        }
        den_ = 1;
        for (size_t i = 0; i < pg.rows(); ++i)
            for (size_t j = 0; j < pg.cols(); ++j)
                if (pg(i, j) != 0) mpz_lcm(den_.get_mpz_t(), den_.get_mpz_t(), pg(i, j).get_den_mpz_t());
        ZMatrix m(pg.rows(), pg.cols());
        for (size_t i = 0; i < pg.rows(); ++i)
            for (size_t j = 0; j < pg.cols(); ++j) m(i, j) = Rational(pg(i, j) * den_).get_num();
        snf_ = smith_normal_form(m, true);
    }

    static MixedSubgroup lattice(size_t n, std::vector<QVector> gens) { return {n, std::move(gens), {}}; }
    static MixedSubgroup space(size_t n, std::vector<QVector> gens) { return {n, {}, std::move(gens)}; }
    static MixedSubgroup zero(size_t n) { return {n, {}, {}}; }

    size_t ambient() const { return n_; }
    const std::vector<QVector>& lattice_generators() const { return lattice_; }
    const std::vector<QVector>& space_generators() const { return space_; }
    size_t space_dimension() const { return space_basis_.cols(); }
    /// Rank of the lattice modulo the space part.
    size_t lattice_rank() const { return snf_.rank(); }

    /// Vectors of Q^n whose images form a Z-basis of the lattice modulo the space.
    std::vector<QVector> lattice_basis() const {
        std::vector<QVector> out;
        for (size_t i = 0; i < snf_.rank(); ++i) {
            QVector v(n_, Rational(0));
            for (size_t j = 0; j < lattice_.size(); ++j)
                if (snf_.V(j, i) != 0) v = add(v, scale(Rational(snf_.V(j, i)), lattice_[j]));
            out.push_back(std::move(v));
        }
        return out;
    }
    std::vector<QVector> space_basis() const { return space_basis_.columns(); }

    std::optional<Witness> member(const QVector& t) const {
        assert(t.size() == n_);
        auto pt = proj_ * t;
        ZVector y(pt.size());
        for (size_t i = 0; i < pt.size(); ++i) {
            Rational s = pt[i] * Rational(den_);
            if (!is_integral(s)) return std::nullopt;
            y[i] = s.get_num();
        }
        // U y must be divisible by the divisors; zero beyond the rank
        ZVector uy(y.size(), Integer(0));
        for (size_t i = 0; i < y.size(); ++i)
            for (size_t j = 0; j < y.size(); ++j)
                if (snf_.U(i, j) != 0) uy[i] += snf_.U(i, j) * y[j];
        ZVector x_snf(lattice_.size(), Integer(0));
        for (size_t i = 0; i < uy.size(); ++i) {
            if (i < snf_.rank()) {
                if (uy[i] % snf_.divisors[i] != 0) return std::nullopt;
                x_snf[i] = uy[i] / snf_.divisors[i];
            } else if (uy[i] != 0) {
                return std::nullopt;
            }
        }
        Witness w;
        w.lattice_coeffs.assign(lattice_.size(), Integer(0));
        for (size_t j = 0; j < lattice_.size(); ++j)
            for (size_t i = 0; i < lattice_.size(); ++i)
                if (snf_.V(j, i) != 0) w.lattice_coeffs[j] += snf_.V(j, i) * x_snf[i];
        QVector rest = t;
        for (size_t j = 0; j < lattice_.size(); ++j)
            if (w.lattice_coeffs[j] != 0) rest = sub(rest, scale(Rational(w.lattice_coeffs[j]), lattice_[j]));
        if (space_.empty()) {
            if (!is_zero(rest)) throw Error(ErrorKind::Internal, "MixedSubgroup::member: inconsistent witness");
            return w;
        }
        auto sc = solve(QMatrix::from_columns(n_, space_), rest);
        if (!sc) throw Error(ErrorKind::Internal, "MixedSubgroup::member: space solve failed");
        w.space_coeffs = *sc;
        return w;
    }

    bool contains(const QVector& t) const { return member(t).has_value(); }

    bool contains(const MixedSubgroup& o) const {
        for (const auto& g : o.lattice_)
            if (!contains(g)) return false;
        for (const auto& g : o.space_) {
            auto pg = proj_ * g;
            if (!is_zero(pg)) return false;
        }
        return true;
    }

    bool operator==(const MixedSubgroup& o) const { return contains(o) && o.contains(*this); }

    /// Invariants of this / sub; requires sub to be contained in this.
    MixedGroup quotient_invariants(const MixedSubgroup& sub) const {
        if (!contains(sub)) throw Error(ErrorKind::Internal, "quotient_invariants: not a subgroup");
        // work modulo the space part of sub
        QMatrix pn = sub.proj_;
        auto push = [&](const std::vector<QVector>& vs) {
            std::vector<QVector> out;
            for (const auto& v : vs) out.push_back(pn * v);
            return out;
        };
        const size_t m = pn.rows();
        MixedSubgroup x(m, push(lattice_), push(space_));
        MixedSubgroup w = MixedSubgroup::space(m, push(space_));
        auto lsub = push(sub.lattice_);
        MixedSubgroup l = MixedSubgroup::lattice(m, lsub);
        // rank of (W intersect L) = rank L - rank (L mod W)
        MixedSubgroup l_mod_w(m, lsub, push(space_));
        size_t ell = l.lattice_rank() - l_mod_w.lattice_rank();
        MixedGroup g;
        g.q_rank = w.space_dimension() - ell;
        g.qz_rank = ell;
        // (A mod W) / (B mod W): express B in the lattice basis of x
        auto abasis = x.lattice_basis();
        size_t p = abasis.size();
        ZMatrix coords(p, lsub.size());
        for (size_t j = 0; j < lsub.size(); ++j) {
            auto wit = x.member(lsub[j]);
            if (!wit) throw Error(ErrorKind::Internal, "quotient_invariants: lattice not contained");
            auto c = x.basis_coordinates(*wit);
            for (size_t i = 0; i < p; ++i) coords(i, j) = c[i];
        }
        auto snf = smith_normal_form(coords, false);
        g.z_rank = p - snf.rank();
        for (const auto& d : snf.divisors)
            if (d > 1) g.torsion.push_back(d);
        g.torsion = normalize_torsion(g.torsion);
        g.extension_resolved = true;
        return g;
    }

    /// Invariants of the subgroup itself.
    MixedGroup invariants() const { return quotient_invariants(zero(n_)); }

    /// Image under a linear map.
    MixedSubgroup image(const QMatrix& t) const {
        std::vector<QVector> l, s;
        for (const auto& g : lattice_) l.push_back(t * g);
        for (const auto& g : space_) s.push_back(t * g);
        return {t.rows(), std::move(l), std::move(s)};
    }

    MixedSubgroup operator+(const MixedSubgroup& o) const {
        auto l = lattice_;
        l.insert(l.end(), o.lattice_.begin(), o.lattice_.end());
        auto s = space_;
        s.insert(s.end(), o.space_.begin(), o.space_.end());
        return {n_, std::move(l), std::move(s)};
    }

private:
    /// Coordinates w.r.t. lattice_basis() of a member given by its witness.
    ZVector basis_coordinates(const Witness& w) const {
        // lattice_coeffs = V x ; basis = G V e_i ; coordinates are x restricted to the rank
        ZMatrix vinv_src = snf_.V;
        QMatrix vq = to_rational(vinv_src);
        QVector lc(w.lattice_coeffs.size());
        for (size_t i = 0; i < lc.size(); ++i) lc[i] = Rational(w.lattice_coeffs[i]);
        auto x = solve(vq, lc);
        ZVector out(snf_.rank());
        for (size_t i = 0; i < snf_.rank(); ++i) out[i] = (*x)[i].get_num();
        return out;
    }

    size_t n_ = 0;
    std::vector<QVector> lattice_;
    std::vector<QVector> space_;
    QMatrix space_basis_;
    QMatrix proj_;
    Integer den_ = 1;
    SmithForm snf_;
};

/// {(x, y) : x in Z^a, y in Q^b, A x + B y = 0} as a mixed subgroup of Q^{a+b}.
inline MixedSubgroup mixed_kernel(const QMatrix& int_part, const QMatrix& rat_part) {
    const size_t a = int_part.cols(), b = rat_part.cols();
    const size_t rows = a ? int_part.rows() : rat_part.rows();
    QMatrix full = hcat(a ? int_part : QMatrix(rows, 0), b ? rat_part : QMatrix(rows, 0));
    if (a + b == 0) return MixedSubgroup::zero(0);
    QMatrix k = kernel_basis(full);
    const size_t m = k.cols();
    if (m == 0) return MixedSubgroup::zero(a + b);
    // constrain the first a coordinates to be integral
    QMatrix kx(a, m);
    for (size_t i = 0; i < a; ++i)
        for (size_t j = 0; j < m; ++j) kx(i, j) = k(i, j);
    Integer d = 1;
    for (size_t i = 0; i < a; ++i)
        for (size_t j = 0; j < m; ++j)
            if (kx(i, j) != 0) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), kx(i, j).get_den_mpz_t());
    ZMatrix mz(a, m);
    for (size_t i = 0; i < a; ++i)
        for (size_t j = 0; j < m; ++j) mz(i, j) = Rational(kx(i, j) * d).get_num();
    auto snf = smith_normal_form(mz, true);
    // c = V c'; constraint: d_i c'_i in d Z for i < rank; free otherwise
    std::vector<QVector> lattice, space;
    for (size_t i = 0; i < m; ++i) {
        QVector vc(m);
        for (size_t r = 0; r < m; ++r) vc[r] = Rational(snf.V(r, i));
        QVector v = k * vc;
        if (i < snf.rank()) {
            Rational s(d, snf.divisors[i]);
            s.canonicalize();
            lattice.push_back(scale(s, v));
        } else {
            space.push_back(std::move(v));
        }
    }
    return {a + b, std::move(lattice), std::move(space)};
}

/// {m in M : T m in K}.
inline MixedSubgroup preimage(const MixedSubgroup& m, const QMatrix& t, const MixedSubgroup& k) {
    const auto& g = m.lattice_generators();
    const auto& s = m.space_generators();
    const auto& gk = k.lattice_generators();
    const auto& sk = k.space_generators();
    const size_t rows = t.rows();
    std::vector<QVector> int_cols, rat_cols;
    for (const auto& v : g) int_cols.push_back(t * v);
    for (const auto& v : gk) int_cols.push_back(scale(Rational(-1), v));
    for (const auto& v : s) rat_cols.push_back(t * v);
    for (const auto& v : sk) rat_cols.push_back(scale(Rational(-1), v));
    auto ker = mixed_kernel(QMatrix::from_columns(rows, int_cols), QMatrix::from_columns(rows, rat_cols));
    // parameters are ordered (g, gk, s, sk); map back through (g, s)
    const size_t a = int_cols.size();
    auto param_to_m = [&](const QVector& p) {
        QVector v(m.ambient(), Rational(0));
        for (size_t j = 0; j < g.size(); ++j)
            if (p[j] != 0) v = add(v, scale(p[j], g[j]));
        for (size_t j = 0; j < s.size(); ++j)
            if (p[a + j] != 0) v = add(v, scale(p[a + j], s[j]));
        return v;
    };
    std::vector<QVector> l, sp;
    for (const auto& p : ker.lattice_generators()) l.push_back(param_to_m(p));
    for (const auto& p : ker.space_generators()) sp.push_back(param_to_m(p));
    return {m.ambient(), std::move(l), std::move(sp)};
}

inline MixedSubgroup intersect(const MixedSubgroup& a, const MixedSubgroup& b) {
    return preimage(a, QMatrix::identity(a.ambient()), b);
}

}  // namespace grpd
