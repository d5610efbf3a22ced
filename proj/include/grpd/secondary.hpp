#pragma once

#include "grpd/cochain.hpp"

namespace grpd {

/// Input of the secondary-cohomology operations. `model` is a cochain complex with
/// integral differential (typically a total complex); forms and cochains share its basis.
struct SecondaryQuery {
    SecondaryQuery() = default;
    explicit SecondaryQuery(FreeComplex m) : model(std::move(m)) {}

    FreeComplex model{std::vector<size_t>{}};
    LatticeTag lambda = LatticeTag::Integers;
    Filtration filtration;  // empty name -> filtration bete
    size_t k = 1;
    size_t r = 1;
    size_t n = 0;

    const Filtration& F() const {
        if (filtration.spans.empty()) {
            if (bete_.spans.empty()) bete_ = Filtration::bete(model);
            return bete_;
        }
        return filtration;
    }

private:
    mutable Filtration bete_;
};

// ---------------------------------------------------------------------------
// Building blocks as subquotient complexes on the ambient model.

/// C^*(Λ) for the lattice tag: Z-lattice, Q-space, or zero.
inline ModComplex lambda_cochains(const FreeComplex& c, LatticeTag l) {
    switch (l) {
        case LatticeTag::Integers: return ModComplex::with_coefficients(c, Ring::Integers);
        case LatticeTag::Rationals: return ModComplex::with_coefficients(c, Ring::Rationals);
        case LatticeTag::Zero: return ModComplex::zero_on(c);
    }
    return ModComplex::zero_on(c);
}

/// C^*(Q / Λ): rational cochains modulo Λ-cochains.
inline ModComplex quotient_cochains(const FreeComplex& c, LatticeTag l) {
    ModComplex out = ModComplex::with_coefficients(c, Ring::Rationals);
    auto lam = lambda_cochains(c, l);
    out.N = lam.M;
    return out;
}

/// σ_{>=p} F^r as a subcomplex of the model.
inline ModComplex filtered_forms(const FreeComplex& c, const Filtration& f, size_t r, size_t p = 0) {
    ModComplex out{c, {}, {}};
    for (size_t j = 0; j < c.degrees(); ++j) {
        out.M.push_back(j >= p ? space_of(f.span(r, j, c)) : MixedSubgroup::zero(c.dims[j]));
        out.N.push_back(MixedSubgroup::zero(c.dims[j]));
    }
    return out;
}

/// Ω / F^r.
inline ModComplex forms_modulo(const FreeComplex& c, const Filtration& f, size_t r) {
    ModComplex out = ModComplex::with_coefficients(c, Ring::Rationals);
    for (size_t j = 0; j < c.degrees(); ++j) out.N[j] = space_of(f.span(r, j, c));
    return out;
}

inline ModComplex mod_direct_sum(const ModComplex& a, const ModComplex& b) {
    const size_t n = std::max(a.degrees(), b.degrees());
    std::vector<size_t> dims(n);
    for (size_t j = 0; j < n; ++j) dims[j] = a.c.dim(j) + b.c.dim(j);
    ModComplex out{FreeComplex(dims, Ring::Rationals), {}, {}};
    out.c.guaranteed_hi = std::min(a.c.guaranteed_hi, b.c.guaranteed_hi);
    for (size_t j = 0; j < n; ++j) {
        auto da = a.c.diff(j), db = b.c.diff(j);
        const size_t na = a.c.dim(j), ma = a.c.dim(j + 1);
        for (size_t col = 0; col < da.cols(); ++col)
            for (const auto& [i, v] : da.column(col)) out.c.diffs[j].add(i, col, v);
        for (size_t col = 0; col < db.cols(); ++col)
            for (const auto& [i, v] : db.column(col)) out.c.diffs[j].add(ma + i, na + col, v);
        out.M.push_back(direct_sum(a.m(j), b.m(j)));
        out.N.push_back(direct_sum(a.n(j), b.n(j)));
    }
    return out;
}

/// (λ, ω) |-> λ - ω from C ⊕ C to C.
inline ChainMap difference_map(const FreeComplex& c) {
    ChainMap f;
    for (size_t j = 0; j < c.degrees(); ++j) {
        SparseMatrix m(c.dims[j], 2 * c.dims[j]);
        for (size_t i = 0; i < c.dims[j]; ++i) {
            m.add(i, i, 1);
            m.add(i, c.dims[j] + i, -1);
        }
        f.maps.push_back(std::move(m));
    }
    return f;
}

inline void require_query_window(const FreeComplex& c, size_t degree) { require_window(c, degree); }

// ---------------------------------------------------------------------------
// Differential characters.

struct DiffcharResult {
    size_t k = 0;
    MixedGroup group;     // from the exact-sequence recipe
    MixedGroup sub;       // H^{k-1}(C; Q/Λ)
    MixedGroup quotient;  // closed forms in σ_{>=k}F^r whose class reduces to zero
    MixedGroup brute;     // direct cohomology of the subquotient cone
    bool consistent = true;
};

/// The cone of  σ_{>=k}F^r -> C(Q/Λ).
inline ModComplex diffchar_cone(const SecondaryQuery& q) {
    auto a = filtered_forms(q.model, q.F(), q.r, q.k);
    auto b = quotient_cochains(q.model, q.lambda);
    return mod_cone(ChainMap::identity(q.model), a, b);
}

/// Integral model: cone(C(Λ) ⊕ σ_{>=k}F^r -> C(Q)); its H^k is Ĥ^{k-1}_r as well.
inline ModComplex diffchar_integral_model(const SecondaryQuery& q) {
    auto src = mod_direct_sum(lambda_cochains(q.model, q.lambda), filtered_forms(q.model, q.F(), q.r, q.k));
    return mod_cone(difference_map(q.model), src, ModComplex::with_coefficients(q.model, Ring::Rationals));
}

/// Ĥ^{k-1}_r = H^k(cone(σ_{>=k}F^r -> C^*(Q/Λ))).
inline DiffcharResult diffchar_group(const SecondaryQuery& q) {
    if (q.k == 0) throw Error(ErrorKind::Validation, "diffchar: k must be >= 1");
    require_query_window(q.model, q.k);
    auto frep = validate_filtration(q.model, q.F());
    if (!frep.ok()) throw Error(ErrorKind::Validation, "diffchar: " + frep.violations.front());
    DiffcharResult out;
    out.k = q.k;
    auto a = filtered_forms(q.model, q.F(), q.r, q.k);
    auto b = quotient_cochains(q.model, q.lambda);
    auto id = ChainMap::identity(q.model);
    auto pieces = cone_pieces(id, a, b, q.k);
    out.quotient = pieces.quotient;
    if (q.lambda == LatticeTag::Integers)
        out.sub = qz_cohomology(q.model)[q.k - 1];  // Bockstein recipe
    else
        out.sub = pieces.sub;
    out.group = assemble(out.sub, out.quotient);
    out.brute = mod_cone(id, a, b).cohomology(q.k);
    if (q.lambda == LatticeTag::Zero) out.group = out.brute;
    out.consistent = out.group.same_invariants(out.brute) && pieces.sub.same_invariants(out.sub);
    return out;
}

// ---------------------------------------------------------------------------
// Multiplicative cohomology.

struct MHResult {
    size_t degree = 0;  // 2r - n
    MixedGroup group;
    MixedGroup sub;       // coker(H^{j-1}(Λ) ⊕ H^{j-1}(F^r) -> H^{j-1}(Q))
    MixedGroup quotient;  // ker(H^j(Λ) ⊕ H^j(F^r) -> H^j(Q))
    MixedGroup brute;
    std::vector<QVector> generators;
    bool consistent = true;
};

inline size_t mh_degree(const SecondaryQuery& q) {
    if (2 * q.r < q.n) throw Error(ErrorKind::Validation, "mh: 2r - n must be >= 0");
    return 2 * q.r - q.n;
}

/// The cone of  C(Λ) ⊕ F^r -> C(Q),  (λ, ω) |-> λ - ω.
inline ModComplex mh_cone(const SecondaryQuery& q, size_t truncate_below = 0) {
    auto src = mod_direct_sum(lambda_cochains(q.model, q.lambda), filtered_forms(q.model, q.F(), q.r, truncate_below));
    return mod_cone(difference_map(q.model), src, ModComplex::with_coefficients(q.model, Ring::Rationals));
}

/// Representatives of generators of H^j of a subquotient complex.
inline std::vector<QVector> cohomology_generators(const ModComplex& m, size_t j) {
    auto z = m.cocycles(j);
    auto b = m.coboundaries(j);
    std::vector<QVector> out;
    for (const auto& v : z.lattice_basis())
        if (!b.contains(v)) out.push_back(v);
    // a line of cocycles contributes unless the whole line bounds (v itself may bound, as for Q/Z)
    for (const auto& v : z.space_basis())
        if (!b.contains(MixedSubgroup::space(v.size(), {v}))) out.push_back(v);
    return out;
}

/// MH^{2r}_n = H^{2r-n}(cone(C(Λ) ⊕ F^r -> C(Q))).
inline MHResult mh_group(const SecondaryQuery& q) {
    MHResult out;
    out.degree = mh_degree(q);
    require_query_window(q.model, out.degree);
    auto frep = validate_filtration(q.model, q.F());
    if (!frep.ok()) throw Error(ErrorKind::Validation, "mh: " + frep.violations.front());
    auto src = mod_direct_sum(lambda_cochains(q.model, q.lambda), filtered_forms(q.model, q.F(), q.r));
    auto tgt = ModComplex::with_coefficients(q.model, Ring::Rationals);
    auto f = difference_map(q.model);
    auto pieces = cone_pieces(f, src, tgt, out.degree);
    out.sub = pieces.sub;
    out.quotient = pieces.quotient;
    out.group = pieces.total;
    auto cone = mod_cone(f, src, tgt);
    out.brute = cone.cohomology(out.degree);
    out.generators = cohomology_generators(cone, out.degree);
    out.consistent = out.group.same_invariants(out.brute);
    return out;
}

// ---------------------------------------------------------------------------
// The map Ξ : Ĥ^{2r-n-1}_r -> MH^{2r}_n.

/// Coordinates in the degree-k cone spaces.
///   Q/Λ cone:  (a, b)          with a in C^k, b in C^{k-1}
///   MH cone:   ((λ, ω), b)     with λ, ω in C^k, b in C^{k-1}
struct XiLayout {
    size_t nk = 0, nk1 = 0;
    QVector hat(const QVector& a, const QVector& b) const {
        QVector v = a;
        v.insert(v.end(), b.begin(), b.end());
        return v;
    }
    QVector mh(const QVector& l, const QVector& w, const QVector& b) const {
        QVector v = l;
        v.insert(v.end(), w.begin(), w.end());
        v.insert(v.end(), b.begin(), b.end());
        return v;
    }
    QVector slice(const QVector& v, size_t off, size_t len) const { return QVector(v.begin() + off, v.begin() + off + len); }
};

/// Canonical lift of a class in Q/Λ coordinatewise.
inline QVector canonical_lift(const QVector& b, LatticeTag l) {
    if (l != LatticeTag::Integers) return b;
    QVector out;
    for (const auto& x : b) out.push_back(frac_part(x));
    return out;
}

/// Ξ at cocycle level: (a, b) |-> ((a - D b~, a), -b~) with b~ the canonical lift.
inline QVector xi_forward(const FreeComplex& c, size_t k, LatticeTag l, const QVector& hat_cocycle) {
    XiLayout lay{c.dim(k), c.dim(long(k) - 1)};
    QVector a = lay.slice(hat_cocycle, 0, lay.nk);
    QVector bl = canonical_lift(lay.slice(hat_cocycle, lay.nk, lay.nk1), l);
    QVector db = c.apply_d(long(k) - 1, bl);
    return lay.mh(sub(a, db), a, scale(Rational(-1), bl));
}

/// Inverse direction on cocycles: ((λ, ω), b) |-> (ω, -b).
inline QVector xi_backward(const FreeComplex& c, size_t k, const QVector& mh_cocycle) {
    XiLayout lay{c.dim(k), c.dim(long(k) - 1)};
    return lay.hat(lay.slice(mh_cocycle, lay.nk, lay.nk), scale(Rational(-1), lay.slice(mh_cocycle, 2 * lay.nk, lay.nk1)));
}

struct XiResult {
    size_t k = 0;
    MixedGroup hhat;
    MixedGroup mh;
    bool surjective = true;
    size_t generators_checked = 0;
    std::vector<std::string> failures;
    MixedGroup kernel_formula;
    MixedGroup kernel_brute;
    bool kernel_match = true;
    bool rank_balance = true;  // rank Ĥ = rank MH + rank ker, piece by piece
};

inline XiResult xi_check(const SecondaryQuery& q) {
    if (q.lambda == LatticeTag::Rationals) throw Error(ErrorKind::Validation, "xi: requires lambda Z or 0");
    XiResult out;
    const size_t k = mh_degree(q);
    if (k == 0) throw Error(ErrorKind::Validation, "xi: 2r - n must be >= 1");
    out.k = k;
    SecondaryQuery hq = q;
    hq.k = k;
    out.hhat = diffchar_group(hq).group;
    out.mh = mh_group(q).group;
    const auto& c = q.model;
    auto hat_cone = diffchar_cone(hq);
    auto mh = mh_cone(q);
    auto aprime = mh_cone(q, k);
    // surjectivity, generator by generator
    auto hat_z = hat_cone.cocycles(k);
    auto mh_b = mh.coboundaries(k);
    auto gens = cohomology_generators(mh, k);
    // divisible summands: also sample a fractional point on the line
    const size_t ngen = gens.size();
    auto mh_z = mh.cocycles(k);
    for (size_t i = 0; i < ngen; ++i) {
        auto v = scale(make_rational(1, 7), gens[i]);
        if (mh_z.contains(v)) gens.push_back(v);
    }
    for (size_t i = 0; i < gens.size(); ++i) {
        ++out.generators_checked;
        auto y = xi_backward(c, k, gens[i]);
        if (!hat_z.contains(y)) {
            out.surjective = false;
            out.failures.push_back("generator " + std::to_string(i) + " has no preimage cocycle");
            continue;
        }
        auto img = xi_forward(c, k, q.lambda, y);
        if (!mh_b.contains(sub(img, gens[i]))) {
            out.surjective = false;
            out.failures.push_back("generator " + std::to_string(i) + " is not hit modulo coboundaries");
        }
    }
    // kernel: brute force as im d_MH / im d_A' in degree k
    out.kernel_brute = mh_b.quotient_invariants(aprime.coboundaries(k));
    // kernel: F^r C^{k-1} modulo closed forms whose class lies in the image of H(Λ)
    auto w = space_of(q.F().span(q.r, k - 1, c));
    auto lam = lambda_cochains(c, q.lambda);
    auto rat = ModComplex::with_coefficients(c, Ring::Rationals);
    auto admissible = intersect(w, lam.cocycles(k - 1) + rat.coboundaries(k - 1));
    out.kernel_formula = w.quotient_invariants(admissible);
    out.kernel_match = out.kernel_formula.same_invariants(out.kernel_brute);
    out.rank_balance = out.hhat.q_rank == out.mh.q_rank + out.kernel_brute.q_rank &&
                       out.hhat.z_rank == out.mh.z_rank + out.kernel_brute.z_rank &&
                       out.hhat.qz_rank == out.mh.qz_rank + out.kernel_brute.qz_rank;
    return out;
}

// ---------------------------------------------------------------------------
// n = r with the filtration bete: Ξ is an isomorphism.

struct IsoReport {
    size_t r = 0;
    bool iso = true;
    MixedGroup hhat, mh;
    MixedGroup hhat_sub, hhat_quotient;   // graded pieces of Ĥ
    MixedGroup image_sub, image_quotient; // the same pieces transported into MH
    std::vector<std::string> witnesses;
};

inline IsoReport cs_iso_check(const SecondaryQuery& q0) {
    SecondaryQuery q = q0;
    q.n = q.r;
    q.filtration = Filtration::bete(q.model);
    IsoReport out;
    out.r = q.r;
    auto xi = xi_check(q);
    out.hhat = xi.hhat;
    out.mh = xi.mh;
    if (!xi.surjective) {
        out.iso = false;
        for (const auto& f : xi.failures) out.witnesses.push_back("not surjective: " + f);
    }
    if (!xi.kernel_brute.is_zero()) {
        out.iso = false;
        out.witnesses.push_back("kernel is " + xi.kernel_brute.str());
    }
    const size_t k = q.r;
    SecondaryQuery hq = q;
    hq.k = k;
    auto dc = diffchar_group(hq);
    out.hhat_sub = dc.sub;
    out.hhat_quotient = dc.quotient;
    // image of the sub piece {(0, b) : D b in Λ} under Ξ: ((D β, 0), β) with β = -b~
    const auto& c = q.model;
    auto mh = mh_cone(q);
    auto lam = lambda_cochains(c, q.lambda);
    auto betas = preimage(full_space(c.dim(long(k) - 1)), c.dense_diff(long(k) - 1), lam.m(k));
    XiLayout lay{c.dim(k), c.dim(long(k) - 1)};
    QMatrix emb(2 * lay.nk + lay.nk1, lay.nk1);
    QMatrix dk1 = c.dense_diff(long(k) - 1);
    for (size_t j = 0; j < lay.nk1; ++j) {
        for (size_t i = 0; i < lay.nk; ++i) emb(i, j) = dk1(i, j);
        emb(2 * lay.nk + j, j) = 1;
    }
    auto sub_img = betas.image(emb) + mh.coboundaries(k);
    out.image_sub = sub_img.quotient_invariants(mh.coboundaries(k));
    out.image_quotient = mh.cocycles(k).quotient_invariants(sub_img);
    if (!out.image_sub.same_invariants(out.hhat_sub)) {
        out.iso = false;
        out.witnesses.push_back("sub piece " + out.hhat_sub.str() + " maps onto " + out.image_sub.str());
    }
    if (!out.image_quotient.same_invariants(out.hhat_quotient)) {
        out.iso = false;
        out.witnesses.push_back("quotient piece " + out.hhat_quotient.str() + " maps onto " + out.image_quotient.str());
    }
    if (!out.hhat.same_invariants(out.mh)) {
        out.iso = false;
        out.witnesses.push_back("groups differ: " + out.hhat.str() + " vs " + out.mh.str());
    }
    return out;
}

// ---------------------------------------------------------------------------
// ... -> H^{j-1}(Λ) -> H^{j-1}(Ω/F^r) -> MH(j) -> H^j(Λ) -> H^j(Ω/F^r) -> ...

struct LesNode {
    std::string name;
    MixedGroup group;
    bool exact = true;
};

struct LesReport {
    std::vector<LesNode> nodes;
    bool exact() const {
        return std::all_of(nodes.begin(), nodes.end(), [](const LesNode& n) { return n.exact; });
    }
};

inline LesReport mh_les(const SecondaryQuery& q, size_t hi) {
    const auto& c = q.model;
    if (hi + 1 >= c.degrees()) hi = c.degrees() >= 2 ? c.degrees() - 2 : 0;
    auto lam = lambda_cochains(c, q.lambda);
    auto qf = forms_modulo(c, q.F(), q.r);
    auto mh = mh_cone(q);
    auto ident = [&](size_t j) { return QMatrix::identity(c.dim(j)); };
    // β_j : (Ω/F)^j -> MH^{j+1}, ω |-> ((0, -Dω), ω)
    auto beta = [&](size_t j) {
        const size_t n1 = c.dim(j + 1), n0 = c.dim(j);
        QMatrix m(2 * n1 + n0, n0);
        QMatrix d = c.dense_diff(j);
        for (size_t col = 0; col < n0; ++col) {
            for (size_t i = 0; i < n1; ++i) m(n1 + i, col) = -d(i, col);
            m(2 * n1 + col, col) = 1;
        }
        return m;
    };
    // γ_j : MH^j -> C^j(Λ), ((λ, ω), b) |-> λ
    auto gamma = [&](size_t j) {
        const size_t n = c.dim(j);
        QMatrix m(n, 2 * n + c.dim(long(j) - 1));
        for (size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    };
    LesReport rep;
    for (size_t j = 0; j <= hi; ++j) {
        auto js = std::to_string(j);
        LesNode nl{"H^" + js + "(Lambda)", lam.cohomology(j), true};
        nl.exact = j == 0 ? preimage(lam.cocycles(0), ident(0), qf.coboundaries(0)) ==
                                mh.cocycles(0).image(gamma(0)) + lam.coboundaries(0)
                          : exact_at(mh.cocycles(j), gamma(j), lam.cocycles(j), lam.coboundaries(j), ident(j), qf.coboundaries(j));
        LesNode nq{"H^" + js + "(Omega/F^" + std::to_string(q.r) + ")", qf.cohomology(j), true};
        nq.exact = exact_at(lam.cocycles(j), ident(j), qf.cocycles(j), qf.coboundaries(j), beta(j), mh.coboundaries(j + 1));
        LesNode nm{"MH(" + std::to_string(j + 1) + ")", mh.cohomology(j + 1), true};
        nm.exact = exact_at(qf.cocycles(j), beta(j), mh.cocycles(j + 1), mh.coboundaries(j + 1), gamma(j + 1), lam.coboundaries(j + 1));
        if (j == 0) {
            LesNode n0{"MH(0)", mh.cohomology(0), true};
            n0.exact = preimage(mh.cocycles(0), gamma(0), lam.coboundaries(0)) == mh.coboundaries(0);
            rep.nodes.push_back(std::move(n0));
        }
        rep.nodes.push_back(std::move(nl));
        rep.nodes.push_back(std::move(nq));
        rep.nodes.push_back(std::move(nm));
    }
    return rep;
}

}  // namespace grpd
