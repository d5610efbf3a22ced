#pragma once

#include "grpd/polyform.hpp"
#include "grpd/secondary.hpp"

namespace grpd {

/// Line bundle with connection on a nerve: integral c (degree 2), connection h (degree 1),
/// curvature ω (degree 2) with Dh = ω - c.
struct DifferentialCocycle {
    TotalCochain c, h, omega;
    std::optional<bool> declared_connection;  // when set, checked against the components of ω

    static DifferentialCocycle trivial(const TotalComplex& t) {
        return {TotalCochain::zero(t, 2), TotalCochain::zero(t, 1), TotalCochain::zero(t, 2), std::nullopt};
    }
    /// ω := Dh + c.
    static DifferentialCocycle from_connection(const TotalComplex& t, const TotalCochain& c, const TotalCochain& h) {
        return {c, h, D(t, h) + c, std::nullopt};
    }
};

inline std::string label_str(const TotalComplex& t, size_t k, size_t i) {
    const auto& l = t.labels[k][i];
    return "(" + std::to_string(l.r) + "," + std::to_string(l.s) + "," + std::to_string(l.x) + ")";
}

/// True iff ω has no component in A^{r,s} with r > 0.
inline bool is_connection(const TotalComplex& t, const DifferentialCocycle& d) {
    for (size_t i = 0; i < d.omega.coords.size(); ++i)
        if (t.labels[2][i].r > 0 && d.omega.coords[i] != 0) return false;
    return true;
}

inline ValidationReport validate_bundle(const TotalComplex& t, const DifferentialCocycle& d) {
    ValidationReport rep;
    if (t.degrees() < 4) {
        rep.add("model must reach total degree 3");
        return rep;
    }
    auto shape = [&](const TotalCochain& a, size_t k, const char* name) {
        if (a.degree != k || a.coords.size() != t.dim(k)) {
            rep.add(std::string(name) + ": expected degree " + std::to_string(k) + " with " + std::to_string(t.dim(k)) + " entries");
            return false;
        }
        return true;
    };
    if (!shape(d.c, 2, "c") || !shape(d.h, 1, "h") || !shape(d.omega, 2, "omega")) return rep;
    for (size_t i = 0; i < d.c.coords.size(); ++i)
        if (!is_integral(d.c.coords[i])) rep.add("c not integral at " + label_str(t, 2, i));
    auto dc = D(t, d.c);
    for (size_t i = 0; i < dc.coords.size(); ++i)
        if (dc.coords[i] != 0) rep.add("Dc != 0 at " + label_str(t, 3, i));
    auto rel = D(t, d.h) - (d.omega - d.c);
    for (size_t i = 0; i < rel.coords.size(); ++i)
        if (rel.coords[i] != 0) rep.add("Dh != omega - c at " + label_str(t, 2, i));
    if (d.declared_connection && *d.declared_connection != is_connection(t, d))
        rep.add(*d.declared_connection ? "declared a connection but omega has r > 0 components"
                                       : "declared a pseudo-connection but omega lies in A^{0,2}");
    return rep;
}

inline void require_valid(const TotalComplex& t, const DifferentialCocycle& d, const std::string& who) {
    auto rep = validate_bundle(t, d);
    if (!rep.ok()) throw Error(ErrorKind::Validation, who + ": " + rep.violations.front());
}

// ---------------------------------------------------------------------------
// Invariants.

/// Integral basis of the 1-cycles (columns), i.e. the kernel of D_0 transposed.
inline std::vector<QVector> integral_cycles(const TotalComplex& t, size_t k) {
    ZMatrix bt = to_integer(t.complex.dense_diff(long(k) - 1).transpose());
    ZMatrix kern = detail::integer_kernel(bt);
    std::vector<QVector> out;
    for (size_t j = 0; j < kern.cols(); ++j) {
        QVector z(kern.rows());
        for (size_t i = 0; i < kern.rows(); ++i) z[i] = Rational(kern(i, j));
        out.push_back(std::move(z));
    }
    return out;
}

inline bool is_cycle(const TotalComplex& t, size_t k, const QVector& z) {
    if (z.size() != t.dim(k)) return false;
    return grpd::is_zero(t.complex.diff(long(k) - 1).transpose_times(z));
}

/// h(z) mod 1 on an integral 1-cycle z.
inline Rational holonomy(const TotalComplex& t, const DifferentialCocycle& d, const QVector& z) {
    if (!is_cycle(t, 1, z) || !is_integral(z)) throw Error(ErrorKind::Validation, "holonomy: not an integral 1-cycle");
    return frac_part(dot(d.h.coords, z));
}

/// Coordinates of a rational cocycle in the generators of rational_cohomology.
inline QVector rational_class(const FreeComplex& c, size_t k, const QVector& x) {
    auto h = rational_cohomology(c, k);
    QMatrix bnd = column_space(c.dense_diff(long(k) - 1));
    if (bnd.rows() == 0) bnd = QMatrix(c.dim(k), 0);
    QMatrix gens = QMatrix::from_columns(c.dim(k), h.free_generators);
    auto sol = solve(hcat(gens, bnd), x);
    if (!sol) throw Error(ErrorKind::Validation, "rational_class: not a cocycle");
    return QVector(sol->begin(), sol->begin() + h.free_rank);
}

struct BundleInvariants {
    CohomologyGroup h2;
    ZVector chern;       // coordinates in the generators of H^2(Z); torsion entries first
    QVector curvature;   // coordinates in H^2(Q)
    std::vector<QVector> cycles;
    std::vector<Rational> holonomy;  // on each cycle, mod 1
    bool flat = false;
};

inline BundleInvariants bundle_invariants(const TotalComplex& t, const DifferentialCocycle& d) {
    require_valid(t, d, "bundle_invariants");
    BundleInvariants out;
    IntegralCoordinates coords;
    out.h2 = integral_cohomology(t.complex, 2, &coords);
    out.chern = coords(d.c.coords);
    out.curvature = rational_class(t.complex, 2, d.omega.coords);
    out.cycles = integral_cycles(t, 1);
    for (const auto& z : out.cycles) out.holonomy.push_back(holonomy(t, d, z));
    out.flat = d.omega.is_zero();
    return out;
}

// ---------------------------------------------------------------------------
// Transgression forms for Φ = c_1^k.

struct ConnectionFamily {
    TotalCochain c;
    std::vector<TotalCochain> h;
    std::vector<TotalCochain> omega;

    size_t q() const { return h.size() - 1; }

    static ConnectionFamily from_connections(const TotalComplex& t, const TotalCochain& c, const std::vector<TotalCochain>& hs) {
        ConnectionFamily f{c, hs, {}};
        for (const auto& h : hs) f.omega.push_back(D(t, h) + c);
        return f;
    }
    ConnectionFamily without(size_t i) const {
        ConnectionFamily f{c, {}, {}};
        for (size_t j = 0; j < h.size(); ++j)
            if (j != i) f.h.push_back(h[j]), f.omega.push_back(omega[j]);
        return f;
    }
};

inline ValidationReport validate_family(const TotalComplex& t, const ConnectionFamily& f) {
    ValidationReport rep;
    if (f.h.empty() || f.h.size() != f.omega.size()) {
        rep.add("family needs matching lists of connections and curvatures");
        return rep;
    }
    for (size_t j = 0; j < f.h.size(); ++j) {
        auto r = validate_bundle(t, {f.c, f.h[j], f.omega[j], std::nullopt});
        rep.merge(r, "member " + std::to_string(j) + ": ");
    }
    return rep;
}

/// F_s = sum_j ds_j h_j + sum_j s_j ω_j on Δ^q.
inline PolySimplexForm interpolated_curvature(const TotalComplex& t, const ConnectionFamily& f) {
    const size_t q = f.q();
    PolySimplexForm F(t, q);
    for (size_t j = 0; j <= q; ++j) {
        F += PolySimplexForm::differential(t, q, j, f.h[j]);
        F += PolySimplexForm::coordinate(t, q, j, f.omega[j]);
    }
    return F;
}

/// Θ_q = ∫_{Δ^q} F_s^k, a cochain of degree 2k - q. Zero of degree 0 when 2k < q.
inline TotalCochain theta_transgression(const TotalComplex& t, size_t k, const ConnectionFamily& f) {
    if (k == 0) throw Error(ErrorKind::Validation, "theta: k must be >= 1");
    auto rep = validate_family(t, f);
    if (!rep.ok()) throw Error(ErrorKind::Validation, "theta: " + rep.violations.front());
    const size_t q = f.q();
    if (2 * k < q) return TotalCochain::zero(t, 0);
    const size_t deg = 2 * k - q;
    if (deg >= t.degrees()) throw Error(ErrorKind::Cutoff, "theta: degree " + std::to_string(deg) + " exceeds the model");
    return interpolated_curvature(t, f).power(k).integrate(deg);
}

/// Sign in  D Θ_q = stokes_sign(q) * sum_i (-1)^i Θ_{q-1}(θ_0..θ^_i..θ_q).
/// Fixed by D Θ_1 = Φ(θ_1) - Φ(θ_0).
inline int stokes_sign(size_t q) { return q % 2 ? 1 : -1; }

struct StokesReport {
    size_t k = 0, q = 0;
    bool identity = true;
    bool endpoint = true;  // q = 1 only: D Θ_1 = Φ(θ_1) - Φ(θ_0)
    bool nontrivial = false;
    std::string detail;
    bool ok() const { return identity && endpoint; }
};

inline StokesReport stokes_check(const TotalComplex& t, size_t k, const ConnectionFamily& f) {
    StokesReport rep;
    rep.k = k;
    rep.q = f.q();
    if (rep.q == 0) throw Error(ErrorKind::Validation, "stokes: needs q >= 1");
    const size_t q = rep.q;
    if (2 * k + 1 < q) return rep;  // both sides vanish for degree reasons
    const size_t deg = 2 * k + 1 - q;  // degree of both sides
    if (deg >= t.degrees()) throw Error(ErrorKind::Cutoff, "stokes: degree " + std::to_string(deg) + " exceeds the model");
    TotalCochain lhs = TotalCochain::zero(t, deg);
    if (2 * k >= q) lhs = D(t, theta_transgression(t, k, f));
    TotalCochain rhs = TotalCochain::zero(t, deg);
    for (size_t i = 0; i <= q; ++i) {
        auto th = theta_transgression(t, k, f.without(i));
        if (th.degree != deg) continue;
        rhs = rhs + Rational(i % 2 ? -1 : 1) * th;
    }
    rhs = Rational(stokes_sign(q)) * rhs;
    rep.identity = lhs == rhs;
    rep.nontrivial = !lhs.is_zero();
    if (!rep.identity) {
        for (size_t i = 0; i < lhs.coords.size(); ++i)
            if (lhs.coords[i] != rhs.coords[i]) {
                rep.detail = "mismatch at " + label_str(t, deg, i) + ": " + to_string(lhs.coords[i]) + " vs " + to_string(rhs.coords[i]);
                break;
            }
    }
    if (q == 1) {
        auto phi = [&](const TotalCochain& w) { return cup_power(t, w, k); };
        rep.endpoint = lhs == phi(f.omega[1]) - phi(f.omega[0]);
        if (!rep.endpoint && rep.detail.empty()) rep.detail = "D Theta_1 != Phi(theta_1) - Phi(theta_0)";
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Multiplicative bundles.

struct MultiplicativeBundle {
    DifferentialCocycle bundle;
    std::map<size_t, TotalCochain> omega_hat;  // r -> cochain of degree 2r - 1
    Filtration filtration;
};

/// Φ_r(θ) = ω^{u r}.
inline TotalCochain phi(const TotalComplex& t, const DifferentialCocycle& d, size_t r) { return cup_power(t, d.omega, r); }

struct MultiplicativityReport {
    bool ok = true;
    std::optional<size_t> failing_r;
    std::map<size_t, QVector> certificates;  // coordinates in the spanning set of F^r C^{2r}
};

/// Solves  span * x = target;  nullopt when target is outside the span.
inline std::optional<QVector> span_solve(const QMatrix& span, const QVector& target) {
    if (span.cols() == 0) return grpd::is_zero(target) ? std::optional<QVector>(QVector{}) : std::nullopt;
    return solve(span, target);
}

inline MultiplicativityReport is_multiplicative(const TotalComplex& t, const MultiplicativeBundle& mb) {
    MultiplicativityReport rep;
    for (const auto& [r, w] : mb.omega_hat) {
        if (r == 0 || w.degree != 2 * r - 1 || 2 * r >= t.degrees()) {
            rep.ok = false;
            rep.failing_r = r;
            return rep;
        }
        auto defect = phi(t, mb.bundle, r) - D(t, w);
        auto sol = span_solve(mb.filtration.span(r, 2 * r, t.complex), defect.coords);
        if (!sol) {
            rep.ok = false;
            rep.failing_r = r;
            return rep;
        }
        rep.certificates[r] = *sol;
    }
    return rep;
}

struct Gauge {
    TotalCochain b;       // integral, degree 1
    TotalCochain lambda;  // rational, degree 0

    static Gauge identity(const TotalComplex& t) { return {TotalCochain::zero(t, 1), TotalCochain::zero(t, 0)}; }
};

/// (c, h, ω) |-> (c + Db, h - b + Dλ, ω).
inline DifferentialCocycle apply_gauge(const TotalComplex& t, const DifferentialCocycle& d, const Gauge& g) {
    if (!g.b.is_integral()) throw Error(ErrorKind::Validation, "gauge: b must be integral");
    return {d.c + D(t, g.b), d.h - g.b + D(t, g.lambda), d.omega, d.declared_connection};
}

inline MultiplicativeBundle apply_gauge(const TotalComplex& t, const MultiplicativeBundle& mb, const Gauge& g) {
    return {apply_gauge(t, mb.bundle, g), mb.omega_hat, mb.filtration};
}

struct IsoResult {
    bool iso = true;
    std::optional<size_t> failing_r;
    std::map<size_t, QVector> witnesses;  // coordinates in [span F^r | D]
    std::string reason;
};

/// Decides ω̂'_r - ω̂_r - Θ_1(Φ_r; θ, g^{-1}θ') ∈ F^r + im D for every r.
inline IsoResult iso_multiplicative(const TotalComplex& t, const MultiplicativeBundle& a, const MultiplicativeBundle& b, const Gauge& g) {
    if (!g.b.is_integral()) throw Error(ErrorKind::Validation, "iso: gauge b must be integral");
    if (!(b.bundle.c == a.bundle.c + D(t, g.b))) throw Error(ErrorKind::Validation, "iso: gauge does not relate the bundles");
    require_valid(t, a.bundle, "iso");
    require_valid(t, b.bundle, "iso");
    IsoResult out;
    // θ' transported back onto c
    auto back = b.bundle.h + g.b - D(t, g.lambda);
    auto fam = ConnectionFamily::from_connections(t, a.bundle.c, {a.bundle.h, back});
    std::set<size_t> rs;
    for (const auto& [r, w] : a.omega_hat) rs.insert(r);
    for (const auto& [r, w] : b.omega_hat) rs.insert(r);
    for (size_t r : rs) {
        const size_t deg = 2 * r - 1;
        auto wa = a.omega_hat.count(r) ? a.omega_hat.at(r) : TotalCochain::zero(t, deg);
        auto wb = b.omega_hat.count(r) ? b.omega_hat.at(r) : TotalCochain::zero(t, deg);
        auto diff = wb - wa - theta_transgression(t, r, fam);
        QMatrix sys = hcat(a.filtration.span(r, deg, t.complex), t.complex.dense_diff(long(deg) - 1));
        auto sol = span_solve(sys, diff.coords);
        if (!sol) {
            out.iso = false;
            out.failing_r = r;
            out.reason = "difference at r = " + std::to_string(r) + " is not in F^r + im D";
            return out;
        }
        out.witnesses[r] = *sol;
    }
    return out;
}

// ---------------------------------------------------------------------------
// The characteristic class ξ(Γ).

/// v_Φ = sum_{i<k} ω^i u h u c^{k-1-i}, with D v_Φ = Φ(θ) - c^k.
inline TotalCochain transgression_cochain(const TotalComplex& t, const DifferentialCocycle& d, size_t k) {
    TotalCochain v = TotalCochain::zero(t, 2 * k - 1);
    for (size_t i = 0; i < k; ++i) v = v + cup(t, cup(t, cup_power(t, d.omega, i), d.h), cup_power(t, d.c, k - 1 - i));
    return v;
}

struct CharClass {
    size_t k = 0;
    QVector cocycle;       // ((c^k, Φ - Dω̂_k), ω̂_k - v_Φ) in the MH cone, degree 2k
    QVector hhat_cocycle;  // (Φ - Dω̂_k, (v_Φ - ω̂_k) mod 1) in the Q/Z cone, degree 2k
    bool is_cocycle = false;
    bool mh_zero = false;
    bool hhat_zero = false;
};

/// Query for the groups the class lives in: MH^{2k}_0 and Ĥ^{2k-1}_k.
inline SecondaryQuery char_class_query(const TotalComplex& t, const Filtration& f, size_t k) {
    SecondaryQuery q(t.complex);
    q.lambda = LatticeTag::Integers;
    q.filtration = f;
    q.r = k;
    q.n = 0;
    q.k = 2 * k;
    return q;
}

inline CharClass char_class_xi(const TotalComplex& t, const MultiplicativeBundle& mb, size_t k) {
    if (t.coeff.lattice != LatticeTag::Integers) throw Error(ErrorKind::Validation, "xi: requires lambda = Z");
    if (!mb.omega_hat.count(k)) throw Error(ErrorKind::Validation, "xi: no omega_hat for r = " + std::to_string(k));
    require_valid(t, mb.bundle, "xi");
    require_window(t.complex, 2 * k);
    MultiplicativeBundle only{mb.bundle, {{k, mb.omega_hat.at(k)}}, mb.filtration};
    auto rep = is_multiplicative(t, only);
    if (!rep.ok) throw Error(ErrorKind::Validation, "xi: not multiplicative at r = " + std::to_string(k));
    const auto& d = mb.bundle;
    const auto& wh = mb.omega_hat.at(k);
    auto ck = cup_power(t, d.c, k);
    auto form = phi(t, d, k) - D(t, wh);
    auto v = transgression_cochain(t, d, k);
    XiLayout lay{t.dim(2 * k), t.dim(2 * k - 1)};
    CharClass out;
    out.k = k;
    out.cocycle = lay.mh(ck.coords, form.coords, (wh - v).coords);
    auto hat = xi_backward(t.complex, 2 * k, out.cocycle);
    hat = lay.hat(lay.slice(hat, 0, lay.nk), canonical_lift(lay.slice(hat, lay.nk, lay.nk1), LatticeTag::Integers));
    out.hhat_cocycle = hat;
    auto q = char_class_query(t, mb.filtration, k);
    auto mh = mh_cone(q);
    auto hc = diffchar_cone(q);
    out.is_cocycle = grpd::is_zero(mh.c.apply_d(2 * k, out.cocycle)) && hc.cocycles(2 * k).contains(out.hhat_cocycle);
    out.mh_zero = mh.coboundaries(2 * k).contains(out.cocycle);
    out.hhat_zero = hc.coboundaries(2 * k).contains(out.hhat_cocycle);
    return out;
}

/// Whether two characteristic classes (same model, filtration, k) agree in MH and in Ĥ.
struct ClassComparison {
    bool same_mh = false;
    bool same_hhat = false;
    bool same_hhat_mod_kernel = false;  // Ĥ classes differ by an element of ker Ξ
};

inline ClassComparison compare_classes(const TotalComplex& t, const Filtration& f, const CharClass& a, const CharClass& b) {
    auto q = char_class_query(t, f, a.k);
    auto mh = mh_cone(q);
    auto hc = diffchar_cone(q);
    const size_t deg = 2 * a.k;
    ClassComparison out;
    out.same_mh = mh.coboundaries(deg).contains(sub(b.cocycle, a.cocycle));
    auto dh = sub(b.hhat_cocycle, a.hhat_cocycle);
    out.same_hhat = hc.coboundaries(deg).contains(dh);
    out.same_hhat_mod_kernel = mh.coboundaries(deg).contains(xi_forward(t.complex, deg, LatticeTag::Integers, dh));
    return out;
}

/// Value of a Ĥ^{2k-1} class on an integral (2k-1)-cycle: the Q/Z part evaluated mod 1.
inline Rational character_value(const TotalComplex& t, const CharClass& cl, const QVector& z) {
    const size_t deg = 2 * cl.k - 1;
    if (!is_cycle(t, deg, z) || !is_integral(z)) throw Error(ErrorKind::Validation, "character: not an integral cycle");
    XiLayout lay{t.dim(deg + 1), t.dim(deg)};
    return frac_part(dot(lay.slice(cl.hhat_cocycle, lay.nk, lay.nk1), z));
}

// ---------------------------------------------------------------------------
// Pullback.

inline DifferentialCocycle pullback_bundle(const NerveMorphism& f, const TotalComplex& src, const TotalComplex& dst,
                                           const DifferentialCocycle& d) {
    auto rep = check_morphism(f, *src.nerve, *dst.nerve);
    if (!rep.ok()) throw Error(ErrorKind::Validation, "pullback: " + rep.violations.front());
    return {pullback(f, src, dst, d.c), pullback(f, src, dst, d.h), pullback(f, src, dst, d.omega), d.declared_connection};
}

inline MultiplicativeBundle pullback_multiplicative(const NerveMorphism& f, const TotalComplex& src, const TotalComplex& dst,
                                                    const MultiplicativeBundle& mb, const Filtration& src_filtration) {
    MultiplicativeBundle out{pullback_bundle(f, src, dst, mb.bundle), {}, src_filtration};
    for (const auto& [r, w] : mb.omega_hat) out.omega_hat.emplace(r, pullback(f, src, dst, w));
    return out;
}

}  // namespace grpd
