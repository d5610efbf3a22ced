#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace grpd;
using namespace fixtures;

namespace {

MultiplicativeBundle with_hat(const TotalComplex& t, const DifferentialCocycle& d, size_t k, RandomSource& rnd) {
    MultiplicativeBundle mb{d, {}, Filtration::bete(t.complex)};
    for (size_t r = 1; r <= k; ++r) mb.omega_hat[r] = rnd.cochain(t, 2 * r - 1);
    return mb;
}

/// The 1-cocycle generating H^1 and an integral cycle it pairs with nontrivially.
std::pair<QVector, QVector> circle_generator(const TotalComplex& t) {
    auto h1 = integral_cohomology(t.complex, 1);
    EXPECT_EQ(h1.free_rank, 1u);
    auto g = h1.free_generators.at(0);
    for (const auto& z : integral_cycles(t, 1))
        if (dot(g, z) != 0) return {g, z};
    ADD_FAILURE() << "no cycle detects the generator";
    return {g, {}};
}

}  // namespace

TEST(Bundle, TrivialAndRandomBundlesValidate) {
    RandomSource rnd(41);
    for (const auto& m : desk_models(4)) {
        EXPECT_TRUE(validate_bundle(m.t, DifferentialCocycle::trivial(m.t)).ok());
        for (int i = 0; i < 5; ++i) EXPECT_TRUE(validate_bundle(m.t, rnd.bundle(m.t)).ok()) << m.name;
    }
}

TEST(Bundle, BrokenRelationsAreReported) {
    auto t = integral(circle_model(4));
    RandomSource rnd(42);
    auto d = rnd.bundle(t);
    auto bad = d;
    bad.omega.coords[0] += 1;
    EXPECT_FALSE(validate_bundle(t, bad).ok());
    bad = d;
    bad.c.coords[0] += make_rational(1, 2);
    bad.omega.coords[0] += make_rational(1, 2);
    auto rep = validate_bundle(t, bad);
    ASSERT_FALSE(rep.ok());
    EXPECT_NE(rep.violations.front().find("integral"), std::string::npos);
}

TEST(Bundle, DeclaredConnectionIsChecked) {
    auto t = integral(circle_model(4));
    auto d = DifferentialCocycle::trivial(t);
    d.declared_connection = true;
    EXPECT_TRUE(validate_bundle(t, d).ok());
    d.declared_connection = false;
    EXPECT_FALSE(validate_bundle(t, d).ok());
}

TEST(Theta, EndpointsAndLowDegrees) {
    auto t = integral(circle_model(5));
    RandomSource rnd(43);
    for (int trial = 0; trial < 5; ++trial) {
        auto f = rnd.family(t, 1);
        auto dh = f.h[1] - f.h[0];
        // k = 1: Θ_1 = h_1 - h_0
        EXPECT_EQ(theta_transgression(t, 1, f), dh);
        // k = 2: Θ_1 = (Δh ∪ Σω + Σω ∪ Δh) / 2
        auto sw = f.omega[0] + f.omega[1];
        auto expect = make_rational(1, 2) * (cup(t, dh, sw) + cup(t, sw, dh));
        EXPECT_EQ(theta_transgression(t, 2, f), expect);
        // q = 0: Φ itself
        auto f0 = f.without(1);
        EXPECT_EQ(theta_transgression(t, 2, f0), cup_power(t, f.omega[0], 2));
        // q = 2 with k = 1: a 1-form in the simplex coordinates integrates to zero over Δ^2
        EXPECT_TRUE(theta_transgression(t, 1, rnd.family(t, 2)).is_zero());
    }
}

TEST(Theta, CutoffIsReported) {
    auto t = integral(circle_model(3));
    RandomSource rnd(44);
    try {
        theta_transgression(t, 4, rnd.family(t, 1));
        FAIL() << "expected a cutoff error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Cutoff);
    }
}

TEST(Stokes, IdentityForSmallDegrees) {
    auto t = integral(circle_model(5));
    RandomSource rnd(45);
    size_t nontrivial = 0;
    for (size_t k = 1; k <= 3; ++k)
        for (size_t q = 1; q <= 3; ++q)
            for (int trial = 0; trial < 3; ++trial) {
                auto rep = stokes_check(t, k, rnd.family(t, q));
                EXPECT_TRUE(rep.ok()) << "k=" << k << " q=" << q << ": " << rep.detail;
                nontrivial += rep.nontrivial;
            }
    EXPECT_GT(nontrivial, 10u);
}

TEST(Stokes, SignConvention) {
    EXPECT_EQ(stokes_sign(1), 1);
    EXPECT_EQ(stokes_sign(2), -1);
    EXPECT_EQ(stokes_sign(3), 1);
}

TEST(CharClass, IsACocycle) {
    RandomSource rnd(46);
    for (const auto& m : desk_models(5))
        for (int trial = 0; trial < 3; ++trial) {
            auto mb = with_hat(m.t, rnd.bundle(m.t), 2, rnd);
            for (size_t k = 1; k <= 2; ++k) {
                auto cl = char_class_xi(m.t, mb, k);
                EXPECT_TRUE(cl.is_cocycle) << m.name << " k=" << k;
            }
        }
}

TEST(CharClass, TransgressionCochain) {
    RandomSource rnd(47);
    auto t = integral(cyclic_model(2, 5));
    for (size_t k = 1; k <= 2; ++k) {
        auto d = rnd.bundle(t);
        auto v = transgression_cochain(t, d, k);
        EXPECT_EQ(D(t, v), cup_power(t, d.omega, k) - cup_power(t, d.c, k));
    }
}

TEST(CharClass, GaugeInvariant) {
    RandomSource rnd(48);
    for (const auto& m : desk_models(5))
        for (int trial = 0; trial < 3; ++trial) {
            auto mb = with_hat(m.t, rnd.bundle(m.t), 2, rnd);
            auto g = rnd.gauge(m.t);
            auto moved = apply_gauge(m.t, mb, g);
            EXPECT_TRUE(validate_bundle(m.t, moved.bundle).ok());
            for (size_t k = 1; k <= 2; ++k) {
                auto cmp = compare_classes(m.t, mb.filtration, char_class_xi(m.t, mb, k), char_class_xi(m.t, moved, k));
                EXPECT_TRUE(cmp.same_mh) << m.name << " k=" << k;
                EXPECT_TRUE(cmp.same_hhat) << m.name << " k=" << k;
            }
        }
}

TEST(CharClass, ExactModificationInvariant) {
    RandomSource rnd(49);
    for (const auto& m : desk_models(5)) {
        auto mb = with_hat(m.t, rnd.bundle(m.t), 2, rnd);
        for (size_t k = 1; k <= 2; ++k) {
            auto moved = mb;
            moved.omega_hat[k] = moved.omega_hat[k] + D(m.t, rnd.cochain(m.t, 2 * k - 2));
            auto cmp = compare_classes(m.t, mb.filtration, char_class_xi(m.t, mb, k), char_class_xi(m.t, moved, k));
            EXPECT_TRUE(cmp.same_mh) << m.name << " k=" << k;
            EXPECT_TRUE(cmp.same_hhat) << m.name << " k=" << k;
        }
    }
}

TEST(CharClass, FiltrationModificationInvariantInMH) {
    // adding σ ∈ F^k C^{2k-1} to ω̂ fixes the MH class; the Ĥ class moves inside ker Ξ
    RandomSource rnd(50);
    for (const auto& m : desk_models(5)) {
        auto mb = with_hat(m.t, rnd.bundle(m.t), 2, rnd);
        for (size_t k = 1; k <= 2; ++k) {
            auto span = mb.filtration.span(k, 2 * k - 1, m.t.complex);
            auto sigma = TotalCochain::zero(m.t, 2 * k - 1);
            for (size_t j = 0; j < span.cols(); ++j) sigma = sigma + rnd.rational() * TotalCochain{2 * k - 1, span.column(j)};
            auto moved = mb;
            moved.omega_hat[k] = moved.omega_hat[k] + sigma;
            auto cmp = compare_classes(m.t, mb.filtration, char_class_xi(m.t, mb, k), char_class_xi(m.t, moved, k));
            EXPECT_TRUE(cmp.same_mh) << m.name << " k=" << k;
            EXPECT_TRUE(cmp.same_hhat_mod_kernel) << m.name << " k=" << k;
        }
    }
}

TEST(CharClass, NotMultiplicativeIsRejected) {
    // F^1 = 0: multiplicativity at r = 1 needs Φ = D ω̂ exactly
    auto t = integral(circle_model(4));
    std::vector<std::vector<size_t>> w(t.degrees());
    for (size_t k = 0; k < t.degrees(); ++k) w[k].assign(t.dim(k), 0);
    auto f = Filtration::by_weight(t.complex, w, 1, "bottom");
    RandomSource rnd(51);
    auto d = rnd.bundle(t);
    ASSERT_FALSE(d.omega.is_zero());
    MultiplicativeBundle mb{d, {{1, TotalCochain::zero(t, 1)}}, f};
    auto rep = is_multiplicative(t, mb);
    EXPECT_FALSE(rep.ok);
    EXPECT_EQ(rep.failing_r, std::optional<size_t>(1));
    EXPECT_THROW(char_class_xi(t, mb, 1), Error);
    mb.omega_hat[1] = d.h;  // leaves Φ - D ω̂ = c, which lies in F^1 = 0 only when c = 0
    EXPECT_EQ(is_multiplicative(t, mb).ok, d.c.is_zero());
}

TEST(Holonomy, FlatCircleBundles) {
    auto t = integral(circle_model(4));
    auto [g, z] = circle_generator(t);
    const Rational pairing = dot(g, z);
    RandomSource rnd(52);
    for (int trial = 0; trial < 10; ++trial) {
        long q = rnd.uniform(2, 9), p = rnd.uniform(-20, 20);
        Rational hol = make_rational(p, q);
        auto h = hol * TotalCochain{1, g};
        DifferentialCocycle d{TotalCochain::zero(t, 2), h, TotalCochain::zero(t, 2), std::nullopt};
        ASSERT_TRUE(validate_bundle(t, d).ok());
        Rational expect = frac_part(hol * pairing);
        EXPECT_EQ(holonomy(t, d, z), expect);
        MultiplicativeBundle mb{d, {{1, TotalCochain::zero(t, 1)}}, Filtration::bete(t.complex)};
        auto cl = char_class_xi(t, mb, 1);
        EXPECT_EQ(character_value(t, cl, z), expect);
        // gauge changes h by an integral cocycle plus an exact term: holonomy unchanged
        auto moved = apply_gauge(t, d, Gauge{TotalCochain{1, g}, rnd.cochain(t, 0)});
        EXPECT_EQ(holonomy(t, moved, z), expect);
        EXPECT_TRUE(bundle_invariants(t, d).flat);
    }
}

TEST(Holonomy, TorsionChernClassOfCyclicGroup) {
    // c = generator u of H^2(Z/3; Z); 3u = Dx, so h = -x/3 gives a flat bundle
    auto t = integral(cyclic_model(3, 4));
    auto h2 = integral_cohomology(t.complex, 2);
    ASSERT_EQ(h2.torsion, std::vector<Integer>{Integer(3)});
    TotalCochain u{2, h2.torsion_generators[0]};
    auto x = solve(t.complex.dense_diff(1), scale(Rational(3), u.coords));
    ASSERT_TRUE(x.has_value());
    DifferentialCocycle d{u, make_rational(-1, 3) * TotalCochain{1, *x}, TotalCochain::zero(t, 2), std::nullopt};
    ASSERT_TRUE(validate_bundle(t, d).ok());
    auto inv = bundle_invariants(t, d);
    EXPECT_TRUE(inv.flat);
    ASSERT_EQ(inv.chern.size(), 1u);
    EXPECT_NE(inv.chern[0] % 3, 0);
    EXPECT_TRUE(grpd::is_zero(inv.curvature));
}

TEST(Iso, GaugeRelatedBundlesAreIsomorphic) {
    RandomSource rnd(53);
    for (const auto& m : desk_models(5)) {
        auto a = with_hat(m.t, rnd.bundle(m.t), 2, rnd);
        auto g = rnd.gauge(m.t);
        auto b = apply_gauge(m.t, a, g);
        b.omega_hat[1] = b.omega_hat[1] + D(m.t, rnd.cochain(m.t, 0));
        auto res = iso_multiplicative(m.t, a, b, g);
        EXPECT_TRUE(res.iso) << m.name << ": " << res.reason;
    }
}

TEST(Iso, DifferentConnectionTransgresses) {
    // same c, different h: iso exactly when ω̂' - ω̂ = Θ_1 modulo F^r + im D
    auto t = integral(cech_nerve(Cover::trivial(circle_space()), 4));
    auto col = Filtration::by_weight(t.complex, t.column_weights(), t.cutoff(), "column");
    RandomSource rnd(54);
    auto c = TotalCochain::zero(t, 2);
    auto h0 = rnd.cochain(t, 1), h1 = rnd.cochain(t, 1);
    auto a = MultiplicativeBundle{DifferentialCocycle::from_connection(t, c, h0), {{1, TotalCochain::zero(t, 1)}}, col};
    auto b = MultiplicativeBundle{DifferentialCocycle::from_connection(t, c, h1), {{1, h1 - h0}}, col};
    EXPECT_TRUE(iso_multiplicative(t, a, b, Gauge::identity(t)).iso);
    // shift ω̂' by a cocycle on the circle in A^{0,1}: not in F^1 + im D
    auto [g, z] = circle_generator(t);
    auto shift = TotalCochain::zero(t, 1);
    for (size_t i = 0; i < shift.coords.size(); ++i)
        if (t.labels[1][i].r == 0) shift.coords[i] = g[i];
    if (shift.is_zero()) GTEST_SKIP() << "generator has no A^{0,1} part";
    b.omega_hat[1] = b.omega_hat[1] + shift;
    auto res = iso_multiplicative(t, a, b, Gauge::identity(t));
    EXPECT_FALSE(res.iso);
    EXPECT_EQ(res.failing_r, std::optional<size_t>(1));
}

namespace {

void check_natural(const NerveMorphism& f, const TotalComplex& src, const TotalComplex& dst, size_t top_k, RandomSource& rnd) {
    auto mb = with_hat(dst, rnd.bundle(dst), top_k, rnd);
    auto pulled = pullback_multiplicative(f, src, dst, mb, Filtration::bete(src.complex));
    ASSERT_TRUE(validate_bundle(src, pulled.bundle).ok());
    for (size_t k = 1; k <= top_k; ++k) {
        auto a = char_class_xi(dst, mb, k);
        auto b = char_class_xi(src, pulled, k);
        XiLayout ld{dst.dim(2 * k), dst.dim(2 * k - 1)}, ls{src.dim(2 * k), src.dim(2 * k - 1)};
        auto pb = [&](size_t off, size_t len, size_t deg) {
            return pullback(f, src, dst, TotalCochain{deg, ld.slice(a.cocycle, off, len)}).coords;
        };
        auto expect = ls.mh(pb(0, ld.nk, 2 * k), pb(ld.nk, ld.nk, 2 * k), pb(2 * ld.nk, ld.nk1, 2 * k - 1));
        EXPECT_EQ(b.cocycle, expect) << "k=" << k;
    }
}

}  // namespace

TEST(Pullback, ClassesAreNaturalUnderReduction) {
    auto src = integral(cyclic_model(4, 4));
    auto dst = integral(cyclic_model(2, 4));
    auto f = functor_morphism(cyclic_group(4), cyclic_group(2), {0}, {0, 1, 0, 1}, 4);
    RandomSource rnd(55);
    for (int trial = 0; trial < 3; ++trial) check_natural(f, src, dst, 1, rnd);
}

TEST(Pullback, ClassesAreNaturalUnderRefinement) {
    auto fine = circle_cover();
    auto coarse = Cover::trivial(circle_space());
    auto fn = cech_nerve(fine, 5), cn = cech_nerve(coarse, 5);
    auto m = refinement_morphism(fine, coarse, {0, 0, 0}, fn, cn);
    auto src = integral(fn), dst = integral(cn);
    RandomSource rnd(56);
    for (int trial = 0; trial < 3; ++trial) check_natural(m, src, dst, 2, rnd);
}
