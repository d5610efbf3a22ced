#include "fixtures.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace grpd;
using namespace fixtures;

namespace {

Rational sign(size_t p) { return Rational(p % 2 ? -1 : 1); }

std::vector<Named> models() {
    auto out = desk_models(4);
    out.push_back({"Z3", integral(cyclic_model(3, 4))});
    out.push_back({"S3", integral(nerve(symmetric_group(3), 3))});
    GroupAction swap = {{{0, 1}}, {{1, 0}}};
    out.push_back({"Z2 on two points", integral(action_nerve(cyclic_group(2), SimplicialSet::discrete(2), swap, 4))});
    return out;
}

}  // namespace

TEST(DoubleComplex, DifferentialsSquareToZero) {
    for (const auto& m : models()) {
        DoubleComplex dc(m.t.nerve, m.t.coeff);
        EXPECT_TRUE(dc.check().ok()) << m.name;
        EXPECT_TRUE(m.t.complex.check().ok()) << m.name;
    }
}

TEST(DoubleComplex, TotalDimensionsAddUp) {
    auto t = integral(cyclic_model(3, 4));
    // basis of C^k: nondegenerate strings of length k, (m - 1)^k of them
    std::vector<size_t> expect = {1, 2, 4, 8, 16};
    for (size_t k = 0; k < expect.size(); ++k) EXPECT_EQ(t.dim(k), expect[k]);
}

TEST(Cup, UnitIsNeutral) {
    RandomSource rnd(11);
    for (const auto& m : models()) {
        auto one = TotalCochain::unit(m.t);
        EXPECT_TRUE(D(m.t, one).is_zero()) << m.name;
        for (size_t k = 0; k < 3; ++k) {
            auto a = rnd.cochain(m.t, k);
            EXPECT_EQ(cup(m.t, one, a), a) << m.name;
            EXPECT_EQ(cup(m.t, a, one), a) << m.name;
        }
    }
}

TEST(Cup, LeibnizRuleExact) {
    RandomSource rnd(12);
    for (const auto& m : models())
        for (int trial = 0; trial < 15; ++trial) {
            size_t p = size_t(rnd.uniform(0, 2)), q = size_t(rnd.uniform(0, 1));
            if (p + q + 1 >= m.t.degrees()) continue;
            auto a = rnd.cochain(m.t, p), b = rnd.cochain(m.t, q);
            auto lhs = D(m.t, cup(m.t, a, b));
            auto rhs = cup(m.t, D(m.t, a), b) + sign(p) * cup(m.t, a, D(m.t, b));
            ASSERT_EQ(lhs, rhs) << m.name << " p=" << p << " q=" << q;
        }
}

TEST(Cup, Associative) {
    RandomSource rnd(13);
    for (const auto& m : models())
        for (int trial = 0; trial < 8; ++trial) {
            auto a = rnd.cochain(m.t, 1), b = rnd.cochain(m.t, 1), c = rnd.cochain(m.t, 1);
            ASSERT_EQ(cup(m.t, cup(m.t, a, b), c), cup(m.t, a, cup(m.t, b, c))) << m.name;
        }
}

TEST(Cup, GeneratorSquareInCyclicGroup) {
    // for Z/m the cup square of a degree-2 generator generates H^4
    auto t = integral(cyclic_model(3, 5));
    IntegralCoordinates c2, c4;
    auto h2 = integral_cohomology(t.complex, 2, &c2);
    auto h4 = integral_cohomology(t.complex, 4, &c4);
    ASSERT_EQ(h2.torsion.size(), 1u);
    ASSERT_EQ(h4.torsion.size(), 1u);
    TotalCochain u{2, h2.torsion_generators[0]};
    auto sq = cup(t, u, u);
    ASSERT_TRUE(D(t, sq).is_zero());
    auto coords = c4(sq.coords);
    ASSERT_EQ(coords.size(), 1u);
    EXPECT_NE(coords[0] % 3, 0);
}

TEST(Pullback, IsAChainMapAndRespectsCup) {
    auto src = integral(cyclic_model(4, 4));
    auto dst = integral(cyclic_model(2, 4));
    auto f = functor_morphism(cyclic_group(4), cyclic_group(2), {0}, {0, 1, 0, 1}, 4);
    auto pm = pullback_map(f, src, dst);
    EXPECT_TRUE(check_chain_map(pm, dst.complex, src.complex).ok());
    RandomSource rnd(14);
    for (int trial = 0; trial < 10; ++trial) {
        auto a = rnd.cochain(dst, 1), b = rnd.cochain(dst, 2);
        EXPECT_EQ(pullback(f, src, dst, cup(dst, a, b)), cup(src, pullback(f, src, dst, a), pullback(f, src, dst, b)));
        EXPECT_EQ(pullback(f, src, dst, D(dst, a)), D(src, pullback(f, src, dst, a)));
    }
}

TEST(Pullback, RefinementOfCircle) {
    auto fine = circle_cover();
    auto coarse = Cover::trivial(circle_space());
    auto fn = cech_nerve(fine, 3), cn = cech_nerve(coarse, 3);
    auto m = refinement_morphism(fine, coarse, {0, 0, 0}, fn, cn);
    auto src = integral(fn), dst = integral(cn);
    EXPECT_TRUE(check_chain_map(pullback_map(m, src, dst), dst.complex, src.complex).ok());
}

TEST(Polyform, DirichletIntegralsMatchIteratedIntegration) {
    std::vector<std::vector<unsigned>> cases = {{}, {0}, {1}, {3}, {0, 0}, {1, 1}, {2, 0}, {1, 2, 0}, {2, 1, 1}, {0, 0, 0, 1}};
    for (const auto& e : cases) {
        oracle::Poly p{{e, oracle::Q(1)}};
        EXPECT_EQ(dirichlet_integral(e), oracle::simplex_integral(p, e.size())) << e.size();
    }
}

TEST(Polyform, FiberStokes) {
    // ∫ d ω = sum_i (-1)^i ∫_{face i} ω + (-1)^q D ∫ ω
    auto t = total_complex(circle_model(4), CoefficientSpec{Ring::Rationals, LatticeTag::Integers});
    RandomSource rnd(15);
    size_t nontrivial = 0;
    for (int trial = 0; trial < 30; ++trial) {
        size_t q = size_t(rnd.uniform(1, 3));
        PolySimplexForm w(t, q);
        for (int term = 0; term < 4; ++term) {
            unsigned mask = unsigned(rnd.uniform(0, (1 << q) - 1));
            std::vector<unsigned> e(q);
            for (auto& x : e) x = unsigned(rnd.uniform(0, 2));
            w.add_term(mask, e, rnd.rational(), rnd.cochain(t, size_t(rnd.uniform(0, 2))));
        }
        for (size_t deg = 0; deg < 4; ++deg) {
            auto lhs = w.d_total().integrate(deg);
            auto rhs = TotalCochain::zero(t, deg);
            for (size_t i = 0; i <= q; ++i) rhs = rhs + sign(i) * w.restrict_to_face(i).integrate(deg);
            if (deg > 0) rhs = rhs + sign(q) * D(t, w.integrate(deg - 1));
            ASSERT_EQ(lhs, rhs) << "q=" << q << " degree " << deg;
            nontrivial += !lhs.is_zero();
        }
    }
    EXPECT_GT(nontrivial, 10u);
}

TEST(Polyform, ProductIsGradedLeibniz) {
    auto t = total_complex(circle_model(4), CoefficientSpec{Ring::Rationals, LatticeTag::Integers});
    RandomSource rnd(16);
    for (int trial = 0; trial < 10; ++trial) {
        const size_t q = 2;
        auto a = PolySimplexForm::coordinate(t, q, 1, rnd.cochain(t, 1)) + PolySimplexForm::differential(t, q, 0, rnd.cochain(t, 0));
        auto b = PolySimplexForm::coordinate(t, q, 0, rnd.cochain(t, 1)) + PolySimplexForm::differential(t, q, 2, rnd.cochain(t, 1));
        // both a and b are homogeneous of total degree 1
        auto lhs = (a * b).d_total();
        auto rhs = a.d_total() * b + a * b.d_total().scaled(-1);
        for (size_t deg = 0; deg < 4; ++deg) ASSERT_EQ(lhs.integrate(deg), rhs.integrate(deg));
    }
}
