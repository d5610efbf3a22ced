// Acceptance suite: one PASS/FAIL line per criterion, with pinned sizes, seeds and time limits.
//
//   acceptance [--expect-fail N]...
//
// Exit status is 0 when the set of failing criteria equals the expected set.

#include "cli_runner.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace grpd;
using namespace fixtures;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        } else if (!cond) {
            detail += "; " + what;
        }
    }
};

struct Criterion {
    int id;
    double limit_s;  // 0: no limit stated
    const char* title;
    std::function<Outcome()> run;
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

template <class T>
std::string str(const T& x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

Rational sign(size_t p) { return Rational(p % 2 ? -1 : 1); }

std::vector<Named> builtin_models(size_t R) {
    std::vector<Named> out = desk_models(R);
    for (size_t m = 3; m <= 6; ++m) out.push_back({"Z" + std::to_string(m), integral(cyclic_model(m, std::min<size_t>(R, 3)))});
    out.push_back({"S3", integral(nerve(symmetric_group(3), 3))});
    out.push_back({"pair2", integral(nerve(pair_groupoid(2), R))});
    out.push_back({"coarse circle", integral(cech_nerve(Cover::trivial(circle_space()), R))});
    GroupAction swap = {{{0, 1}}, {{1, 0}}};
    out.push_back({"Z2 on two points", integral(action_nerve(cyclic_group(2), SimplicialSet::discrete(2), swap, R))});
    return out;
}

oracle::ZMat to_oracle(const QMatrix& m, size_t rows, size_t cols) {
    oracle::ZMat out(rows, std::vector<oracle::Z>(cols, 0));
    if (m.rows() == rows && m.cols() == cols)
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j) out[i][j] = m(i, j).get_num();
    return out;
}

std::vector<oracle::ZMat> oracle_diffs(const FreeComplex& c) {
    std::vector<oracle::ZMat> d;
    for (size_t k = 0; k + 1 < c.degrees(); ++k) d.push_back(to_oracle(c.dense_diff(long(k)), c.dim(k + 1), c.dim(k)));
    return d;
}

bool unimodular(const ZMatrix& m) {
    if (m.rows() != m.cols()) return false;
    if (m.rows() == 0) return true;
    auto s = smith_normal_form(m, false);
    if (s.rank() != m.rows()) return false;
    for (const auto& d : s.divisors)
        if (d != 1) return false;
    return true;
}

SecondaryQuery query(const FreeComplex& c, size_t r, size_t n = 0) {
    SecondaryQuery q(c);
    q.r = r;
    q.n = n;
    return q;
}

// ---------------------------------------------------------------------------

Outcome structural() {
    Outcome o;
    RandomSource rnd(1001);
    auto models = builtin_models(4);
    for (const auto& m : models) {
        o.require(m.t.nerve->check().ok(), m.name + ": simplicial identities");
        o.require(DoubleComplex(m.t.nerve, m.t.coeff).check().ok(), m.name + ": delta'^2, delta''^2");
        o.require(m.t.complex.check().ok(), m.name + ": D^2 != 0");
    }
    size_t instances = 0;
    for (int i = 0; i < 100; ++i, ++instances) {
        // a random SNF instance, a random Leibniz instance and a random simplicial complex
        size_t rows = size_t(rnd.uniform(1, 6)), cols = size_t(rnd.uniform(1, 6));
        ZMatrix a(rows, cols);
        for (size_t r = 0; r < rows; ++r)
            for (size_t c = 0; c < cols; ++c) a(r, c) = rnd.uniform(-5, 5);
        auto s = smith_normal_form(a, true);
        bool snf = s.U * a * s.V == s.diagonal && s.U * s.U_inverse == ZMatrix::identity(rows) && unimodular(s.V);
        for (size_t j = 0; j + 1 < s.rank(); ++j) snf = snf && s.divisors[j + 1] % s.divisors[j] == 0;
        o.require(snf, "SNF postconditions, instance " + std::to_string(i));

        const auto& m = models[size_t(rnd.uniform(0, long(models.size()) - 1))];
        size_t p = size_t(rnd.uniform(0, 2)), q = size_t(rnd.uniform(0, 1));
        if (p + q + 1 < m.t.degrees()) {
            auto x = rnd.cochain(m.t, p), y = rnd.cochain(m.t, q);
            bool leib = D(m.t, cup(m.t, x, y)) == cup(m.t, D(m.t, x), y) + sign(p) * cup(m.t, x, D(m.t, y));
            o.require(leib, m.name + ": Leibniz, instance " + std::to_string(i));
        }

        size_t nv = size_t(rnd.uniform(2, 5));
        std::vector<std::vector<size_t>> facets;
        for (int f = 0; f < 3; ++f) {
            std::vector<size_t> face;
            for (size_t v = 0; v < nv; ++v)
                if (rnd.coin(50)) face.push_back(v);
            if (face.empty()) face.push_back(0);
            facets.push_back(face);
        }
        o.require(SimplicialSet::from_complex(nv, facets).check_identities().ok(), "simplicial identities, instance " + std::to_string(i));

        auto c = rnd.integer_complex({size_t(rnd.uniform(1, 4)), size_t(rnd.uniform(1, 4)), size_t(rnd.uniform(1, 4))});
        o.require(c.check().ok(), "random complex D^2, instance " + std::to_string(i));
    }
    if (o.ok) o.detail = std::to_string(models.size()) + " built-in models, " + std::to_string(instances) + " random instances";
    return o;
}

Outcome bar_oracle() {
    Outcome o;
    const size_t R = 5;
    for (size_t m = 2; m <= 6; ++m) {
        auto t = integral(cyclic_model(m, R));
        auto bar = oracle::bar_complex(m, R - 1);
        for (size_t i = 0; i < R; ++i) {
            auto h = cohomology_invariants(t.complex, i);
            auto ref = oracle::cohomology(bar.dims, bar.d, i);
            std::vector<Integer> closed_t;
            if (i > 0 && i % 2 == 0) closed_t = {Integer(long(m))};
            size_t closed_f = i == 0 ? 1 : 0;
            o.require(h.free_rank == ref.free && h.torsion == ref.torsion,
                      "m=" + std::to_string(m) + " i=" + std::to_string(i) + ": library " + h.str() + " vs bar complex");
            o.require(ref.free == closed_f && ref.torsion == closed_t, "bar complex disagrees with (Z,0,Z/m,0,Z/m)");
        }
    }
    if (o.ok) o.detail = "H^0..4 = Z,0,Z/m,0,Z/m for m = 2..6 at R = 5";
    return o;
}

Outcome circle() {
    Outcome o;
    auto fine = circle_cover();
    auto coarse = Cover::trivial(circle_space());
    auto fn = cech_nerve(fine, 4), cn = cech_nerve(coarse, 4);
    auto src = integral(fn), dst = integral(cn);
    auto h0 = integral_cohomology(src.complex, 0), h1 = integral_cohomology(src.complex, 1);
    o.require(h0.free_rank == 1 && h0.torsion.empty(), "H^0 = " + h0.str());
    o.require(h1.free_rank == 1 && h1.torsion.empty(), "H^1 = " + h1.str());
    auto m = refinement_morphism(fine, coarse, {0, 0, 0}, fn, cn);
    auto pm = pullback_map(m, src, dst);
    o.require(check_chain_map(pm, dst.complex, src.complex).ok(), "refinement pullback is not a chain map");
    for (size_t k = 0; k < 4; ++k) {
        auto a = integral_cohomology(dst.complex, k), b = integral_cohomology(src.complex, k);
        o.require(a.free_rank == b.free_rank && a.torsion == b.torsion, "degree " + std::to_string(k) + ": groups differ");
        o.require(unimodular(induced_map_integral(pm, dst.complex, src.complex, k)),
                  "degree " + std::to_string(k) + ": refinement map is not invertible over Z");
    }
    if (o.ok) o.detail = "(Z, Z); refinement map invertible over Z in degrees 0..3";
    return o;
}

Outcome bockstein() {
    Outcome o;
    RandomSource rnd(1004);
    size_t torsion_seen = 0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<size_t> dims;
        size_t total = 0;
        while (dims.size() < 4) {
            size_t d = size_t(rnd.uniform(1, 3));
            if (total + d > 8) d = 8 - total;
            if (d == 0) break;
            dims.push_back(d);
            total += d;
        }
        auto c = rnd.integer_complex(dims);
        auto qz = qz_cohomology(c);
        auto d = oracle_diffs(c);
        for (size_t k = 0; k < dims.size(); ++k) {
            auto [div, fin] = oracle::uct_qz(dims, d, k);
            torsion_seen += !fin.empty();
            bool same = qz[k].qz_rank == div && qz[k].torsion == fin && qz[k].q_rank == 0 && qz[k].z_rank == 0;
            o.require(same, "trial " + std::to_string(trial) + " k=" + std::to_string(k) + ": " + qz[k].str());
        }
    }
    if (o.ok) o.detail = "20 complexes of total dimension <= 8, " + std::to_string(torsion_seen) + " degrees with torsion";
    return o;
}

Outcome xi_surjection() {
    Outcome o;
    size_t gens = 0;
    for (const auto& m : desk_models(4)) {
        if (m.name == "point") continue;
        for (auto [r, n] : std::vector<std::pair<size_t, size_t>>{{1, 0}, {1, 1}, {2, 2}}) {
            auto res = xi_check(query(m.t.complex, r, n));
            const std::string at = m.name + " (r,n)=(" + std::to_string(r) + "," + std::to_string(n) + ")";
            o.require(res.surjective, at + ": " + (res.failures.empty() ? "not surjective" : res.failures.front()));
            o.require(res.kernel_match, at + ": kernel " + res.kernel_formula.str() + " vs brute " + res.kernel_brute.str());
            o.require(res.rank_balance, at + ": ranks do not balance");
            gens += res.generators_checked;
        }
    }
    if (o.ok) o.detail = std::to_string(gens) + " generators lifted; kernels match";
    return o;
}

Outcome cs_iso() {
    Outcome o;
    for (const auto& m : desk_models(4))
        for (size_t r = 1; r <= 2; ++r) {
            auto rep = cs_iso_check(query(m.t.complex, r));
            const std::string at = m.name + " r=" + std::to_string(r);
            o.require(rep.iso, at + ": " + (rep.witnesses.empty() ? "not an isomorphism" : rep.witnesses.front()));
            o.require(rep.hhat_sub.same_invariants(rep.image_sub), at + ": sub pieces differ");
            o.require(rep.hhat_quotient.same_invariants(rep.image_quotient), at + ": quotient pieces differ");
        }
    if (o.ok) o.detail = "point, circle, Z2 with r = 1, 2";
    return o;
}

Outcome les() {
    Outcome o;
    size_t nodes = 0;
    for (const auto& m : desk_models(4))
        for (size_t r = 1; r <= 2; ++r) {
            auto rep = mh_les(query(m.t.complex, r), 2);
            for (const auto& n : rep.nodes) o.require(n.exact, m.name + ": not exact at " + n.name);
            nodes += rep.nodes.size();
        }
    RandomSource rnd(1007);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<size_t> dims;
        for (int i = 0; i < 5; ++i) dims.push_back(size_t(rnd.uniform(1, 4)));
        auto c = rnd.integer_complex(dims);
        auto q = query(c, size_t(rnd.uniform(1, 2)));
        q.filtration = rnd.weight_filtration(c, 3);
        auto rep = mh_les(q, 3);
        for (const auto& n : rep.nodes) o.require(n.exact, "random complex " + std::to_string(trial) + ": not exact at " + n.name);
        nodes += rep.nodes.size();
    }
    if (o.ok) o.detail = std::to_string(nodes) + " nodes exact (desk models and 20 random filtered complexes)";
    return o;
}

Outcome stokes() {
    Outcome o;
    auto t = integral(circle_model(5));
    RandomSource rnd(1008);
    size_t checks = 0, nontrivial = 0;
    for (size_t q = 1; q <= 3; ++q)
        for (int trial = 0; trial < 100; ++trial) {
            auto fam = rnd.family(t, q);
            for (size_t k = 1; k <= 3; ++k) {
                auto rep = stokes_check(t, k, fam);
                o.require(rep.ok(), "k=" + std::to_string(k) + " q=" + std::to_string(q) + ": " + rep.detail);
                ++checks;
                nontrivial += rep.nontrivial;
            }
        }
    if (o.ok) o.detail = std::to_string(checks) + " identities (" + std::to_string(nontrivial) + " nontrivial), endpoint case included";
    return o;
}

struct Morphism {
    std::string name;
    NerveMorphism f;
    TotalComplex src, dst;
    size_t top_k;
};

std::vector<Morphism> morphism_pool() {
    std::vector<Morphism> out;
    auto group_map = [&](size_t a, size_t b, std::vector<size_t> arrows, const std::string& name) {
        const size_t R = 3;
        out.push_back({name, functor_morphism(cyclic_group(a), cyclic_group(b), {0}, std::move(arrows), R), integral(cyclic_model(a, R)),
                       integral(cyclic_model(b, R)), 1});
    };
    group_map(4, 2, {0, 1, 0, 1}, "Z4 -> Z2");
    group_map(6, 3, {0, 1, 2, 0, 1, 2}, "Z6 -> Z3");
    group_map(6, 2, {0, 1, 0, 1, 0, 1}, "Z6 -> Z2");
    group_map(3, 3, {0, 2, 1}, "Z3 -> Z3, x -> 2x");
    group_map(1, 3, {0}, "1 -> Z3");
    group_map(3, 1, {0, 0, 0}, "Z3 -> 1");
    auto fine = circle_cover();
    auto coarse = Cover::trivial(circle_space());
    auto fn = cech_nerve(fine, 5), cn = cech_nerve(coarse, 5);
    out.push_back({"circle refinement", refinement_morphism(fine, coarse, {0, 0, 0}, fn, cn), integral(fn), integral(cn), 2});
    return out;
}

Outcome characteristic_classes(size_t& sigma_mod_kernel) {
    Outcome o;
    RandomSource rnd(1009);
    auto models = desk_models(5);
    auto random_mb = [&](const TotalComplex& t, size_t top_k) {
        MultiplicativeBundle mb{rnd.bundle(t), {}, Filtration::bete(t.complex)};
        for (size_t r = 1; r <= top_k; ++r) mb.omega_hat[r] = rnd.cochain(t, 2 * r - 1);
        return mb;
    };
    size_t cocycles = 0, gauges = 0, exact_mods = 0, sigma_mods = 0, sigma_hhat = 0, natural = 0;
    for (int i = 0; i < 50; ++i) {
        const auto& m = models[size_t(i) % models.size()];
        const size_t k = 1 + size_t(i / 3) % 2;
        const std::string at = m.name + " #" + std::to_string(i) + " k=" + std::to_string(k);
        auto mb = random_mb(m.t, 2);
        auto cl = char_class_xi(m.t, mb, k);
        o.require(cl.is_cocycle, at + ": D xi != 0");
        cocycles += cl.is_cocycle;

        auto g = rnd.gauge(m.t);
        auto cmp = compare_classes(m.t, mb.filtration, cl, char_class_xi(m.t, apply_gauge(m.t, mb, g), k));
        o.require(cmp.same_mh && cmp.same_hhat, at + ": class moved under a gauge");
        gauges += cmp.same_mh && cmp.same_hhat;

        auto ex = mb;
        ex.omega_hat[k] = ex.omega_hat[k] + D(m.t, rnd.cochain(m.t, 2 * k - 2));
        cmp = compare_classes(m.t, mb.filtration, cl, char_class_xi(m.t, ex, k));
        o.require(cmp.same_mh && cmp.same_hhat, at + ": class moved under an exact modification");
        exact_mods += cmp.same_mh && cmp.same_hhat;

        auto span = mb.filtration.span(k, 2 * k - 1, m.t.complex);
        auto sg = mb;
        for (size_t j = 0; j < span.cols(); ++j)
            sg.omega_hat[k] = sg.omega_hat[k] + rnd.rational() * TotalCochain{2 * k - 1, span.column(j)};
        cmp = compare_classes(m.t, mb.filtration, cl, char_class_xi(m.t, sg, k));
        o.require(cmp.same_mh, at + ": MH class moved under a sigma modification");
        sigma_mods += cmp.same_mh;
        sigma_hhat += cmp.same_hhat;
        sigma_mod_kernel += cmp.same_hhat_mod_kernel;
    }
    o.require(sigma_hhat == 50, "Hhat class unchanged under sigma in F^r for " + std::to_string(sigma_hhat) +
                                    "/50 (the shift always lies in ker Xi: " + std::to_string(sigma_mod_kernel) + "/50)");

    auto pool = morphism_pool();
    for (int i = 0; i < 10; ++i) {
        const auto& mp = pool[size_t(rnd.uniform(0, long(pool.size()) - 1))];
        auto mb = random_mb(mp.dst, mp.top_k);
        auto pulled = pullback_multiplicative(mp.f, mp.src, mp.dst, mb, Filtration::bete(mp.src.complex));
        bool ok = validate_bundle(mp.src, pulled.bundle).ok();
        for (size_t k = 1; k <= mp.top_k && ok; ++k) {
            auto a = char_class_xi(mp.dst, mb, k), b = char_class_xi(mp.src, pulled, k);
            XiLayout ld{mp.dst.dim(2 * k), mp.dst.dim(2 * k - 1)}, ls{mp.src.dim(2 * k), mp.src.dim(2 * k - 1)};
            auto pb = [&](size_t off, size_t len, size_t deg) {
                return pullback(mp.f, mp.src, mp.dst, TotalCochain{deg, ld.slice(a.cocycle, off, len)}).coords;
            };
            ok = b.cocycle == ls.mh(pb(0, ld.nk, 2 * k), pb(ld.nk, ld.nk, 2 * k), pb(2 * ld.nk, ld.nk1, 2 * k - 1));
        }
        o.require(ok, mp.name + ": xi does not commute with pullback");
        natural += ok;
    }
    std::string counts = "cocycle " + std::to_string(cocycles) + "/50, gauge " + std::to_string(gauges) + "/50, exact " +
                         std::to_string(exact_mods) + "/50, sigma (MH) " + std::to_string(sigma_mods) + "/50, naturality " +
                         std::to_string(natural) + "/10";
    o.detail = o.ok ? counts : o.detail + " [" + counts + "]";
    return o;
}

Outcome holonomy_check() {
    Outcome o;
    auto t = integral(circle_model(4));
    auto h1 = integral_cohomology(t.complex, 1);
    QVector g = h1.free_generators.at(0), z;
    for (const auto& c : integral_cycles(t, 1))
        if (dot(g, c) == 1 || dot(g, c) == -1) z = c;
    o.require(!z.empty(), "no fundamental cycle found");
    if (!o.ok) return o;
    if (dot(g, z) == -1) z = scale(Rational(-1), z);
    RandomSource rnd(1010);
    for (int i = 0; i < 20; ++i) {
        long q = rnd.uniform(2, 12), p = rnd.uniform(-30, 30);
        Rational pq = make_rational(p, q);
        DifferentialCocycle d{TotalCochain::zero(t, 2), pq * TotalCochain{1, g}, TotalCochain::zero(t, 2), std::nullopt};
        MultiplicativeBundle mb{d, {{1, TotalCochain::zero(t, 1)}}, Filtration::bete(t.complex)};
        auto cl = char_class_xi(t, mb, 1);
        Rational want = frac_part(pq);
        o.require(holonomy(t, d, z) == want, to_string(pq) + ": holonomy " + to_string(holonomy(t, d, z)));
        o.require(character_value(t, cl, z) == want, to_string(pq) + ": character " + to_string(character_value(t, cl, z)));
    }
    if (o.ok) o.detail = "20 flat bundles: holonomy and character both equal p/q mod 1";
    return o;
}

Outcome determinism() {
    Outcome o;
    const std::vector<std::string> cmds = {
        "cohomology --coeff Q/Z --in " + cli::model("z4.json"),
        "stokes --k 2 --q 2 --trials 10 --seed 5 --cutoff 5 --in " + cli::model("circle-cover.json"),
        "diffchar --k 2 --r 1 --in " + cli::model("circle-cover.json"),
        "classify --k 1 --in " + cli::model("circle-cover.json") + " --bundle " + cli::model("circle-flat-third.json"),
        "xi --r 1 --n 1 --in " + cli::model("z2.json")};
    for (const auto& c : cmds) {
        auto a = cli::run(c), b = cli::run(c);
        o.require(a.status == 0, "exit " + std::to_string(a.status) + ": " + c);
        o.require(a.out == b.out && !a.out.empty(), "output differs between runs: " + c);
    }
    size_t compared = 0;
    for (const char* f : {"z2.json", "z3.json", "circle-cover.json", "pair2.json", "s3.json"})
        for (const char* coeff : {"Z", "Q/Z"}) {
            nlohmann::json prev;
            for (int R = 3; R <= 5; ++R) {
                auto r = cli::run(std::string("cohomology --coeff ") + coeff + " --cutoff " + std::to_string(R) + " --in " + cli::model(f));
                o.require(r.status == 0, std::string(f) + " cutoff " + std::to_string(R) + ": exit " + std::to_string(r.status));
                if (r.status != 0) break;
                auto cur = r.json()["result"]["degrees"];
                for (size_t k = 0; k < prev.size(); ++k) {
                    o.require(prev[k] == cur[k], std::string(f) + " " + coeff + ": degree " + std::to_string(k) + " changed at cutoff " +
                                                     std::to_string(R));
                    ++compared;
                }
                prev = cur;
            }
        }
    for (const char* sub : {"mh --r 1 --n 0", "diffchar --k 2 --r 1"}) {
        auto lo = cli::run(std::string(sub) + " --cutoff 4 --in " + cli::model("z2.json"));
        auto hi = cli::run(std::string(sub) + " --cutoff 5 --in " + cli::model("z2.json"));
        o.require(lo.status == 0 && hi.status == 0 && lo.json()["result"]["group"] == hi.json()["result"]["group"],
                  std::string(sub) + ": group changed with the cutoff");
        ++compared;
    }
    if (o.ok) o.detail = std::to_string(cmds.size()) + " commands byte-identical; " + std::to_string(compared) + " groups stable under raised cutoff";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> expected;
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--expect-fail") expected.insert(std::stoi(argv[++i]));

    size_t sigma_mod_kernel = 0;
    std::vector<Criterion> all = {
        {1, 30, "structural exactness", structural},
        {2, 10, "group cohomology vs bar resolution", bar_oracle},
        {3, 5, "circle cohomology and refinement", circle},
        {4, 0, "Q/Z cohomology vs universal coefficients", bockstein},
        {5, 60, "Xi surjective with predicted kernel", xi_surjection},
        {6, 0, "Xi isomorphism for n = r", cs_iso},
        {7, 0, "MH long exact sequence", les},
        {8, 30, "Stokes identity for transgression forms", stokes},
        {9, 60, "characteristic class: cocycle, invariance, naturality", [&] { return characteristic_classes(sigma_mod_kernel); }},
        {10, 0, "holonomy equals character value", holonomy_check},
        {11, 0, "determinism and cutoff stability", determinism},
    };
    std::set<int> failed;
    for (const auto& c : all) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit_s > 0 && secs > c.limit_s) {
            o.ok = false;
            o.detail = "took " + fmt(secs) + " s, limit " + fmt(c.limit_s) + " s; " + o.detail;
        }
        if (!o.ok) failed.insert(c.id);
        std::string limit = c.limit_s > 0 ? " / " + fmt(c.limit_s) + " s" : "";
        std::printf("criterion %2d  %s  %7s s%-10s  %s: %s\n", c.id, o.ok ? "PASS" : "FAIL", fmt(secs).c_str(), limit.c_str(), c.title,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria pass", all.size() - failed.size(), all.size());
    if (!expected.empty()) {
        std::printf("; expected failures:");
        for (int e : expected) std::printf(" %d", e);
    }
    std::printf("\n");
    return failed == expected ? 0 : 1;
}
