// grpd: command-line front end for nerve cohomology, differential characters and
// multiplicative bundles.

#include "grpd/io.hpp"
#include "grpd/random.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace grpd;
using io::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Options {
    std::string in, out, bundle, lhs, rhs, gauge, coeff = "Z", lambda = "Z", filtration = "sigma", window, format = "json";
    size_t cutoff = 4, k = 1, r = 0, n = 0, q = 1, trials = 10;
    uint64_t seed = 1;
    bool r_given = false, dump = false;
};

json conventions() {
    return {{"composition", "diagrammatic: (g, h) composable iff target(g) = source(h)"},
            {"total_differential", "D = delta' + (-1)^r delta'' on A^{r,s}"},
            {"cup", "(a u b)(y) = sum (-1)^{q r} a(front) b(back), a in A^{p,q}, b in A^{r,s}"},
            {"cone", "cone^n = A^n + B^{n-1}, d(a, b) = (da, f(a) - db)"},
            {"stokes", "D Theta_q = (-1)^{q+1} sum_i (-1)^i Theta_{q-1}(theta_0..^i..theta_q)"},
            {"gauge", "(c, h, omega) -> (c + Db, h - b + D lambda, omega)"},
            {"mh_cone", "MH^{2r}_n = H^{2r-n}(cone(C(Lambda) + F^r -> C(Q))), (lambda, w) -> lambda - w"},
            {"diffchar", "Hhat^{k-1}_r = H^k(cone(sigma_{>=k} F^r -> C(Q/Lambda)))"}};
}

LatticeTag parse_lambda(const std::string& s) {
    if (s == "Z") return LatticeTag::Integers;
    if (s == "Q") return LatticeTag::Rationals;
    if (s == "0") return LatticeTag::Zero;
    throw Error(ErrorKind::Validation, "--lambda must be Z, Q or 0");
}

Filtration make_filtration(const std::string& name, const TotalComplex& t) {
    if (name == "sigma") return Filtration::bete(t.complex);
    if (name == "column") return Filtration::by_weight(t.complex, t.column_weights(), t.cutoff(), "column");
    if (name == "whole") return Filtration::whole(t.complex, t.degrees());
    throw Error(ErrorKind::Validation, "--filtration must be sigma, column or whole");
}

std::pair<size_t, size_t> parse_window(const std::string& w, size_t lo, size_t hi) {
    if (w.empty()) return {lo, hi};
    auto pos = w.find("..");
    if (pos == std::string::npos) throw Error(ErrorKind::Validation, "--degree-window expects a..b");
    try {
        return {std::stoul(w.substr(0, pos)), std::stoul(w.substr(pos + 2))};
    } catch (...) {
        throw Error(ErrorKind::Validation, "--degree-window expects a..b");
    }
}

struct Session {
    Options opt;
    io::Model model;
    std::shared_ptr<const NerveDiagram> nerve;
    TotalComplex total;

    static Session open(const Options& o, Ring ring = Ring::Integers, LatticeTag lattice = LatticeTag::Integers) {
        if (o.in.empty()) throw Error(ErrorKind::Validation, "--in is required");
        auto m = io::read_model(o.in);
        auto nv = std::make_shared<const NerveDiagram>(m.nerve(o.cutoff));
        auto t = total_complex(DoubleComplex(nv, CoefficientSpec{ring, lattice}));
        return {o, std::move(m), nv, std::move(t)};
    }

    json header(const std::string& command) const {
        json j;
        j["tool"] = "grpd";
        j["version"] = kVersion;
        j["command"] = command;
        j["input"] = opt.in;
        j["model"] = {{"kind", model.kind}, {"name", model.name}};
        j["conventions"] = conventions();
        j["cutoff"] = {{"R", opt.cutoff},
                       {"total_degrees", total.degrees()},
                       {"guaranteed_through_degree", long(opt.cutoff) - 1}};
        return j;
    }

    void require_degree(size_t deg) const {
        if (long(deg) > long(opt.cutoff) - 1)
            throw Error(ErrorKind::Cutoff, "degree " + std::to_string(deg) + " needs --cutoff >= " + std::to_string(deg + 1));
    }
};

json dump_matrices(const FreeComplex& c) {
    json arr = json::array();
    for (size_t k = 0; k < c.diffs.size(); ++k) arr.push_back(io::matrix_json(c.diffs[k]));
    return arr;
}

// ---------------------------------------------------------------------------

json cmd_validate(const Options& o) {
    auto s = Session::open(o);
    auto j = s.header("validate");
    ValidationReport rep = s.nerve->check();
    rep.merge(s.total.complex.check(), "total complex: ");
    if (!o.bundle.empty()) rep.merge(validate_bundle(s.total, io::parse_bundle(s.total, io::read_file(o.bundle), o.bundle)), "bundle: ");
    j["result"] = {{"valid", rep.ok()}, {"violations", rep.violations}};
    if (!rep.ok()) {
        std::cout << j.dump(2) << "\n";
        throw Error(ErrorKind::Validation, rep.violations.front());
    }
    return j;
}

json cmd_nerve(const Options& o) {
    auto s = Session::open(o);
    auto j = s.header("nerve");
    json levels = json::array();
    for (size_t r = 0; r <= s.nerve->cutoff(); ++r) {
        json sizes = json::array(), basis = json::array();
        for (size_t sdeg = 0; sdeg <= s.nerve->level(r).top(); ++sdeg) {
            sizes.push_back(s.nerve->level(r).size(sdeg));
            basis.push_back(s.nerve->basis(r, sdeg).size());
        }
        levels.push_back({{"r", r}, {"sizes", sizes}, {"nondegenerate", basis}});
    }
    auto rep = s.nerve->check();
    j["result"] = {{"levels", levels}, {"total_dims", s.total.complex.dims}, {"identities_hold", rep.ok()}, {"violations", rep.violations}};
    if (o.dump) j["result"]["differentials"] = dump_matrices(s.total.complex);
    return j;
}

json cmd_cohomology(const Options& o) {
    Ring ring = o.coeff == "Q" ? Ring::Rationals : Ring::Integers;
    if (o.coeff != "Z" && o.coeff != "Q" && o.coeff != "Q/Z") throw Error(ErrorKind::Validation, "--coeff must be Z, Q or Q/Z");
    auto s = Session::open(o, ring);
    auto j = s.header("cohomology");
    if (o.cutoff == 0) throw Error(ErrorKind::Cutoff, "cutoff 0 guarantees no degree");
    auto [lo, hi] = parse_window(o.window, 0, o.cutoff - 1);
    s.require_degree(hi);
    json degrees = json::array();
    for (size_t k = lo; k <= hi; ++k) {
        auto g = o.coeff == "Q/Z" ? qz_invariants(s.total.complex, k) : cohomology_invariants(s.total.complex, k).as_mixed();
        auto gj = io::group_json(g);
        gj["degree"] = k;
        degrees.push_back(gj);
    }
    j["result"] = {{"coefficients", o.coeff}, {"degrees", degrees}};
    if (o.dump) j["result"]["differentials"] = dump_matrices(s.total.complex);
    return j;
}

SecondaryQuery make_query(const Session& s, const Options& o) {
    SecondaryQuery q(s.total.complex);
    q.lambda = parse_lambda(o.lambda);
    q.filtration = make_filtration(o.filtration, s.total);
    q.k = o.k;
    q.r = o.r_given ? o.r : o.k;
    q.n = o.n;
    return q;
}

json generators_json(const std::vector<QVector>& gens) {
    json arr = json::array();
    for (const auto& g : gens) arr.push_back(io::vector_json(g));
    return arr;
}

json cmd_diffchar(const Options& o) {
    auto s = Session::open(o);
    auto q = make_query(s, o);
    s.require_degree(q.k);
    auto j = s.header("diffchar");
    auto res = diffchar_group(q);
    auto cone = diffchar_cone(q);
    auto gj = io::group_json(res.group);
    gj["generators"] = generators_json(cohomology_generators(cone, q.k));
    j["result"] = {{"k", q.k},
                   {"r", q.r},
                   {"lambda", o.lambda},
                   {"filtration", o.filtration},
                   {"group", gj},
                   {"sub", io::group_json(res.sub)},
                   {"quotient", io::group_json(res.quotient)},
                   {"brute_force", io::group_json(res.brute)},
                   {"consistent", res.consistent}};
    if (!res.consistent) throw Error(ErrorKind::Internal, "diffchar: sequence recipe disagrees with the direct cone");
    return j;
}

json cmd_mh(const Options& o) {
    auto s = Session::open(o);
    auto q = make_query(s, o);
    s.require_degree(mh_degree(q));
    auto j = s.header("mh");
    auto res = mh_group(q);
    auto gj = io::group_json(res.group);
    gj["generators"] = generators_json(res.generators);
    j["result"] = {{"r", q.r},
                   {"n", q.n},
                   {"degree", res.degree},
                   {"lambda", o.lambda},
                   {"filtration", o.filtration},
                   {"group", gj},
                   {"sub", io::group_json(res.sub)},
                   {"quotient", io::group_json(res.quotient)},
                   {"brute_force", io::group_json(res.brute)},
                   {"consistent", res.consistent}};
    if (!res.consistent) throw Error(ErrorKind::Internal, "mh: sequence recipe disagrees with the direct cone");
    return j;
}

json cmd_xi(const Options& o) {
    auto s = Session::open(o);
    auto q = make_query(s, o);
    s.require_degree(mh_degree(q));
    auto j = s.header("xi");
    auto res = xi_check(q);
    j["result"] = {{"r", q.r},
                   {"n", q.n},
                   {"degree", res.k},
                   {"hhat", io::group_json(res.hhat)},
                   {"mh", io::group_json(res.mh)},
                   {"surjective", res.surjective},
                   {"generators_checked", res.generators_checked},
                   {"failures", res.failures},
                   {"kernel_formula", io::group_json(res.kernel_formula)},
                   {"kernel_brute_force", io::group_json(res.kernel_brute)},
                   {"kernel_match", res.kernel_match},
                   {"rank_balance", res.rank_balance}};
    if (q.n == q.r && q.filtration.name == "sigma") {
        auto iso = cs_iso_check(q);
        j["result"]["isomorphism"] = {{"holds", iso.iso},
                                      {"hhat_sub", io::group_json(iso.hhat_sub)},
                                      {"hhat_quotient", io::group_json(iso.hhat_quotient)},
                                      {"image_sub", io::group_json(iso.image_sub)},
                                      {"image_quotient", io::group_json(iso.image_quotient)},
                                      {"witnesses", iso.witnesses}};
    }
    return j;
}

json cmd_les(const Options& o) {
    auto s = Session::open(o);
    auto q = make_query(s, o);
    if (o.cutoff < 2) throw Error(ErrorKind::Cutoff, "les needs --cutoff >= 2");
    auto [lo, hi] = parse_window(o.window, 0, o.cutoff - 2);
    s.require_degree(hi + 1);
    auto j = s.header("les");
    auto rep = mh_les(q, hi);
    json nodes = json::array();
    for (const auto& n : rep.nodes) {
        nodes.push_back({{"node", n.name}, {"group", io::group_json(n.group)}, {"exact", n.exact}});
    }
    j["result"] = {{"r", q.r}, {"lambda", o.lambda}, {"filtration", o.filtration}, {"from_degree", lo}, {"nodes", nodes}, {"exact", rep.exact()}};
    return j;
}

json cmd_theta(const Options& o) {
    auto s = Session::open(o);
    auto j = s.header("theta");
    RandomSource rnd(o.seed);
    auto fam = rnd.family(s.total, o.q);
    auto th = theta_transgression(s.total, o.k, fam);
    json hs = json::array();
    for (const auto& h : fam.h) hs.push_back(io::cochain_json(s.total, h));
    j["result"] = {{"k", o.k},
                   {"q", o.q},
                   {"seed", o.seed},
                   {"family", {{"c", io::cochain_json(s.total, fam.c)}, {"h", hs}}},
                   {"degree", 2 * o.k >= o.q ? 2 * o.k - o.q : 0},
                   {"theta", io::cochain_json(s.total, th)}};
    return j;
}

json cmd_stokes(const Options& o) {
    auto s = Session::open(o);
    auto j = s.header("stokes");
    RandomSource rnd(o.seed);
    size_t passed = 0, nontrivial = 0;
    json failures = json::array();
    for (size_t t = 0; t < o.trials; ++t) {
        auto rep = stokes_check(s.total, o.k, rnd.family(s.total, o.q));
        if (rep.ok())
            ++passed;
        else
            failures.push_back({{"trial", t}, {"detail", rep.detail}});
        nontrivial += rep.nontrivial;
    }
    j["result"] = {{"k", o.k}, {"q", o.q}, {"seed", o.seed}, {"trials", o.trials}, {"passed", passed},
                   {"nontrivial", nontrivial}, {"sign", stokes_sign(o.q)}, {"failures", failures}};
    if (passed != o.trials) throw Error(ErrorKind::Internal, "stokes identity failed");
    return j;
}

MultiplicativeBundle read_multiplicative(const Session& s, const std::string& path, const Filtration& f) {
    auto bj = io::read_file(path);
    return {io::parse_bundle(s.total, bj, path), io::parse_omega_hat(s.total, bj, path), f};
}

json cmd_classify(const Options& o) {
    if (o.bundle.empty()) throw Error(ErrorKind::Validation, "--bundle is required");
    auto s = Session::open(o);
    s.require_degree(2 * o.k);
    auto j = s.header("classify");
    auto F = make_filtration(o.filtration, s.total);
    auto mb = read_multiplicative(s, o.bundle, F);
    require_valid(s.total, mb.bundle, o.bundle);
    auto inv = bundle_invariants(s.total, mb.bundle);
    json hol = json::array();
    for (size_t i = 0; i < inv.cycles.size(); ++i) hol.push_back({{"cycle", io::vector_json(inv.cycles[i])}, {"value", io::rational_json(inv.holonomy[i])}});
    json chern = json::array();
    for (const auto& z : inv.chern) chern.push_back(z.get_str());
    j["result"]["invariants"] = {{"h2", io::group_json(inv.h2.as_mixed())},
                                 {"chern", chern},
                                 {"curvature", io::vector_json(inv.curvature)},
                                 {"flat", inv.flat},
                                 {"connection", is_connection(s.total, mb.bundle)},
                                 {"holonomy", hol}};
    if (!mb.omega_hat.count(o.k)) mb.omega_hat.emplace(o.k, TotalCochain::zero(s.total, 2 * o.k - 1));
    auto mrep = is_multiplicative(s.total, mb);
    j["result"]["multiplicative"] = mrep.ok;
    if (!mrep.ok) {
        j["result"]["failing_r"] = *mrep.failing_r;
        throw Error(ErrorKind::Validation, "bundle is not multiplicative at r = " + std::to_string(*mrep.failing_r));
    }
    auto cl = char_class_xi(s.total, mb, o.k);
    auto q = char_class_query(s.total, F, o.k);
    json chars = json::array();
    for (const auto& z : integral_cycles(s.total, 2 * o.k - 1)) chars.push_back(io::rational_json(character_value(s.total, cl, z)));
    j["result"]["class"] = {{"k", o.k},
                            {"cocycle", io::vector_json(cl.cocycle)},
                            {"is_cocycle", cl.is_cocycle},
                            {"mh_group", io::group_json(mh_group(q).group)},
                            {"mh_class_zero", cl.mh_zero},
                            {"hhat_cocycle", io::vector_json(cl.hhat_cocycle)},
                            {"hhat_group", io::group_json(diffchar_group(q).group)},
                            {"hhat_class_zero", cl.hhat_zero},
                            {"character_on_cycles", chars}};
    if (!cl.is_cocycle) throw Error(ErrorKind::Internal, "characteristic cocycle is not closed");
    return j;
}

json cmd_iso(const Options& o) {
    if (o.lhs.empty() || o.rhs.empty()) throw Error(ErrorKind::Validation, "--lhs and --rhs are required");
    auto s = Session::open(o);
    auto j = s.header("iso");
    auto F = make_filtration(o.filtration, s.total);
    auto a = read_multiplicative(s, o.lhs, F);
    auto b = read_multiplicative(s, o.rhs, F);
    Gauge g = o.gauge.empty() ? Gauge::identity(s.total) : io::parse_gauge(s.total, io::read_file(o.gauge), o.gauge);
    for (const auto* m : {&a, &b}) {
        auto rep = is_multiplicative(s.total, *m);
        if (!rep.ok) throw Error(ErrorKind::Validation, "input is not multiplicative at r = " + std::to_string(*rep.failing_r));
    }
    auto res = iso_multiplicative(s.total, a, b, g);
    json w = json::object();
    for (const auto& [r, v] : res.witnesses) w[std::to_string(r)] = io::vector_json(v);
    j["result"] = {{"isomorphic", res.iso}, {"witnesses", w}};
    if (!res.iso) j["result"]["failing_r"] = *res.failing_r, j["result"]["reason"] = res.reason;
    return j;
}

json cmd_check_all(const Options& o) {
    auto s = Session::open(o);
    auto j = s.header("check-all");
    RandomSource rnd(o.seed);
    json checks = json::array();
    bool all = true;
    auto record = [&](const std::string& name, bool ok, const std::string& detail = "") {
        checks.push_back({{"check", name}, {"ok", ok}, {"detail", detail}});
        all = all && ok;
    };
    auto nrep = s.nerve->check();
    record("simplicial identities", nrep.ok(), nrep.ok() ? "" : nrep.violations.front());
    auto crep = s.total.complex.check();
    record("D^2 = 0", crep.ok(), crep.ok() ? "" : crep.violations.front());
    bool leibniz = true;
    for (size_t t = 0; t < o.trials; ++t) {
        size_t p = size_t(rnd.uniform(0, 2)), q = size_t(rnd.uniform(0, 2));
        if (p + q + 1 >= s.total.degrees()) continue;
        auto a = rnd.cochain(s.total, p), b = rnd.cochain(s.total, q);
        auto lhs = D(s.total, cup(s.total, a, b));
        auto rhs = cup(s.total, D(s.total, a), b) + Rational(p % 2 ? -1 : 1) * cup(s.total, a, D(s.total, b));
        leibniz = leibniz && lhs == rhs;
    }
    record("cup Leibniz rule", leibniz);
    if (o.cutoff >= 3) {
        SecondaryQuery q(s.total.complex);
        q.r = 1;
        auto les = mh_les(q, o.cutoff - 2);
        record("multiplicative long exact sequence", les.exact());
        q.k = 1;
        record("differential characters: sequence vs cone", diffchar_group(q).consistent);
    }
    if (s.total.degrees() >= 4) {
        bool st = true;
        for (size_t t = 0; t < o.trials; ++t) st = st && stokes_check(s.total, 1, rnd.family(s.total, 1)).ok();
        record("Stokes identity (k = 1, q = 1)", st);
    }
    j["result"] = {{"seed", o.seed}, {"trials", o.trials}, {"checks", checks}, {"all_passed", all}};
    if (!all) {
        std::cout << j.dump(2) << "\n";
        throw Error(ErrorKind::Internal, "check-all: some checks failed");
    }
    return j;
}

std::string render_text(const json& j) {
    std::ostringstream os;
    os << "grpd " << j["version"].get<std::string>() << "  " << j["command"].get<std::string>() << "  " << j["input"].get<std::string>()
       << "  (cutoff " << j["cutoff"]["R"] << ", guaranteed through degree " << j["cutoff"]["guaranteed_through_degree"] << ")\n";
    const auto& r = j["result"];
    auto text = [](const json& g) { return g["text"].get<std::string>(); };
    if (r.contains("degrees")) {
        for (const auto& d : r["degrees"]) os << "H^" << d["degree"] << " = " << text(d) << "\n";
    } else if (r.contains("nodes")) {
        for (const auto& n : r["nodes"]) os << (n["exact"].get<bool>() ? "  " : "! ") << n["node"].get<std::string>() << " = " << text(n["group"]) << "\n";
    } else if (r.contains("group")) {
        os << "group = " << text(r["group"]) << "   [sub " << text(r["sub"]) << ", quotient " << text(r["quotient"]) << "]\n";
    } else if (r.contains("hhat") && r.contains("mh")) {
        os << "Hhat = " << text(r["hhat"]) << " -> MH = " << text(r["mh"]) << ", kernel " << text(r["kernel_brute_force"])
           << ", surjective " << (r["surjective"].get<bool>() ? "yes" : "no") << "\n";
    } else {
        os << r.dump(2) << "\n";
    }
    return os.str();
}

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::Parse: return 2;
        case ErrorKind::Validation: return 3;
        case ErrorKind::Cutoff: return 4;
        case ErrorKind::Internal: return 5;
    }
    return 5;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"grpd: cohomology, differential characters and multiplicative bundles on groupoid nerves"};
    app.require_subcommand(1);
    Options o;
    auto common = [&](CLI::App* c) {
        c->add_option("--in", o.in, "model file (groupoid, space or cover JSON)");
        c->add_option("--cutoff", o.cutoff, "nerve truncation R; groups are guaranteed through degree R - 1");
        c->add_option("-o,--output", o.out, "write the report here instead of stdout");
        c->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
        c->add_option("--seed", o.seed, "seed for random data (GRPD_SEED overrides)");
        c->add_option("--trials", o.trials, "number of random trials");
        c->add_flag("--dump-matrices", o.dump, "include differentials in the report");
        c->add_option("--degree-window", o.window, "degrees a..b");
    };
    auto secondary = [&](CLI::App* c) {
        c->add_option("--k", o.k, "degree index");
        c->add_option("--r", o.r, "filtration index")->each([&](const std::string&) { o.r_given = true; });
        c->add_option("--n", o.n, "MH index n");
        c->add_option("--lambda", o.lambda, "Z, Q or 0");
        c->add_option("--filtration", o.filtration, "sigma, column or whole");
    };
    std::map<std::string, std::function<json(const Options&)>> commands = {
        {"validate", cmd_validate}, {"nerve", cmd_nerve}, {"cohomology", cmd_cohomology}, {"diffchar", cmd_diffchar},
        {"mh", cmd_mh},             {"xi", cmd_xi},       {"les", cmd_les},               {"theta", cmd_theta},
        {"stokes", cmd_stokes},     {"classify", cmd_classify}, {"iso", cmd_iso},         {"check-all", cmd_check_all}};
    std::map<std::string, std::string> help = {
        {"validate", "check model (and optional --bundle) against schema and identities"},
        {"nerve", "level sizes and nondegenerate bases of the truncated nerve"},
        {"cohomology", "cohomology of the total complex with --coeff Z, Q or Q/Z"},
        {"diffchar", "differential characters Hhat^{k-1}_r"},
        {"mh", "multiplicative cohomology MH^{2r}_n"},
        {"xi", "the map Hhat -> MH: surjectivity and kernel"},
        {"les", "long exact sequence of MH with exactness at each node"},
        {"theta", "transgression form for Phi = c_1^k on a random family"},
        {"stokes", "randomized check of the Stokes identity for Theta_q"},
        {"classify", "invariants and characteristic class of a bundle"},
        {"iso", "decide isomorphism of multiplicative bundles"},
        {"check-all", "quick battery of structural checks on a model"}};
    for (const auto& [name, fn] : commands) {
        auto* c = app.add_subcommand(name, help[name]);
        common(c);
        if (name == "cohomology") c->add_option("--coeff", o.coeff, "Z, Q or Q/Z");
        if (name == "diffchar" || name == "mh" || name == "xi" || name == "les" || name == "classify" || name == "iso") secondary(c);
        if (name == "theta" || name == "stokes") {
            c->add_option("--k", o.k, "Phi = c_1^k");
            c->add_option("--q", o.q, "family length minus one");
        }
        if (name == "classify" || name == "validate") c->add_option("--bundle", o.bundle, "bundle JSON");
        if (name == "iso") {
            c->add_option("--lhs", o.lhs, "first multiplicative bundle");
            c->add_option("--rhs", o.rhs, "second multiplicative bundle");
            c->add_option("--gauge", o.gauge, "gauge relating the bundles");
        }
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    if (const char* env = std::getenv("GRPD_SEED")) {
        try {
            o.seed = std::stoull(env);
        } catch (...) {
            std::cerr << "error: GRPD_SEED is not a number\n";
            return 2;
        }
    }
    try {
        std::string name = app.get_subcommands().front()->get_name();
        json report = commands.at(name)(o);
        std::string text = o.format == "text" ? render_text(report) : report.dump(2) + "\n";
        if (o.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(o.out);
            if (!f) throw Error(ErrorKind::Validation, "cannot write " + o.out);
            f << text;
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 5;
    }
}
