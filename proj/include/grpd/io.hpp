#pragma once

#include "grpd/bundles.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace grpd::io {

using json = nlohmann::ordered_json;

inline json parse_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse, origin + ": byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

inline json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Parse, path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path);
}

[[noreturn]] inline void schema_error(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::Parse, where + ": " + what);
}

inline const json& field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) schema_error(where, std::string("missing field '") + key + "'");
    return j.at(key);
}

inline std::string str_field(const json& j, const char* key, const std::string& where) {
    const auto& v = field(j, key, where);
    if (!v.is_string()) schema_error(where, std::string("'") + key + "' must be a string");
    return v.get<std::string>();
}

inline const json& array_field(const json& j, const char* key, const std::string& where) {
    const auto& v = field(j, key, where);
    if (!v.is_array()) schema_error(where, std::string("'") + key + "' must be an array");
    return v;
}

/// Integer or "p/q" string.
inline Rational parse_rational(const json& v, const std::string& where) {
    if (v.is_number_integer()) return Rational(Integer(long(v.get<long long>())));
    if (!v.is_string()) schema_error(where, "expected an integer or a \"p/q\" string");
    auto s = v.get<std::string>();
    static const std::string ok = "-0123456789/";
    if (s.empty() || s.find_first_not_of(ok) != std::string::npos) schema_error(where, "malformed rational '" + s + "'");
    Rational q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) schema_error(where, "malformed rational '" + s + "'");
    q.canonicalize();
    return q;
}

inline json rational_json(const Rational& q) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
    return q.get_str();
}

inline std::map<std::string, size_t> index_ids(const json& arr, const std::string& where, const char* key = nullptr) {
    std::map<std::string, size_t> out;
    for (size_t i = 0; i < arr.size(); ++i) {
        std::string id;
        if (key) {
            id = str_field(arr[i], key, where);
        } else {
            if (!arr[i].is_string()) schema_error(where, "ids must be strings");
            id = arr[i].get<std::string>();
        }
        if (!out.emplace(id, i).second) schema_error(where, "duplicate id '" + id + "'");
    }
    return out;
}

inline size_t lookup(const std::map<std::string, size_t>& ids, const json& v, const std::string& where) {
    if (!v.is_string()) schema_error(where, "ids must be strings");
    auto it = ids.find(v.get<std::string>());
    if (it == ids.end()) schema_error(where, "unknown id '" + v.get<std::string>() + "'");
    return it->second;
}

// ---------------------------------------------------------------------------
// groupoid:  {"kind": "groupoid", "objects": [ids],
//             "arrows": [{"id", "source", "target"}], "composition": [[f, g, f;g], ...]}
// Composition is diagrammatic: f then g. Identities and inverses are read off the table.

inline FiniteGroupoid parse_groupoid(const json& j, const std::string& where = "groupoid") {
    FiniteGroupoid g;
    const auto& objs = array_field(j, "objects", where);
    auto obj_ids = index_ids(objs, where + ".objects");
    g.objects = objs.size();
    for (const auto& o : objs) g.object_names.push_back(o.get<std::string>());
    const auto& arrs = array_field(j, "arrows", where);
    auto arr_ids = index_ids(arrs, where + ".arrows", "id");
    const size_t n = arrs.size();
    for (const auto& a : arrs) {
        g.arrow_names.push_back(a.at("id").get<std::string>());
        g.source.push_back(lookup(obj_ids, field(a, "source", where), where + ".arrows"));
        g.target.push_back(lookup(obj_ids, field(a, "target", where), where + ".arrows"));
    }
    g.composition.assign(n, std::vector<size_t>(n, FiniteGroupoid::none));
    for (const auto& t : array_field(j, "composition", where)) {
        if (!t.is_array() || t.size() != 3) schema_error(where + ".composition", "entries are [f, g, composite]");
        size_t a = lookup(arr_ids, t[0], where + ".composition"), b = lookup(arr_ids, t[1], where + ".composition");
        size_t c = lookup(arr_ids, t[2], where + ".composition");
        if (g.composition[a][b] != FiniteGroupoid::none && g.composition[a][b] != c)
            throw Error(ErrorKind::Validation, where + ": composition of (" + g.arrow_names[a] + ", " + g.arrow_names[b] + ") given twice");
        g.composition[a][b] = c;
    }
    g.identity.assign(g.objects, FiniteGroupoid::none);
    for (size_t x = 0; x < g.objects; ++x)
        for (size_t e = 0; e < n && g.identity[x] == FiniteGroupoid::none; ++e) {
            if (g.source[e] != x || g.target[e] != x) continue;
            bool unit = true;
            for (size_t a = 0; a < n && unit; ++a) {
                if (g.source[a] == x && g.composition[e][a] != a) unit = false;
                if (g.target[a] == x && g.composition[a][e] != a) unit = false;
            }
            if (unit) g.identity[x] = e;
        }
    for (size_t x = 0; x < g.objects; ++x)
        if (g.identity[x] == FiniteGroupoid::none)
            throw Error(ErrorKind::Validation, where + ": object '" + g.object_names[x] + "' has no identity arrow");
    g.inverse.assign(n, FiniteGroupoid::none);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            if (g.composition[a][b] == g.identity[g.source[a]] && g.target[b] == g.source[a]) {
                g.inverse[a] = b;
                break;
            }
    for (size_t a = 0; a < n; ++a)
        if (g.inverse[a] == FiniteGroupoid::none) throw Error(ErrorKind::Validation, where + ": arrow '" + g.arrow_names[a] + "' has no inverse");
    auto rep = validate_groupoid(g);
    if (!rep.ok()) throw Error(ErrorKind::Validation, where + ": " + rep.violations.front());
    return g;
}

inline json groupoid_json(const FiniteGroupoid& g) {
    json j;
    j["kind"] = "groupoid";
    auto oname = [&](size_t x) { return x < g.object_names.size() ? g.object_names[x] : "o" + std::to_string(x); };
    j["objects"] = json::array();
    for (size_t x = 0; x < g.objects; ++x) j["objects"].push_back(oname(x));
    j["arrows"] = json::array();
    for (size_t a = 0; a < g.arrows(); ++a)
        j["arrows"].push_back({{"id", g.arrow_name(a)}, {"source", oname(g.source[a])}, {"target", oname(g.target[a])}});
    j["composition"] = json::array();
    for (size_t a = 0; a < g.arrows(); ++a)
        for (size_t b = 0; b < g.arrows(); ++b)
            if (g.composable(a, b)) j["composition"].push_back({g.arrow_name(a), g.arrow_name(b), g.arrow_name(g.compose(a, b))});
    return j;
}

// ---------------------------------------------------------------------------
// space, either
//   {"kind": "space", "complex": {"vertices": [ids], "facets": [[ids], ...]}}
// or explicit tables
//   {"kind": "space", "levels": [{"simplices": [ids], "faces": {id: [d_0 .. d_n]},
//                                  "degeneracies": {id: [s_0 .. s_n]}}, ...]}
// In the complex form the simplex ids at level n are the vertex ids joined by ','.

struct ParsedSpace {
    SimplicialSet set;
    std::vector<std::map<std::string, size_t>> ids;  // per level
};

inline ParsedSpace parse_space(const json& j, const std::string& where = "space") {
    ParsedSpace out;
    if (j.contains("complex")) {
        const auto& cx = j.at("complex");
        const auto& verts = array_field(cx, "vertices", where + ".complex");
        auto vids = index_ids(verts, where + ".complex.vertices");
        std::vector<std::vector<size_t>> facets;
        for (const auto& f : array_field(cx, "facets", where + ".complex")) {
            if (!f.is_array()) schema_error(where + ".complex.facets", "facets are arrays of vertex ids");
            std::vector<size_t> v;
            for (const auto& x : f) v.push_back(lookup(vids, x, where + ".complex.facets"));
            facets.push_back(std::move(v));
        }
        out.set = SimplicialSet::from_complex(verts.size(), facets);
        const auto& vt = out.set.vertex_tuples();
        out.ids.resize(vt.size());
        for (size_t n = 0; n < vt.size(); ++n)
            for (size_t x = 0; x < vt[n].size(); ++x) {
                std::string id;
                for (size_t i = 0; i < vt[n][x].size(); ++i) id += (i ? "," : "") + verts[vt[n][x][i]].get<std::string>();
                out.ids[n][id] = x;
            }
        return out;
    }
    const auto& levels = array_field(j, "levels", where);
    if (levels.empty()) schema_error(where, "needs at least one level");
    std::vector<size_t> sizes;
    for (size_t n = 0; n < levels.size(); ++n) {
        auto w = where + ".levels[" + std::to_string(n) + "]";
        const auto& simp = array_field(levels[n], "simplices", w);
        out.ids.push_back(index_ids(simp, w + ".simplices"));
        sizes.push_back(simp.size());
    }
    SimplicialSet s(sizes);
    for (size_t n = 0; n < levels.size(); ++n) {
        auto w = where + ".levels[" + std::to_string(n) + "]";
        if (n > 0) {
            const auto& faces = field(levels[n], "faces", w);
            for (const auto& [id, x] : out.ids[n]) {
                if (!faces.contains(id) || !faces.at(id).is_array() || faces.at(id).size() != n + 1)
                    schema_error(w + ".faces", "simplex '" + id + "' needs " + std::to_string(n + 1) + " faces");
                for (size_t i = 0; i <= n; ++i) s.set_face(n, i, x, lookup(out.ids[n - 1], faces.at(id)[i], w + ".faces"));
            }
        }
        if (n + 1 < levels.size()) {
            const auto& degs = field(levels[n], "degeneracies", w);
            for (const auto& [id, x] : out.ids[n]) {
                if (!degs.contains(id) || !degs.at(id).is_array() || degs.at(id).size() != n + 1)
                    schema_error(w + ".degeneracies", "simplex '" + id + "' needs " + std::to_string(n + 1) + " degeneracies");
                for (size_t i = 0; i <= n; ++i) s.set_degeneracy(n, i, x, lookup(out.ids[n + 1], degs.at(id)[i], w + ".degeneracies"));
            }
        }
    }
    s.finalize();
    auto rep = s.check_identities();
    if (!rep.ok()) throw Error(ErrorKind::Validation, where + ": " + rep.violations.front());
    out.set = std::move(s);
    return out;
}

// ---------------------------------------------------------------------------
// cover:  {"kind": "cover", "space": {...}, "pieces": [{"id", "members": [simplex ids]}
//                                                      or {"id", "vertices": [vertex ids]}]}
// Members may sit at any level; a piece is the sub simplicial set they generate downward
// only if listed, so list every simplex of the piece (degeneracies are added).

struct ParsedCover {
    Cover cover;
    std::vector<std::string> names;
};

inline ParsedCover parse_cover(const json& j, const std::string& where = "cover") {
    auto sp = parse_space(field(j, "space", where), where + ".space");
    ParsedCover out;
    std::vector<std::vector<std::pair<size_t, size_t>>> members;
    const auto& pieces = array_field(j, "pieces", where);
    for (size_t p = 0; p < pieces.size(); ++p) {
        auto w = where + ".pieces[" + std::to_string(p) + "]";
        out.names.push_back(str_field(pieces[p], "id", w));
        std::vector<std::pair<size_t, size_t>> list;
        if (pieces[p].contains("vertices")) {
            if (sp.set.vertex_tuples().empty()) schema_error(w, "'vertices' requires a space given by 'complex'");
            std::set<std::string> allowed;
            for (const auto& v : array_field(pieces[p], "vertices", w)) {
                lookup(sp.ids[0], v, w + ".vertices");
                allowed.insert(v.get<std::string>());
            }
            for (size_t n = 0; n < sp.ids.size(); ++n)
                for (const auto& [id, x] : sp.ids[n]) {
                    std::stringstream ss(id);
                    std::string v;
                    bool inside = true;
                    while (std::getline(ss, v, ','))
                        if (!allowed.count(v)) inside = false;
                    if (inside) list.push_back({n, x});
                }
        } else {
            for (const auto& m : array_field(pieces[p], "members", w)) {
                bool found = false;
                for (size_t n = 0; n < sp.ids.size() && !found; ++n)
                    if (m.is_string() && sp.ids[n].count(m.get<std::string>())) {
                        list.push_back({n, sp.ids[n].at(m.get<std::string>())});
                        found = true;
                    }
                if (!found) schema_error(w + ".members", "unknown simplex " + m.dump());
            }
        }
        members.push_back(std::move(list));
    }
    out.cover = Cover::from_members(sp.set, members);
    auto rep = out.cover.validate();
    if (!rep.ok()) throw Error(ErrorKind::Validation, where + ": " + rep.violations.front());
    return out;
}

// ---------------------------------------------------------------------------
// Models: any of the three kinds, turned into a truncated nerve diagram.

struct Model {
    std::string kind;
    std::string name;
    json source;

    NerveDiagram nerve(size_t cutoff) const {
        if (kind == "groupoid") return grpd::nerve(parse_groupoid(source), cutoff);
        if (kind == "space") return constant_nerve(parse_space(source).set, cutoff);
        if (kind == "cover") return cech_nerve(parse_cover(source).cover, cutoff);
        throw Error(ErrorKind::Parse, "model: unknown kind '" + kind + "'");
    }
};

inline Model parse_model(const json& j, const std::string& where = "model") {
    Model m{str_field(j, "kind", where), j.value("name", std::string()), j};
    if (m.kind == "groupoid")
        parse_groupoid(j, where);
    else if (m.kind == "space")
        parse_space(j, where);
    else if (m.kind == "cover")
        parse_cover(j, where);
    else
        schema_error(where, "unknown kind '" + m.kind + "' (groupoid, space, cover)");
    return m;
}

inline Model read_model(const std::string& path) { return parse_model(read_file(path), path); }

// ---------------------------------------------------------------------------
// Cochains: sparse lists [[r, s, x, value], ...] over the nerve basis; x indexes X_r level s.

inline TotalCochain parse_cochain(const TotalComplex& t, const json& j, size_t degree, const std::string& where) {
    if (degree >= t.degrees()) throw Error(ErrorKind::Cutoff, where + ": degree " + std::to_string(degree) + " outside the model");
    auto out = TotalCochain::zero(t, degree);
    if (!j.is_array()) schema_error(where, "cochain must be an array of [r, s, x, value]");
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 4 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned() || !e[2].is_number_unsigned())
            schema_error(where, "entries are [r, s, x, value] with nonnegative integers r, s, x");
        size_t r = e[0].get<size_t>(), s = e[1].get<size_t>(), x = e[2].get<size_t>();
        if (r + s != degree) throw Error(ErrorKind::Validation, where + ": entry " + e.dump() + " is not in degree " + std::to_string(degree));
        if (r > t.cutoff() || x >= t.nerve->level(r).size(s))
            throw Error(ErrorKind::Validation, where + ": entry " + e.dump() + " outside the nerve");
        size_t i = t.index(r, s, x);
        if (i == SIZE_MAX) throw Error(ErrorKind::Validation, where + ": entry " + e.dump() + " is a degenerate simplex");
        out.coords[i] += parse_rational(e[3], where);
    }
    return out;
}

inline json cochain_json(const TotalComplex& t, const TotalCochain& a) {
    json arr = json::array();
    for (size_t i = 0; i < a.coords.size(); ++i) {
        if (a.coords[i] == 0) continue;
        const auto& l = t.labels[a.degree][i];
        arr.push_back({l.r, l.s, l.x, rational_json(a.coords[i])});
    }
    return arr;
}

inline json vector_json(const QVector& v) {
    json arr = json::array();
    for (const auto& x : v) arr.push_back(rational_json(x));
    return arr;
}

// bundle: {"c": cochain, "h": cochain, "omega": cochain (optional: Dh + c),
//          "connection": bool (optional), "omega_hat": {"r": cochain, ...} (optional)}

inline DifferentialCocycle parse_bundle(const TotalComplex& t, const json& j, const std::string& where = "bundle") {
    DifferentialCocycle d;
    d.c = parse_cochain(t, field(j, "c", where), 2, where + ".c");
    d.h = parse_cochain(t, field(j, "h", where), 1, where + ".h");
    d.omega = j.contains("omega") ? parse_cochain(t, j.at("omega"), 2, where + ".omega") : D(t, d.h) + d.c;
    if (j.contains("connection")) {
        if (!j.at("connection").is_boolean()) schema_error(where, "'connection' must be a boolean");
        d.declared_connection = j.at("connection").get<bool>();
    }
    return d;
}

inline std::map<size_t, TotalCochain> parse_omega_hat(const TotalComplex& t, const json& j, const std::string& where) {
    std::map<size_t, TotalCochain> out;
    if (!j.contains("omega_hat")) return out;
    const auto& oh = j.at("omega_hat");
    if (!oh.is_object()) schema_error(where, "'omega_hat' maps r to cochains");
    for (const auto& [key, val] : oh.items()) {
        size_t r = 0;
        try {
            r = std::stoul(key);
        } catch (...) {
            schema_error(where + ".omega_hat", "keys are positive integers");
        }
        if (r == 0) schema_error(where + ".omega_hat", "keys are positive integers");
        out.emplace(r, parse_cochain(t, val, 2 * r - 1, where + ".omega_hat." + key));
    }
    return out;
}

inline json bundle_json(const TotalComplex& t, const DifferentialCocycle& d, const std::map<size_t, TotalCochain>& omega_hat = {}) {
    json j;
    j["c"] = cochain_json(t, d.c);
    j["h"] = cochain_json(t, d.h);
    j["omega"] = cochain_json(t, d.omega);
    if (d.declared_connection) j["connection"] = *d.declared_connection;
    if (!omega_hat.empty()) {
        j["omega_hat"] = json::object();
        for (const auto& [r, w] : omega_hat) j["omega_hat"][std::to_string(r)] = cochain_json(t, w);
    }
    return j;
}

// gauge: {"b": cochain of degree 1 (integral), "lambda": cochain of degree 0}
inline Gauge parse_gauge(const TotalComplex& t, const json& j, const std::string& where = "gauge") {
    Gauge g = Gauge::identity(t);
    if (j.contains("b")) g.b = parse_cochain(t, j.at("b"), 1, where + ".b");
    if (j.contains("lambda")) g.lambda = parse_cochain(t, j.at("lambda"), 0, where + ".lambda");
    if (!g.b.is_integral()) throw Error(ErrorKind::Validation, where + ": b must be integral");
    return g;
}

// ---------------------------------------------------------------------------
// Reports.

inline json torsion_json(const std::vector<Integer>& t) {
    json arr = json::array();
    for (const auto& d : t) arr.push_back(d.fits_slong_p() ? json(d.get_si()) : json(d.get_str()));
    return arr;
}

inline json group_json(const MixedGroup& g) {
    return {{"q_rank", g.q_rank}, {"qz_rank", g.qz_rank}, {"torsion", torsion_json(g.torsion)}, {"z_rank", g.z_rank},
            {"extension_resolved", g.extension_resolved}, {"text", g.str()}};
}

inline json matrix_json(const SparseMatrix& m) {
    json entries = json::array();
    for (size_t j = 0; j < m.cols(); ++j)
        for (const auto& [i, v] : m.column(j)) entries.push_back({i, j, rational_json(v)});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

}  // namespace grpd::io
