#include "fingeo/config.hpp"

#include <iomanip>
#include <set>
#include <sstream>

namespace fingeo {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw Error(Errc::ConfigInvalid, "unknown key '" + it.key() + "' in " + where);
}

Rational parse_frac(const json& v, const std::string& where) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    throw Error(Errc::ConfigInvalid, where + ": expected a fraction string or integer");
}

RatMatrix parse_matrix(const json& m, const std::string& where) {
    if (!m.is_array() || m.empty())
        throw Error(Errc::ConfigInvalid, where + ": expected a matrix");
    RatMatrix out(m.size(), m[0].size());
    for (std::size_t r = 0; r < m.size(); ++r) {
        if (!m[r].is_array() || m[r].size() != m[0].size())
            throw Error(Errc::ConfigInvalid, where + ": ragged matrix");
        for (std::size_t c = 0; c < m[r].size(); ++c)
            out(r, c) = parse_frac(m[r][c], where);
    }
    return out;
}

int element_id(const GroupPtr& g, const json& v, const std::string& where) {
    if (v.is_number_integer()) {
        int id = v.get<int>();
        if (id < 0 || id >= g->order())
            throw Error(Errc::ConfigInvalid, where + ": element id out of range");
        return id;
    }
    if (v.is_string()) {
        const std::string name = v.get<std::string>();
        for (int i = 0; i < g->order(); ++i)
            if (g->names[i] == name) return i;
        throw Error(Errc::ConfigInvalid, where + ": no element named '" + name + "'");
    }
    throw Error(Errc::ConfigInvalid, where + ": expected an element name or id");
}

GroupPtr parse_group(const json& spec) {
    if (spec.contains("preset")) {
        reject_unknown(spec, {"preset"}, "group");
        return preset_group(spec["preset"].get<std::string>());
    }
    reject_unknown(spec, {"elements", "table"}, "group");
    if (!spec.contains("elements") || !spec.contains("table"))
        throw Error(Errc::ConfigInvalid, "group: need preset or elements+table");
    std::vector<std::string> names = spec["elements"].get<std::vector<std::string>>();
    std::vector<std::vector<int>> table = spec["table"].get<std::vector<std::vector<int>>>();
    return build_group(std::move(names), std::move(table));
}

AdStableClass parse_class(const GroupPtr& g, const json& spec) {
    if (spec.contains("members")) {
        reject_unknown(spec, {"members"}, "class");
        std::vector<int> members;
        for (const auto& m : spec["members"]) members.push_back(element_id(g, m, "class"));
        return make_class(g, std::move(members));
    }
    if (spec.contains("conjugacy_of")) {
        reject_unknown(spec, {"conjugacy_of"}, "class");
        int rep = element_id(g, spec["conjugacy_of"], "class");
        for (auto& c : conjugacy_classes(g))
            if (c.contains(rep)) return c;
        throw Error(Errc::ConfigInvalid, "class: identity has no class");
    }
    throw Error(Errc::ConfigInvalid, "class: need members or conjugacy_of");
}

KillingForm parse_eta(const json& spec, int dim) {
    std::string kind = spec.value("kind", "identity");
    if (kind == "identity") {
        reject_unknown(spec, {"kind"}, "eta");
        return scaled_identity_form(dim, Rational(1));
    }
    if (kind == "scaled-identity") {
        reject_unknown(spec, {"kind", "scale"}, "eta");
        return scaled_identity_form(dim, parse_frac(spec.at("scale"), "eta.scale"));
    }
    if (kind == "matrix") {
        reject_unknown(spec, {"kind", "matrix"}, "eta");
        return killing_form(parse_matrix(spec.at("matrix"), "eta.matrix"));
    }
    throw Error(Errc::ConfigInvalid, "eta: unknown kind '" + kind + "'");
}

Complex parse_complex(const json& v, const std::string& where) {
    if (v.is_string()) return Complex(to_double(parse_rational(v.get<std::string>())), 0.0);
    if (v.is_number()) return Complex(v.get<double>(), 0.0);
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return Complex(v[0].get<double>(), v[1].get<double>());
    throw Error(Errc::ConfigInvalid, where + ": expected fraction string, number or [re, im]");
}

FinAlgebra parse_algebra(const json& spec, const std::string& where) {
    reject_unknown(spec, {"dim", "sc", "unit", "star", "names"}, where);
    int dim = spec.at("dim").get<int>();
    const auto& sc_doc = spec.at("sc");
    std::vector<std::vector<std::vector<Rational>>> sc(
        dim, std::vector<std::vector<Rational>>(dim, std::vector<Rational>(dim, Rational(0))));
    if (static_cast<int>(sc_doc.size()) != dim)
        throw Error(Errc::ConfigInvalid, where + ".sc: need dim x dim x dim entries");
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) sc[i][j][k] = parse_frac(sc_doc[i][j][k], where);
    std::vector<Rational> unit(dim);
    for (int k = 0; k < dim; ++k) unit[k] = parse_frac(spec.at("unit")[k], where + ".unit");
    std::optional<RatMatrix> star;
    if (spec.contains("star")) star = parse_matrix(spec["star"], where + ".star");
    std::vector<std::string> names;
    if (spec.contains("names")) names = spec["names"].get<std::vector<std::string>>();
    return make_algebra(dim, std::move(sc), std::move(unit), std::move(names), std::move(star));
}

MeasureSetup parse_measure(const json& spec) {
    if (spec.contains("preset")) {
        reject_unknown(spec, {"preset"}, "measure");
        const std::string name = spec["preset"].get<std::string>();
        auto translation_setup = [](GroupPtr g, const std::string& label) {
            FinAlgebra p = function_algebra(g->order());
            FinAlgebra a = group_algebra(*g);
            // right translation: a_g |> delta_x = delta_{x g^-1}
            std::vector<std::vector<int>> images(g->order(), std::vector<int>(g->order()));
            for (int gg = 0; gg < g->order(); ++gg)
                for (int x = 0; x < g->order(); ++x) images[gg][x] = g->mul[x][g->inv[gg]];
            return MeasureSetup{std::move(p), std::move(a), permutation_action(*g, images),
                                label};
        };
        if (name == "z2-dynamical") return translation_setup(preset_group("z2"), name);
        if (name == "z3-translation") return translation_setup(preset_group("z3"), name);
        if (name == "z2-trivial") {
            auto g = preset_group("z2");
            FinAlgebra p = function_algebra(2);
            FinAlgebra a = group_algebra(*g);
            AlgebraAction act = trivial_action(p, a);
            return MeasureSetup{std::move(p), std::move(a), std::move(act), name};
        }
        if (name == "z2-two-orbits") {
            auto g = preset_group("z2");
            FinAlgebra p = function_algebra(4);
            FinAlgebra a = group_algebra(*g);
            // swap within two pairs: (0 1)(2 3)
            std::vector<std::vector<int>> images = {{0, 1, 2, 3}, {1, 0, 3, 2}};
            return MeasureSetup{std::move(p), std::move(a), permutation_action(*g, images),
                                name};
        }
        throw Error(Errc::ConfigInvalid, "measure: unknown preset '" + name + "'");
    }
    if (spec.contains("p") || spec.contains("a")) {
        // raw structure-constant documents with explicit operator matrices
        reject_unknown(spec, {"p", "a", "action"}, "measure");
        FinAlgebra p = parse_algebra(spec.at("p"), "measure.p");
        FinAlgebra a = parse_algebra(spec.at("a"), "measure.a");
        AlgebraAction act;
        for (const auto& m : spec.at("action"))
            act.act.push_back(parse_matrix(m, "measure.action"));
        validate_action(p, a, act);
        return MeasureSetup{std::move(p), std::move(a), std::move(act), "custom-algebras"};
    }
    reject_unknown(spec, {"p_points", "group", "action"}, "measure");
    GroupPtr g = parse_group(spec.at("group"));
    int npts = spec.at("p_points").get<int>();
    FinAlgebra p = function_algebra(npts);
    FinAlgebra a = group_algebra(*g);
    std::vector<std::vector<int>> images =
        spec.at("action").get<std::vector<std::vector<int>>>();
    if (static_cast<int>(images.size()) != g->order())
        throw Error(Errc::ConfigInvalid, "measure.action: one image list per group element");
    AlgebraAction act = permutation_action(*g, images);
    return MeasureSetup{std::move(p), std::move(a), std::move(act), "custom"};
}

}  // namespace

json preset_config(const std::string& name) {
    json cfg;
    cfg["schema"] = 1;
    cfg["mode"] = "exact";
    if (name == "s3") {
        cfg["group"] = {{"preset", "s3"}};
        cfg["class"] = {{"conjugacy_of", "(01)"}};
        cfg["calculus"] = {{"kind", "group"}};
        cfg["wedge"] = {{"kind", "woronowicz"}};
        cfg["frame"] = {{"kind", "maurer-cartan"}};
        cfg["eta"] = {{"kind", "scaled-identity"}, {"scale", "3"}};
        cfg["connection"] = {{"source", "solve"}};
        cfg["lift"] = "woronowicz";
        cfg["spinor"] = {{"kind", "search"}};
        return cfg;
    }
    if (name == "z2" || name == "z3" || name == "d4" || name.rfind("zn:", 0) == 0) {
        cfg["group"] = {{"preset", name}};
        if (name == "z2")
            cfg["class"] = {{"members", json::array({1})}};
        else if (name == "z3")
            cfg["class"] = {{"members", json::array({1, 2})}};
        else if (name == "d4")
            cfg["class"] = {{"conjugacy_of", "r"}};
        else
            cfg["class"] = {{"members", json::array({1})}};
        cfg["calculus"] = {{"kind", "group"}};
        cfg["wedge"] = {{"kind", "woronowicz"}};
        cfg["frame"] = {{"kind", "maurer-cartan"}};
        cfg["eta"] = {{"kind", "identity"}};
        cfg["connection"] = {{"source", "solve"}};
        cfg["lift"] = "woronowicz";
        cfg["spinor"] = {{"kind", "search"}};
        return cfg;
    }
    if (name == "z2-dynamical" || name == "z2-trivial" || name == "z3-translation" ||
        name == "z2-two-orbits") {
        cfg["measure"] = {{"preset", name}};
        return cfg;
    }
    throw Error(Errc::ConfigInvalid, "unknown preset '" + name + "'");
}

SessionConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw Error(Errc::ConfigInvalid, "config must be a JSON object");
    reject_unknown(doc,
                   {"schema", "mode", "group", "class", "calculus", "wedge", "frame", "eta",
                    "connection", "lift", "spinor", "measure"},
                   "config");
    if (doc.value("schema", 1) != 1)
        throw Error(Errc::ConfigInvalid, "unsupported schema version");
    SessionConfig s;
    s.mode = doc.value("mode", "exact");
    if (s.mode != "exact" && s.mode != "float")
        throw Error(Errc::ConfigInvalid, "mode must be exact or float");
    s.canonical = doc;
    s.canonical["schema"] = 1;
    s.canonical["mode"] = s.mode;

    if (doc.contains("measure")) s.measure = parse_measure(doc["measure"]);
    if (!doc.contains("group")) {
        if (s.measure) return s;
        throw Error(Errc::ConfigInvalid, "config needs a group (or a measure section)");
    }
    s.group = parse_group(doc["group"]);
    if (doc.contains("class")) s.cls = parse_class(s.group, doc["class"]);

    // calculus
    json calc_spec = doc.value("calculus", json{{"kind", "group"}});
    std::string ckind = calc_spec.value("kind", "group");
    if (ckind == "group") {
        reject_unknown(calc_spec, {"kind"}, "calculus");
        if (!s.cls) throw Error(Errc::ConfigInvalid, "group calculus needs a class");
        s.calc = group_calculus(s.group, *s.cls);
    } else if (ckind == "edges") {
        reject_unknown(calc_spec, {"kind", "points", "edges"}, "calculus");
        int npts = calc_spec.at("points").get<int>();
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : calc_spec.at("edges"))
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        s.calc = make_edge_calculus(npts, std::move(edges));
    } else if (ckind == "connes") {
        reject_unknown(calc_spec, {"kind", "points", "w_dim", "dirac"}, "calculus");
        int npts = calc_spec.at("points").get<int>();
        int wd = calc_spec.at("w_dim").get<int>();
        RatMatrix d = parse_matrix(calc_spec.at("dirac"), "calculus.dirac");
        s.calc = connes_calculus(npts, d, wd);
    } else {
        throw Error(Errc::ConfigInvalid, "calculus: unknown kind '" + ckind + "'");
    }

    // wedge (group calculi only; custom surjections come from explicit fibers)
    json wedge_spec = doc.value("wedge", json{{"kind", "woronowicz"}});
    std::string wkind = wedge_spec.value("kind", "woronowicz");
    if (wkind == "woronowicz") {
        reject_unknown(wedge_spec, {"kind"}, "wedge");
        if (s.cls && s.calc->is_group_calculus()) s.wedge = woronowicz_wedge(s.group, *s.cls);
    } else if (wkind == "custom") {
        reject_unknown(wedge_spec, {"kind", "fibers"}, "wedge");
        std::vector<WedgeStructureData::Fiber> fibers(s.calc->pair_fibers.size());
        for (std::size_t k = 0; k < fibers.size(); ++k) {
            fibers[k].dim = 0;
            fibers[k].p = RatMatrix(s.calc->pair_fibers[k].mids.size(), 0);
        }
        for (const auto& f : wedge_spec.at("fibers")) {
            reject_unknown(f, {"x", "z", "p", "lift"}, "wedge.fibers");
            int x = f.at("x").get<int>(), z = f.at("z").get<int>();
            int idx = s.calc->pair_index[x][z];
            if (idx < 0)
                throw Error(Errc::ConfigInvalid, "wedge fiber at a pair with empty F_{x,z}");
            fibers[idx].p = parse_matrix(f.at("p"), "wedge.p");
            fibers[idx].dim = static_cast<int>(fibers[idx].p.cols());
            if (f.contains("lift")) fibers[idx].lift = parse_matrix(f["lift"], "wedge.lift");
        }
        s.wedge = make_wedge_structure(s.calc, std::move(fibers));
    } else {
        throw Error(Errc::ConfigInvalid, "wedge: unknown kind '" + wkind + "'");
    }

    s.lift = doc.value("lift", "woronowicz");
    if (s.lift != "woronowicz" && s.lift != "proper")
        throw Error(Errc::ConfigInvalid, "lift must be woronowicz or proper");

    // frame + eta
    if (doc.contains("frame")) {
        json frame_spec = doc["frame"];
        std::string fkind = frame_spec.value("kind", "maurer-cartan");
        std::optional<Frame> frame;
        if (fkind == "maurer-cartan") {
            reject_unknown(frame_spec, {"kind"}, "frame");
            if (!s.cls || !s.calc->is_group_calculus())
                throw Error(Errc::ConfigInvalid, "maurer-cartan frame needs a group calculus");
            frame = maurer_cartan(s.group, *s.cls);
        } else if (fkind == "sections") {
            reject_unknown(frame_spec, {"kind", "sections"}, "frame");
            if (!s.cls) throw Error(Errc::ConfigInvalid, "sections frame needs a class");
            auto sections = frame_spec.at("sections").get<std::vector<std::vector<int>>>();
            frame = bein_from_sections(s.calc, coadjoint_rep(*s.cls), sections);
        } else if (fkind == "custom") {
            reject_unknown(frame_spec, {"kind", "bein"}, "frame");
            if (!s.cls) throw Error(Errc::ConfigInvalid, "custom frame needs a class");
            RatMatrix b = parse_matrix(frame_spec.at("bein"), "frame.bein");
            std::vector<std::vector<Rational>> bein(b.rows());
            for (std::size_t i = 0; i < b.rows(); ++i) bein[i] = b.row(i);
            frame = make_frame(s.calc, coadjoint_rep(*s.cls), std::move(bein));
        } else {
            throw Error(Errc::ConfigInvalid, "frame: unknown kind '" + fkind + "'");
        }
        if (doc.contains("eta")) {
            s.eta = parse_eta(doc["eta"], frame->dim());
            frame = cobein_from_eta(std::move(*frame), *s.eta);
        }
        s.frame = std::move(frame);
    }

    // connection
    if (doc.contains("connection")) {
        json conn_spec = doc["connection"];
        s.connection_source = conn_spec.value("source", "solve");
        if (s.connection_source == "explicit") {
            reject_unknown(conn_spec, {"source", "components"}, "connection");
            if (!s.cls) throw Error(Errc::ConfigInvalid, "explicit connection needs a class");
            RatMatrix m = parse_matrix(conn_spec.at("components"), "connection.components");
            std::vector<std::vector<Rational>> comp(m.rows());
            for (std::size_t r = 0; r < m.rows(); ++r) comp[r] = m.row(r);
            s.explicit_connection = make_connection(*s.cls, s.calc, std::move(comp));
        } else if (s.connection_source == "solve") {
            reject_unknown(conn_spec, {"source"}, "connection");
        } else {
            throw Error(Errc::ConfigInvalid, "connection.source must be solve or explicit");
        }
    }

    // spinor
    if (doc.contains("spinor")) {
        json spin_spec = doc["spinor"];
        s.spinor_kind = spin_spec.value("kind", "search");
        if (s.spinor_kind == "explicit") {
            reject_unknown(spin_spec, {"kind", "rep", "gammas"}, "spinor");
            std::vector<RatMatrix> mats;
            for (const auto& m : spin_spec.at("rep"))
                mats.push_back(parse_matrix(m, "spinor.rep"));
            int wd = mats.empty() ? 0 : static_cast<int>(mats[0].rows());
            Representation rep = make_representation(s.group, wd, std::move(mats));
            std::vector<CMatrix> gammas;
            std::optional<std::vector<RatMatrix>> exact = std::vector<RatMatrix>{};
            for (const auto& gm : spin_spec.at("gammas")) {
                CMatrix cm(gm.size(), gm[0].size());
                RatMatrix rm(gm.size(), gm[0].size());
                bool all_exact = true;
                for (std::size_t r = 0; r < gm.size(); ++r)
                    for (std::size_t c = 0; c < gm[r].size(); ++c) {
                        cm(r, c) = parse_complex(gm[r][c], "spinor.gammas");
                        if (gm[r][c].is_string() || gm[r][c].is_number_integer())
                            rm(r, c) = parse_frac(gm[r][c], "spinor.gammas");
                        else
                            all_exact = false;
                    }
                gammas.push_back(cm);
                if (exact && all_exact)
                    exact->push_back(rm);
                else
                    exact = std::nullopt;
            }
            s.explicit_spinor = make_spinor_setup(std::move(rep), std::move(gammas),
                                                  std::move(exact));
        } else if (s.spinor_kind != "search") {
            throw Error(Errc::ConfigInvalid, "spinor.kind must be search or explicit");
        }
    }
    return s;
}

std::string config_hash(const json& doc) {
    std::uint64_t h = fnv1a(doc.dump());
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

}  // namespace fingeo
