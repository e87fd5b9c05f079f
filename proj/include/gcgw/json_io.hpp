#pragma once

// Problem-file loading: every CLI command reads one JSON document holding
// optional blocks (lie_algebra, gcs, metric, bundle) and a task list.  The
// schema is documented in docs/schema.md; text fields use the expression
// grammars of docs/grammar.md.  All schema violations surface as input_error
// with a location string.

#include <fstream>
#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "gcgw/bundles.hpp"
#include "gcgw/complexes.hpp"
#include "gcgw/gcs.hpp"
#include "gcgw/lie.hpp"
#include "gcgw/spinor.hpp"

namespace gcgw {

using Json = nlohmann::json;

struct Problem {
    Json raw;
    std::optional<LieAlgebra> lie;
    std::optional<GcStructure> gcs;
    std::optional<PureSpinor> spinor;
    std::optional<QiMatrix> transverse_gram;
    std::optional<TransitionCocycle> bundle;
    std::map<int, RfMatrix> bundle_metric;
    std::optional<ConnectionData> bundle_connection;
    std::vector<Json> tasks;
};

namespace detail_json {

inline const Json& need(const Json& j, const std::string& key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw input_error(where + ": missing field '" + key + "'");
    return *it;
}

inline GaussianRational scalar_of(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return GaussianRational(Rational(j.get<long>()));
    if (j.is_string()) return parse_scalar(j.get<std::string>());
    throw input_error(where + ": expected an integer or an exact scalar string");
}

inline LieAlgebra lie_of(const Json& j) {
    int dim = need(j, "dim", "lie_algebra").get<int>();
    LieAlgebra alg{BasedSpace(dim)};
    if (j.contains("d")) {
        for (auto it = j["d"].begin(); it != j["d"].end(); ++it) {
            int idx = alg.space.index_of(it.key());
            if (idx < 0) throw input_error("lie_algebra.d: unknown generator '" + it.key() + "'");
            alg.set_d(idx, parse_form(it.value().get<std::string>(), alg.space));
        }
    }
    return alg;
}

inline QiMatrix matrix_of(const Json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw input_error(where + ": expected a matrix (array of rows)");
    int rows = static_cast<int>(j.size());
    int cols = static_cast<int>(j[0].size());
    QiMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(j[r].size()) != cols) throw input_error(where + ": ragged matrix");
        for (int c = 0; c < cols; ++c) m(r, c) = scalar_of(j[r][c], where);
    }
    return m;
}

inline void gcs_of(const Json& j, const std::optional<LieAlgebra>& lie, std::optional<GcStructure>& out,
                   std::optional<PureSpinor>& spinor_out) {
    if (j.contains("spinor")) {
        const Json& s = j["spinor"];
        int dim = lie ? lie->space.dim : need(s, "dim", "gcs.spinor").get<int>();
        BasedSpace sp(dim);
        QiForm b(dim), omega(dim);
        if (s.contains("B")) b = parse_form(s["B"].get<std::string>(), sp);
        if (s.contains("omega")) omega = parse_form(s["omega"].get<std::string>(), sp);
        std::vector<QiForm> thetas;
        if (s.contains("theta"))
            for (const auto& t : s["theta"]) thetas.push_back(parse_form(t.get<std::string>(), sp));
        PureSpinor ps = PureSpinor::factored(b, omega, thetas);
        spinor_out = ps;
        out = spinor_to_structure(sp, ps.build()).structure;
        return;
    }
    if (j.contains("matrix")) {
        const Json& m = j["matrix"];
        int dim = lie ? lie->space.dim : need(m, "dim", "gcs.matrix").get<int>();
        BasedSpace sp(dim);
        if (m.contains("omega") && !m.contains("J")) {
            out = gc_from_symplectic(sp, parse_form(m["omega"].get<std::string>(), sp));
            return;
        }
        QiMatrix J = m.contains("J") ? matrix_of(m["J"], "gcs.matrix.J") : QiMatrix(dim, dim);
        QiForm b(dim), beta(dim);
        if (m.contains("B")) b = parse_form(m["B"].get<std::string>(), sp);
        if (m.contains("beta")) beta = parse_form(m["beta"].get<std::string>(), sp);
        out = GcStructure::from_blocks(sp, J, b, beta);
        return;
    }
    throw input_error("gcs: expected a 'spinor' or 'matrix' block");
}

// invert a Mobius map w = (a z + b) / (c z + d) to z = (d w - b) / (-c w + a)
inline std::optional<RationalFunction> mobius_invert(const RationalFunction& f, int src_var,
                                                     const std::shared_ptr<const VarTable>& dst,
                                                     int dst_var) {
    auto lincoef = [&](const Polynomial& p, GaussianRational& c0, GaussianRational& c1) {
        c0 = GaussianRational(0);
        c1 = GaussianRational(0);
        for (const auto& [e, c] : p.terms) {
            int deg = e[src_var];
            int total = 0;
            for (int x : e) total += x;
            if (total != deg) return false; // some other variable appears
            if (deg == 0) c0 = c;
            else if (deg == 1) c1 = c;
            else return false;
        }
        return true;
    };
    GaussianRational b, a, d, c;
    if (!lincoef(f.num, b, a) || !lincoef(f.den, d, c)) return std::nullopt;
    // w = (a z + b)/(c z + d): inverse z = (d w - b)/(a - c w)
    int nv = dst->size();
    Polynomial wnum(nv), wden(nv);
    wnum.add_term(Expo(nv, 0), -b);
    Expo ew(nv, 0);
    ew[dst_var] = 1;
    wnum.add_term(ew, d);
    wden.add_term(Expo(nv, 0), a);
    wden.add_term(ew, -c);
    if (wden.is_zero()) return std::nullopt;
    return RationalFunction(dst, wnum, wden);
}

inline void bundle_of(const Json& j, Problem& out) {
    TransitionCocycle c;
    c.nerve = std::make_shared<ChartNerve>();
    c.rank = j.contains("rank") ? j["rank"].get<int>() : 1;

    for (const auto& name : need(j, "charts", "bundle")) {
        std::string cname = name.get<std::string>();
        std::vector<std::string> hol, leaf;
        std::vector<bool> punct;
        const Json& vars = need(j, "vars", "bundle");
        if (!vars.contains(cname)) throw input_error("bundle.vars: missing chart '" + cname + "'");
        for (const auto& v : vars[cname]) {
            if (v.is_string()) {
                hol.push_back(v.get<std::string>());
                punct.push_back(false);
            } else {
                std::string vn = need(v, "name", "bundle.vars").get<std::string>();
                std::string kind = v.contains("kind") ? v["kind"].get<std::string>() : "hol";
                if (kind == "leaf") {
                    leaf.push_back(vn);
                } else {
                    hol.push_back(vn);
                    punct.push_back(v.contains("punctured") && v["punctured"].get<bool>());
                }
            }
        }
        auto table = VarTable::make(hol, leaf);
        std::vector<int> hidx;
        for (const auto& h : hol) hidx.push_back(table->index_of(h));
        c.nerve->charts.push_back(Chart{cname, table, hidx, punct});
    }

    auto split_pair = [&](const std::string& key) {
        auto comma = key.find(',');
        if (comma == std::string::npos) throw input_error("bundle: overlap key '" + key + "' must be 'A,B'");
        int a = c.nerve->chart_index(key.substr(0, comma));
        int b = c.nerve->chart_index(key.substr(comma + 1));
        if (a < 0 || b < 0) throw input_error("bundle: unknown chart in overlap '" + key + "'");
        return std::make_pair(a, b);
    };

    if (j.contains("glue")) {
        for (auto it = j["glue"].begin(); it != j["glue"].end(); ++it) {
            auto [a, b] = split_pair(it.key());
            const Chart& cb = c.nerve->charts[b];
            std::vector<RationalFunction> g(cb.transverse_rank());
            for (auto vit = it.value().begin(); vit != it.value().end(); ++vit) {
                int vi = cb.table->index_of(vit.key());
                if (vi < 0) throw input_error("bundle.glue: unknown variable '" + vit.key() + "'");
                g[ChartNerve::hol_position(cb, vi)] =
                    parse_ratfunc(vit.value().get<std::string>(), c.nerve->charts[a].table);
            }
            c.nerve->glue[{a, b}] = std::move(g);
        }
        // derive missing reverse glue for single-variable Mobius maps
        std::vector<std::pair<Overlap, std::vector<RationalFunction>>> derived;
        for (const auto& [key, g] : c.nerve->glue) {
            auto [a, b] = key;
            if (c.nerve->has_overlap(b, a)) continue;
            const Chart& ca = c.nerve->charts[a];
            const Chart& cb = c.nerve->charts[b];
            if (g.size() != 1 || ca.transverse_rank() != 1) continue;
            auto inv = mobius_invert(g[0], ca.hol[0], cb.table, cb.hol[0]);
            if (inv) derived.push_back({{b, a}, {*inv}});
        }
        for (auto& [k, g] : derived) c.nerve->glue.emplace(k, std::move(g));
        c.nerve->validate();
    }

    if (j.contains("transition")) {
        for (auto it = j["transition"].begin(); it != j["transition"].end(); ++it) {
            auto [a, b] = split_pair(it.key());
            const Json& rows = it.value();
            RfMatrix m(c.rank, c.rank);
            for (int r = 0; r < c.rank; ++r)
                for (int cc = 0; cc < c.rank; ++cc)
                    m(r, cc) = parse_ratfunc(rows[r][cc].get<std::string>(),
                                             c.nerve->charts[a].table);
            c.phi.emplace(Overlap{a, b}, std::move(m));
        }
        c.complete();
    }

    if (j.contains("metric")) {
        for (auto it = j["metric"].begin(); it != j["metric"].end(); ++it) {
            int a = c.nerve->chart_index(it.key());
            if (a < 0) throw input_error("bundle.metric: unknown chart '" + it.key() + "'");
            RfMatrix m(c.rank, c.rank);
            for (int r = 0; r < c.rank; ++r)
                for (int cc = 0; cc < c.rank; ++cc)
                    m(r, cc) = parse_ratfunc(it.value()[r][cc].get<std::string>(),
                                             c.nerve->charts[a].table);
            out.bundle_metric.emplace(a, std::move(m));
        }
    }

    if (j.contains("connection")) {
        ConnectionData cd;
        for (auto it = j["connection"].begin(); it != j["connection"].end(); ++it) {
            int a = c.nerve->chart_index(it.key());
            if (a < 0) throw input_error("bundle.connection: unknown chart '" + it.key() + "'");
            const Chart& chart = c.nerve->charts[a];
            FormMatrix fm(c.rank, c.rank, form_gens(chart));
            for (int r = 0; r < c.rank; ++r)
                for (int cc = 0; cc < c.rank; ++cc) {
                    const Json& cell = it.value()[r][cc];
                    for (auto dit = cell.begin(); dit != cell.end(); ++dit) {
                        std::string gen = dit.key(); // "dz" style
                        int pos = -1;
                        for (int gidx = 0; gidx < form_gens(chart); ++gidx)
                            if (form_gen_label(chart, gidx) == gen) pos = gidx;
                        if (pos < 0)
                            throw input_error("bundle.connection: unknown form generator '" + gen + "'");
                        fm(r, cc).add_term(Mask(1) << pos,
                                           parse_ratfunc(dit.value().get<std::string>(), chart.table));
                    }
                }
            cd.theta.emplace(a, std::move(fm));
        }
        out.bundle_connection = std::move(cd);
    }

    out.bundle = std::move(c);
}

} // namespace detail_json

inline Problem load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open problem file: " + path);
    Problem p;
    try {
        in >> p.raw;
    } catch (const std::exception& e) {
        throw input_error("invalid JSON in " + path + ": " + e.what());
    }
    if (p.raw.contains("lie_algebra")) p.lie = detail_json::lie_of(p.raw["lie_algebra"]);
    if (p.raw.contains("gcs")) detail_json::gcs_of(p.raw["gcs"], p.lie, p.gcs, p.spinor);
    if (p.raw.contains("metric") && p.raw["metric"].contains("transverse_gram")) {
        const Json& g = p.raw["metric"]["transverse_gram"];
        if (g.is_string() && g.get<std::string>() == "unitary") {
            // the default frame is already declared unitary
        } else {
            p.transverse_gram = detail_json::matrix_of(g, "metric.transverse_gram");
        }
    }
    if (p.raw.contains("bundle")) detail_json::bundle_of(p.raw["bundle"], p);
    if (p.raw.contains("tasks"))
        for (const auto& t : p.raw["tasks"]) p.tasks.push_back(t);
    return p;
}

} // namespace gcgw
