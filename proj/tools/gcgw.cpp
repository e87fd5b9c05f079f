// gcgw: batch front end for the exact generalized-geometry workbench.
// Every subcommand reads a JSON problem file (see docs/schema.md), runs the
// requested checks through the library, and prints a deterministic report.
// Exit codes: 0 all verdicts pass, 1 a verdict failed, 2 malformed input,
// 3 internal contract violation.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gcgw/bott.hpp"
#include "gcgw/json_io.hpp"

#ifndef GCGW_DEFAULT_FIXTURES
#define GCGW_DEFAULT_FIXTURES ""
#endif

namespace gcgw {
namespace {

struct Report {
    Json machine = Json::object();
    bool any_fail = false;
    bool json_mode = false;
    bool approx = false;

    Report() { machine["tasks"] = Json::array(); }

    void line(const std::string& s) {
        if (!json_mode) std::cout << s << "\n";
    }
    void verdict(const std::string& op, bool pass, const Json& detail = Json::object()) {
        if (!pass) any_fail = true;
        Json t;
        t["op"] = op;
        t["verdict"] = pass ? "pass" : "fail";
        if (!detail.empty()) t["detail"] = detail;
        machine["tasks"].push_back(t);
        if (!json_mode) std::cout << (pass ? "[pass] " : "[FAIL] ") << op << "\n";
    }

    std::string exact(const GaussianRational& v) const {
        std::string s = v.str();
        if (approx) {
            double re = v.re.convert_to<double>();
            double im = v.im.convert_to<double>();
            s += "  (approx " + std::to_string(re) + (im >= 0 ? "+" : "") + std::to_string(im) +
                 "i, non-authoritative)";
        }
        return s;
    }
};

std::string chart_form_str(const Chart& chart, const ChartForm& f) {
    if (f.is_zero()) return "0";
    std::string out;
    for (const auto& [m, c] : f.terms) {
        if (!out.empty()) out += " + ";
        std::string mono;
        for (Mask mm = m; mm; mm &= mm - 1) {
            int g = __builtin_ctz(mm);
            if (!mono.empty()) mono += "^";
            mono += form_gen_label(chart, g);
        }
        out += "(" + c.str() + ")" + (mono.empty() ? "" : " " + mono);
    }
    return out;
}

TransverseComplex complex_of(const Problem& p) {
    if (!p.gcs || !p.lie) throw input_error("this task needs both 'gcs' and 'lie_algebra' blocks");
    if (p.spinor && p.transverse_gram) {
        // metric applies to the theta frame of the spinor presentation
        return TransverseComplex::from_thetas(*p.lie, p.spinor->thetas, p.transverse_gram);
    }
    if (p.transverse_gram) {
        TransverseComplex base = TransverseComplex::from_structure(*p.gcs, *p.lie);
        return TransverseComplex::from_thetas(*p.lie, base.thetas, p.transverse_gram);
    }
    return TransverseComplex::from_structure(*p.gcs, *p.lie);
}

void task_validate(const Problem& p, const Json& t, Report& rep) {
    if (!p.lie) throw input_error("validate needs a 'lie_algebra' block");
    bool nil = t.contains("nilpotent") && t["nilpotent"].get<bool>();
    LieValidation v = p.lie->validate(nil);
    Json d;
    d["antisymmetry"] = v.antisymmetry_ok;
    d["d_squared_zero"] = v.d_squared_zero;
    if (!v.d_squared_zero) {
        d["witness"] = v.first_failure;
        rep.line("  d^2 != 0: " + v.first_failure);
    }
    if (nil) {
        d["nilpotent"] = v.nilpotent;
        if (v.nilpotency_class) {
            d["nilpotency_class"] = *v.nilpotency_class;
            rep.line("  nilpotency class " + std::to_string(*v.nilpotency_class));
        }
    }
    rep.verdict("validate", v.ok() && (!nil || v.nilpotent), d);
}

void task_check(const Problem& p, Report& rep) {
    if (!p.gcs) throw input_error("check needs a 'gcs' block");
    AxiomReport ax = p.gcs->check_axioms(p.lie ? &*p.lie : nullptr);
    Json d;
    d["square"] = ax.square_ok;
    d["orthogonal"] = ax.orthogonal_ok;
    if (ax.integrable) d["integrable"] = *ax.integrable;
    if (!ax.witness.empty()) {
        d["witness"] = ax.witness;
        rep.line("  witness: " + ax.witness);
    }
    rep.verdict("check", ax.passed(), d);
}

void task_type(const Problem& p, Report& rep) {
    if (!p.gcs) throw input_error("type needs a 'gcs' block");
    EigenData ed = p.gcs->eigenbundle();
    Json d;
    d["type"] = ed.type;
    d["dim_L"] = ed.L.cols;
    d["L_cap_conj_trivial"] = ed.l_cap_lbar_trivial;
    rep.line("  type " + std::to_string(ed.type));
    rep.verdict("type", ed.l_cap_lbar_trivial, d);
}

void task_b_transform(const Problem& p, const Json& t, Report& rep) {
    if (!p.gcs || !p.lie) throw input_error("b_transform needs 'gcs' and 'lie_algebra'");
    QiForm b = parse_form(detail_json::need(t, "B", "b_transform").get<std::string>(), p.lie->space);
    GcStructure jb = p.gcs->b_transform(b, &*p.lie);
    AxiomReport ax = jb.check_axioms(&*p.lie);
    bool type_kept = jb.eigenbundle().type == p.gcs->eigenbundle().type;
    Json d;
    d["axioms"] = ax.passed();
    d["type_preserved"] = type_kept;
    rep.verdict("b_transform", ax.passed() && type_kept, d);
}

void task_calabi_yau(const Problem& p, const Json& t, Report& rep) {
    if (!p.lie || !p.spinor) throw input_error("calabi_yau needs 'lie_algebra' and a spinor 'gcs' block");
    bool strong = t.contains("strong") && t["strong"].get<bool>();
    CalabiYauReport cy = check_calabi_yau(*p.lie, *p.spinor, strong);
    Json d;
    d["d_rho_zero"] = cy.d_rho_zero;
    if (!cy.d_rho_zero) {
        d["d_rho"] = cy.d_rho_value;
        rep.line("  d(rho) = " + cy.d_rho_value);
    }
    d["nondegenerate"] = cy.nondegenerate;
    if (!cy.nondeg_value.empty()) {
        d["nondegeneracy_form"] = cy.nondeg_value;
        rep.line("  w^{n-k} ^ Omega ^ conj(Omega) = " + cy.nondeg_value);
    }
    d["type"] = cy.type;
    d["decomposable"] = cy.decomposable;
    Json dth = Json::array();
    for (bool z : cy.d_theta_zero) dth.push_back(z);
    d["d_theta_zero"] = dth;
    if (cy.integrable) d["integrable"] = *cy.integrable;
    d["gcy"] = cy.gcy;
    if (strong) d["strong"] = cy.strong;
    rep.line("  type " + std::to_string(cy.type));
    rep.verdict(strong ? "calabi_yau(strong)" : "calabi_yau", strong ? cy.strong : cy.gcy, d);
}

void task_leaf(const Problem& p, Report& rep) {
    if (!p.lie || !p.spinor) throw input_error("leaf needs 'lie_algebra' and a spinor 'gcs' block");
    LeafReport lf = leaf_distribution(*p.lie, *p.spinor);
    Json d;
    d["dim"] = lf.basis.cols;
    d["codim"] = lf.codim;
    d["subalgebra"] = lf.subalgebra;
    Json basis = Json::array();
    for (int c = 0; c < lf.basis.cols; ++c) {
        QiForm v(p.lie->space.dim);
        for (int i = 0; i < p.lie->space.dim; ++i) v.add_term(Mask(1) << i, lf.basis(i, c));
        basis.push_back(form_str(v, p.lie->space));
    }
    d["basis"] = basis;
    rep.line("  leaf directions: codim " + std::to_string(lf.codim));
    rep.verdict("leaf", lf.subalgebra, d);
}

void task_cohomology(const Problem& p, const Json& t, Report& rep) {
    std::string flavor = t.contains("flavor") ? t["flavor"].get<std::string>() : "D";
    TransverseComplex tc = complex_of(p);
    Json d;
    if (flavor == "D") {
        auto dims = tc.cohomology_dims_D();
        Json arr = Json::array();
        std::string s;
        for (int x : dims) {
            arr.push_back(x);
            s += (s.empty() ? "" : ", ") + std::to_string(x);
        }
        d["D"] = arr;
        rep.machine["dims"]["D"] = arr;
        rep.line("  dim H^r_D = [" + s + "]");
    } else if (flavor == "dL") {
        auto h = tc.cohomology_dims_dL();
        Json arr = Json::array();
        for (int pp = 0; pp <= tc.k; ++pp) {
            Json row = Json::array();
            std::string s;
            for (int q = 0; q <= tc.k; ++q) {
                row.push_back(h[pp][q]);
                s += (s.empty() ? "" : ", ") + std::to_string(h[pp][q]);
            }
            arr.push_back(row);
            rep.line("  h^{" + std::to_string(pp) + ",q} = [" + s + "]");
        }
        d["dL"] = arr;
        rep.machine["dims"]["dL"] = arr;
    } else {
        throw input_error("cohomology: flavor must be 'D' or 'dL'");
    }
    rep.verdict("cohomology(" + flavor + ")", true, d);
}

void task_hodge(const Problem& p, Report& rep) {
    TransverseComplex tc = complex_of(p);
    HodgeReport h = verify_hodge(tc);
    LefschetzReport l = verify_lefschetz(tc);
    DualityReport du = verify_duality(tc);
    Json d;
    d["star_square"] = h.star_square_ok;
    d["star_bidegree"] = h.star_bidegree_ok;
    d["gram_positive"] = h.gram_positive;
    d["adjoints"] = h.adjoint_D && h.adjoint_dL && h.adjoint_dLbar;
    d["harmonic_equals_cohomology"] = h.harmonic_equals_cohomology;
    d["stokes"] = h.stokes_ok;
    d["lefschetz_bracket"] = l.bracket_identity;
    d["kahler"] = l.kahler;
    std::string kstr;
    if (l.kahler) {
        bool all = l.commutators_vanish && l.dual_brackets && l.laplacian_doubling &&
                   l.hodge_decomposition;
        kstr = all ? "pass" : "fail";
        d["laplacian_doubling"] = l.laplacian_doubling;
        d["hodge_decomposition"] = l.hodge_decomposition;
    } else {
        kstr = "skipped";
        rep.line("  " + l.note);
    }
    d["kahler_identities"] = kstr;
    rep.machine["kahler_identities"] = kstr;
    d["duality_dims"] = du.dims_D_symmetric && du.dims_dL_symmetric;
    d["duality_pairings"] = du.pairing_D_nondegenerate && du.pairing_dL_nondegenerate;
    bool pass = h.passed() && l.bracket_identity && du.passed() && (kstr != "fail");
    rep.verdict("hodge", pass, d);
}

void task_cocycle(const Problem& p, Report& rep) {
    if (!p.bundle) throw input_error("cocycle tasks need a 'bundle' block");
    CocycleReport cr = p.bundle->validate();
    GhReport gh = p.bundle->check_gh();
    Json d;
    d["invertible"] = cr.invertible;
    d["inverse_identity"] = cr.inverse_identity;
    d["triple_identity"] = cr.triple_identity;
    d["gh"] = gh.all_gh;
    for (const auto& f : cr.failures) rep.line("  " + f);
    for (const auto& o : gh.offenders) rep.line("  non-GH entry: " + o);
    rep.verdict("cocycle", cr.ok() && gh.all_gh, d);
}

void task_atiyah(const Problem& p, const Json& t, Report& rep) {
    if (!p.bundle) throw input_error("atiyah needs a 'bundle' block");
    CocycleReport cr = p.bundle->validate();
    if (!cr.ok()) {
        rep.verdict("atiyah", false, Json{{"cocycle", "invalid"}});
        return;
    }
    AtiyahData at = atiyah_cocycles(*p.bundle);
    Json d;
    d["b_equals_minus_xi"] = at.b_equals_minus_xi;
    d["twisted_cocycle"] = at.twisted_cocycle;
    for (const auto& [key, xi] : at.xi) {
        const Chart& chart = p.bundle->chart(key.first);
        std::string name = p.bundle->chart(key.first).name + "," + p.bundle->chart(key.second).name;
        Json entries = Json::array();
        for (int i = 0; i < xi.rows; ++i)
            for (int j = 0; j < xi.cols; ++j)
                if (!xi(i, j).is_zero())
                    entries.push_back({{"entry", std::to_string(i) + "," + std::to_string(j)},
                                       {"value", chart_form_str(chart, xi(i, j))}});
        d["xi"][name] = entries;
        if (xi.rows == 1 && !xi(0, 0).is_zero())
            rep.line("  xi(" + name + ") = " + chart_form_str(chart, xi(0, 0)));
    }
    rep.verdict("atiyah", at.b_equals_minus_xi && at.twisted_cocycle, d);

    if (t.contains("bound")) {
        int bound = t["bound"].get<int>();
        auto res = gh_connection_search(*p.bundle, at, bound);
        Json dc;
        dc["found"] = res.found;
        if (res.found) {
            for (const auto& [ch, th] : res.connection.theta) {
                const Chart& chart = p.bundle->chart(ch);
                dc["theta"][chart.name] = chart_form_str(chart, th(0, 0));
            }
            rep.line("  connection found within bound " + std::to_string(bound));
        } else {
            dc["certificate"] = res.certificate;
            rep.line("  " + res.certificate);
        }
        rep.verdict("connection_search(bound=" + std::to_string(bound) + ")", true, dc);
    }
}

void task_connection_search(const Problem& p, const Json& t, Report& rep) {
    if (!p.bundle) throw input_error("connection_search needs a 'bundle' block");
    int bound = t.contains("bound") ? t["bound"].get<int>() : 4;
    AtiyahData at = atiyah_cocycles(*p.bundle);
    auto res = gh_connection_search(*p.bundle, at, bound);
    Json d;
    d["found"] = res.found;
    if (!res.found) {
        d["certificate"] = res.certificate;
        rep.line("  " + res.certificate);
    }
    rep.verdict("connection_search(bound=" + std::to_string(bound) + ")", true, d);
}

void task_chern(const Problem& p, const Json& t, Report& rep) {
    if (!p.bundle) throw input_error("chern needs a 'bundle' block");
    int degree = t.contains("degree") ? t["degree"].get<int>() : 1;
    ChernConvention conv = ChernConvention::Vector;
    if (t.contains("convention")) {
        std::string c = t["convention"].get<std::string>();
        if (c == "principal") conv = ChernConvention::Principal;
        else if (c != "vector") throw input_error("chern: convention must be 'principal' or 'vector'");
    }
    CurvatureData curv;
    bool law_ok = true;
    if (!p.bundle_metric.empty()) {
        auto cc = chern_connection(*p.bundle, p.bundle_metric);
        law_ok = cc.metric_glues && cc.type_10 && cc.curvature_11 && cc.skew_hermitian;
        curv = cc.curvature;
    } else if (p.bundle_connection) {
        curv = curvature(*p.bundle, *p.bundle_connection);
    } else {
        throw input_error("chern needs a bundle 'metric' or 'connection' block");
    }
    CharacteristicClass cls = chern_class(*p.bundle, curv, degree, conv);
    Json d;
    d["degree"] = degree;
    d["normalization"] = "(2 pi i)^-" + std::to_string(cls.norm_exponent);
    d["convention"] = (conv == ChernConvention::Vector ? "vector" : "principal");
    d["d_closed"] = cls.d_closed;
    d["glued"] = cls.glued;
    for (const auto& [ch, f] : cls.rep) {
        const Chart& chart = p.bundle->chart(ch);
        d["rep"][chart.name] = chart_form_str(chart, f);
        rep.line("  gc_" + std::to_string(degree) + " on " + chart.name + " = (2 pi i)^-" +
                 std::to_string(cls.norm_exponent) + " [ " + chart_form_str(chart, f) + " ]");
    }
    rep.verdict("chern(" + std::to_string(degree) + ")", cls.d_closed && cls.glued && law_ok, d);
}

void task_picard(const Problem& p, const Json& t, Report& rep) {
    if (!p.bundle) throw input_error("picard needs a 'bundle' block");
    int bound = t.contains("bound") ? t["bound"].get<int>() : 4;
    PicardTriviality tv = picard_trivial(*p.bundle, bound);
    Json d;
    std::string v = tv.verdict == PicardTriviality::Verdict::Trivial ? "trivial"
                    : tv.verdict == PicardTriviality::Verdict::NotTrivial ? "not_trivial"
                                                                          : "undecided_within_bound";
    d["verdict"] = v;
    d["detail"] = tv.detail;
    rep.line("  " + v + ": " + tv.detail);
    rep.verdict("picard", true, d);
}

void run_task(const Problem& p, const Json& t, Report& rep) {
    std::string op = detail_json::need(t, "op", "task").get<std::string>();
    if (op == "validate") task_validate(p, t, rep);
    else if (op == "check") task_check(p, rep);
    else if (op == "type") task_type(p, rep);
    else if (op == "b_transform") task_b_transform(p, t, rep);
    else if (op == "calabi_yau") task_calabi_yau(p, t, rep);
    else if (op == "leaf") task_leaf(p, rep);
    else if (op == "cohomology") task_cohomology(p, t, rep);
    else if (op == "hodge") task_hodge(p, rep);
    else if (op == "cocycle") task_cocycle(p, rep);
    else if (op == "atiyah") task_atiyah(p, t, rep);
    else if (op == "connection_search") task_connection_search(p, t, rep);
    else if (op == "chern") task_chern(p, t, rep);
    else if (op == "picard") task_picard(p, t, rep);
    else throw input_error("unknown task op '" + op + "'");
}

std::string fixtures_dir() {
    const char* env = std::getenv("GCGW_FIXTURES");
    if (env && *env) return env;
    return GCGW_DEFAULT_FIXTURES;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"exact workbench for invariant generalized-geometry computations"};
    app.require_subcommand(1);
    bool json_mode = false, approx = false;
    app.add_flag("--json", json_mode, "emit a machine-readable JSON report");
    app.add_flag("--approx", approx, "add non-authoritative decimal renderings");

    std::string file, flavor = "D", convention = "vector";
    int bound = 4, degree = 1;
    long bn = 1, bm = 0, bp = 0, bq = 0;
    int trunc = -1;
    bool strong = false;

    auto add_file = [&](CLI::App* c) { c->add_option("file", file, "problem file")->required(); };

    CLI::App* c_run = app.add_subcommand("run", "execute the task list of a problem file");
    add_file(c_run);
    CLI::App* c_check = app.add_subcommand("check", "verify the structure axioms");
    add_file(c_check);
    CLI::App* c_type = app.add_subcommand("type", "report the type of the structure");
    add_file(c_type);
    CLI::App* c_cy = app.add_subcommand("cy", "Calabi-Yau style verification of the spinor");
    add_file(c_cy);
    c_cy->add_flag("--strong", strong, "require global decomposability with closed factors");
    CLI::App* c_coh = app.add_subcommand("cohomology", "transverse cohomology dimensions");
    add_file(c_coh);
    c_coh->add_option("--flavor", flavor, "D or dL")->check(CLI::IsMember({"D", "dL"}));
    CLI::App* c_hodge = app.add_subcommand("hodge", "star/adjoint/Laplacian identities and dualities");
    add_file(c_hodge);
    CLI::App* c_atiyah = app.add_subcommand("atiyah", "cocycle checks and the obstruction cocycles");
    add_file(c_atiyah);
    int conn_bound = -1;
    c_atiyah->add_option("--connection-bound", conn_bound, "also search for a connection");
    CLI::App* c_chern = app.add_subcommand("chern", "characteristic class of the bundle");
    add_file(c_chern);
    c_chern->add_option("--degree", degree, "class degree k");
    c_chern->add_option("--convention", convention, "principal or vector")
        ->check(CLI::IsMember({"principal", "vector"}));
    CLI::App* c_pic = app.add_subcommand("picard", "line bundle group operations");
    add_file(c_pic);
    c_pic->add_option("--bound", bound, "witness search degree bound");
    CLI::App* c_bott = app.add_subcommand("bott", "closed-form twisted-form dimensions");
    c_bott->add_option("--n", bn, "projective dimension")->required();
    c_bott->add_option("--m", bm, "twist degree")->required();
    c_bott->add_option("--p", bp, "form degree");
    c_bott->add_option("--q", bq, "cohomology degree");
    CLI::App* c_oracle = app.add_subcommand("oracle", "brute-force dimension oracles");
    CLI::App* c_op1 = c_oracle->add_subcommand("p1", "two-chart cover of the line");
    c_op1->add_option("--m", bm, "twist degree")->required();
    c_op1->add_option("--q", bq, "cohomology degree (0 or 1)")->required();
    c_op1->add_option("--trunc", trunc, "truncation degree (default |m|+2)");
    CLI::App* c_fix = app.add_subcommand("fixtures", "list the shipped problem files");

    // allow the global --json / --approx flags after a subcommand
    for (CLI::App* s : {c_run, c_check, c_type, c_cy, c_coh, c_hodge, c_atiyah, c_chern, c_pic,
                        c_bott, c_oracle, c_op1, c_fix})
        s->fallthrough();

    CLI11_PARSE(app, argc, argv);

    Report rep;
    rep.json_mode = json_mode;
    rep.approx = approx;

    auto finish = [&]() {
        if (json_mode) std::cout << rep.machine.dump(2) << "\n";
        return rep.any_fail ? 1 : 0;
    };

    if (c_bott->parsed()) {
        Integer v = bott_dims(bn, bm, bp, bq);
        if (json_mode) {
            rep.machine["bott"] = v.str();
            return finish();
        }
        std::cout << v.str() << "\n";
        return 0;
    }
    if (c_oracle->parsed() && c_op1->parsed()) {
        int t = trunc >= 0 ? trunc : static_cast<int>(std::abs(bm)) + 2;
        int v = cech_oracle_p1(bm, static_cast<int>(bq), t);
        if (json_mode) {
            rep.machine["oracle_p1"] = v;
            return finish();
        }
        std::cout << v << "\n";
        return 0;
    }
    if (c_fix->parsed()) {
        std::string dir = fixtures_dir();
        std::vector<std::string> names;
        if (!dir.empty() && std::filesystem::exists(dir))
            for (const auto& e : std::filesystem::directory_iterator(dir))
                if (e.path().extension() == ".json") names.push_back(e.path().stem().string());
        std::sort(names.begin(), names.end());
        if (json_mode) {
            rep.machine["fixtures"] = names;
            return finish();
        }
        for (const auto& n : names) std::cout << n << "\n";
        return 0;
    }

    Problem p = load_problem(file);
    rep.machine["file"] = file;

    if (c_run->parsed()) {
        for (const auto& t : p.tasks) run_task(p, t, rep);
    } else if (c_check->parsed()) {
        run_task(p, Json{{"op", "check"}}, rep);
    } else if (c_type->parsed()) {
        run_task(p, Json{{"op", "type"}}, rep);
    } else if (c_cy->parsed()) {
        run_task(p, Json{{"op", "calabi_yau"}, {"strong", strong}}, rep);
        run_task(p, Json{{"op", "leaf"}}, rep);
    } else if (c_coh->parsed()) {
        run_task(p, Json{{"op", "cohomology"}, {"flavor", flavor}}, rep);
    } else if (c_hodge->parsed()) {
        run_task(p, Json{{"op", "hodge"}}, rep);
    } else if (c_atiyah->parsed()) {
        Json t{{"op", "atiyah"}};
        if (conn_bound >= 0) t["bound"] = conn_bound;
        run_task(p, t, rep);
    } else if (c_chern->parsed()) {
        run_task(p, Json{{"op", "chern"}, {"degree", degree}, {"convention", convention}}, rep);
    } else if (c_pic->parsed()) {
        run_task(p, Json{{"op", "picard"}, {"bound", bound}}, rep);
    }
    return finish();
}

} // namespace
} // namespace gcgw

int main(int argc, char** argv) {
    try {
        return gcgw::run_cli(argc, argv);
    } catch (const gcgw::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const gcgw::contract_error& e) {
        std::cerr << "internal contract violation: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
