#pragma once

// Cech-level bundle data over a chart nerve: transition cocycles with
// rational-function entries, GH-entry checks, the two Maurer-Cartan-type
// cocycle families d(phi) phi^{-1} and phi d(phi^{-1}), the degree-bounded
// search for holomorphic connections, curvature of (1,0) connections,
// characteristic forms from invariant polynomials of the (1,1) curvature,
// hermitian (Chern) connections, line-bundle group operations, and the
// closed-form / brute-force dimension pair for twisted forms on the line.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gcgw/charts.hpp"
#include "gcgw/linalg.hpp"

namespace gcgw {

using RfMatrix = Matrix<RationalFunction>;
using Overlap = std::pair<int, int>;

inline RfMatrix rf_identity(int n, const std::shared_ptr<const VarTable>& t) {
    RfMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = RationalFunction::constant(t, GaussianRational(1));
    return m;
}

inline RfMatrix rf_conj(const RfMatrix& m) {
    RfMatrix r = m;
    for (auto& x : r.a) x = x.conj();
    return r;
}
inline RfMatrix rf_conj_transpose(const RfMatrix& m) { return rf_conj(m).transpose(); }

struct CocycleReport {
    bool invertible = true;
    bool inverse_identity = true;
    bool triple_identity = true;
    std::vector<std::string> failures;
    bool ok() const { return invertible && inverse_identity && triple_identity; }
};

struct GhReport {
    bool all_gh = true;
    std::vector<std::string> offenders; // "U0,U1 entry (0,1): zbar"
};

class TransitionCocycle {
public:
    std::shared_ptr<ChartNerve> nerve;
    int rank = 1;
    std::map<Overlap, RfMatrix> phi;

    const Chart& chart(int a) const { return nerve->charts[a]; }

    // derive missing reverse transitions as pulled-back inverses
    void complete() {
        std::vector<std::pair<Overlap, RfMatrix>> add;
        for (const auto& [key, m] : phi) {
            auto [a, b] = key;
            if (phi.count({b, a}) || !nerve->has_overlap(b, a)) continue;
            auto inv = m.inverse();
            if (!inv) throw input_error("transition matrix on (" + chart(a).name + "," +
                                        chart(b).name + ") is singular");
            add.push_back({{b, a}, nerve->pull_matrix(b, a, *inv)});
        }
        for (auto& [k, m] : add) phi.emplace(k, std::move(m));
    }

    CocycleReport validate() const {
        CocycleReport rep;
        for (const auto& [key, m] : phi) {
            auto [a, b] = key;
            if (m.rows != rank || m.cols != rank)
                throw input_error("transition matrix has wrong shape on (" + chart(a).name + "," +
                                  chart(b).name + ")");
            if (m.det().is_zero()) {
                rep.invertible = false;
                rep.failures.push_back("det phi(" + chart(a).name + "," + chart(b).name + ") = 0");
            }
        }
        if (!rep.invertible) return rep;
        for (const auto& [key, m] : phi) {
            auto [a, b] = key;
            auto it = phi.find({b, a});
            if (it == phi.end()) continue;
            RfMatrix prod = m * nerve->pull_matrix(a, b, it->second);
            if (prod != rf_identity(rank, chart(a).table)) {
                rep.inverse_identity = false;
                rep.failures.push_back("phi(" + chart(a).name + "," + chart(b).name +
                                       ") . phi(" + chart(b).name + "," + chart(a).name + ") != 1");
            }
        }
        int n = static_cast<int>(nerve->charts.size());
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    if (a == b || b == c || a == c) continue;
                    if (!phi.count({a, b}) || !phi.count({b, c}) || !phi.count({c, a})) continue;
                    if (!nerve->has_overlap(a, b) || !nerve->has_overlap(a, c)) continue;
                    RfMatrix prod = phi.at({a, b}) * nerve->pull_matrix(a, b, phi.at({b, c}));
                    prod = prod * nerve->pull_matrix(a, c, phi.at({c, a}));
                    if (prod != rf_identity(rank, chart(a).table)) {
                        rep.triple_identity = false;
                        rep.failures.push_back("triple identity fails on (" + chart(a).name + "," +
                                               chart(b).name + "," + chart(c).name + ")");
                    }
                }
        return rep;
    }

    GhReport check_gh() const {
        GhReport rep;
        for (const auto& [key, m] : phi) {
            auto [a, b] = key;
            for (int i = 0; i < rank; ++i)
                for (int j = 0; j < rank; ++j) {
                    if (m(i, j).is_gh()) continue;
                    rep.all_gh = false;
                    std::string vars;
                    for (const auto& v : m(i, j).offending_vars()) vars += (vars.empty() ? "" : ",") + v;
                    rep.offenders.push_back(chart(a).name + "," + chart(b).name + " entry (" +
                                            std::to_string(i) + "," + std::to_string(j) + "): " + vars);
                }
        }
        return rep;
    }
};

// relabeling between a rank-l cocycle and the frame-bundle cocycle: the data
// coincide, only the role tag changes
struct PrincipalCocycle {
    TransitionCocycle frames;
};
inline PrincipalCocycle to_principal(const TransitionCocycle& c) { return {c}; }
inline TransitionCocycle to_vector(const PrincipalCocycle& p) { return p.frames; }

// holomorphic-direction derivative of a function matrix, as a (1,0)-form matrix
inline FormMatrix d_hol_matrix(const Chart& c, const RfMatrix& m) {
    int r = c.transverse_rank();
    FormMatrix out(m.rows, m.cols, 2 * r);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            for (int v = 0; v < r; ++v) {
                RationalFunction dv = m(i, j).derivative(c.hol[v]);
                if (!dv.is_zero()) out(i, j).add_term(Mask(1) << v, dv);
            }
    return out;
}

struct AtiyahData {
    std::map<Overlap, FormMatrix> xi; // d(phi) phi^{-1}
    std::map<Overlap, FormMatrix> b;  // phi d(phi^{-1}), computed independently
    bool b_equals_minus_xi = true;
    bool twisted_cocycle = true;
    std::vector<std::string> failures;
};

inline AtiyahData atiyah_cocycles(const TransitionCocycle& c) {
    GhReport gh = c.check_gh();
    if (!gh.all_gh) {
        std::string who = gh.offenders.empty() ? "" : gh.offenders.front();
        throw input_error("atiyah cocycles need a GH cocycle; offending entry: " + who);
    }
    AtiyahData data;
    for (const auto& [key, m] : c.phi) {
        auto [a, bb] = key;
        auto inv = m.inverse();
        if (!inv) throw input_error("transition matrix is singular");
        FormMatrix xi = d_hol_matrix(c.chart(a), m) * *inv;
        FormMatrix bmat = m * d_hol_matrix(c.chart(a), *inv);
        data.xi.emplace(key, xi);
        data.b.emplace(key, bmat);
        if (!(bmat == -xi)) {
            data.b_equals_minus_xi = false;
            data.failures.push_back("b != -xi on (" + c.chart(a).name + "," + c.chart(bb).name + ")");
        }
    }
    int n = static_cast<int>(c.nerve->charts.size());
    for (int a = 0; a < n; ++a)
        for (int b2 = 0; b2 < n; ++b2)
            for (int g = 0; g < n; ++g) {
                if (a == b2 || b2 == g || a == g) continue;
                if (!data.xi.count({a, b2}) || !data.xi.count({b2, g}) || !data.xi.count({a, g})) continue;
                if (!c.nerve->has_overlap(a, b2)) continue;
                auto invp = c.phi.at({a, b2}).inverse();
                FormMatrix ad_xi = c.phi.at({a, b2}) *
                                   c.nerve->pull_form_matrix(a, b2, data.xi.at({b2, g})) * *invp;
                if (!(data.xi.at({a, g}) == data.xi.at({a, b2}) + ad_xi)) {
                    data.twisted_cocycle = false;
                    data.failures.push_back("twisted cocycle law fails on (" + c.chart(a).name + "," +
                                            c.chart(b2).name + "," + c.chart(g).name + ")");
                }
            }
    return data;
}

// ---- degree-bounded holomorphic connection search -------------------------

struct ConnectionData {
    std::map<int, FormMatrix> theta; // per chart, an l x l matrix of (1,0)-forms
};

struct ConnectionSearchResult {
    bool found = false;
    ConnectionData connection;
    std::string certificate; // "no solution within bound N" on failure
};

namespace detail_conn {

// exponent tuples over the chart's hol variables with sum |e_i| <= bound and
// negative entries only on punctured variables
inline void monomials_rec(const Chart& c, int bound, size_t pos, std::vector<int>& cur,
                          std::vector<std::vector<int>>& out) {
    if (pos == c.hol.size()) {
        out.push_back(cur);
        return;
    }
    int budget = bound;
    for (size_t t = 0; t < pos; ++t) budget -= std::abs(cur[t]);
    int lo = c.punctured[pos] ? -budget : 0;
    for (int e = lo; e <= budget; ++e) {
        cur[pos] = e;
        monomials_rec(c, bound, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

inline std::vector<std::vector<int>> chart_monomials(const Chart& c, int bound) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(c.hol.size(), 0);
    monomials_rec(c, bound, 0, cur, out);
    return out;
}

inline RationalFunction laurent_monomial(const Chart& c, const std::vector<int>& e) {
    int nv = c.table->size();
    Polynomial num = Polynomial::constant(nv, GaussianRational(1));
    Polynomial den = num;
    for (size_t t = 0; t < e.size(); ++t) {
        if (e[t] > 0) num = num * Polynomial::variable(nv, c.hol[t], e[t]);
        if (e[t] < 0) den = den * Polynomial::variable(nv, c.hol[t], -e[t]);
    }
    return RationalFunction(c.table, num, den);
}

struct Unknown {
    int chart, var_pos, row, col;
    std::vector<int> expo;
};

} // namespace detail_conn

inline ConnectionSearchResult gh_connection_search(const TransitionCocycle& c, const AtiyahData& at,
                                                   int bound) {
    if (bound < 0) throw input_error("degree bound must be non-negative");
    using namespace detail_conn;
    int ncharts = static_cast<int>(c.nerve->charts.size());
    int l = c.rank;

    std::vector<Unknown> unknowns;
    for (int ch = 0; ch < ncharts; ++ch) {
        const Chart& chart = c.chart(ch);
        auto monos = chart_monomials(chart, bound);
        for (int v = 0; v < chart.transverse_rank(); ++v)
            for (int i = 0; i < l; ++i)
                for (int j = 0; j < l; ++j)
                    for (const auto& e : monos) unknowns.push_back({ch, v, i, j, e});
    }

    auto theta_of = [&](const std::function<GaussianRational(size_t)>& coeff) {
        ConnectionData cd;
        for (int ch = 0; ch < ncharts; ++ch) {
            const Chart& chart = c.chart(ch);
            cd.theta.emplace(ch, FormMatrix(l, l, form_gens(chart)));
        }
        for (size_t t = 0; t < unknowns.size(); ++t) {
            GaussianRational s = coeff(t);
            if (s.is_zero()) continue;
            const Unknown& u = unknowns[t];
            const Chart& chart = c.chart(u.chart);
            RationalFunction f = RationalFunction::constant(chart.table, s) * laurent_monomial(chart, u.expo);
            cd.theta.at(u.chart)(u.row, u.col).add_term(Mask(1) << u.var_pos, f);
        }
        return cd;
    };

    // residual of the coboundary law on one ordered overlap
    auto residual = [&](const ConnectionData& cd, int a, int b) {
        auto invp = c.phi.at({a, b}).inverse();
        FormMatrix ad_theta = c.phi.at({a, b}) * c.nerve->pull_form_matrix(a, b, cd.theta.at(b)) * *invp;
        return at.xi.at({a, b}) - (ad_theta - cd.theta.at(a));
    };

    std::vector<Overlap> overlaps;
    for (const auto& [key, m] : c.phi)
        if (c.nerve->has_overlap(key.first, key.second)) overlaps.push_back(key);

    // assemble the exact linear system: residual is affine in the unknowns
    ConnectionData zero = theta_of([](size_t) { return GaussianRational(0); });
    std::map<Overlap, FormMatrix> base;
    for (const auto& ov : overlaps) base.emplace(ov, residual(zero, ov.first, ov.second));

    struct Row {
        std::vector<RationalFunction> coeff; // per unknown
        RationalFunction rhs;
    };
    // collect equations indexed by (overlap, entry, form generator)
    std::vector<Row> equations;
    std::map<std::tuple<int, int, int, int>, size_t> eq_index;
    auto touch = [&](size_t ovi, int i, int j, Mask gen) -> Row& {
        auto key = std::make_tuple(static_cast<int>(ovi), i, j, static_cast<int>(gen));
        auto it = eq_index.find(key);
        if (it == eq_index.end()) {
            eq_index.emplace(key, equations.size());
            equations.push_back(Row{std::vector<RationalFunction>(unknowns.size()), RationalFunction()});
            return equations.back();
        }
        return equations[it->second];
    };
    for (size_t ovi = 0; ovi < overlaps.size(); ++ovi) {
        const FormMatrix& fm = base.at(overlaps[ovi]);
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j)
                for (const auto& [gen, coeff] : fm(i, j).terms)
                    touch(ovi, i, j, gen).rhs = coeff;
    }
    for (size_t t = 0; t < unknowns.size(); ++t) {
        ConnectionData unit = theta_of([&](size_t s) { return GaussianRational(s == t ? 1 : 0); });
        for (size_t ovi = 0; ovi < overlaps.size(); ++ovi) {
            FormMatrix delta = residual(unit, overlaps[ovi].first, overlaps[ovi].second) -
                               base.at(overlaps[ovi]);
            for (int i = 0; i < l; ++i)
                for (int j = 0; j < l; ++j)
                    for (const auto& [gen, coeff] : delta(i, j).terms)
                        touch(ovi, i, j, gen).coeff[t] = -coeff; // move to the lhs
        }
    }

    // clear denominators and match polynomial coefficients
    std::vector<std::vector<GaussianRational>> rows;
    std::vector<GaussianRational> rhs;
    for (const auto& eq : equations) {
        int nv = 0;
        Polynomial lcd;
        bool started = false;
        auto fold = [&](const RationalFunction& f) {
            if (f.is_zero()) return;
            nv = std::max(nv, f.den.nvars);
            lcd = started ? poly_lcm(lcd, f.den) : f.den;
            started = true;
        };
        for (const auto& f : eq.coeff) fold(f);
        fold(eq.rhs);
        if (!started) continue;
        std::map<Expo, size_t> mono_rows;
        std::vector<std::vector<GaussianRational>> local;
        std::vector<GaussianRational> local_rhs;
        auto add_poly = [&](const Polynomial& p, std::optional<size_t> unknown) {
            for (const auto& [e, cc] : p.terms) {
                auto it = mono_rows.find(e);
                size_t r;
                if (it == mono_rows.end()) {
                    r = local.size();
                    mono_rows.emplace(e, r);
                    local.push_back(std::vector<GaussianRational>(unknowns.size()));
                    local_rhs.push_back(GaussianRational(0));
                } else {
                    r = it->second;
                }
                if (unknown) local[r][*unknown] += cc;
                else local_rhs[r] += cc;
            }
        };
        for (size_t t = 0; t < unknowns.size(); ++t) {
            if (eq.coeff[t].is_zero()) continue;
            add_poly(eq.coeff[t].num * lcd.div_exact(eq.coeff[t].den), t);
        }
        if (!eq.rhs.is_zero()) add_poly(eq.rhs.num * lcd.div_exact(eq.rhs.den), std::nullopt);
        for (size_t r = 0; r < local.size(); ++r) {
            rows.push_back(std::move(local[r]));
            rhs.push_back(local_rhs[r]);
        }
    }

    QiMatrix sys = QiMatrix(static_cast<int>(rows.size()), static_cast<int>(unknowns.size()));
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t t = 0; t < unknowns.size(); ++t) sys(static_cast<int>(r), static_cast<int>(t)) = rows[r][t];
    auto sol = sys.solve(rhs);
    ConnectionSearchResult res;
    if (!sol) {
        res.found = false;
        res.certificate = "no solution within degree bound " + std::to_string(bound);
        return res;
    }
    res.found = true;
    res.connection = theta_of([&](size_t t) { return (*sol)[t]; });
    for (const auto& ov : overlaps)
        if (!residual(res.connection, ov.first, ov.second).is_zero())
            throw contract_error("connection search produced a non-solution");
    return res;
}

// ---- curvature and characteristic forms -----------------------------------

struct CurvatureData {
    std::map<int, FormMatrix> full;   // D theta + theta ^ theta
    std::map<int, FormMatrix> part11; // its (1,1) component = dL theta
    bool ad_equivariant = true;
    std::vector<std::string> failures;
};

inline CurvatureData curvature(const TransitionCocycle& c, const ConnectionData& conn) {
    CurvatureData out;
    for (const auto& [ch, th] : conn.theta) {
        const Chart& chart = c.chart(ch);
        for (const auto& entry : th.a) {
            for (const auto& [mask, coeff] : entry.terms) {
                if (form_q(chart, mask) != 0 || form_p(chart, mask) != 1)
                    throw input_error("connection entries must be (1,0)-forms");
                if (coeff.uses_leaf())
                    throw input_error("connection entries must be constant along the leaves");
            }
        }
        FormMatrix om = matrix_d(chart, th) + th * th;
        FormMatrix om11(th.rows, th.cols, th.gens);
        for (int i = 0; i < th.rows; ++i)
            for (int j = 0; j < th.cols; ++j) om11(i, j) = form_component(chart, om(i, j), 1, 1);
        out.full.emplace(ch, std::move(om));
        out.part11.emplace(ch, std::move(om11));
    }
    for (const auto& [key, m] : c.phi) {
        auto [a, b] = key;
        if (!out.part11.count(a) || !out.part11.count(b)) continue;
        if (!c.nerve->has_overlap(a, b)) continue;
        auto invp = m.inverse();
        FormMatrix ad = m * c.nerve->pull_form_matrix(a, b, out.part11.at(b)) * *invp;
        if (!(ad == out.part11.at(a))) {
            out.ad_equivariant = false;
            out.failures.push_back("curvature (1,1) part is not ad-equivariant on (" +
                                   c.chart(a).name + "," + c.chart(b).name + ")");
        }
    }
    return out;
}

enum class ChernConvention { Principal, Vector }; // det(1 + tA/2pi i) vs det(1 - tA/2pi i)

struct CharacteristicClass {
    int degree = 0;         // (k,k)-form
    int norm_exponent = 0;  // carries the symbolic factor (2 pi i)^{-norm_exponent}
    ChernConvention convention = ChernConvention::Vector;
    std::map<int, ChartForm> rep; // per chart
    bool d_closed = true;
    bool glued = true;
};

// sum of k x k principal minors, entries multiplied by wedge (even forms)
inline ChartForm invariant_minor_sum(const FormMatrix& m, int k) {
    ChartForm acc(m.gens);
    std::vector<int> idx(k);
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == k) {
            // permutation expansion of the chosen principal minor
            std::vector<int> perm(k);
            for (int t = 0; t < k; ++t) perm[t] = t;
            do {
                int sign = 1;
                for (int x = 0; x < k; ++x)
                    for (int y = x + 1; y < k; ++y)
                        if (perm[x] > perm[y]) sign = -sign;
                ChartForm term = ChartForm::scalar(m.gens, RationalFunction(sign));
                for (int t = 0; t < k; ++t) term = wedge(term, m(idx[t], idx[perm[t]]));
                acc = acc + term;
            } while (std::next_permutation(perm.begin(), perm.end()));
            return;
        }
        for (int v = start; v < m.rows; ++v) {
            idx[depth] = v;
            rec(v + 1, depth + 1);
        }
    };
    if (k == 0) return ChartForm::scalar(m.gens, RationalFunction(1));
    rec(0, 0);
    return acc;
}

inline CharacteristicClass chern_class(const TransitionCocycle& c, const CurvatureData& curv, int k,
                                       ChernConvention conv) {
    CharacteristicClass cls;
    cls.degree = k;
    cls.norm_exponent = k;
    cls.convention = conv;
    for (const auto& [ch, om] : curv.part11) {
        const Chart& chart = c.chart(ch);
        ChartForm rep = invariant_minor_sum(om, k);
        if (conv == ChernConvention::Vector && k % 2 == 1) rep = -rep;
        if (!chart_dL(chart, rep).is_zero()) cls.d_closed = false;
        cls.rep.emplace(ch, std::move(rep));
    }
    for (const auto& [key, m] : c.phi) {
        auto [a, b] = key;
        if (!cls.rep.count(a) || !cls.rep.count(b) || !c.nerve->has_overlap(a, b)) continue;
        if (!(c.nerve->pull_form(a, b, cls.rep.at(b)) == cls.rep.at(a))) cls.glued = false;
    }
    return cls;
}

// transgression: phi with dL phi = f_k(curv) - f_k(curv'), assembled from the
// exact polynomial-in-t integral over the segment of connections
struct TransgressionResult {
    std::map<int, ChartForm> witness; // (k, k-1)-form per chart
    bool verified = false;            // dL witness equals the difference exactly
};

inline TransgressionResult transgression(const TransitionCocycle& c, const ConnectionData& conn_a,
                                         const ConnectionData& conn_b, int k, ChernConvention conv) {
    TransgressionResult out;
    CurvatureData ca = curvature(c, conn_a), cb = curvature(c, conn_b);
    out.verified = true;
    for (const auto& [ch, th_a] : conn_a.theta) {
        const Chart& chart = c.chart(ch);
        const FormMatrix& th_b = conn_b.theta.at(ch);
        FormMatrix omega = th_a - th_b;               // End-valued (1,0)
        FormMatrix dlo = matrix_dL(chart, omega);     // d/dt of the (1,1) curvature
        const FormMatrix& base = cb.part11.at(ch);    // curvature at t = 0

        // integrand(t) = d/ds f_k(base + t dlo + s omega): a polynomial in t
        // with at most one odd (s-linear) factor per surviving term
        int l = c.rank;
        std::vector<ChartForm> poly_t; // coefficients of t^j, j = 0..k-1
        poly_t.assign(std::max(1, k), ChartForm(omega.gens));
        std::vector<int> idx(k);
        std::function<void(int, int)> rec = [&](int start, int depth) {
            if (depth == k) {
                std::vector<int> perm(k);
                for (int t = 0; t < k; ++t) perm[t] = t;
                do {
                    int sign = 1;
                    for (int x = 0; x < k; ++x)
                        for (int y = x + 1; y < k; ++y)
                            if (perm[x] > perm[y]) sign = -sign;
                    // choose exactly one slot for omega (the s-derivative),
                    // the rest contribute base + t dlo
                    for (int slot = 0; slot < k; ++slot) {
                        // expand the product over t-degrees of the non-slot factors
                        std::vector<std::pair<int, ChartForm>> partial = {
                            {0, ChartForm::scalar(omega.gens, RationalFunction(sign))}};
                        for (int t = 0; t < k; ++t) {
                            const int r = idx[t], cc2 = idx[perm[t]];
                            std::vector<std::pair<int, ChartForm>> next;
                            for (auto& [deg, f] : partial) {
                                if (t == slot) {
                                    next.push_back({deg, wedge(f, omega(r, cc2))});
                                } else {
                                    next.push_back({deg, wedge(f, base(r, cc2))});
                                    next.push_back({deg + 1, wedge(f, dlo(r, cc2))});
                                }
                            }
                            partial = std::move(next);
                        }
                        for (auto& [deg, f] : partial)
                            if (deg < static_cast<int>(poly_t.size())) poly_t[deg] = poly_t[deg] + f;
                    }
                } while (std::next_permutation(perm.begin(), perm.end()));
                return;
            }
            for (int v = start; v < l; ++v) {
                idx[depth] = v;
                rec(v + 1, depth + 1);
            }
        };
        if (k >= 1) rec(0, 0);

        // integrate the t-polynomial over [0,1]
        ChartForm witness(omega.gens);
        for (size_t j = 0; j < poly_t.size(); ++j)
            witness = witness + RationalFunction(GaussianRational(Rational(1, static_cast<long>(j + 1)))) *
                                    poly_t[j];
        if (conv == ChernConvention::Vector && k % 2 == 1) witness = -witness;

        ChartForm diff = invariant_minor_sum(ca.part11.at(ch), k);
        ChartForm diff2 = invariant_minor_sum(cb.part11.at(ch), k);
        ChartForm target = diff - diff2;
        if (conv == ChernConvention::Vector && k % 2 == 1) target = -target;
        if (!(chart_dL(chart, witness) == target)) out.verified = false;
        out.witness.emplace(ch, std::move(witness));
    }
    return out;
}

// ---- hermitian metrics and the Chern connection ----------------------------

struct ChernConnectionResult {
    ConnectionData connection;
    CurvatureData curvature;
    bool type_10 = true;
    bool curvature_11 = true;      // no (2,0) part
    bool skew_hermitian = true;    // conj-transpose of the curvature is its negative
    bool metric_glues = true;      // h_b = psi^H h_a psi across overlaps
    bool coboundary_law = true;    // xi = ad(phi) theta_b - theta_a
    std::vector<std::string> notes;
};

inline ChartForm form_conj_entry(const Chart& c, const ChartForm& x) { return form_conj(c, x); }

inline FormMatrix form_matrix_conj_transpose(const Chart& c, const FormMatrix& m) {
    FormMatrix r(m.cols, m.rows, m.gens);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r(j, i) = form_conj(c, m(i, j));
    return r;
}

// theta = conj(h)^{-1} d_hol(conj(h)), the unique (1,0) connection compatible
// with a leafwise-constant hermitian metric
inline ChernConnectionResult chern_connection(const TransitionCocycle& c,
                                              const std::map<int, RfMatrix>& metric,
                                              const AtiyahData* at = nullptr) {
    ChernConnectionResult out;
    for (const auto& [ch, h] : metric) {
        const Chart& chart = c.chart(ch);
        if (rf_conj_transpose(h) != h) throw input_error("metric is not hermitian on " + chart.name);
        for (const auto& e : h.a)
            if (e.uses_leaf()) throw input_error("transverse metric must be constant along the leaves");
        RfMatrix hbar = rf_conj(h);
        auto hbar_inv = hbar.inverse();
        if (!hbar_inv) throw input_error("metric is singular on " + chart.name);
        FormMatrix theta = *hbar_inv * d_hol_matrix(chart, hbar);
        for (const auto& entry : theta.a)
            for (const auto& [mask, coeff] : entry.terms)
                if (form_q(chart, mask) != 0) out.type_10 = false;
        out.connection.theta.emplace(ch, std::move(theta));
    }
    out.curvature = curvature(c, out.connection);
    for (const auto& [ch, om] : out.curvature.full) {
        const Chart& chart = c.chart(ch);
        for (const auto& entry : om.a)
            for (const auto& [mask, coeff] : entry.terms)
                if (!(form_p(chart, mask) == 1 && form_q(chart, mask) == 1)) out.curvature_11 = false;
        if (!(form_matrix_conj_transpose(chart, om) == -om)) out.skew_hermitian = false;
    }
    for (const auto& [key, m] : c.phi) {
        auto [a, b] = key;
        if (!metric.count(a) || !metric.count(b) || !c.nerve->has_overlap(b, a)) continue;
        RfMatrix psi = c.nerve->pull_matrix(b, a, m);
        RfMatrix glued = rf_conj_transpose(psi) * c.nerve->pull_matrix(b, a, metric.at(a)) * psi;
        if (glued != metric.at(b)) {
            out.metric_glues = false;
            out.notes.push_back("metric fails to glue across (" + c.chart(a).name + "," +
                                c.chart(b).name + ")");
        }
    }
    if (at != nullptr) {
        for (const auto& [key, xi] : at->xi) {
            auto [a, b] = key;
            if (!out.connection.theta.count(a) || !out.connection.theta.count(b)) continue;
            if (!c.nerve->has_overlap(a, b)) continue;
            auto invp = c.phi.at({a, b}).inverse();
            FormMatrix lhs = c.phi.at({a, b}) *
                             c.nerve->pull_form_matrix(a, b, out.connection.theta.at(b)) * *invp;
            if (!(xi == lhs - out.connection.theta.at(a))) out.coboundary_law = false;
        }
    }
    return out;
}

// sampled positivity of a hermitian metric at exact rational points; global
// positivity of rational functions is not decided here
inline bool metric_positivity_sample(const RfMatrix& h,
                                     const std::vector<std::vector<GaussianRational>>& points) {
    for (const auto& pt : points) {
        // leading principal minors at the point
        QiMatrix val(h.rows, h.cols);
        bool pole = false;
        for (int i = 0; i < h.rows && !pole; ++i)
            for (int j = 0; j < h.cols; ++j) {
                try {
                    val(i, j) = h(i, j).eval(pt);
                } catch (const contract_error&) {
                    pole = true;
                    break;
                }
            }
        if (pole) continue;
        for (int t = 1; t <= h.rows; ++t) {
            QiMatrix sub(t, t);
            for (int i = 0; i < t; ++i)
                for (int j = 0; j < t; ++j) sub(i, j) = val(i, j);
            GaussianRational d = sub.det();
            if (d.im != 0 || d.re <= 0) return false;
        }
    }
    return true;
}

// ---- line-bundle (rank 1) group operations ---------------------------------

struct PicardTriviality {
    enum class Verdict { Trivial, NotTrivial, UndecidedWithinBound };
    Verdict verdict = Verdict::UndecidedWithinBound;
    std::string detail;
};

inline void require_line_gh(const TransitionCocycle& c) {
    if (c.rank != 1) throw input_error("picard operations need rank-1 cocycles");
    if (!c.check_gh().all_gh) throw input_error("picard operations need GH cocycles");
}

inline TransitionCocycle picard_tensor(const TransitionCocycle& a, const TransitionCocycle& b) {
    require_line_gh(a);
    require_line_gh(b);
    TransitionCocycle r = a;
    for (auto& [key, m] : r.phi) {
        auto it = b.phi.find(key);
        if (it == b.phi.end()) throw input_error("picard tensor: cocycles live on different overlaps");
        m(0, 0) = m(0, 0) * it->second(0, 0);
    }
    return r;
}

inline TransitionCocycle picard_dual(const TransitionCocycle& a) {
    require_line_gh(a);
    TransitionCocycle r = a;
    for (auto& [key, m] : r.phi)
        m(0, 0) = RationalFunction(1) / m(0, 0);
    return r;
}

namespace detail_pic {

// c * single monomial? returns the exponent tuple over the chart's hol vars
inline std::optional<std::vector<int>> as_monomial(const Chart& c, const RationalFunction& f) {
    if (f.is_zero()) return std::nullopt;
    if (f.num.terms.size() != 1 || f.den.terms.size() != 1) return std::nullopt;
    const Expo& en = f.num.terms.begin()->first;
    const Expo& ed = f.den.terms.begin()->first;
    std::vector<int> e;
    for (size_t t = 0; t < c.hol.size(); ++t) e.push_back(en[c.hol[t]] - ed[c.hol[t]]);
    // nothing else may appear
    for (int v = 0; v < c.table->size(); ++v) {
        bool is_hol = c.table->vars[v].kind == VarKind::Hol;
        if (!is_hol && (en[v] != 0 || ed[v] != 0)) return std::nullopt;
    }
    return e;
}

inline bool is_unit_on_chart(const Chart& c, const RationalFunction& g) {
    auto e = as_monomial(c, g);
    if (!e) return false;
    for (size_t t = 0; t < e->size(); ++t)
        if ((*e)[t] != 0 && !c.punctured[t]) return false;
    return true;
}

} // namespace detail_pic

// decide triviality: exact for Laurent-monomial cocycles over non-punctured
// charts (degree bookkeeping: unit ratios are constant there, so any nonzero
// monomial degree obstructs), unit-witness search within a degree bound
// otherwise; when nothing is found the verdict is undecided, not a proof
inline PicardTriviality picard_trivial(const TransitionCocycle& c, int degree_bound) {
    require_line_gh(c);
    PicardTriviality out;

    bool all_monomial = true, all_constant = true, charts_punctured = false;
    for (const auto& ch : c.nerve->charts)
        for (bool p : ch.punctured) charts_punctured = charts_punctured || p;
    for (const auto& [key, m] : c.phi) {
        if (!detail_pic::as_monomial(c.chart(key.first), m(0, 0))) all_monomial = false;
        if (!m(0, 0).is_constant()) all_constant = false;
    }
    if (all_constant) {
        out.verdict = PicardTriviality::Verdict::Trivial;
        out.detail = "constant cocycle";
        return out;
    }
    if (all_monomial && !charts_punctured) {
        // units of a non-punctured chart are constants, and holomorphic
        // substitution of a constant is a constant, so a coboundary of
        // units is constant on every overlap; a nonzero monomial degree is
        // therefore an exact obstruction
        for (const auto& [key, m] : c.phi) {
            if (m(0, 0).is_constant()) continue;
            out.verdict = PicardTriviality::Verdict::NotTrivial;
            out.detail = "transition on (" + c.chart(key.first).name + "," +
                         c.chart(key.second).name + ") has nonzero monomial degree";
            return out;
        }
    }

    // bounded search for unit witnesses g with phi_ab . g_b = g_a
    using namespace detail_conn;
    int ncharts = static_cast<int>(c.nerve->charts.size());
    struct Gen {
        int chart;
        std::vector<int> expo;
    };
    std::vector<Gen> gens;
    for (int ch = 0; ch < ncharts; ++ch)
        for (const auto& e : chart_monomials(c.chart(ch), degree_bound)) gens.push_back({ch, e});

    std::vector<Overlap> overlaps;
    for (const auto& [key, m] : c.phi)
        if (c.nerve->has_overlap(key.first, key.second)) overlaps.push_back(key);

    auto g_of = [&](const std::vector<GaussianRational>& coeff) {
        std::map<int, RationalFunction> g;
        for (int ch = 0; ch < ncharts; ++ch)
            g[ch] = RationalFunction::constant(c.chart(ch).table, GaussianRational(0));
        for (size_t t = 0; t < gens.size(); ++t) {
            if (coeff[t].is_zero()) continue;
            const Chart& chart = c.chart(gens[t].chart);
            g[gens[t].chart] = g[gens[t].chart] +
                               RationalFunction::constant(chart.table, coeff[t]) *
                                   laurent_monomial(chart, gens[t].expo);
        }
        return g;
    };

    // per overlap: phi_ab . sub(g_b) - g_a = 0, linear in the coefficients;
    // clear denominators and match monomials
    std::vector<std::vector<RationalFunction>> lin(overlaps.size(),
                                                   std::vector<RationalFunction>(gens.size()));
    for (size_t t = 0; t < gens.size(); ++t) {
        const Gen& gen = gens[t];
        for (size_t o = 0; o < overlaps.size(); ++o) {
            auto [a, b] = overlaps[o];
            if (gen.chart == a)
                lin[o][t] = -laurent_monomial(c.chart(a), gen.expo);
            else if (gen.chart == b)
                lin[o][t] = c.phi.at({a, b})(0, 0) *
                            c.nerve->pull_function(a, b, laurent_monomial(c.chart(b), gen.expo));
        }
    }
    std::vector<std::vector<GaussianRational>> rows;
    for (size_t o = 0; o < overlaps.size(); ++o) {
        Polynomial lcd;
        bool started = false;
        for (const auto& f : lin[o]) {
            if (f.is_zero()) continue;
            lcd = started ? poly_lcm(lcd, f.den) : f.den;
            started = true;
        }
        if (!started) continue;
        std::map<Expo, size_t> mono_rows;
        for (size_t t = 0; t < gens.size(); ++t) {
            if (lin[o][t].is_zero()) continue;
            Polynomial p = lin[o][t].num * lcd.div_exact(lin[o][t].den);
            for (const auto& [e, cc] : p.terms) {
                auto it = mono_rows.find(e);
                size_t r;
                if (it == mono_rows.end()) {
                    r = rows.size();
                    mono_rows.emplace(e, r);
                    rows.push_back(std::vector<GaussianRational>(gens.size()));
                } else {
                    r = it->second;
                }
                rows[r][t] += cc;
            }
        }
    }
    QiMatrix sys(static_cast<int>(rows.size()), static_cast<int>(gens.size()));
    for (size_t r = 0; r < rows.size(); ++r)
        for (size_t t = 0; t < gens.size(); ++t) sys(static_cast<int>(r), static_cast<int>(t)) = rows[r][t];
    QiMatrix ker = sys.kernel();
    for (int col = 0; col < ker.cols; ++col) {
        auto g = g_of(ker.col(col));
        bool all_units = true;
        for (auto& [ch, gv] : g) {
            bool unit = detail_pic::is_unit_on_chart(c.chart(ch), gv) ||
                        (gv.is_constant() && !gv.is_zero());
            all_units = all_units && unit;
        }
        if (!all_units) continue;
        bool law = true;
        for (auto [a, b] : overlaps)
            if (c.phi.at({a, b})(0, 0) * c.nerve->pull_function(a, b, g.at(b)) != g.at(a)) law = false;
        if (law) {
            out.verdict = PicardTriviality::Verdict::Trivial;
            out.detail = "unit witness found within degree bound " + std::to_string(degree_bound);
            return out;
        }
    }
    out.verdict = PicardTriviality::Verdict::UndecidedWithinBound;
    out.detail = "no unit witness within degree bound " + std::to_string(degree_bound);
    return out;
}

} // namespace gcgw
