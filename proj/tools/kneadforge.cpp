// Command-line front end for the kneadforge library: validation, orbits,
// itineraries, bifurcation equations, exceptional-itinerary search,
// codimension-one analysis and plots, all over exact arithmetic.

#include "kneadforge/kneadforge.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

using namespace kneadforge;

namespace {

// "p/q", decimal, or "root(c0,c1,...;lo,hi)" for an algebraic slope
AlgebraicNumber parse_lambda(const std::string& s) {
    if (s.rfind("root(", 0) == 0 && s.back() == ')') {
        std::string body = s.substr(5, s.size() - 6);
        auto semi = body.find(';');
        if (semi == std::string::npos)
            throw std::invalid_argument("root() needs coefficients;lo,hi");
        std::vector<Int> coeffs;
        std::string part;
        std::istringstream cs(body.substr(0, semi));
        while (std::getline(cs, part, ',')) coeffs.emplace_back(part);
        std::string rest = body.substr(semi + 1);
        auto comma = rest.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("root() needs an enclosure lo,hi");
        return AlgebraicNumber(IntPoly(coeffs), parse_rat(rest.substr(0, comma)),
                               parse_rat(rest.substr(comma + 1)));
    }
    return AlgebraicNumber::from_rational(parse_rat(s));
}

AlgebraicNumber quartic_slope() {
    return AlgebraicNumber(IntPoly({-1, 0, -1, 0, 1}), Rat(1), Rat(2));
}

std::vector<Rat> parse_rat_list(const std::string& s) {
    std::vector<Rat> out;
    std::string part;
    std::istringstream is(s);
    while (std::getline(is, part, ',')) out.push_back(parse_rat(part));
    return out;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << text;
}

void emit_json(const json& j, const std::string& out_path) {
    emit(wrap_schema(j).dump(2) + "\n", out_path);
}

std::string error_type(const std::exception& e) {
    if (dynamic_cast<const MalformedSigma*>(&e)) return "malformed-sigma";
    if (dynamic_cast<const CollidedTurningPoints*>(&e)) return "collided-turning-points";
    if (dynamic_cast<const LengthMismatch*>(&e)) return "length-mismatch";
    if (dynamic_cast<const BadItinerary*>(&e)) return "bad-itinerary";
    if (dynamic_cast<const AmbiguousBranch*>(&e)) return "ambiguous-branch";
    if (dynamic_cast<const FactorMismatch*>(&e)) return "factor-mismatch";
    if (dynamic_cast<const NotDivisible*>(&e)) return "not-divisible";
    if (dynamic_cast<const SingularAtLambda*>(&e)) return "singular-at-lambda";
    if (dynamic_cast<const std::domain_error*>(&e)) return "domain-error";
    if (dynamic_cast<const std::invalid_argument*>(&e)) return "invalid-argument";
    return "error";
}

std::string symbol_of_point(const OrbitPoint& p) {
    return p.turning != 0 ? format_symbol(sym_c(p.turning)) : format_symbol(sym_J(p.branch_i));
}

json orbit_json(const BimodalMap& m, const std::vector<OrbitPoint>& orbit) {
    json rows = json::array();
    for (size_t k = 0; k < orbit.size(); ++k) {
        RatInterval iv = enclose_at(orbit[k].value, m.lambda, Rat(1, Int(1) << 30));
        rows.push_back(json{{"step", k},
                            {"lo", rat_str(iv.lo)},
                            {"hi", rat_str(iv.hi)},
                            {"mid", sig_digits(iv.mid())},
                            {"symbol", symbol_of_point(orbit[k])}});
    }
    return json{{"points", rows}};
}

std::string orbit_csv(const BimodalMap& m, const std::vector<OrbitPoint>& orbit) {
    std::string out = "step,lo,hi,mid,symbol\n";
    for (size_t k = 0; k < orbit.size(); ++k) {
        RatInterval iv = enclose_at(orbit[k].value, m.lambda, Rat(1, Int(1) << 30));
        out += std::to_string(k) + "," + rat_str(iv.lo) + "," + rat_str(iv.hi) + "," +
               sig_digits(iv.mid()) + "," + symbol_of_point(orbit[k]) + "\n";
    }
    return out;
}

std::string cascade_csv(const std::vector<ExceptionalRecord>& records) {
    std::string out = "extended,factor_degree,factor,root_lo,root_hi,root_mid,b_lo,b_hi\n";
    for (const auto& r : records) {
        for (size_t i = 0; i < r.roots_in_window.size(); ++i) {
            AlgebraicNumber root = r.roots_in_window[i];
            root.refine_to(Rat(1, 1 << 24));
            const auto& R = r.realizations[i];
            out += "\"" + format_itinerary(r.extended) + "\"," +
                   std::to_string(r.factor.degree()) + ",\"" + poly_str(r.factor) + "\"," +
                   rat_str(root.iv.lo) + "," + rat_str(root.iv.hi) + "," +
                   sig_digits(root.approx_rat(Rat(1, 1 << 24))) + "," +
                   sig_digits(enclose_at(R.lo, R.lambda, Rat(1, 1 << 24)).mid()) + "," +
                   sig_digits(enclose_at(R.hi, R.lambda, Rat(1, 1 << 24)).mid()) + "\n";
        }
        for (AlgebraicNumber root : r.unrealized) {
            root.refine_to(Rat(1, 1 << 24));
            out += "\"" + format_itinerary(r.extended) + "\"," +
                   std::to_string(r.factor.degree()) + ",\"" + poly_str(r.factor) + "\"," +
                   rat_str(root.iv.lo) + "," + rat_str(root.iv.hi) + "," +
                   sig_digits(root.approx_rat(Rat(1, 1 << 24))) + ",," + "\n";
        }
    }
    return out;
}

json cascade_json(const std::vector<ExceptionalRecord>& records) {
    json recs = json::array();
    for (const auto& r : records) recs.push_back(to_json(r));
    return json{{"records", recs}};
}

std::vector<Rat> grid_from_range(const std::string& range_text) {
    auto parts = parse_rat_list(range_text);
    if (parts.size() != 3) throw std::invalid_argument("grid range needs lo,hi,count");
    long count = (long)rat_num(parts[2]);
    if (rat_den(parts[2]) != 1 || count < 2)
        throw std::invalid_argument("grid count must be an integer >= 2");
    std::vector<Rat> out;
    for (long k = 0; k < count; ++k)
        out.push_back(parts[0] + (parts[1] - parts[0]) * Rat(k, count - 1));
    return out;
}

struct ReproduceEntry {
    std::string id;
    std::string what;
    json (*run)(int jobs, std::string* text_out);
};

json repro_period_two_eq(int, std::string*) {
    BifurcationEq eq = derive_bifurcation_eq(parse_itinerary("c1 J2 c1"));
    json j;
    j["equation"] = to_json(eq);
    j["reduced"] = to_json(reduce(eq));
    j["classification_at_2"] =
        turning_class_name(classify_equation(eq, AlgebraicNumber::from_rational(2)));
    j["offset_at_2"] = rat_str(Rat(eq.Q[0].evaluate<Rat>(Rat(2))) /
                               Rat(eq.Q[1].evaluate<Rat>(Rat(2))));
    return j;
}

json repro_doubling_family(int, std::string*) {
    json eqs = json::array();
    for (int n = 2; n <= 10; ++n) {
        std::vector<Symbol> syms{sym_c(1)};
        for (int i = 0; i < n - 1; ++i) syms.push_back(sym_J(2));
        syms.push_back(sym_c(1));
        eqs.push_back(to_json(derive_bifurcation_eq(Itinerary{syms, std::nullopt})));
    }
    return json{{"equations", eqs}};
}

json repro_period_four_eq(int, std::string*) {
    BifurcationEq eq = derive_bifurcation_eq(parse_itinerary("c1 J2 J0 J1 c1"));
    json j;
    j["equation"] = to_json(eq);
    j["reduced"] = to_json(reduce(eq));
    j["common_factor"] = poly_str(poly_gcd(eq.Q[0], eq.Q[1]));
    return j;
}

json repro_factor_list(int, std::string*) {
    json out = json::array();
    auto add = [&](const char* base, const char* ext) {
        IntPoly F = extract_factor(parse_itinerary(base), parse_itinerary(ext));
        out.push_back(json{{"base", base}, {"extended", ext}, {"factor", poly_str(F)}});
    };
    add("c1 J2 c1", "c1 J2 J0 J2 c1");
    add("c1 J2 c1", "c1 J2 J1 J2 c1");
    add("c1 J2 c1", "c1 J2 J1 J2 J0 J2 c1");
    add("c1 J2 J0 J1 c1", "c1 J2 J0 J1 J0 J2 J0 J1 J1 J2 J0 J1 c1");
    return json{{"factors", out}};
}

json repro_cascade_quartic(int jobs, std::string*) {
    auto records = cascade_search(parse_itinerary("c1 J2 c1"), 2, Rat(1), Rat(2), {0, 1}, jobs);
    return cascade_json(records);
}

json repro_cascade_octic(int jobs, std::string*) {
    auto records =
        cascade_search(parse_itinerary("c1 J2 J0 J1 c1"), 2, Rat(1), Rat(2), {0, 1}, jobs);
    return cascade_json(records);
}

json repro_slope_two_window(int jobs, std::string*) {
    auto records = cascade_search(parse_itinerary("c1 J2 c1"), 2, Rat(2), Rat(3), {0, 1}, jobs);
    int realized = 0;
    for (const auto& r : records) realized += (int)r.roots_in_window.size();
    json j = cascade_json(records);
    j["realized_roots"] = realized;
    return j;
}

json repro_codim1_period_two(int, std::string*) {
    return to_json(
        codim1_analyze(2, {parse_itinerary("c1 J2 c1")}, AlgebraicNumber::from_rational(2)));
}

json repro_obstruction_period_two(int, std::string*) {
    BimodalMap m{AlgebraicNumber::from_rational(2), Rat(-1, 3)};
    return to_json(hyperbolic_approx_obstruction(m, 200));
}

json repro_obstruction_exceptional(int, std::string*) {
    BimodalMap m{quartic_slope(), Rat(0)};
    return to_json(hyperbolic_approx_obstruction(m, 50));
}

json repro_renorm_pair(int, std::string*) {
    BimodalMap m{quartic_slope(), Rat(0)};
    BimodalMap flat{AlgebraicNumber::from_rational(2), Rat(0)};
    json j;
    j["center1"] = to_json(renormalization_check(m, 1, 2), m.lambda);
    j["center2"] = to_json(renormalization_check(m, 2, 2), m.lambda);
    j["slope_two_center1"] = to_json(renormalization_check(flat, 1, 2), flat.lambda);
    return j;
}

json repro_nonrigidity_grid(int, std::string*) {
    std::vector<Rat> grid;
    for (int k = 0; k < 21; ++k)
        grid.push_back(Rat(-11, 100) + Rat(11, 50) * Rat(k, 20));
    json j;
    j["frozen"] = to_json(nonrigidity_scan(quartic_slope(), grid, 12));
    j["varying"] = to_json(nonrigidity_scan(AlgebraicNumber::from_rational(2), grid, 24));
    return j;
}

json repro_wbound_demo(int, std::string*) {
    json j;
    j["below_threshold"] = to_json(w_bound_check_bimodal({2, 1, 2, 0, 2}, Rat(6, 5), 10));
    j["bimodal_pass"] = to_json(w_bound_check_bimodal({2, 1, 2, 0, 2}, Rat(5, 2), 100));
    j["general_pass"] =
        to_json(w_bound_check_general(2, 1, 1, {2, 1, 2, 0, 2}, Rat(7, 2), 100));
    return j;
}

json repro_residual_pair(int, std::string*) {
    BifurcationEq e1 = derive_bifurcation_eq(parse_itinerary("c1 J2 c1"));
    BifurcationEq e2 = derive_bifurcation_eq(parse_itinerary("c2 J0 c2"));
    IntPoly r = eq11_residual(e1, e2);
    json j;
    j["eq1"] = to_json(e1);
    j["eq2"] = to_json(e2);
    j["residual"] = to_json(r);
    j["residual_text"] = poly_str(r);
    return j;
}

json repro_turning_orbit_figure(int, std::string* text_out) {
    BimodalMap m{quartic_slope(), Rat(0)};
    *text_out = svg_cobweb(m, {bm_turning_point(m, 1), bm_turning_point(m, 2)}, 6);
    return {};
}

json repro_turning_orbit_figure_offset(int, std::string* text_out) {
    BimodalMap m{quartic_slope(), Rat(1, 20)};
    *text_out = svg_cobweb(m, {bm_turning_point(m, 1), bm_turning_point(m, 2)}, 6);
    return {};
}

const std::vector<ReproduceEntry>& reproduce_table() {
    static const std::vector<ReproduceEntry> table = {
        {"period-two-eq", "bifurcation equation of the period-two turning itinerary",
         repro_period_two_eq},
        {"doubling-family", "equation family for runs of the outer branch",
         repro_doubling_family},
        {"period-four-eq", "period-four equation with its common factor", repro_period_four_eq},
        {"factor-list", "the four extension factors", repro_factor_list},
        {"cascade-quartic", "cascade search certifying the quartic isentrope",
         repro_cascade_quartic},
        {"cascade-octic", "cascade search certifying the octic isentrope", repro_cascade_octic},
        {"slope-two-window", "cascade above slope two finds nothing realized",
         repro_slope_two_window},
        {"codim1-period-two", "codimension-one curve through the period-two point",
         repro_codim1_period_two},
        {"obstruction-period-two", "obstruction certificate at slope two",
         repro_obstruction_period_two},
        {"obstruction-exceptional", "no certificate at the exceptional slope",
         repro_obstruction_exceptional},
        {"renorm-pair", "renormalization intervals at both centers", repro_renorm_pair},
        {"nonrigidity-grid", "turning itineraries across an offset grid",
         repro_nonrigidity_grid},
        {"wbound-demo", "expansion bound on the symbolic recursion", repro_wbound_demo},
        {"residual-pair", "joint-solution residual of the two period-two equations",
         repro_residual_pair},
        {"turning-orbit-figure", "cobweb of both turning orbits at the exceptional slope",
         repro_turning_orbit_figure},
        {"turning-orbit-figure-offset", "same cobweb at a nonzero offset",
         repro_turning_orbit_figure_offset},
    };
    return table;
}

int run(int argc, char** argv) {
    CLI::App app{"exact toolkit for constant-slope piecewise-linear interval maps"};
    app.require_subcommand(1);

    // validate
    std::string comb_text;
    auto* c_validate = app.add_subcommand("validate", "check combinatorial data flags");
    c_validate->add_option("--comb", comb_text, "combinatorial data as JSON")->required();

    // feasible
    std::string lam_text = "2", b_text = "0", map_text, eps_text = "0", out_path;
    auto* c_feasible = app.add_subcommand("feasible", "feasibility of a map");
    auto* fl = c_feasible->add_option("--lambda", lam_text, "slope");
    auto* fb = c_feasible->add_option("--b", b_text, "bimodal offset");
    auto* fm = c_feasible->add_option("--map", map_text, "full chart as JSON");
    c_feasible->add_option("--eps", eps_text, "margin for strict comparisons");
    fm->excludes(fl)->excludes(fb);

    // orbit / itinerary
    std::string x_text;
    int turning = 0, horizon = 10;
    std::string format = "csv";
    auto* c_orbit = app.add_subcommand("orbit", "exact orbit of a point");
    c_orbit->add_option("--lambda", lam_text, "slope")->required();
    c_orbit->add_option("--b", b_text, "bimodal offset")->required();
    auto* ox = c_orbit->add_option("--x", x_text, "rational start point");
    auto* ot = c_orbit->add_option("--turning", turning, "start at turning point 1 or 2");
    c_orbit->add_option("--n", horizon, "number of steps");
    c_orbit->add_option("--format", format, "csv or json");
    c_orbit->add_option("--out", out_path, "output file (default stdout)");
    ox->excludes(ot);

    auto* c_itin = app.add_subcommand("itinerary", "itinerary of a point");
    c_itin->add_option("--lambda", lam_text, "slope")->required();
    c_itin->add_option("--b", b_text, "bimodal offset")->required();
    auto* ix = c_itin->add_option("--x", x_text, "rational start point");
    auto* it = c_itin->add_option("--turning", turning, "start at turning point 1 or 2");
    c_itin->add_option("--n", horizon, "horizon");
    c_itin->add_option("--out", out_path, "output file (default stdout)");
    ix->excludes(it);

    // bifeq
    std::string itin_text, chart = "bimodal";
    int structure_kind = 0, chart_l = 2, chart_s = 1;
    bool want_reduced = false;
    std::string at_text;
    auto* c_bifeq = app.add_subcommand("bifeq", "derive a bifurcation equation");
    c_bifeq->add_option("--itinerary", itin_text, "closed turning itinerary")->required();
    c_bifeq->add_flag("--reduced", want_reduced, "also emit the reduced equation");
    c_bifeq->add_option("--structure", structure_kind,
                        "check coefficient laws (1 periodic, 2 second-turning)");
    c_bifeq->add_option("--at", at_text, "classify at this slope");
    c_bifeq->add_option("--chart", chart, "bimodal or unit");
    c_bifeq->add_option("--l", chart_l, "turning count for the unit chart");
    c_bifeq->add_option("--s", chart_s, "first-branch sign for the unit chart");
    c_bifeq->add_option("--out", out_path, "output file (default stdout)");

    // cascade
    std::string base_text, window_text = "1,2", alphabet_text = "0,1";
    int max_blocks = 2, jobs = 1;
    auto* c_cascade = app.add_subcommand("cascade", "search for exceptional itineraries");
    c_cascade->add_option("--base", base_text, "periodic base itinerary")->required();
    c_cascade->add_option("--max-blocks", max_blocks, "insertion block limit");
    c_cascade->add_option("--window", window_text, "open slope window lo,hi");
    c_cascade->add_option("--alphabet", alphabet_text, "insertion symbols");
    c_cascade->add_option("--jobs", jobs, "worker threads");
    c_cascade->add_option("--format", format, "csv or json");
    c_cascade->add_option("--out", out_path, "output file (default stdout)");

    // codim1
    int lap_count = 2;
    std::vector<std::string> controlled_texts;
    auto* c_codim1 = app.add_subcommand("codim1", "codimension-one analysis");
    c_codim1->add_option("--l", lap_count, "turning point count");
    c_codim1->add_option("--controlled", controlled_texts, "controlled itineraries")
        ->required();
    c_codim1->add_option("--lambda", lam_text, "slope")->required();
    c_codim1->add_option("--s", chart_s, "first-branch sign for the unit chart");
    c_codim1->add_option("--out", out_path, "output file (default stdout)");

    // obstruction
    auto* c_obst = app.add_subcommand("obstruction", "hyperbolic approximation obstruction");
    c_obst->add_option("--lambda", lam_text, "slope")->required();
    c_obst->add_option("--b", b_text, "bimodal offset")->required();
    c_obst->add_option("--horizon", horizon, "orbit horizon");
    c_obst->add_option("--out", out_path, "output file (default stdout)");

    // renorm
    int center = 1, period = 2;
    auto* c_renorm = app.add_subcommand("renorm", "renormalization interval check");
    c_renorm->add_option("--lambda", lam_text, "slope")->required();
    c_renorm->add_option("--b", b_text, "bimodal offset")->required();
    c_renorm->add_option("--center", center, "turning point 1 or 2");
    c_renorm->add_option("--period", period, "renormalization period");
    c_renorm->add_option("--out", out_path, "output file (default stdout)");

    // scan
    std::string grid_text, grid_range_text;
    auto* c_scan = app.add_subcommand("scan", "turning itineraries across an offset grid");
    c_scan->add_option("--lambda", lam_text, "slope")->required();
    auto* sg = c_scan->add_option("--grid", grid_text, "comma-separated offsets");
    auto* sr = c_scan->add_option("--grid-range", grid_range_text, "lo,hi,count");
    c_scan->add_option("--n", horizon, "horizon");
    c_scan->add_option("--out", out_path, "output file (default stdout)");
    sg->excludes(sr);

    // wbound
    std::string symbols_text, mode = "bimodal";
    int kmax = 100, wl = 2, ws = 1, wi0 = 1;
    auto* c_wbound = app.add_subcommand("wbound", "expansion bound on the linear forms");
    c_wbound->add_option("--symbols", symbols_text, "interval symbols, cycled")->required();
    c_wbound->add_option("--lambda", lam_text, "slope")->required();
    c_wbound->add_option("--kmax", kmax, "last checked index");
    c_wbound->add_option("--mode", mode, "bimodal or general");
    c_wbound->add_option("--l", wl, "turning count (general mode)");
    c_wbound->add_option("--s", ws, "first-branch sign (general mode)");
    c_wbound->add_option("--i0", wi0, "start turning index (general mode)");
    c_wbound->add_option("--out", out_path, "output file (default stdout)");

    // residual
    std::vector<std::string> residual_itins;
    auto* c_resid = app.add_subcommand("residual", "joint-solution residual of two equations");
    c_resid->add_option("--itinerary", residual_itins, "exactly two closed itineraries")
        ->expected(2);
    c_resid->add_option("--out", out_path, "output file (default stdout)");

    // plot
    std::string style = "cobweb";
    std::vector<int> plot_turnings;
    std::vector<std::string> plot_points;
    auto* c_plot = app.add_subcommand("plot", "static SVG of orbits");
    c_plot->add_option("--lambda", lam_text, "slope")->required();
    c_plot->add_option("--b", b_text, "bimodal offset")->required();
    c_plot->add_option("--turning", plot_turnings, "start at turning points");
    c_plot->add_option("--x", plot_points, "rational start points");
    c_plot->add_option("--n", horizon, "steps");
    c_plot->add_option("--style", style, "cobweb or orbit-bars");
    c_plot->add_option("--out", out_path, "output file (default stdout)");

    // reproduce
    std::string repro_id;
    bool repro_list = false;
    auto* c_repro = app.add_subcommand("reproduce", "run a bundled worked example");
    c_repro->add_option("id", repro_id, "example id");
    c_repro->add_flag("--list", repro_list, "list available ids");
    c_repro->add_option("--jobs", jobs, "worker threads for cascade examples");
    c_repro->add_option("--out", out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (c_validate->parsed()) {
            CombData X = comb_from_json(json::parse(comb_text));
            emit_json(json{{"report", to_json(validate_space(X))}}, out_path);
        } else if (c_feasible->parsed()) {
            if (!map_text.empty()) {
                json jm = json::parse(map_text);
                CombData X = comb_from_json(jm.at("comb"));
                AlgebraicNumber lam = algebraic_from_json(jm.at("lambda"));
                std::vector<RatPoly> a;
                for (const auto& p : jm.at("a")) a.push_back(rat_poly_from_json(p));
                std::vector<std::vector<RatPoly>> b;
                for (const auto& row : jm.at("b")) {
                    std::vector<RatPoly> r;
                    for (const auto& p : row) r.push_back(rat_poly_from_json(p));
                    b.push_back(std::move(r));
                }
                FeasibilityResult res = feasibility(X, lam, a, b, parse_rat(eps_text));
                json j{{"feasible", res.map.has_value()},
                       {"collided", res.collided},
                       {"violations", to_json(res.violations)}};
                if (res.map) j["map"] = to_json(*res.map);
                emit_json(j, out_path);
            } else {
                BimodalMap m{parse_lambda(lam_text), parse_rat(b_text)};
                BimodalCheck chk = bimodal_feasible(m);
                emit_json(json{{"feasible", chk.feasible},
                               {"violations", to_json(chk.violations)}},
                          out_path);
            }
        } else if (c_orbit->parsed()) {
            BimodalMap m{parse_lambda(lam_text), parse_rat(b_text)};
            auto orbit = turning != 0 ? bm_turning_orbit(m, turning, horizon)
                                      : bm_orbit(m, parse_rat(x_text.empty() ? "0" : x_text),
                                                 horizon);
            if (format == "json")
                emit_json(orbit_json(m, orbit), out_path);
            else
                emit(orbit_csv(m, orbit), out_path);
        } else if (c_itin->parsed()) {
            BimodalMap m{parse_lambda(lam_text), parse_rat(b_text)};
            Itinerary I = turning != 0
                              ? itinerary_of_turning(m, turning, horizon)
                              : itinerary_of(m, parse_rat(x_text.empty() ? "0" : x_text),
                                             horizon);
            json j{{"itinerary", format_itinerary(I)}};
            if (I.periodic_tail)
                j["periodic_tail"] = {{"start", I.periodic_tail->first},
                                      {"period", I.periodic_tail->second}};
            emit_json(j, out_path);
        } else if (c_bifeq->parsed()) {
            Itinerary I = parse_itinerary(itin_text);
            BifurcationEq eq = chart == "unit" ? derive_bifurcation_eq_unit(chart_l, chart_s, I)
                                               : derive_bifurcation_eq(I);
            json j{{"equation", to_json(eq)}};
            if (want_reduced) j["reduced"] = to_json(reduce(eq));
            if (structure_kind != 0)
                j["structure"] = to_json(coefficient_structure_check(eq, structure_kind));
            if (!at_text.empty()) {
                AlgebraicNumber lam = parse_lambda(at_text);
                j["classification"] = turning_class_name(classify_equation(eq, lam));
            }
            emit_json(j, out_path);
        } else if (c_cascade->parsed()) {
            auto win = parse_rat_list(window_text);
            if (win.size() != 2) throw std::invalid_argument("window needs lo,hi");
            std::vector<int> alphabet;
            for (const Rat& r : parse_rat_list(alphabet_text))
                alphabet.push_back((int)rat_num(r));
            auto records = cascade_search(parse_itinerary(base_text), max_blocks, win[0],
                                          win[1], alphabet, jobs);
            if (format == "csv")
                emit(cascade_csv(records), out_path);
            else
                emit_json(cascade_json(records), out_path);
        } else if (c_codim1->parsed()) {
            std::vector<Itinerary> controlled;
            for (const auto& t : controlled_texts) controlled.push_back(parse_itinerary(t));
            emit_json(to_json(codim1_analyze(lap_count, controlled, parse_lambda(lam_text),
                                             chart_s)),
                      out_path);
        } else if (c_obst->parsed()) {
            BimodalMap m{parse_lambda(lam_text), parse_rat(b_text)};
            emit_json(to_json(hyperbolic_approx_obstruction(m, horizon)), out_path);
        } else if (c_renorm->parsed()) {
            BimodalMap m{parse_lambda(lam_text), parse_rat(b_text)};
            emit_json(to_json(renormalization_check(m, center, period), m.lambda), out_path);
        } else if (c_scan->parsed()) {
            std::vector<Rat> grid = !grid_range_text.empty() ? grid_from_range(grid_range_text)
                                                             : parse_rat_list(grid_text);
            emit_json(to_json(nonrigidity_scan(parse_lambda(lam_text), grid, horizon)),
                      out_path);
        } else if (c_wbound->parsed()) {
            std::vector<int> syms;
            for (const Rat& r : parse_rat_list(symbols_text)) syms.push_back((int)rat_num(r));
            AlgebraicNumber lam = parse_lambda(lam_text);
            WBoundReport rep = mode == "general"
                                   ? w_bound_check_general(wl, ws, wi0, syms, lam, kmax)
                                   : w_bound_check_bimodal(syms, lam, kmax);
            emit_json(json{{"mode", mode}, {"report", to_json(rep)}}, out_path);
        } else if (c_resid->parsed()) {
            BifurcationEq e1 = derive_bifurcation_eq(parse_itinerary(residual_itins[0]));
            BifurcationEq e2 = derive_bifurcation_eq(parse_itinerary(residual_itins[1]));
            IntPoly r = eq11_residual(e1, e2);
            emit_json(json{{"residual", to_json(r)}, {"residual_text", poly_str(r)}}, out_path);
        } else if (c_plot->parsed()) {
            BimodalMap m{parse_lambda(lam_text), parse_rat(b_text)};
            if (!bimodal_feasible(m).feasible)
                throw std::domain_error("map outside the feasible region");
            std::vector<RatFunc> starts;
            for (int t : plot_turnings) starts.push_back(bm_turning_point(m, t));
            for (const auto& p : plot_points)
                starts.push_back(RatFunc::constant(parse_rat(p)));
            if (starts.empty())
                starts = {bm_turning_point(m, 1), bm_turning_point(m, 2)};
            std::string text = style == "orbit-bars" ? svg_orbit_bars(m, starts, horizon)
                                                     : svg_cobweb(m, starts, horizon);
            emit(text, out_path);
        } else if (c_repro->parsed()) {
            if (repro_list || repro_id.empty()) {
                json ids = json::array();
                for (const auto& e : reproduce_table())
                    ids.push_back(json{{"id", e.id}, {"what", e.what}});
                emit_json(json{{"examples", ids}}, out_path);
                return 0;
            }
            for (const auto& e : reproduce_table())
                if (e.id == repro_id) {
                    std::string text;
                    json j = e.run(jobs, &text);
                    if (!text.empty())
                        emit(text, out_path);
                    else
                        emit_json(json{{"id", e.id}, {"result", j}}, out_path);
                    return 0;
                }
            throw std::invalid_argument("unknown reproduce id: " + repro_id);
        }
    } catch (const std::exception& e) {
        json err{{"schema", kSchemaTag},
                 {"error", {{"type", error_type(e)}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
