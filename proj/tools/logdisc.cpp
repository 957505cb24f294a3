// logdisc: command line front end.  Thin sequential shell over the library;
// every subcommand reads JSON documents, calls one module, and emits a
// RunReport JSON (stdout or --out).  Exit codes: 0 success, 1 domain or
// document error, 2 usage error.

#include "logdisc/arrangement.hpp"
#include "logdisc/critical.hpp"
#include "logdisc/discriminant.hpp"
#include "logdisc/jsonio.hpp"
#include "logdisc/moduli.hpp"
#include "logdisc/polytope.hpp"
#include "logdisc/reciprocal.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace logdisc;

constexpr const char* kVersion = "logdisc 1.0.0";

class Stopwatch {
    using clock = std::chrono::steady_clock;
    clock::time_point last_ = clock::now();

public:
    Json timings = Json::object();
    void lap(const std::string& stage) {
        auto now = clock::now();
        timings[stage + "_ms"] =
            std::chrono::duration<double, std::milli>(now - last_).count();
        last_ = now;
    }
};

// FNV-1a over the canonical dump; enough to detect input drift in reports.
std::string digest(const Json& doc) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : doc.dump()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "fnv64:%016llx", (unsigned long long)h);
    return buf;
}

Json read_doc(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    return Json::parse(in); // parse_error carries the byte position
}

std::vector<Rat> parse_rat_list(const std::string& csv) {
    std::vector<Rat> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rat(item));
    return out;
}

// univariate integer polynomial as "t^2-5*t+6"
std::string chi_string(const Poly& chi) {
    if (chi.is_zero()) return "0";
    std::string var = chi.vars.empty() ? "t" : chi.vars[0];
    std::string out;
    for (auto& [e, c] : chi.terms) { // grevlex order = descending power
        int k = e.empty() ? 0 : e[0];
        Rat a = c;
        if (out.empty()) {
            if (a < 0) { out += "-"; a = -a; }
        } else {
            out += a < 0 ? "-" : "+";
            if (a < 0) a = -a;
        }
        bool unit = a == 1 && k > 0;
        if (!unit) out += rat_str(a);
        if (k > 0) {
            if (!unit) out += "*";
            out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
    }
    return out;
}

Json cplx_pair(const Cplx& z) { return Json::array({z.real(), z.imag()}); }

Json solutions_to_doc(const CriticalSolutions& sol) {
    Json pts = Json::array();
    for (auto& x : sol.points) {
        Json p = Json::array();
        for (auto& c : x) p.push_back(cplx_pair(c));
        pts.push_back(p);
    }
    Json hd = Json::array();
    for (auto& h : sol.hessdets) hd.push_back(cplx_pair(h));
    Json st = Json::array();
    for (auto s : sol.status)
        st.push_back(s == PointStatus::certified ? "certified" : "suspect");
    return Json{{"points", pts},
                {"residuals", sol.residuals},
                {"hessdets", hd},
                {"min_wall_distance", sol.min_wall_distance},
                {"status", st},
                {"count_expected", sol.count_expected},
                {"note", sol.note}};
}

Json disc_to_doc(const DiscriminantResult& res, bool pretty) {
    Json fac = Json::array();
    for (auto& f : res.factors) {
        Json jf{{"poly", poly_to_doc(f.poly)},
                {"multiplicity", f.multiplicity},
                {"certified", f.certified}};
        if (pretty) jf["pretty"] = f.poly.str();
        fac.push_back(jf);
    }
    Json out{{"factors", fac},
             {"total_degree", res.total_degree},
             {"method", res.method},
             {"note", res.note}};
    if (res.leftover) {
        out["leftover"] = poly_to_doc(*res.leftover);
        if (pretty) out["leftover_pretty"] = res.leftover->str();
    }
    return out;
}

Json polytope_to_doc(const LatticePolytope& P) {
    Json facets = Json::array();
    for (auto& f : P.facets)
        facets.push_back({{"normal", f.normal},
                          {"offset", rat_str(f.offset)},
                          {"vertex_ids", f.vertex_ids}});
    Json out{{"ambient_dim", P.ambient_dim},
             {"dim", P.dim},
             {"points", P.points},
             {"vertices", P.vertices},
             {"facets", facets},
             {"facet_normals", facet_normals(P)}};
    if (P.dim >= 1 && P.dim <= 5) out["f_vector"] = f_vector(P);
    return out;
}

struct Options {
    std::string file;
    std::string out_path;
    std::string u_csv, w_csv;
    std::string method = "auto";
    std::uint64_t seed = 0;
    int m = 5, k = 5;
    bool pretty = false;
};

int run(const std::string& cmd, const Options& opt) {
    Stopwatch sw;
    Json inputs = Json::object();
    Json outputs;

    auto load_arr = [&]() {
        Json doc = read_doc(opt.file);
        inputs[opt.file] = digest(doc);
        Arrangement arr = load_arrangement(doc);
        sw.lap("parse");
        return arr;
    };
    auto load_poly = [&]() {
        Json doc = read_doc(opt.file);
        inputs[opt.file] = digest(doc);
        Poly f = poly_from_doc(doc);
        sw.lap("parse");
        return f;
    };

    if (cmd == "check") {
        Arrangement arr = load_arr();
        Json v = validation_to_doc(validate(arr));
        sw.lap("compute");
        outputs = {{"d", arr.d}, {"hyperplanes", arr.n_plus_1},
                   {"validation", v}};
    } else if (cmd == "chi") {
        Arrangement arr = load_arr();
        Poly chi = characteristic_polynomial(arr);
        int ml = ml_degree(arr);
        outputs = {{"chi", chi_string(chi)},
                   {"regions", region_count(arr)},
                   {"bounded", ml},
                   {"ml_degree", ml}};
        sw.lap("compute");
    } else if (cmd == "crit") {
        Arrangement arr = load_arr();
        std::vector<Rat> u = parse_rat_list(opt.u_csv);
        CriticalSolutions sol = solve_critical(arr, u, opt.seed);
        Verdict v = membership_numeric(arr, u, opt.seed);
        outputs = solutions_to_doc(sol);
        outputs["verdict"] = verdict_str(v);
        sw.lap("compute");
    } else if (cmd == "disc") {
        Arrangement arr = load_arr();
        DiscriminantResult res;
        if (opt.method == "d1") {
            if (arr.d != 1)
                throw std::invalid_argument("--method d1 needs a line arrangement");
            std::vector<Rat> points;
            for (int i = 0; i < arr.n_plus_1; ++i)
                points.push_back(Rat(-arr.b[i] / arr.A[i][0]));
            res = logdisc_d1(points);
        } else if (opt.method == "elim" || opt.method == "auto") {
            res = logdisc_elim(arr, std::nullopt, opt.seed);
        } else {
            throw std::invalid_argument("unknown --method: " + opt.method);
        }
        outputs = disc_to_doc(res, opt.pretty);
        sw.lap("compute");
    } else if (cmd == "member") {
        Arrangement arr = load_arr();
        std::vector<Rat> u = parse_rat_list(opt.u_csv);
        Verdict v = membership_numeric(arr, u, opt.seed);
        outputs = {{"verdict", verdict_str(v)}};
        sw.lap("compute");
    } else if (cmd == "newton") {
        Poly f = load_poly();
        outputs = polytope_to_doc(newton_polytope(f));
        sw.lap("compute");
    } else if (cmd == "initial") {
        Poly f = load_poly();
        Poly in = initial_form(f, parse_rat_list(opt.w_csv));
        outputs = {{"initial", poly_to_doc(in)}};
        if (opt.pretty) outputs["pretty"] = in.str();
        sw.lap("compute");
    } else if (cmd == "circuits") {
        Arrangement arr = load_arr();
        int skipped = 0;
        auto gens = circuit_generators(arr, &skipped);
        Json list = Json::array();
        for (auto& g : gens) {
            Json lam = Json::array();
            for (auto& l : g.lambda) lam.push_back(rat_str(l));
            Json jg{{"support", g.support}, {"lambda", lam},
                    {"poly", poly_to_doc(g.g)}};
            if (opt.pretty) jg["pretty"] = g.g.str();
            list.push_back(jg);
        }
        outputs = {{"generators", list}, {"skipped_supports", skipped}};
        sw.lap("compute");
    } else if (cmd == "m0m") {
        auto [arr, map] = m0m_arrangement(opt.m);
        Json prs = Json::array();
        for (auto& [i, j] : map.pairs) prs.push_back(Json::array({i, j}));
        outputs = {{"arrangement", arrangement_to_doc(arr)},
                   {"labels", map.labels},
                   {"pairs", prs},
                   {"d", arr.d},
                   {"hyperplanes", arr.n_plus_1}};
        sw.lap("compute");
    } else if (cmd == "gram") {
        std::vector<Rat> u = parse_rat_list(opt.u_csv);
        GramReport rep = gram_minor_check(u);
        Json rows = Json::array();
        for (auto& row : rep.G) {
            Json r = Json::array();
            for (auto& q : row) r.push_back(rat_str(q));
            rows.push_back(r);
        }
        Json minors = Json::array();
        for (auto& q : rep.minors) minors.push_back(rat_str(q));
        outputs = {{"gram", rows},
                   {"minors", minors},
                   {"delta", rat_str(rep.delta)},
                   {"all_equal", rep.all_equal}};
        sw.lap("compute");
    } else if (cmd == "softlimit") {
        outputs = {{"m", opt.m}, {"k", opt.k},
                   {"weight", soft_limit_weight(opt.m, opt.k)}};
        if (opt.m == 6 && opt.k == 5) {
            SoftLimitReport rep = soft_limit_m06(opt.seed);
            Json stripped = Json::array();
            for (auto& [desc, mult] : rep.stripped)
                stripped.push_back({{"factor", desc}, {"multiplicity", mult}});
            outputs["report"] = {
                {"completed", rep.completed},
                {"resultant_degree", rep.resultant_degree},
                {"stripped", stripped},
                {"factor_degree", rep.factor_degree},
                {"product_degree", rep.product_degree},
                {"delta_multiplicity_exactly_three",
                 rep.delta_multiplicity_exactly_three},
                {"note", rep.note}};
        }
        sw.lap("compute");
    }

    Json report{{"command", cmd},
                {"tool_version", kVersion},
                {"seed", opt.seed},
                {"inputs", inputs},
                {"outputs", outputs},
                {"timings", sw.timings}};
    std::string text = report.dump(2) + "\n";
    if (opt.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(opt.out_path);
        if (!out) throw std::invalid_argument("cannot write: " + opt.out_path);
        out << text;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"logarithmic discriminants of hyperplane arrangements"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Options opt;
    std::string cmd;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", opt.out_path, "write the report here");
        sub->add_option("--seed", opt.seed, "RNG seed (default 0)");
        sub->add_flag("--pretty", opt.pretty, "add human-readable renderings");
        sub->callback([&, sub] { cmd = sub->get_name(); });
        return sub;
    };
    auto with_file = [&](const char* name, const char* desc) {
        CLI::App* sub = common(app.add_subcommand(name, desc));
        sub->add_option("file", opt.file, "input document")->required();
        return sub;
    };

    with_file("check", "validate an arrangement document");
    with_file("chi", "characteristic polynomial, regions, ML degree");
    with_file("crit", "solve the critical equations at u")
        ->add_option("--u", opt.u_csv, "comma-separated rationals")->required();
    with_file("disc", "compute the logarithmic discriminant")
        ->add_option("--method", opt.method, "auto|d1|elim");
    with_file("member", "discriminant membership of u")
        ->add_option("--u", opt.u_csv, "comma-separated rationals")->required();
    with_file("newton", "Newton polytope of a polynomial document");
    with_file("initial", "w-initial form of a polynomial document")
        ->add_option("--w", opt.w_csv, "comma-separated weights")->required();
    with_file("circuits", "circuit generators of the reciprocal ideal");
    common(app.add_subcommand("m0m", "moduli-space arrangement"))
        ->add_option("--m", opt.m, "number of marked points")->required();
    common(app.add_subcommand("gram", "Gram-minor identity check"))
        ->add_option("--u", opt.u_csv, "five comma-separated rationals")
        ->required();
    {
        CLI::App* sub = common(app.add_subcommand("softlimit",
            "soft-limit weight and (for m=6, k=5) the degeneration recipe"));
        sub->add_option("--m", opt.m, "number of marked points")->required();
        sub->add_option("--k", opt.k, "soft particle")->required();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        return run(cmd, opt);
    } catch (const Json::parse_error& e) {
        std::cerr << "document parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
