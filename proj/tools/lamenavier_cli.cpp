// Command-line front end: geometry generation, jet I/O, operator evaluation
// on grids, and the named verification suites with CSV/JSON reports.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "lamenavier/errors.hpp"
#include "lamenavier/io.hpp"
#include "lamenavier/operators.hpp"
#include "lamenavier/verify.hpp"

using namespace lame;
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct CurveSpec {
    double circle = 0;  // radius; > 0 selects a circle
    int koch = -1;      // generation; >= 0 selects a snowflake
    double scale = 1.0;
    int segments = 512;
    std::string file;
};

void add_curve_flags(CLI::App* cmd, CurveSpec& spec) {
    cmd->add_option("--circle", spec.circle, "circle of this radius");
    cmd->add_option("--koch", spec.koch, "Koch snowflake of this generation");
    cmd->add_option("--scale", spec.scale, "snowflake circumradius");
    cmd->add_option("--segments", spec.segments, "circle segment count");
    cmd->add_option("--curve", spec.file, "polyline CSV (x,y)");
}

std::shared_ptr<const Curve> build_curve(const CurveSpec& spec) {
    if (!spec.file.empty()) {
        Curve::Options opt;
        opt.check_simple = true;
        return std::make_shared<const Curve>(load_polyline_csv(spec.file, opt));
    }
    if (spec.koch >= 0)
        return std::make_shared<const Curve>(make_koch_snowflake(spec.koch, spec.scale));
    if (spec.circle > 0)
        return std::make_shared<const Curve>(make_circle(0, spec.circle, spec.segments));
    throw Error("no curve given: use --circle, --koch or --curve");
}

ClosedFormField named_field(const std::string& name) {
    if (name == "const1") return fields::constant(1.0);
    if (name == "z") return fields::z();
    if (name == "z2") return fields::z_squared();
    if (name == "zbar2") return fields::zbar_squared();
    if (name == "absz2") return fields::abs_squared();
    if (name == "z2zbar") return fields::z2_zbar();
    if (name == "expz") return fields::exp_z();
    if (name == "sinz") return fields::sin_z();
    if (name == "cubic") return fields::cubic();
    throw Error("unknown field: " + name +
                " (try const1|z|z2|zbar2|absz2|z2zbar|expz|sinz|cubic)");
}

std::pair<int, int> parse_grid(const std::string& s) {
    const size_t x = s.find('x');
    if (x == std::string::npos) throw Error("grid must look like 64x64");
    return {std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))};
}

std::map<std::string, double> parse_tols(const std::vector<std::string>& raw) {
    std::map<std::string, double> m;
    for (const std::string& t : raw) {
        const size_t eq = t.find('=');
        if (eq == std::string::npos) throw Error("--tol expects NAME=VALUE");
        m[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
    }
    return m;
}

// Pre-scan for --config and load JSON defaults; explicit flags still win
// because CLI11 only overwrites options that were actually passed.
json load_config(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") {
            std::ifstream in(argv[i + 1]);
            if (!in) throw Error(std::string("cannot open config ") + argv[i + 1]);
            json j;
            in >> j;
            return j;
        }
    return json::object();
}

template <class T>
void from_config(const json& cfg, const char* key, T& value) {
    if (cfg.contains(key)) value = cfg[key].get<T>();
}

BBox field_box(const Curve& curve) {
    const BBox& bb = curve.bbox();
    const double mx = 0.5 * bb.width(), my = 0.5 * bb.height();
    return {bb.xmin - mx, bb.xmax + mx, bb.ymin - my, bb.ymax + my};
}

json growth_json(const GrowthReport& rep) {
    json g;
    g["radii"] = rep.radii;
    g["max_abs"] = rep.max_abs;
    g["max_abs_over_logR"] = rep.ratio;
    g["dz_on_axis"] = rep.dz_axis;
    g["log_bounded"] = rep.ratio_bounded;
    return g;
}

int run(int argc, char** argv) {
    CLI::App app{"Plane Lame-Navier calculus: operators, jump problems, verification"};
    app.require_subcommand(1);
    const json cfg = load_config(argc, argv);

    double lambda = 1.0, mu = 1.0, nu = 0.9, dval = 1.5;
    int depth = 10;
    uint64_t seed = 42;
    std::string out_dir = ".", grid = "64x64", config_file;
    std::vector<std::string> tol_raw;
    from_config(cfg, "lambda", lambda);
    from_config(cfg, "mu", mu);
    from_config(cfg, "nu", nu);
    from_config(cfg, "d", dval);
    from_config(cfg, "depth", depth);
    from_config(cfg, "seed", seed);
    from_config(cfg, "out", out_dir);
    from_config(cfg, "grid", grid);

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--lambda", lambda, "first elastic parameter");
        cmd->add_option("--mu", mu, "shear modulus (> 0)");
        cmd->add_option("--nu", nu, "jet Lipschitz exponent in (0,1)");
        cmd->add_option("--d", dval, "d-summability exponent in (1,2)");
        cmd->add_option("--depth", depth, "Whitney decomposition depth");
        cmd->add_option("--grid", grid, "evaluation grid, e.g. 96x96");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--config", config_file, "JSON config file (flags override)");
        cmd->add_option("--seed", seed, "RNG seed for probe sampling");
        cmd->add_option("--tol", tol_raw, "tolerance override NAME=VAL")->take_all();
    };

    // ---- geometry ----
    auto* geo = app.add_subcommand("geometry", "generate curves, decompositions, d-sum reports");
    CurveSpec geo_curve;
    add_curve_flags(geo, geo_curve);
    add_common(geo);

    // ---- jet ----
    auto* jet_cmd = app.add_subcommand("jet", "make or check Whitney jets");
    auto* jet_make = jet_cmd->add_subcommand("make", "sample a named field into a jet CSV");
    CurveSpec jm_curve;
    std::string jm_field = "z2";
    add_curve_flags(jet_make, jm_curve);
    jet_make->add_option("--field", jm_field, "field to sample");
    add_common(jet_make);
    auto* jet_check = jet_cmd->add_subcommand("check", "check the Lip(1+nu) inequalities");
    std::string jc_file;
    double jc_lip = 0;
    jet_check->add_option("--jet", jc_file, "jet CSV")->required();
    jet_check->add_option("--lip", jc_lip, "declared Lipschitz constant (0 = diagnose)");
    add_common(jet_check);

    // ---- teodorescu ----
    auto* teo = app.add_subcommand("teodorescu", "evaluate T[g] on a grid");
    CurveSpec teo_curve;
    std::string teo_density = "one";
    std::vector<std::string> teo_at;
    add_curve_flags(teo, teo_curve);
    teo->add_option("--density", teo_density, "one|xi");
    teo->add_option("--at", teo_at, "extra evaluation points \"x,y\"")->take_all();
    add_common(teo);

    // ---- cauchy-transform ----
    auto* ct = app.add_subcommand("cauchy-transform", "evaluate the Cauchy transform of a jet");
    std::string ct_jet;
    std::vector<std::string> ct_at;
    ct->add_option("--jet", ct_jet, "jet CSV")->required();
    ct->add_option("--at", ct_at, "extra evaluation points \"x,y\"")->take_all();
    add_common(ct);

    // ---- solve ----
    auto* solve = app.add_subcommand("solve", "solve the jump boundary-value problem");
    std::string so_jet, so_method = "cauchy";
    solve->add_option("--jet", so_jet, "jet CSV")->required();
    solve->add_option("--method", so_method, "cauchy|whitney");
    add_common(solve);

    // ---- verify ----
    auto* ver = app.add_subcommand("verify", "run a named verification suite");
    std::string suite;
    std::string ver_out;
    ver->add_option("suite", suite, "identities|inverse|borel_pompeiu|cauchy|jumps|growth|fractal|all")
        ->required();
    ver->add_option("--report", ver_out, "write the JSON report here (default stdout)");
    add_common(ver);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const fs::path out(out_dir);

    if (geo->parsed()) {
        auto curve = build_curve(geo_curve);
        write_polyline_csv(out / "polyline.csv", *curve);
        json rep;
        rep["segments"] = curve->n();
        rep["signed_area"] = curve->signed_area();
        rep["perimeter"] = curve->perimeter();
        const double diam = curve->nominal_diameter();
        rep["box_dimension_slope"] =
            box_dimension_slope(*curve, diam * std::pow(3.0, -6), diam / 6.0, 6);
        {
            json tail = json::array();
            for (double tm : {1e-2, 1e-3, 1e-4})
                tail.push_back({{"tau_min", tm},
                                {"integral", d_summability_integral(*curve, dval, tm)}});
            rep["d_summability"] = {{"d", dval}, {"tail", tail}};
        }
        if (depth > 0) {
            const DomainDecomposition dec = whitney_decompose(curve, depth);
            write_decomposition_csv(out / "decomposition.csv", dec);
            const std::vector<double> by_depth = d_sum_by_depth(dec, dval);
            json table = json::array();
            double cum = 0;
            for (size_t k = 0; k < by_depth.size(); ++k) {
                cum += by_depth[k];
                table.push_back({{"depth", k}, {"increment", by_depth[k]}, {"d_sum", cum}});
            }
            rep["whitney"] = {{"depth", dec.max_depth},
                              {"squares", dec.squares.size()},
                              {"covered_area", dec.covered_area()},
                              {"d_sum_table", table}};
        }
        std::ofstream(out / "geometry_report.json") << rep.dump(2) << "\n";
        std::cout << rep.dump(2) << "\n";
        return 0;
    }

    if (jet_make->parsed()) {
        auto curve = build_curve(jm_curve);
        const WhitneyJet jet = jet_from_field(curve, named_field(jm_field), nu, seed);
        write_jet_csv(out / "jet.csv", jet);
        std::cout << "wrote " << (out / "jet.csv").string() << " (lip constant "
                  << format_double(jet.lip_constant) << ")\n";
        return 0;
    }

    if (jet_check->parsed()) {
        const WhitneyJet jet = load_jet_csv(jc_file, nu, jc_lip);
        const JetCheckReport rep = check_jet(jet, seed);
        json j;
        j["valid"] = rep.valid;
        j["smallest_c"] = rep.smallest_c;
        j["c_f0"] = rep.c_f0;
        j["c_f1"] = rep.c_f1;
        j["c_f2"] = rep.c_f2;
        j["divergence_ratio"] = rep.divergence_ratio;
        j["pairs_checked"] = rep.pairs_checked;
        std::cout << j.dump(2) << "\n";
        return rep.valid ? 0 : 1;
    }

    if (teo->parsed()) {
        auto curve = build_curve(teo_curve);
        const LameParams p = make_params(lambda, mu);
        const DomainDecomposition dec = whitney_decompose(curve, depth);
        AreaDensity g = teo_density == "one"
                            ? make_constant_density(1.0)
                            : make_area_density([](cplx w) { return w; });
        if (teo_density != "one" && teo_density != "xi") throw Error("--density must be one|xi");
        g = sample_area_density(dec, g.fn);
        auto field = [&](cplx z) { return teodorescu(p, dec, g, z); };
        const auto [nx, ny] = parse_grid(grid);
        write_field_csv(out / "teodorescu.csv",
                        evaluate_on_grid(field, *curve, nx, ny, field_box(*curve),
                                         FieldOnGrid::Provenance::teodorescu));
        json vals = json::array();
        for (const std::string& s : teo_at) {
            const size_t comma = s.find(',');
            const cplx z(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
            const cplx v = field(z);
            vals.push_back({{"x", z.real()}, {"y", z.imag()}, {"re", v.real()}, {"im", v.imag()}});
        }
        if (!vals.empty()) std::cout << vals.dump(2) << "\n";
        return 0;
    }

    if (ct->parsed()) {
        const WhitneyJet jet = load_jet_csv(ct_jet, nu);
        const LameParams p = make_params(lambda, mu);
        auto field = [&](cplx z) { return lame_cauchy_transform(p, jet, z); };
        const auto [nx, ny] = parse_grid(grid);
        write_field_csv(out / "cauchy_transform.csv",
                        evaluate_on_grid(field, *jet.curve, nx, ny, field_box(*jet.curve),
                                         FieldOnGrid::Provenance::lame_cauchy));
        json vals = json::array();
        for (const std::string& s : ct_at) {
            const size_t comma = s.find(',');
            const cplx z(std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1)));
            const cplx v = field(z);
            vals.push_back({{"x", z.real()}, {"y", z.imag()}, {"re", v.real()}, {"im", v.imag()}});
        }
        if (!vals.empty()) std::cout << vals.dump(2) << "\n";
        return 0;
    }

    if (solve->parsed()) {
        const WhitneyJet jet = load_jet_csv(so_jet, nu);
        const LameParams p = make_params(lambda, mu);
        JumpMethod method;
        if (so_method == "cauchy")
            method = JumpMethod::cauchy_transform;
        else if (so_method == "whitney")
            method = JumpMethod::whitney_teodorescu;
        else
            throw Error("--method must be cauchy|whitney");
        SolveOptions so;
        so.teo_depth = depth;
        so.ext_depth = std::min(depth + 2, 14);
        so.d_exponent = dval;
        const JumpProblemSolution sol = solve_jump_problem(p, jet, method, so);
        if (sol.certificate_known && !sol.certificate)
            std::cerr << "warning: CertificateUnavailable: nu <= d/2, the L^p certificate of the "
                         "solution does not apply\n";
        const auto [nx, ny] = parse_grid(grid);
        write_field_csv(out / "field.csv",
                        evaluate_on_grid(sol.field, *jet.curve, nx, ny, field_box(*jet.curve),
                                         FieldOnGrid::Provenance::jump_solution));
        json rep;
        rep["method"] = so_method;
        rep["jet_file"] = so_jet;
        rep["lambda"] = lambda;
        rep["mu"] = mu;
        rep["nu"] = nu;
        rep["certificate_known"] = sol.certificate_known;
        rep["certificate"] = sol.certificate;
        json probes = json::array();
        const std::vector<cplx> f0m = vertex_to_midpoint_density(jet.f0);
        for (int e : seeded_edges(*jet.curve, 8, seed)) {
            const cplx jump = boundary_limit(sol.field, *jet.curve, e, Side::plus) -
                              boundary_limit(sol.field, *jet.curve, e, Side::minus);
            const cplx res = jump - f0m[size_t(e)];
            const cplx t = jet.curve->midpoint(e);
            probes.push_back({{"edge", e},
                              {"x", t.real()},
                              {"y", t.imag()},
                              {"jump_residual", std::abs(res)}});
        }
        rep["jump_probes"] = probes;
        const double r0 = jet.curve->nominal_diameter();
        rep["growth"] = growth_json(
            asymptotic_growth_check(sol.field, sol.dz_field, {5 * r0, 50 * r0, 500 * r0}));
        std::ofstream(out / "solution.json") << rep.dump(2) << "\n";
        std::cout << rep.dump(2) << "\n";
        return 0;
    }

    if (ver->parsed()) {
        VerifyOptions vo;
        vo.seed = seed;
        vo.tol = parse_tols(tol_raw);
        std::vector<SuiteResult> results;
        if (suite == "all")
            for (const std::string& s : verify_suite_names()) results.push_back(run_suite(s, vo));
        else
            results.push_back(run_suite(suite, vo));
        const std::string report = suites_to_json(results);
        if (!ver_out.empty())
            std::ofstream(ver_out) << report;
        else
            std::cout << report;
        for (const SuiteResult& r : results)
            if (!r.all_pass()) return 1;
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
