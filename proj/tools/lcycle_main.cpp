// Command-line front end: singular-point tables, level classification,
// detection-function tables, lambda-band and distribution reports, and
// return-map verification runs.
//
// Exit codes: 0 success, 2 usage/domain error, 3 numerical failure,
// 4 degenerate input, 5 verification mismatch.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "lcycle/cycles.hpp"
#include "lcycle/detection.hpp"
#include "lcycle/hamiltonian.hpp"
#include "lcycle/io.hpp"
#include "lcycle/ode.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitDegenerate = 4;
constexpr int kExitMismatch = 5;

struct Cli {
    lcycle::RunConfig cfg;
    std::string config_path;
};

void add_global_options(CLI::App& app, Cli& cli) {
    app.add_option("--config", cli.config_path, "flat key=value config file (flags override)");
    app.add_option("--a", cli.cfg.params.a, "quartic coefficient a (0 < a < b < 1)");
    app.add_option("--b", cli.cfg.params.b, "quartic coefficient b");
    app.add_option("--u", cli.cfg.params.u, "perturbation coefficient u");
    app.add_option("--v", cli.cfg.params.v, "perturbation coefficient v");
    app.add_option("--n", cli.cfg.params.n, "perturbation degree n (even, >= 4)");
    app.add_option("--mu", cli.cfg.params.mu, "cross-term exponent mu (mu + beta = n)");
    app.add_option("--beta", cli.cfg.params.beta, "cross-term exponent beta");
    app.add_option("--tol", cli.cfg.tol, "quadrature tolerance");
    app.add_option("--ode-tol", cli.cfg.ode_tol, "integrator tolerance");
}

// Config file first, then flags override. The file is located by a manual
// argv scan so it can be applied before CLI11 writes the parsed flags.
void apply_config_file(int argc, char** argv, Cli& cli) {
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            lcycle::load_config_file(argv[i + 1], cli.cfg);
            return;
        }
    }
}

std::vector<double> explicit_grid(const Cli& cli, lcycle::OrbitFamilyId family) {
    using namespace lcycle;
    if (!cli.cfg.h_start && !cli.cfg.h_end && !cli.cfg.h_step)
        return default_grid(family, cli.cfg.params);
    if (!(cli.cfg.h_start && cli.cfg.h_end && cli.cfg.h_step))
        throw domain_error("table: --h-start, --h-end, --step must be given together");
    const double lo = *cli.cfg.h_start, hi = *cli.cfg.h_end, step = *cli.cfg.h_step;
    if (!(step > 0.0) || !(lo <= hi)) throw domain_error("table: need h-start <= h-end and step > 0");
    std::vector<double> g;
    for (double h = lo; h < hi - 1e-12 * std::max(1.0, std::abs(hi)); h += step) g.push_back(h);
    g.push_back(hi);
    return g;
}

int run(int argc, char** argv) {
    using namespace lcycle;
    Cli cli;
    CLI::App app{"limit-cycle detection for a perturbed quartic Hamiltonian system"};
    app.require_subcommand(1);
    try {
        apply_config_file(argc, argv, cli);
    } catch (const lcycle::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitDomain;
    }
    add_global_options(app, cli);

    auto* cmd_singular = app.add_subcommand("singular", "print the nine singular points");

    double classify_h = 0.0;
    auto* cmd_classify = app.add_subcommand("classify", "classify the level set H = h");
    cmd_classify->set_help_flag("--help", "print help");  // frees -h for the energy option
    cmd_classify->add_option("--h", classify_h, "energy level")->required();

    int table_family = 2;
    double h_start = 0, h_end = 0, h_step = 0;
    auto* cmd_table = app.add_subcommand("table", "write a detection-function table as CSV");
    cmd_table->add_option("--family", table_family, "orbit family 1..4")->required();
    auto* opt_hs = cmd_table->add_option("--h-start", h_start, "grid start");
    auto* opt_he = cmd_table->add_option("--h-end", h_end, "grid end");
    auto* opt_st = cmd_table->add_option("--step", h_step, "grid step");
    cmd_table->add_flag("--paper-scale", cli.cfg.paper_scale,
                        "divide cu, cv by 1e4 for families 1, 3, 4");
    cmd_table->add_option("--out", cli.cfg.output_path, "output CSV path")->required();
    auto* cmd_curve = app.add_subcommand("curve", "alias of table");
    int curve_family = 2;
    cmd_curve->add_option("--family", curve_family, "orbit family 1..4")->required();
    auto* opt_hs2 = cmd_curve->add_option("--h-start", h_start, "grid start");
    auto* opt_he2 = cmd_curve->add_option("--h-end", h_end, "grid end");
    auto* opt_st2 = cmd_curve->add_option("--step", h_step, "grid step");
    cmd_curve->add_flag("--paper-scale", cli.cfg.paper_scale,
                        "divide cu, cv by 1e4 for families 1, 3, 4");
    cmd_curve->add_option("--out", cli.cfg.output_path, "output CSV path")->required();

    auto* cmd_bands = app.add_subcommand("bands", "lambda-band report over the default grids");
    cmd_bands->add_option("--out", cli.cfg.output_path, "output report path")->required();

    double dist_lambda = 0.0;
    auto* cmd_dist = app.add_subcommand("distribution", "cycle distribution at a fixed lambda");
    cmd_dist->add_option("--lambda", dist_lambda, "lambda0 value")->required();
    cmd_dist->add_option("--out", cli.cfg.output_path, "output report path")->required();

    double ver_lambda = 0.0, ver_eps = 1e-3;
    int ver_family = 0;
    auto* cmd_verify = app.add_subcommand("verify", "verify predicted cycles by return maps");
    cmd_verify->add_option("--lambda", ver_lambda, "lambda0 value")->required();
    cmd_verify->add_option("--epsilon", ver_eps, "perturbation size (> 0)");
    cmd_verify->add_option("--family", ver_family, "restrict to one family 1..4");
    cmd_verify->add_option("--out", cli.cfg.output_path, "output report path")->required();

    double ab_h = 0.0, ab_lambda = 0.0;
    int ab_family = 1;
    auto* cmd_abelian = app.add_subcommand("abelian", "evaluate the area integral A(h)");
    cmd_abelian->set_help_flag("--help", "print help");
    cmd_abelian->add_option("--family", ab_family, "orbit family 1..4")->required();
    cmd_abelian->add_option("--h", ab_h, "energy level")->required();
    cmd_abelian->add_option("--lambda", ab_lambda, "lambda0 value")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitDomain;
    }

    try {
        cli.cfg.validate();
        const SystemParams& P = cli.cfg.params;

        if (cmd_singular->parsed()) {
            for (const auto& sp : singular_points(P)) {
                std::printf("%s, %.6f, %.6f, %s, %.6f\n", point_label_name(sp.label),
                            sp.position.x(), sp.position.y(),
                            sp.kind == PointKind::center ? "center" : "saddle", sp.energy);
            }
            return kExitOk;
        }

        if (cmd_classify->parsed()) {
            const LevelClassification lc = classify_level(classify_h, P);
            std::string fams;
            for (auto f : lc.families) {
                if (!fams.empty()) fams += ", ";
                fams += family_name(f);
            }
            const char* boundary = "none";
            switch (lc.boundary) {
                case BoundaryKind::none: break;
                case BoundaryKind::origin_level: boundary = "origin-level"; break;
                case BoundaryKind::heteroclinic: boundary = "heteroclinic"; break;
                case BoundaryKind::homoclinic: boundary = "homoclinic"; break;
                case BoundaryKind::upper_critical: boundary = "upper-critical"; break;
            }
            std::printf("h: %s\nfamilies: %s\nboundary: %s\n", format_full(classify_h).c_str(),
                        fams.empty() ? "none" : fams.c_str(), boundary);
            return kExitOk;
        }

        if (cmd_table->parsed() || cmd_curve->parsed()) {
            if (opt_hs->count() || opt_hs2->count()) cli.cfg.h_start = h_start;
            if (opt_he->count() || opt_he2->count()) cli.cfg.h_end = h_end;
            if (opt_st->count() || opt_st2->count()) cli.cfg.h_step = h_step;
            const int fam_no = cmd_table->parsed() ? table_family : curve_family;
            if (fam_no < 1 || fam_no > 4) throw domain_error("table: --family must be 1..4");
            const auto family = static_cast<OrbitFamilyId>(fam_no);
            const auto grid = explicit_grid(cli, family);
            const DetectionCurve curve = detection_curve(family, grid, P, cli.cfg.tol);
            write_file(cli.cfg.output_path,
                       table_to_csv(curve.samples(), cli.cfg.paper_scale, family));
            return kExitOk;
        }

        if (cmd_bands->parsed()) {
            if (P.u == 0.0 && P.v == 0.0) {
                std::fprintf(stderr, "degenerate: u = v = 0 makes every detection curve vanish\n");
                return kExitDegenerate;
            }
            const auto curves = build_default_curves(P, cli.cfg.tol);
            write_file(cli.cfg.output_path, bands_report(lambda_bands(P, curves, cli.cfg.tol), P));
            return kExitOk;
        }

        if (cmd_dist->parsed()) {
            if (P.u == 0.0 && P.v == 0.0) {
                std::fprintf(stderr, "degenerate: u = v = 0 makes every detection curve vanish\n");
                return kExitDegenerate;
            }
            const auto curves = build_default_curves(P, cli.cfg.tol);
            write_file(cli.cfg.output_path,
                       distribution_report(distribution(dist_lambda, P, curves, cli.cfg.tol)));
            return kExitOk;
        }

        if (cmd_verify->parsed()) {
            if (ver_eps == 0.0) {
                std::fprintf(stderr, "degenerate: eps=0\n");
                return kExitDomain;
            }
            SystemParams vp = P;
            vp.lambda0 = ver_lambda;
            const auto curves = build_default_curves(vp, cli.cfg.tol);
            DistributionReport rep = distribution(ver_lambda, vp, curves, cli.cfg.tol);
            std::vector<VerificationRecord> recs;
            bool all_ok = true;
            for (const auto& f : rep.findings) {
                if (ver_family != 0 && static_cast<int>(f.family) != ver_family) continue;
                VerificationRecord r = verify_prediction(f, vp, ver_eps, cli.cfg.ode_tol);
                all_ok = all_ok && r.verified;
                recs.push_back(std::move(r));
            }
            write_file(cli.cfg.output_path, verification_report(recs));
            return recs.empty() || all_ok ? kExitOk : kExitMismatch;
        }

        if (cmd_abelian->parsed()) {
            if (ab_family < 1 || ab_family > 4) throw domain_error("abelian: --family must be 1..4");
            SystemParams ap = P;
            ap.lambda0 = ab_lambda;
            const double A =
                abelian_integral(static_cast<OrbitFamilyId>(ab_family), ab_h, ap, cli.cfg.tol);
            std::printf("A(h): %s\n", format_full(A).c_str());
            return kExitOk;
        }
    } catch (const lcycle::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitDomain;
    } catch (const lcycle::numeric_error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumeric;
    }
    return kExitDomain;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
