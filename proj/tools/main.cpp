// Command-line driver: benchmark convergence sweeps, field runs with CSV
// output, mesh dumps, and a variable-vs-constant kernel comparison table.

#include <CLI11.hpp>

#include "mswave/csvio.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace mswave;

namespace {

// Order sweep specification: "4", "2..12", or "2,4,6".
std::vector<int> parse_orders(const std::string& text) {
    std::vector<int> out;
    auto range = text.find("..");
    if (range != std::string::npos) {
        int a = std::stoi(text.substr(0, range));
        int b = std::stoi(text.substr(range + 2));
        if (a < 1 || b < a) throw CLI::ValidationError("--p", "bad order range " + text);
        for (int p = a; p <= b; ++p) out.push_back(p);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    if (out.empty()) throw CLI::ValidationError("--p", "empty order list");
    for (size_t i = 1; i < out.size(); ++i)
        if (out[i] <= out[i - 1])
            throw CLI::ValidationError("--p", "orders must be strictly increasing");
    return out;
}

std::string num_label(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// Reference circular-shoal field, cached on disk keyed by mesh and order.
Eigen::VectorXcd circular_reference(int p_ref, const std::string& out_dir,
                                    SpectralMesh& ref_mesh) {
    ref_mesh = build_structured_mesh({0.0, 2.4, 0.0, 2.4}, 10, 10, p_ref);
    std::string tag = field_tag("circular_shoal", p_ref, ref_mesh);
    std::string path = out_dir + "/circular_shoal_ref_p" + std::to_string(p_ref) + ".mswf";
    Eigen::VectorXcd ref;
    if (load_field(path, tag, ref) && ref.size() == ref_mesh.num_nodes()) return ref;
    std::cerr << "computing circular-shoal reference at p=" << p_ref << "...\n";
    FieldRun run = run_circular_shoal(p_ref);
    save_field(path, tag, run.sol.phi_hat);
    return run.sol.phi_hat;
}

int cmd_converge(const std::string& case_id, double h, const std::string& orders_text,
                 const std::string& method_text, int ref_p, const std::string& out_dir) {
    std::vector<int> orders = parse_orders(orders_text);
    if (case_id == "plane-wave") {
        Method method = (method_text == "bsem") ? Method::Bsem : Method::Sem;
        std::vector<ErrorReport> reps = run_plane_wave(h, orders, method);
        std::string path = out_dir + "/converge_plane_wave_" + method_text + ".csv";
        write_convergence_csv(reps, path);
        for (const ErrorReport& r : reps)
            std::cout << "p=" << r.p << " dof=" << r.dof << " linf=" << r.linf << "\n";
        std::cout << "wrote " << path << "\n";
        return 0;
    }
    if (case_id == "circular-shoal") {
        SpectralMesh ref_mesh;
        Eigen::VectorXcd ref = circular_reference(ref_p, out_dir, ref_mesh);
        std::vector<ErrorReport> reps;
        for (int p : orders) {
            FieldRun run = run_circular_shoal(p);
            Eigen::VectorXcd on_ref = interpolate_field(run.mesh, run.sol.phi_hat, ref_mesh);
            ErrorReport rep;
            rep.p = p;
            rep.n = run.mesh.num_nodes();
            rep.dof = run.mesh.num_nodes() + static_cast<int>(run.sol.flux.size());
            rep.linf = error_linf(on_ref, ref);
            rep.relative = error_relative(ref_mesh, on_ref, ref);
            rep.runtime_s = run.runtime_s;
            reps.push_back(rep);
            std::cout << "p=" << p << " relative=" << rep.relative << " linf=" << rep.linf
                      << "\n";
        }
        std::string path = out_dir + "/converge_circular_shoal.csv";
        write_convergence_csv(reps, path);
        std::cout << "wrote " << path << "\n";
        return 0;
    }
    throw CLI::ValidationError("--case", "unknown convergence case " + case_id);
}

int cmd_run(const std::string& case_id, int p, int ref_p,
            const std::vector<double>& section_x, const std::vector<double>& section_y,
            int samples, const std::string& out_dir) {
    FieldRun run;
    std::string stem;
    std::unique_ptr<Bathymetry> bathy;
    if (case_id == "circular-shoal") {
        run = run_circular_shoal(p);
        stem = out_dir + "/circular_shoal_p" + std::to_string(p);
        bathy = std::make_unique<CircularShoal>();
    } else if (case_id == "elliptic-shoal") {
        run = run_elliptic_shoal(p);
        stem = out_dir + "/elliptic_shoal_p" + std::to_string(p);
        bathy = std::make_unique<SlopeEllipticShoal>();
    } else {
        throw CLI::ValidationError("--case", "unknown run case " + case_id);
    }
    if (run.sol.truncated > 0)
        std::cerr << "warning: " << run.sol.truncated
                  << " kernel evaluations hit the transverse-spectrum cap\n";
    std::cout << "solved " << case_id << " p=" << p << " in " << run.runtime_s
              << " s, residual " << run.sol.residual << "\n";

    write_field_csv(run.mesh, run.sol, stem + "_field.csv");
    for (double x : section_x) {
        auto series = extract_profile(run.mesh, run.sol.phi_hat, run.env, *bathy, 'x', x,
                                      samples, run.sol.h_incident);
        write_profile_csv(series, stem + "_profile_x" + num_label(x) + ".csv");
    }
    for (double y : section_y) {
        auto series = extract_profile(run.mesh, run.sol.phi_hat, run.env, *bathy, 'y', y,
                                      samples, run.sol.h_incident);
        write_profile_csv(series, stem + "_profile_y" + num_label(y) + ".csv");
    }

    if (ref_p > 0 && case_id == "circular-shoal") {
        SpectralMesh ref_mesh;
        Eigen::VectorXcd ref = circular_reference(ref_p, out_dir, ref_mesh);
        Eigen::VectorXcd on_ref = interpolate_field(run.mesh, run.sol.phi_hat, ref_mesh);
        std::cout << "relative error vs p=" << ref_p << " reference: "
                  << error_relative(ref_mesh, on_ref, ref) << "\n";
    }
    std::cout << "wrote " << stem << "_*.csv\n";
    return 0;
}

int cmd_kernel_check(double k, int pairs, const std::string& out_path) {
    // Constant-wavenumber profile exercised through the variable-depth
    // machinery; the table compares it against the closed-form kernel.
    WavenumberProfile prof;
    prof.a = 0.0;
    prof.c = 1.0;
    prof.k = [k](double) { return k; };

    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::acos(-1.0));
    std::uniform_real_distribution<double> kr_dist(0.1, 20.0);
    std::ostringstream table;
    table << "kr,re_psi_const,im_psi_const,re_psi_var,im_psi_var,rel_err\n";
    double worst = 0.0;
    for (int i = 0; i < pairs; ++i) {
        double kr = kr_dist(rng), th = angle(rng);
        double xs = 0.5, ys = 0.0;
        double x = xs + kr / k * std::cos(th), y = ys + kr / k * std::sin(th);
        GreensEvaluation gc = greens_constant(x, y, xs, ys, k);
        GreensEvaluation gv = greens_variable(prof, x, y, xs, ys);
        double rel = std::abs(gv.psi - gc.psi) / std::abs(gc.psi);
        worst = std::max(worst, rel);
        char line[256];
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", kr,
                      gc.psi.real(), gc.psi.imag(), gv.psi.real(), gv.psi.imag(), rel);
        table << line;
    }
    if (out_path.empty() || out_path == "-") {
        std::cout << table.str();
    } else {
        std::ofstream os(out_path, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open for writing: " + out_path);
        os << table.str();
    }
    std::cerr << "max relative kernel difference: " << worst << "\n";
    return 0;
}

int cmd_dump_mesh(int nx, int ny, int p, const Rect& domain, const std::string& out_path) {
    SpectralMesh mesh = build_structured_mesh(domain, nx, ny, p);
    if (out_path.empty() || out_path == "-") {
        dump_mesh(mesh, std::cout);
    } else {
        std::ofstream os(out_path, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open for writing: " + out_path);
        dump_mesh(mesh, os);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coupled boundary/finite spectral-element solver for water-wave "
                 "propagation over variable bathymetry"};
    app.require_subcommand(1);
    app.set_config("--config")->configurable(false);
    app.allow_config_extras(CLI::config_extras_mode::error);  // strict keys

    int threads = 1;
    app.add_option("--threads", threads, "internal parallelism cap (1 = reproducible)")
        ->check(CLI::PositiveNumber);

    // converge
    auto* conv = app.add_subcommand("converge", "order-convergence sweep of a benchmark");
    std::string conv_case, conv_orders = "2..12", conv_method = "sem";
    double conv_h = 0.2;
    int conv_ref_p = 15;
    std::string conv_out = ".";
    conv->set_help_flag("--help", "print help");  // frees -h for the element size
    conv->add_option("--case", conv_case, "plane-wave | circular-shoal")->required();
    conv->add_option("--h", conv_h, "element size for plane-wave (2/h by 1/h elements)");
    conv->add_option("--p", conv_orders, "order sweep, e.g. 2..12 or 2,4,6");
    conv->add_option("--method", conv_method, "sem | bsem (plane-wave only)")
        ->check(CLI::IsMember({"sem", "bsem"}));
    conv->add_option("--ref-p", conv_ref_p, "reference order (circular-shoal)");
    conv->add_option("--out", conv_out, "output directory");

    // run
    auto* runc = app.add_subcommand("run", "solve a benchmark and emit field/profiles");
    std::string run_case, run_out = ".";
    int run_p = 0, run_ref_p = 0, run_samples = 201;
    std::vector<double> run_sx, run_sy;
    runc->add_option("--case", run_case, "circular-shoal | elliptic-shoal")->required();
    runc->add_option("--p", run_p, "element order");
    runc->add_option("--ref-p", run_ref_p, "compare against this reference order");
    runc->add_option("--section-x", run_sx, "profile lines x = const");
    runc->add_option("--section-y", run_sy, "profile lines y = const");
    runc->add_option("--samples", run_samples, "points per profile")->check(CLI::Range(2, 100000));
    runc->add_option("--out", run_out, "output directory");

    // dump-mesh
    auto* dump = app.add_subcommand("dump-mesh", "print a structured mesh listing");
    int dm_nx = 1, dm_ny = 1, dm_p = 2;
    Rect dm_rect;
    std::string dm_out;
    dump->add_option("--nx", dm_nx)->check(CLI::PositiveNumber);
    dump->add_option("--ny", dm_ny)->check(CLI::PositiveNumber);
    dump->add_option("--p", dm_p)->check(CLI::Range(1, 32));
    dump->add_option("--x0", dm_rect.x0);
    dump->add_option("--x1", dm_rect.x1);
    dump->add_option("--y0", dm_rect.y0);
    dump->add_option("--y1", dm_rect.y1);
    dump->add_option("--out", dm_out, "output file (default stdout)");

    // kernel-check
    auto* kchk = app.add_subcommand("kernel-check",
                                    "variable-vs-constant kernel comparison table");
    double kc_k = 5.0;
    int kc_pairs = 100;
    std::string kc_out;
    kchk->add_option("--k", kc_k, "wavenumber of the flat profile")->check(CLI::PositiveNumber);
    kchk->add_option("--pairs", kc_pairs, "number of point pairs")->check(CLI::PositiveNumber);
    kchk->add_option("--out", kc_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Eigen::setNbThreads(threads);

    try {
        if (conv->parsed())
            return cmd_converge(conv_case, conv_h, conv_orders, conv_method, conv_ref_p,
                                conv_out);
        if (runc->parsed()) {
            if (run_p <= 0) run_p = (run_case == "elliptic-shoal") ? 6 : 5;
            if (run_sx.empty() && run_sy.empty()) {
                if (run_case == "circular-shoal") {
                    run_sx = {2.0, 2.4};
                    run_sy = {1.2};
                } else {
                    run_sx = {3.0, 5.0, 7.0, 9.0};
                    run_sy = {0.0};
                }
            }
            return cmd_run(run_case, run_p, run_ref_p, run_sx, run_sy, run_samples,
                           run_out);
        }
        if (dump->parsed()) return cmd_dump_mesh(dm_nx, dm_ny, dm_p, dm_rect, dm_out);
        if (kchk->parsed()) return cmd_kernel_check(kc_k, kc_pairs, kc_out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
