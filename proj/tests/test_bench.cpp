#include <doctest.h>

#include "mswave/bench.hpp"

#include <cmath>
#include <cstdio>

using namespace mswave;

TEST_CASE("error norms satisfy the defining identities") {
    SpectralMesh mesh = build_structured_mesh({0.0, 1.0, 0.0, 1.0}, 2, 2, 4);
    int n = mesh.num_nodes();
    Eigen::VectorXcd f(n);
    for (int i = 0; i < n; ++i)
        f(i) = Complex(1.0 + mesh.coord_x[i], mesh.coord_y[i]);

    CHECK(error_linf(f, f) == 0.0);
    CHECK(error_relative(mesh, f, f) == 0.0);

    Eigen::VectorXcd g = f.array() + Complex(3e-4, 0.0);
    CHECK(error_linf(f, g) == doctest::Approx(3e-4).epsilon(1e-12));

    Eigen::VectorXcd doubled = 2.0 * f;
    CHECK(error_relative(mesh, doubled, f) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("field integration is exact for polynomials") {
    SpectralMesh mesh = build_structured_mesh({0.0, 2.0, 0.0, 1.0}, 3, 2, 5);
    Eigen::VectorXcd one = Eigen::VectorXcd::Ones(mesh.num_nodes());
    CHECK(std::abs(integrate_field(mesh, one) - Complex(2.0, 0.0)) < 1e-13);

    Eigen::VectorXcd xy(mesh.num_nodes());
    for (int i = 0; i < mesh.num_nodes(); ++i)
        xy(i) = mesh.coord_x[i] * mesh.coord_x[i] * mesh.coord_y[i];
    // int x^2 over [0,2] = 8/3; int y over [0,1] = 1/2.
    CHECK(std::abs(integrate_field(mesh, xy) - Complex(8.0 / 6.0, 0.0)) < 1e-12);
}

TEST_CASE("interpolation reproduces nodal values and refines consistently") {
    SpectralMesh coarse = build_structured_mesh({0.0, 1.0, 0.0, 1.0}, 2, 2, 6);
    SpectralMesh fine = build_structured_mesh({0.0, 1.0, 0.0, 1.0}, 3, 3, 8);
    Eigen::VectorXcd f(coarse.num_nodes());
    for (int i = 0; i < coarse.num_nodes(); ++i) {
        double x = coarse.coord_x[i], y = coarse.coord_y[i];
        f(i) = Complex(std::pow(x, 5) * y, x - y * y);
    }
    // Identity on the same mesh.
    Eigen::VectorXcd same = interpolate_field(coarse, f, coarse);
    CHECK(error_linf(same, f) < 1e-12);
    // A degree-(5,1) polynomial transfers exactly to any richer mesh.
    Eigen::VectorXcd onto = interpolate_field(coarse, f, fine);
    for (int i = 0; i < fine.num_nodes(); ++i) {
        double x = fine.coord_x[i], y = fine.coord_y[i];
        CHECK(std::abs(onto(i) - Complex(std::pow(x, 5) * y, x - y * y)) < 1e-12);
    }
}

TEST_CASE("profile extraction is linear and nodally exact") {
    SpectralMesh mesh = build_structured_mesh({0.0, 1.2, 0.0, 1.2}, 3, 3, 4);
    WaveEnvironment env;
    env.omega = 4.0;
    ConstantDepth bathy(0.3);
    Eigen::VectorXcd f1(mesh.num_nodes()), f2(mesh.num_nodes());
    for (int i = 0; i < mesh.num_nodes(); ++i) {
        f1(i) = Complex(mesh.coord_x[i], 0.4);
        f2(i) = Complex(0.1, mesh.coord_y[i] * mesh.coord_y[i]);
    }
    int ns = 17;
    auto pa = extract_profile(mesh, f1, env, bathy, 'y', 0.6, ns, 1.0);
    auto pc = extract_profile(mesh, Eigen::VectorXcd(2.0 * f1 + 3.0 * f2), env, bathy,
                              'y', 0.6, ns, 1.0);
    DispersionState ds = dispersion_state(env.omega, 0.3);
    for (int s = 0; s < ns; ++s) {
        double x = 1.2 * s / (ns - 1);
        // Linearity holds for the complex field before the modulus.
        Complex lin = 2.0 * Complex(x, 0.4) + 3.0 * Complex(0.1, 0.36);
        double expect = wave_height(from_helmholtz_var(lin, ds.c, ds.cg), env.omega);
        CHECK(pc[s].h_norm == doctest::Approx(expect).epsilon(1e-10));
        double ha = wave_height(from_helmholtz_var(Complex(x, 0.4), ds.c, ds.cg), env.omega);
        CHECK(pa[s].h_norm == doctest::Approx(ha).epsilon(1e-10));
    }
    // Constant field gives a flat profile.
    Eigen::VectorXcd c = Eigen::VectorXcd::Constant(mesh.num_nodes(), Complex(0.5, 0.5));
    auto pf = extract_profile(mesh, c, env, bathy, 'x', 0.6, 9, 1.0);
    for (int s = 1; s < 9; ++s) CHECK(pf[s].h_norm == doctest::Approx(pf[0].h_norm));
}

TEST_CASE("plane-wave errors decay with order for both methods") {
    std::vector<int> orders{4, 6, 8};
    for (Method m : {Method::Sem, Method::Bsem}) {
        std::vector<ErrorReport> reps = run_plane_wave(1.0 / 3.0, orders, m);
        REQUIRE(reps.size() == 3);
        CHECK(reps[0].linf > reps[1].linf);
        CHECK(reps[1].linf > reps[2].linf);
        CHECK(reps[2].linf < 1e-2);
        for (const ErrorReport& r : reps) {
            CHECK(r.linf >= 0.0);
            CHECK(r.dof > 0);
        }
    }
}

TEST_CASE("field cache round-trips and rejects mismatched tags") {
    SpectralMesh mesh = build_structured_mesh({0.0, 1.0, 0.0, 1.0}, 2, 2, 3);
    Eigen::VectorXcd f(mesh.num_nodes());
    for (int i = 0; i < mesh.num_nodes(); ++i) f(i) = Complex(i * 0.25, -i * 0.5);
    std::string tag = field_tag("cache_check", 3, mesh);
    std::string path = "bench_cache_test.mswf";
    save_field(path, tag, f);

    Eigen::VectorXcd back;
    REQUIRE(load_field(path, tag, back));
    CHECK(error_linf(back, f) == 0.0);
    CHECK_FALSE(load_field(path, field_tag("cache_check", 4, mesh), back));
    CHECK_FALSE(load_field("no_such_file.mswf", tag, back));
    std::remove(path.c_str());
}
