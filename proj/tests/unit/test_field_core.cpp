#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>

#include "oecs/diagnostics.hpp"
#include "oecs/errors.hpp"
#include "oecs/geostrophic.hpp"
#include "oecs/gridded_field.hpp"
#include "oecs/io.hpp"

using namespace oecs;
namespace fs = std::filesystem;

namespace {

// u = f(x,y,t), v = g(x,y,t) sampled on a cartesian grid.
template <typename FU, typename FV>
VelocityDataset make_dataset(const GridSpec& grid, const std::vector<double>& times,
                             FU&& fu, FV&& fv) {
    VelocityDataset ds;
    ds.grid = grid;
    ds.times = times;
    ds.u.resize(times.size() * grid.node_count());
    ds.v.resize(times.size() * grid.node_count());
    for (std::size_t it = 0; it < times.size(); ++it)
        for (int iy = 0; iy < grid.ny; ++iy)
            for (int ix = 0; ix < grid.nx; ++ix) {
                const Vec2 p = grid.node_coord(ix, iy);
                const std::size_t k = (it * grid.ny + iy) * grid.nx + ix;
                ds.u[k] = fu(p.x, p.y, times[it]);
                ds.v[k] = fv(p.x, p.y, times[it]);
            }
    return ds;
}

GridSpec unit_grid(int n, double lo, double hi) {
    GridSpec g;
    g.nx = g.ny = n;
    g.x0 = g.y0 = lo;
    g.dx = g.dy = (hi - lo) / (n - 1);
    g.mode = CoordinateMode::Cartesian;
    return g;
}

fs::path temp_dir(const std::string& tag) {
    fs::path dir = fs::temp_directory_path() / ("oecs_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("manifest round trip and validation failures") {
    GridSpec g = unit_grid(16, 0.0, 1.5);
    VelocityDataset ds = make_dataset(g, {0.0, 7.0, 14.0},
                                      [](double x, double, double) { return x; },
                                      [](double, double y, double) { return -y; });
    const fs::path dir = temp_dir("manifest");
    const std::string manifest = save_dataset(ds, dir.string());

    VelocityDataset back = load_dataset(manifest);
    CHECK(back.nt() == 3);
    CHECK(back.grid.nx == 16);
    CHECK(back.u == ds.u);
    CHECK(back.v == ds.v);

    SUBCASE("file shorter than declared shape is rejected") {
        std::vector<double> truncated(ds.u.begin(), ds.u.begin() + 2 * g.node_count());
        write_raw_f64((dir / "u.f64").string(), truncated);
        CHECK_THROWS_AS(load_dataset(manifest), DataError);
    }
    SUBCASE("non-monotone times are rejected") {
        VelocityDataset bad = ds;
        bad.times = {0.0, 7.0, 7.0};
        CHECK_THROWS_AS(save_dataset(bad, dir.string()), DataError);
    }
    SUBCASE("non-finite samples are rejected") {
        VelocityDataset bad = ds;
        bad.u[5] = std::nan("");
        CHECK_THROWS_AS(bad.validate(), DataError);
    }
}

TEST_CASE("csv ingestion matches raw field") {
    GridSpec g = unit_grid(6, 0.0, 1.0);
    VelocityDataset ds = make_dataset(g, {0.0, 1.0},
                                      [](double x, double y, double t) { return x * y + t; },
                                      [](double x, double, double) { return std::sin(x); });
    const fs::path dir = temp_dir("csv");
    write_csv_field((dir / "u.csv").string(), ds.u, ds.nt(), g.ny, g.nx);
    auto u = read_csv_field((dir / "u.csv").string(), ds.nt(), g.ny, g.nx);
    CHECK(u == ds.u);

    SUBCASE("missing cells rejected") {
        std::ofstream out(dir / "short.csv");
        out << "t,y,x,value\n0,0,0,1.0\n";
        out.close();
        CHECK_THROWS_AS(read_csv_field((dir / "short.csv").string(), ds.nt(), g.ny, g.nx),
                        DataError);
    }
}

TEST_CASE("velocity sampling: nodes, linear exactness, time blend") {
    GridSpec g = unit_grid(16, -1.0, 1.0);
    VelocityDataset ds = make_dataset(g, {0.0, 10.0},
                                      [](double x, double, double) { return x; },
                                      [](double, double y, double) { return -y; });
    auto field = GriddedField(std::make_shared<VelocityDataset>(ds));

    const Vec2 node = g.node_coord(5, 7);
    const Vec2 at_node = field.velocity(node, 0.0);
    CHECK(at_node.x == doctest::Approx(node.x).epsilon(1e-14));
    CHECK(at_node.y == doctest::Approx(-node.y).epsilon(1e-14));

    // Cubic interpolation reproduces linear data mid-cell.
    const Vec2 p{-0.5 + 0.5 * g.dx, 0.25 + 0.5 * g.dy};
    const Vec2 mid = field.velocity(p, 3.7);
    CHECK(std::abs(mid.x - p.x) < 1e-12);
    CHECK(std::abs(mid.y + p.y) < 1e-12);

    SUBCASE("halfway time blend of constant-in-space fields") {
        VelocityDataset blend = make_dataset(g, {0.0, 10.0},
                                             [](double, double, double t) { return t < 5 ? 1.0 : 3.0; },
                                             [](double, double, double) { return 0.0; });
        auto f2 = GriddedField(std::make_shared<VelocityDataset>(blend));
        CHECK(f2.velocity({0.0, 0.0}, 5.0).x == doctest::Approx(2.0).epsilon(1e-14));
    }
    SUBCASE("out-of-domain queries throw") {
        CHECK_THROWS_AS(field.velocity({2.0, 0.0}, 0.0), DomainError);
        CHECK_THROWS_AS(field.velocity({0.0, 0.0}, 11.0), DomainError);
    }
}

TEST_CASE("strain analysis on canonical linear flows") {
    GridSpec g = unit_grid(24, -1.0, 1.0);
    const double om = 3e-5, gam = 2e-5, al = 1.5e-5;

    SUBCASE("solid-body rotation") {
        VelocityDataset ds = make_dataset(g, {0.0}, [&](double, double y, double) { return -om * y; },
                                          [&](double x, double, double) { return om * x; });
        auto f = GriddedField(std::make_shared<VelocityDataset>(ds));
        const StrainAnalysis sa = f.strain({0.31, -0.12}, 0.0);
        CHECK(std::abs(sa.s1) < 1e-18);
        CHECK(std::abs(sa.s2) < 1e-18);
        CHECK(sa.omega == doctest::Approx(2.0 * om).epsilon(1e-10));
        CHECK(sa.S.max_abs() < 1e-18);
    }
    SUBCASE("pure shear") {
        VelocityDataset ds = make_dataset(g, {0.0}, [&](double, double y, double) { return gam * y; },
                                          [](double, double, double) { return 0.0; });
        auto f = GriddedField(std::make_shared<VelocityDataset>(ds));
        const StrainAnalysis sa = f.strain({0.2, 0.4}, 0.0);
        CHECK(sa.s2 == doctest::Approx(gam / 2).epsilon(1e-10));
        CHECK(sa.s1 == doctest::Approx(-gam / 2).epsilon(1e-10));
        CHECK(sa.omega == doctest::Approx(-gam).epsilon(1e-10));
        // eigenvectors at +-45 degrees
        CHECK(std::abs(std::abs(sa.e1.x) - std::sqrt(0.5)) < 1e-9);
        CHECK(std::abs(std::abs(sa.e1.y) - std::sqrt(0.5)) < 1e-9);
    }
    SUBCASE("pure strain") {
        VelocityDataset ds = make_dataset(g, {0.0}, [&](double x, double, double) { return al * x; },
                                          [&](double, double y, double) { return -al * y; });
        auto f = GriddedField(std::make_shared<VelocityDataset>(ds));
        const StrainAnalysis sa = f.strain({-0.3, 0.7}, 0.0);
        CHECK(sa.s2 == doctest::Approx(al).epsilon(1e-10));
        CHECK(std::abs(sa.omega) < 1e-18);
        // e2 parallel to (1,0) as a direction
        CHECK(std::abs(std::abs(dot(sa.e2, {1.0, 0.0})) - 1.0) < 1e-12);
    }
}

TEST_CASE("eigen consistency property over random tensors") {
    std::srand(12345);
    for (int trial = 0; trial < 500; ++trial) {
        auto rnd = []() { return 2.0 * (std::rand() / double(RAND_MAX)) - 1.0; };
        const Mat2 grad(rnd(), rnd(), rnd(), rnd());
        const StrainAnalysis sa = strain_from_gradient(grad * 1e-4);
        for (int which = 0; which < 2; ++which) {
            const double s = which == 0 ? sa.s1 : sa.s2;
            const Vec2 e = which == 0 ? sa.e1 : sa.e2;
            const Vec2 res = sa.S.apply(e) - s * e;
            CHECK(res.norm() <= 1e-10 * std::max(1.0, std::abs(s)));
        }
        CHECK(std::abs(dot(sa.e1, sa.e2)) == 0.0);  // e2 = R e1 by construction
        CHECK(sa.s1 <= sa.s2);
    }
}

TEST_CASE("backward strain time derivative") {
    GridSpec g = unit_grid(12, -1.0, 1.0);

    SUBCASE("steady flow gives a zero tensor") {
        VelocityDataset ds = make_dataset(g, {0.0, 7.0, 14.0},
                                          [](double, double y, double) { return 2e-5 * y; },
                                          [](double, double, double) { return 0.0; });
        auto f = GriddedField(std::make_shared<VelocityDataset>(ds));
        CHECK(f.strain_time_derivative({0.1, 0.1}, 14.0).max_abs() == 0.0);
    }
    SUBCASE("linear ramp recovered exactly") {
        const double c = 4e-6;  // shear rate per day
        VelocityDataset ds = make_dataset(g, {0.0, 7.0, 14.0},
                                          [&](double, double y, double t) { return c * t * y; },
                                          [](double, double, double) { return 0.0; });
        auto f = GriddedField(std::make_shared<VelocityDataset>(ds));
        const Mat2 rate = f.strain_time_derivative({0.2, -0.5}, 14.0);
        const double expect = 0.5 * c / kSecondsPerDay;  // d(S12)/dt in 1/s^2
        CHECK(rate.a12 == doctest::Approx(expect).epsilon(1e-10));
        CHECK(rate.a21 == doctest::Approx(expect).epsilon(1e-10));
    }
    SUBCASE("first-order accuracy via Richardson halving") {
        const double w = 0.8;  // rad/day
        auto shear = [&](double, double y, double t) { return std::sin(w * t) * 1e-5 * y; };
        std::vector<double> times;
        for (int k = 0; k <= 40; ++k) times.push_back(0.25 * k);
        VelocityDataset ds = make_dataset(g, times, shear,
                                          [](double, double, double) { return 0.0; });
        auto f = GriddedField(std::make_shared<VelocityDataset>(ds));
        const double t = 8.0;
        // S12 = sin(w t_days)*1e-5/2 [1/s]; d/dt in 1/s^2 carries one day->sec factor
        const double exact = w * std::cos(w * t) * 1e-5 * 0.5 / kSecondsPerDay;
        f.set_dt_back_days(1.0);
        const double err_h = std::abs(f.strain_time_derivative({0.3, 0.3}, t).a12 - exact);
        f.set_dt_back_days(0.5);
        const double err_h2 = std::abs(f.strain_time_derivative({0.3, 0.3}, t).a12 - exact);
        CHECK(err_h2 < 0.65 * err_h);  // ~0.5 for a first-order scheme
    }
    SUBCASE("insufficient history is reported") {
        VelocityDataset ds = make_dataset(g, {0.0, 7.0},
                                          [](double, double y, double t) { return t * y * 1e-6; },
                                          [](double, double, double) { return 0.0; });
        auto f = GriddedField(std::make_shared<VelocityDataset>(ds));
        CHECK_THROWS_AS(f.strain_time_derivative({0.0, 0.0}, 3.0), InsufficientHistoryError);
    }
}

TEST_CASE("diagnostics: OW conventions and mean vorticity") {
    GridSpec g = unit_grid(32, -1.0, 1.0);

    SUBCASE("pure shear has OW = 0 everywhere") {
        VelocityDataset ds = make_dataset(g, {0.0}, [](double, double y, double) { return 3e-5 * y; },
                                          [](double, double, double) { return 0.0; });
        auto f = GriddedField(std::make_shared<VelocityDataset>(ds));
        const auto diag = compute_diagnostics(f, 0.0);
        for (double ow : diag.ow) CHECK(std::abs(ow) < 1e-24);
    }
    SUBCASE("solid rotation has OW = -Omega^2") {
        const double om = 2e-5;
        VelocityDataset ds = make_dataset(g, {0.0}, [&](double, double y, double) { return -om * y; },
                                          [&](double x, double, double) { return om * x; });
        auto f = GriddedField(std::make_shared<VelocityDataset>(ds));
        const auto diag = compute_diagnostics(f, 0.0);
        for (double ow : diag.ow) CHECK(ow == doctest::Approx(-om * om).epsilon(1e-9));
    }
    SUBCASE("omega_mean of sin(x) vorticity over a full period is zero") {
        GridSpec gp = unit_grid(64, 0.0, 2.0 * kPi);
        VelocityDataset ds = make_dataset(gp, {0.0},
                                          [](double, double, double) { return 0.0; },
                                          [](double x, double, double) { return -std::cos(x); });
        auto f = GriddedField(std::make_shared<VelocityDataset>(ds));
        // nodal vorticity = sin(x) + O(h^4); area mean vanishes by symmetry
        CHECK(std::abs(f.omega_mean(0.0)) < 1e-6);
    }
}

TEST_CASE("parallel kernels match the serial reference") {
    GridSpec g = unit_grid(48, -2.0, 2.0);
    VelocityDataset ds = make_dataset(g, {0.0, 5.0},
                                      [](double x, double y, double t) {
                                          return 1e-5 * std::sin(x + 0.1 * t) * std::cos(y);
                                      },
                                      [](double x, double y, double t) {
                                          return 1e-5 * std::cos(x) * std::sin(y - 0.05 * t);
                                      });
    auto f = GriddedField(std::make_shared<VelocityDataset>(ds));

    const auto fast = compute_strain_grids(f, 2.5, Exec::Parallel);
    const auto ref = compute_strain_grids_serial(f, 2.5);
    double max_diff = 0.0;
    for (std::size_t k = 0; k < fast.d.size(); ++k) {
        max_diff = std::max(max_diff, std::abs(fast.d[k] - ref.d[k]));
        max_diff = std::max(max_diff, std::abs(fast.b[k] - ref.b[k]));
        max_diff = std::max(max_diff, std::abs(fast.s1[k] - ref.s1[k]));
        max_diff = std::max(max_diff, std::abs(fast.s2[k] - ref.s2[k]));
    }
    CHECK(max_diff < 1e-18);

    const auto dfast = compute_diagnostics(f, 2.5, Exec::Parallel);
    const auto dref = compute_diagnostics_serial(f, 2.5);
    auto rel_diff = [](const std::vector<double>& a, const std::vector<double>& b) {
        double scale = 0.0, diff = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) {
            scale = std::max(scale, std::abs(b[k]));
            diff = std::max(diff, std::abs(a[k] - b[k]));
        }
        return diff / std::max(scale, 1e-300);
    };
    CHECK(rel_diff(dfast.ow, dref.ow) < 1e-12);
    CHECK(rel_diff(dfast.pv, dref.pv) < 1e-12);
    CHECK(rel_diff(dfast.grad_pv_mag, dref.grad_pv_mag) < 1e-12);
    CHECK(dfast.omega_mean == dref.omega_mean);
}

TEST_CASE("frame transformation of vorticity: +2 Omega shift, deviation invariant") {
    GridSpec g = unit_grid(40, -1.0, 1.0);
    const double om = 1.3e-5;
    auto u0 = [](double x, double y, double) { return 2e-5 * std::sin(x) * std::cos(y); };
    auto v0 = [](double x, double y, double) { return -2e-5 * std::cos(x) * std::sin(y) + 1e-5 * x; };
    VelocityDataset base = make_dataset(g, {0.0}, u0, v0);
    VelocityDataset rotated = make_dataset(g, {0.0},
                                           [&](double x, double y, double t) { return u0(x, y, t) - om * y; },
                                           [&](double x, double y, double t) { return v0(x, y, t) + om * x; });
    auto fb = GriddedField(std::make_shared<VelocityDataset>(base));
    auto fr = GriddedField(std::make_shared<VelocityDataset>(rotated));

    const double wb = fb.strain({0.4, -0.2}, 0.0).omega;
    const double wr = fr.strain({0.4, -0.2}, 0.0).omega;
    CHECK(wr - wb == doctest::Approx(2.0 * om).epsilon(1e-10));

    const double dev_b = wb - fb.omega_mean(0.0);
    const double dev_r = wr - fr.omega_mean(0.0);
    CHECK(dev_r == doctest::Approx(dev_b).epsilon(1e-8));
}

TEST_CASE("geostrophic conversion") {
    GridSpec g;
    g.nx = 48;
    g.ny = 40;
    g.x0 = -10.0;
    g.y0 = -38.0;
    g.dx = 0.25;
    g.dy = 0.25;
    g.mode = CoordinateMode::Geographic;

    SUBCASE("constant ssh gives zero velocity") {
        SshDataset ssh{g, {0.0}, std::vector<double>(g.node_count(), 0.7)};
        const VelocityDataset out = geostrophic_from_ssh(ssh);
        for (double uu : out.u) CHECK(std::abs(uu) < 1e-10);
        for (double vv : out.v) CHECK(std::abs(vv) < 1e-10);
        CHECK(out.provenance == Provenance::FromSsh);
    }
    SUBCASE("h = A sin(lat) matches the closed form") {
        const double A = 0.4;
        SshDataset ssh;
        ssh.grid = g;
        ssh.times = {0.0};
        ssh.h.resize(g.node_count());
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix)
                ssh.h[static_cast<std::size_t>(iy) * g.nx + ix] =
                    A * std::sin((g.y0 + iy * g.dy) * kDegToRad);
        GeostrophicConstants c;
        const VelocityDataset out = geostrophic_from_ssh(ssh, c);
        // u = -g A cos(theta) / (R f), v = 0, with f = 2 Omega sin(theta)
        for (int iy = 2; iy < g.ny - 2; ++iy) {
            const double theta = (g.y0 + iy * g.dy) * kDegToRad;
            const double f_cor = 2.0 * c.earth_omega * std::sin(theta);
            const double expect = -c.gravity * A * std::cos(theta) / (g.earth_radius * f_cor);
            const double got = out.u[static_cast<std::size_t>(iy) * g.nx + 5];
            CHECK(got == doctest::Approx(expect).epsilon(1e-8));
            CHECK(out.v[static_cast<std::size_t>(iy) * g.nx + 5] == doctest::Approx(0.0));
        }
    }
    SUBCASE("doubling h doubles the velocity") {
        SshDataset ssh;
        ssh.grid = g;
        ssh.times = {0.0};
        ssh.h.resize(g.node_count());
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix)
                ssh.h[static_cast<std::size_t>(iy) * g.nx + ix] =
                    0.1 * std::sin(0.5 * ix) * std::cos(0.4 * iy);
        SshDataset ssh2 = ssh;
        for (double& s : ssh2.h) s *= 2.0;
        const VelocityDataset a = geostrophic_from_ssh(ssh);
        const VelocityDataset b = geostrophic_from_ssh(ssh2);
        for (std::size_t k = 0; k < a.u.size(); ++k) {
            CHECK(b.u[k] == doctest::Approx(2.0 * a.u[k]).epsilon(1e-13));
            CHECK(b.v[k] == doctest::Approx(2.0 * a.v[k]).epsilon(1e-13));
        }
    }
    SUBCASE("grids crossing the equatorial band are rejected") {
        GridSpec eq = g;
        eq.y0 = -3.0;
        SshDataset ssh{eq, {0.0}, std::vector<double>(eq.node_count(), 0.0)};
        CHECK_THROWS_AS(geostrophic_from_ssh(ssh), DataError);
    }
    SUBCASE("f-plane limit is non-divergent at interior nodes") {
        SshDataset ssh;
        ssh.grid = g;
        ssh.times = {0.0};
        ssh.h.resize(g.node_count());
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix)
                ssh.h[static_cast<std::size_t>(iy) * g.nx + ix] =
                    0.2 * std::sin(0.3 * ix + 0.1) * std::cos(0.25 * iy - 0.4);
        GeostrophicConstants c;
        c.coriolis_override = -8e-5;
        const VelocityDataset out = geostrophic_from_ssh(ssh, c);
        // Spherical divergence (1/(R cos))*(du/dphi + d(v cos)/dtheta) vanishes
        // identically for constant f; the discrete stencils commute exactly.
        const double hphi = g.dx * kDegToRad;
        const double htheta = g.dy * kDegToRad;
        std::vector<double> vcos(g.node_count());
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix)
                vcos[static_cast<std::size_t>(iy) * g.nx + ix] =
                    out.v[static_cast<std::size_t>(iy) * g.nx + ix] *
                    std::cos((g.y0 + iy * g.dy) * kDegToRad);
        double vel_scale = 0.0;
        for (double uu : out.u) vel_scale = std::max(vel_scale, std::abs(uu));
        for (int iy = 2; iy < g.ny - 2; ++iy)
            for (int ix = 2; ix < g.nx - 2; ++ix) {
                const double du =
                    stencil_derivative(out.u.data() + static_cast<std::size_t>(iy) * g.nx,
                                       g.nx, ix, hphi, 1);
                const double dv = stencil_derivative(vcos.data() + ix, g.ny, iy, htheta, g.nx);
                CHECK(std::abs(du + dv) <=
                      1e-9 * (std::abs(du) + std::abs(dv)) + 1e-11 * vel_scale);
            }
    }
}
