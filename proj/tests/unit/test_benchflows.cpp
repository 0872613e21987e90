#include <doctest.h>

#include <cmath>
#include <memory>

#include "oecs/benchflows.hpp"
#include "oecs/gridded_field.hpp"

using namespace oecs;

namespace {

// Central-difference gradient of a flow's velocity, for checking the exact one.
Mat2 fd_gradient(const AnalyticFlow& flow, const Vec2& p, double t, double h) {
    const Vec2 vxp = flow.velocity({p.x + h, p.y}, t);
    const Vec2 vxm = flow.velocity({p.x - h, p.y}, t);
    const Vec2 vyp = flow.velocity({p.x, p.y + h}, t);
    const Vec2 vym = flow.velocity({p.x, p.y - h}, t);
    return {(vxp.x - vxm.x) / (2 * h), (vyp.x - vym.x) / (2 * h),
            (vxp.y - vxm.y) / (2 * h), (vyp.y - vym.y) / (2 * h)};
}

} // namespace

TEST_CASE("closed-form evaluations") {
    const double om = 2.5e-6;
    CHECK(solid_rotation(om)->velocity({1.0, 0.0}, 0.0).x == 0.0);
    CHECK(solid_rotation(om)->velocity({1.0, 0.0}, 0.0).y == doctest::Approx(om));

    const double gam = 4e-6;
    const Vec2 sh = pure_shear(gam)->velocity({0.0, 1.0}, 3.0);
    CHECK(sh.x == doctest::Approx(gam));
    CHECK(sh.y == 0.0);

    VortexParams vp;
    vp.circulation = 5e4;
    vp.core_radius = 8e4;
    vp.eps_periodic = 0.05;
    const Vec2 at0 = perturbed_vortex(vp)->velocity({0.0, 0.0}, 1.0);
    CHECK(at0.norm() < 1e-15);  // stagnation point by construction
}

TEST_CASE("exact gradients agree with finite differences for every kind") {
    VortexParams vp;
    vp.circulation = 6e4;
    vp.core_radius = 7e4;
    vp.center = {1e4, -2e4};
    vp.eps_steady = 0.08;
    vp.eps_periodic = 0.05;
    vp.period_days = 12.0;
    vp.strain_rate = 3e-7;
    VortexParams vp2 = vp;
    vp2.center = {-2e5, 1e5};
    vp2.decay_tau_days = 20.0;

    GyreParams gp;
    gp.amplitude = 1.2e4;
    gp.length = 1e5;

    struct Case {
        const char* name;
        FlowPtr flow;
        Vec2 p;
        double scale;
    };
    const Case cases[] = {
        {"solid_rotation", solid_rotation(3e-6, {0.1, 0.2}), {5e3, -3e3}, 1e4},
        {"pure_shear", pure_shear(2e-6), {1e3, 4e3}, 1e4},
        {"pure_strain", pure_strain(1e-6, {0, 0}), {2e3, 1e3}, 1e4},
        {"perturbed_vortex", perturbed_vortex(vp), {4e4, 3e4}, 1e4},
        {"decaying_vortex", decaying_vortex(vp2), {-1.2e5, 1.4e5}, 1e4},
        {"two_vortex", two_vortex(vp, vp2), {-5e4, 6e4}, 1e4},
        {"unsteady_gyre", unsteady_gyre(gp), {1.3e5, 0.4e5}, 1e3},
    };
    for (const auto& c : cases) {
        CAPTURE(c.name);
        REQUIRE(c.flow->has_exact_gradient());
        for (double t : {0.0, 3.7}) {
            const Mat2 exact = c.flow->velocity_gradient(c.p, t);
            const Mat2 fd = fd_gradient(*c.flow, c.p, t, c.scale * 1e-3);
            const double scale = std::max(exact.max_abs(), 1e-12);
            CHECK((exact - fd).max_abs() / scale < 1e-5);
        }
    }
}

TEST_CASE("frame changes") {
    VortexParams vp;
    vp.circulation = 5e4;
    vp.core_radius = 6e4;
    vp.eps_periodic = 0.1;
    FlowPtr base = perturbed_vortex(vp);

    SUBCASE("identity frame change leaves the flow unchanged") {
        const double zero5[5] = {0, 0, 0, 0, 0};
        FrameChange id(zero5, zero5, zero5);
        FlowPtr same = transform(base, id);
        const Vec2 p{3e4, -2e4};
        CHECK((same->velocity(p, 2.0) - base->velocity(p, 2.0)).norm() < 1e-14);
    }
    SUBCASE("solid rotation seen from the co-rotating frame vanishes") {
        const double om = 4e-6;
        const double ang[5] = {0.0, om, 0.0, 0.0, 0.0};  // angle = om * t_sec
        const double zero5[5] = {0, 0, 0, 0, 0};
        FrameChange co(ang, zero5, zero5);
        FlowPtr rot = solid_rotation(om);
        FlowPtr seen = transform(rot, co);
        CHECK(seen->velocity({2e4, 1e4}, 5.0).norm() < 1e-12);
    }
    SUBCASE("vorticity shifts by -2 times the frame rotation rate") {
        FrameChange fc = FrameChange::random(7, 2e-6, 5e4);
        FlowPtr moved = transform(base, fc);
        const double t = 2.3;
        const Vec2 xt{1e4, 2e4};
        const Vec2 x = fc.from_frame(xt, t);
        const Mat2 g0 = base->velocity_gradient(x, t);
        const Mat2 g1 = moved->velocity_gradient(xt, t);
        const double w0 = g0.a21 - g0.a12;
        const double w1 = g1.a21 - g1.a12;
        CHECK(w1 - w0 == doctest::Approx(-2.0 * fc.rotation_rate(t)).epsilon(1e-10));
    }
    SUBCASE("transform then inverse recovers the velocity") {
        FrameChange fc = FrameChange::random(11, 3e-6, 8e4);
        FlowPtr round = transform(transform(base, fc), fc.inverse());
        for (const Vec2 p : {Vec2{1e4, 0.0}, Vec2{-3e4, 2e4}, Vec2{5e4, 5e4}}) {
            const Vec2 a = base->velocity(p, 4.2);
            const Vec2 b = round->velocity(p, 4.2);
            CHECK((a - b).norm() <= 1e-12 * std::max(1.0, a.norm()));
        }
    }
}

TEST_CASE("rasterize feeds the gridded pipeline") {
    GridSpec g;
    g.nx = g.ny = 48;
    g.x0 = g.y0 = -2e5;
    g.dx = g.dy = 4e5 / 47.0;
    g.mode = CoordinateMode::Cartesian;

    SUBCASE("rasterized solid rotation has vanishing strain") {
        const VelocityDataset ds = rasterize(*solid_rotation(3e-6), g, {0.0});
        auto f = GriddedField(std::make_shared<VelocityDataset>(ds));
        const StrainAnalysis sa = f.strain({1e4, -2e4}, 0.0);
        CHECK(std::abs(sa.s2) <= 1e-8 * 3e-6);
    }
    SUBCASE("sampling error shrinks with refinement") {
        VortexParams vp;
        vp.circulation = 5e4;
        vp.core_radius = 1e5;
        FlowPtr flow = perturbed_vortex(vp);
        double prev_err = -1.0;
        for (int n : {33, 65, 129}) {
            GridSpec gr = g;
            gr.nx = gr.ny = n;
            gr.dx = gr.dy = 4e5 / (n - 1);
            const VelocityDataset ds = rasterize(*flow, gr, {0.0});
            auto f = GriddedField(std::make_shared<VelocityDataset>(ds));
            double err = 0.0;
            for (int k = 0; k < 50; ++k) {
                const Vec2 p{-1.5e5 + 3e5 * (k / 49.0), 1.1e4 + 0.37e5 * std::sin(k * 0.9)};
                err = std::max(err, (f.velocity(p, 0.0) - flow->velocity(p, 0.0)).norm());
            }
            if (prev_err > 0.0) CHECK(err < 0.45 * prev_err);
            prev_err = err;
        }
    }
    SUBCASE("single-snapshot dataset degenerates to that snapshot") {
        const VelocityDataset ds = rasterize(*pure_shear(1e-6), g, {5.0});
        auto f = GriddedField(std::make_shared<VelocityDataset>(ds));
        CHECK(f.velocity({0.0, 1e4}, 5.0).x == doctest::Approx(1e-2).epsilon(1e-12));
        CHECK(f.is_steady());
    }
}

TEST_CASE("exact trajectories") {
    const double om = 2.0 * kPi / (20.0 * kSecondsPerDay);  // one turn in 20 days
    FlowPtr rot = solid_rotation(om);
    const Vec2 p0{1e5, 0.0};
    const Vec2 quarter = rot->trajectory(p0, 0.0, 5.0);
    CHECK(quarter.x == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(quarter.y == doctest::Approx(1e5).epsilon(1e-10));

    FlowPtr strain = pure_strain(1e-6);
    const Vec2 moved = strain->trajectory({2.0, 3.0}, 0.0, 1.0);
    CHECK(moved.x == doctest::Approx(2.0 * std::exp(0.0864)).epsilon(1e-12));
    CHECK(moved.y == doctest::Approx(3.0 * std::exp(-0.0864)).epsilon(1e-12));
}

TEST_CASE("flow specs load from JSON") {
    FlowPtr f = flow_from_json_string(R"({
        "kind": "perturbed_vortex",
        "parameters": {"circulation": 5e4, "core_radius": 6e4, "center": [1e4, 2e4],
                        "eps_periodic": 0.05, "period_days": 8}
    })");
    CHECK(f->has_exact_gradient());
    CHECK((f->velocity({1e4, 2e4}, 0.0)).norm() < 1e-15);

    CHECK_THROWS_AS(flow_from_json_string("{\"kind\": \"nope\"}"), ConfigError);
    CHECK_THROWS_AS(flow_from_json_string("not json"), ConfigError);
}
