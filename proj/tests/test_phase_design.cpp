#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "helpers.hpp"
#include "starnoma/moments.hpp"
#include "starnoma/phase_design.hpp"

using namespace starnoma;

TEST_CASE("matched arrival and departure angles give all-zero phases") {
    SceneConfig scene = test_util::small_scene(4, 4);
    scene.aoa_t_override = SteeringAngles{0.8, 0.3};
    scene.aod_t_override = SteeringAngles{0.8, 0.3};
    const LinkGeometry geom = derive_geometry(scene);
    const PhaseDesign d = optimal_phases(geom, scene);
    for (double th : d.theta_t) REQUIRE(th == 0.0);
}

TEST_CASE("designs are wrapped to [0, 2*pi)") {
    SceneConfig scene = test_util::small_scene(9, 9);
    const LinkGeometry geom = derive_geometry(scene);
    RngStream rng(51);
    for (const PhaseDesign& d : {optimal_phases(geom, scene), random_phases(scene, rng)}) {
        for (double th : d.theta_t) {
            REQUIRE(th >= 0.0);
            REQUIRE(th < kTwoPi);
        }
        for (double th : d.theta_r) {
            REQUIRE(th >= 0.0);
            REQUIRE(th < kTwoPi);
        }
    }
}

TEST_CASE("random designs: distinct seeds, mean coherent power N") {
    SceneConfig scene = test_util::small_scene(5, 5);
    const LinkGeometry geom = derive_geometry(scene);
    RngStream a(1), b(2);
    REQUIRE(random_phases(scene, a).theta_t != random_phases(scene, b).theta_t);

    RngStream rng(52);
    double acc = 0.0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        const PhaseDesign d = random_phases(scene, rng);
        acc += std::norm(coherent_sum(d, geom, scene, Side::Transmit));
    }
    REQUIRE(acc / draws == Catch::Approx(25.0).epsilon(0.05));
}

TEST_CASE("the optimal design dominates random designs in coherent-sum magnitude") {
    SceneConfig scene = test_util::small_scene(7, 4);
    const LinkGeometry geom = derive_geometry(scene);
    const PhaseDesign opt = optimal_phases(geom, scene);
    const double best = std::abs(coherent_sum(opt, geom, scene, Side::Reflect));
    REQUIRE(best == Catch::Approx(28.0).margin(1e-9));
    RngStream rng(53);
    for (int i = 0; i < 100; ++i) {
        const PhaseDesign d = random_phases(scene, rng);
        REQUIRE(std::abs(coherent_sum(d, geom, scene, Side::Reflect)) <= best + 1e-9);
    }
}

TEST_CASE("the design depends only on the geometry angles") {
    SceneConfig scene = test_util::small_scene(4, 3);
    const LinkGeometry geom = derive_geometry(scene);
    const PhaseDesign base = optimal_phases(geom, scene);

    SceneConfig altered = scene;
    altered.kappa_t = 7.0;
    altered.eps_v = 0.5;
    altered.phase_noise = PhaseNoiseModel::uniform(0.4);
    const PhaseDesign same = optimal_phases(derive_geometry(altered), altered);
    REQUIRE(base.theta_t == same.theta_t);
    REQUIRE(base.theta_r == same.theta_r);
}

TEST_CASE("wrap_two_pi maps edge cases into [0, 2*pi)") {
    REQUIRE(wrap_two_pi(0.0) == 0.0);
    REQUIRE(wrap_two_pi(kTwoPi) == 0.0);
    REQUIRE(wrap_two_pi(-1e-18) < kTwoPi);
    REQUIRE(wrap_two_pi(-1e-18) >= 0.0);
    REQUIRE(wrap_two_pi(7.0) == Catch::Approx(7.0 - kTwoPi).epsilon(1e-14));
    REQUIRE(wrap_two_pi(-3.0) == Catch::Approx(kTwoPi - 3.0).epsilon(1e-14));
}
