#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "helpers.hpp"
#include "starnoma/channel.hpp"
#include "starnoma/moments.hpp"

using namespace starnoma;
using test_util::RunningComplexStats;
using test_util::RunningStats;

TEST_CASE("los_vector basics") {
    SceneConfig scene;
    scene.panel_t = {1, 1};
    const CVec single = los_vector(scene, Side::Transmit, {0.3, 1.1});
    REQUIRE(single.size() == 1);
    REQUIRE(single[0] == std::complex<double>{1.0, 0.0});

    // broadside: elevation = azimuth = pi/2 makes both phase terms vanish
    scene.panel_t = {3, 2};
    const CVec ones = los_vector(scene, Side::Transmit, {kPi / 2, kPi / 2});
    for (const auto& v : ones) {
        REQUIRE(v.real() == Catch::Approx(1.0).margin(1e-15));
        REQUIRE(v.imag() == Catch::Approx(0.0).margin(1e-15));
    }
}

TEST_CASE("los_vector matches the hand-evaluated 2x2 instance") {
    SceneConfig scene;
    scene.panel_t = {2, 2};
    scene.wavelength = 2.0 * scene.spacing_x;  // half-wavelength spacing
    scene.spacing_y = scene.spacing_x;
    const CVec v = los_vector(scene, Side::Transmit, {kPi / 3, 0.0});
    // phases -pi * (sin(pi/3) nx + cos(pi/3) ny), row-major (ny, nx)
    const double sx = std::sin(kPi / 3), cy = std::cos(kPi / 3);
    const double expected_phase[4] = {0.0, -kPi * sx, -kPi * cy, -kPi * (sx + cy)};
    for (int i = 0; i < 4; ++i) {
        REQUIRE(std::arg(v[static_cast<std::size_t>(i)]) ==
                Catch::Approx(std::remainder(expected_phase[i], kTwoPi)).margin(1e-12));
    }
}

TEST_CASE("los_vector entries are unit modulus") {
    SceneConfig scene;
    scene.panel_r = {7, 5};
    const CVec v = los_vector(scene, Side::Reflect, {1.234, -2.345});
    for (const auto& x : v) REQUIRE(std::abs(std::abs(x) - 1.0) < 1e-15);
}

TEST_CASE("draw_channels reaches the pure-LoS limit for huge kappa") {
    SceneConfig scene = test_util::small_scene(4, 4);
    scene.kappa_t = scene.kappa_r = scene.kappa_a = 1e12;
    const LinkGeometry geom = derive_geometry(scene);
    const CVec g_bar = los_vector_ue(scene, geom, Side::Transmit);
    RngStream rng(31);
    const ChannelRealization real = draw_channels(scene, geom, rng);
    for (std::size_t n = 0; n < g_bar.size(); ++n)
        REQUIRE(std::abs(real.g_t[n] - g_bar[n]) < 1e-5);
}

TEST_CASE("draw_channels entry moments match the Rician parameters") {
    SceneConfig scene = test_util::small_scene(2, 2);
    const LinkGeometry geom = derive_geometry(scene);

    SECTION("kappa = 0 gives unit mean power") {
        scene.kappa_t = 0.0;
        RngStream rng(32);
        RunningStats power;
        for (int i = 0; i < 100000; ++i) {
            const ChannelRealization real = draw_channels(scene, geom, rng);
            power.add(std::norm(real.g_t[0]));
        }
        REQUIRE(std::abs(power.mean() - 1.0) < 4.0 * power.stderr_mean());
    }

    SECTION("kappa = 1 halves the LoS mean power") {
        scene.kappa_t = 1.0;
        const CVec g_bar = los_vector_ue(scene, geom, Side::Transmit);
        RngStream rng(33);
        RunningComplexStats entry;
        for (int i = 0; i < 100000; ++i) {
            const ChannelRealization real = draw_channels(scene, geom, rng);
            entry.add(real.g_t[1]);
        }
        REQUIRE(std::abs(entry.mean() - g_bar[1] / std::sqrt(2.0)) <
                4.0 * entry.stderr_mean());
    }
}

TEST_CASE("equivalent_channel trivial single-element case") {
    SceneConfig scene = test_util::small_scene(1, 1);
    const LinkGeometry geom = derive_geometry(scene);
    ChannelRealization real;
    real.g_t = {{1.0, 0.0}};
    real.a_t = {{1.0, 0.0}};
    real.noise_t = {0.0};
    PhaseDesign design;
    design.theta_t = {0.0};
    const auto h = equivalent_channel(real, design, geom, Side::Transmit);
    REQUIRE(h.real() == Catch::Approx(std::sqrt(geom.rho_t * geom.rho_a)).epsilon(1e-14));
    REQUIRE(h.imag() == 0.0);
}

TEST_CASE("optimal phases coherently combine the pure-LoS channel") {
    SceneConfig scene = test_util::small_scene(6, 6);
    const LinkGeometry geom = derive_geometry(scene);
    const PhaseDesign design = optimal_phases(geom, scene);
    ChannelRealization real;
    real.g_t = los_vector_ue(scene, geom, Side::Transmit);
    real.a_t = los_vector_ap(scene, geom, Side::Transmit);
    real.noise_t.assign(real.g_t.size(), 0.0);
    const auto h = equivalent_channel(real, design, geom, Side::Transmit);
    REQUIRE(std::abs(h) ==
            Catch::Approx(std::sqrt(geom.rho_t * geom.rho_a) * 36.0).epsilon(1e-10));
}

TEST_CASE("equivalent_channel matches an independent brute-force sum") {
    SceneConfig scene = test_util::small_scene(3, 1);
    const LinkGeometry geom = derive_geometry(scene);
    ChannelRealization real;
    real.g_t = {{0.3, -1.1}, {-0.7, 0.2}, {1.9, 0.4}};
    real.a_t = {{-0.5, 0.8}, {1.2, -0.3}, {0.1, 0.9}};
    real.noise_t = {0.13, -0.42, 0.77};
    PhaseDesign design;
    design.theta_t = {1.0, 2.5, 4.0};

    // straight transcription of the sum, in long double
    std::complex<long double> acc{0.0L, 0.0L};
    for (int n = 0; n < 3; ++n) {
        const std::complex<long double> a{real.a_t[static_cast<std::size_t>(n)].real(),
                                          real.a_t[static_cast<std::size_t>(n)].imag()};
        const std::complex<long double> g{real.g_t[static_cast<std::size_t>(n)].real(),
                                          real.g_t[static_cast<std::size_t>(n)].imag()};
        const long double ph = design.theta_t[static_cast<std::size_t>(n)] +
                               real.noise_t[static_cast<std::size_t>(n)];
        acc += std::conj(a) * std::complex<long double>{std::cos(ph), std::sin(ph)} * g;
    }
    acc *= std::sqrt(static_cast<long double>(geom.rho_t) * geom.rho_a);

    const auto h = equivalent_channel(real, design, geom, Side::Transmit);
    REQUIRE(h.real() == Catch::Approx(static_cast<double>(acc.real())).epsilon(1e-13));
    REQUIRE(h.imag() == Catch::Approx(static_cast<double>(acc.imag())).epsilon(1e-13));
}

TEST_CASE("equivalent_channel is linear in g") {
    SceneConfig scene = test_util::small_scene(4, 2);
    const LinkGeometry geom = derive_geometry(scene);
    RngStream rng(34);
    ChannelRealization real = draw_channels(scene, geom, rng);
    PhaseDesign design = random_phases(scene, rng);

    const std::complex<double> c{0.7, -1.3};
    const auto h0 = equivalent_channel(real, design, geom, Side::Transmit);
    for (auto& g : real.g_t) g *= c;
    const auto h1 = equivalent_channel(real, design, geom, Side::Transmit);
    REQUIRE(std::abs(h1 - c * h0) < 1e-14 * std::abs(h1));
}

TEST_CASE("MC moments of the equivalent channel match the closed forms") {
    // Primary cross-check of this module against the moment formulas.
    SceneConfig scene = test_util::small_scene(10, 10);
    scene.phase_noise = PhaseNoiseModel::von_mises(0.1);
    const LinkGeometry geom = derive_geometry(scene);
    const PhaseDesign design = optimal_phases(geom, scene);
    const ChannelMoments cm = channel_moments(design, geom, scene, Side::Transmit);

    RngStream rng(35);
    RunningComplexStats mean_acc;
    RunningStats power_acc;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i) {
        const ChannelRealization real = draw_channels(scene, geom, rng);
        const auto h = equivalent_channel(real, design, geom, Side::Transmit);
        mean_acc.add(h);
        power_acc.add(std::norm(h));
    }
    INFO("mean deviation " << std::abs(mean_acc.mean() - cm.mean) << " vs stderr "
                           << mean_acc.stderr_mean());
    REQUIRE(std::abs(mean_acc.mean() - cm.mean) < 4.0 * mean_acc.stderr_mean());
    INFO("second moment MC " << power_acc.mean() << " closed " << cm.second_moment);
    REQUIRE(std::abs(power_acc.mean() - cm.second_moment) < 4.0 * power_acc.stderr_mean());
}
