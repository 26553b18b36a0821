#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "helpers.hpp"
#include "starnoma/moments.hpp"

using namespace starnoma;

TEST_CASE("coherent_sum equals N under the optimal design") {
    SceneConfig scene;
    scene.panel_t = {8, 5};
    scene.panel_r = {6, 6};
    const LinkGeometry geom = derive_geometry(scene);
    const PhaseDesign design = optimal_phases(geom, scene);
    REQUIRE(std::abs(coherent_sum(design, geom, scene, Side::Transmit) - 40.0) < 1e-9);
    REQUIRE(std::abs(coherent_sum(design, geom, scene, Side::Reflect) - 36.0) < 1e-9);
}

TEST_CASE("coherent_sum with co-phased LoS vectors and zero design is N") {
    SceneConfig scene = test_util::small_scene(5, 4);
    // identical arrival and departure angles make a_bar == g_bar
    scene.aoa_t_override = SteeringAngles{1.1, 0.4};
    scene.aod_t_override = SteeringAngles{1.1, 0.4};
    const LinkGeometry geom = derive_geometry(scene);
    PhaseDesign design;
    design.theta_t.assign(20, 0.0);
    design.theta_r.assign(20, 0.0);
    REQUIRE(std::abs(coherent_sum(design, geom, scene, Side::Transmit) - 20.0) < 1e-12);
}

TEST_CASE("coherent_sum matches an independent summation on a hand instance") {
    SceneConfig scene = test_util::small_scene(3, 1);
    const LinkGeometry geom = derive_geometry(scene);
    PhaseDesign design;
    design.theta_t = {0.9, 3.7, 5.2};
    const CVec g_bar = los_vector_ue(scene, geom, Side::Transmit);
    const CVec a_bar = los_vector_ap(scene, geom, Side::Transmit);
    std::complex<long double> acc{0.0L, 0.0L};
    for (int n = 0; n < 3; ++n) {
        const auto i = static_cast<std::size_t>(n);
        acc += std::complex<long double>{a_bar[i].real(), -a_bar[i].imag()} *
               std::complex<long double>{g_bar[i].real(), g_bar[i].imag()} *
               std::complex<long double>{std::cos((long double)design.theta_t[i]),
                                         std::sin((long double)design.theta_t[i])};
    }
    const auto s = coherent_sum(design, geom, scene, Side::Transmit);
    REQUIRE(s.real() == Catch::Approx(static_cast<double>(acc.real())).margin(1e-13));
    REQUIRE(s.imag() == Catch::Approx(static_cast<double>(acc.imag())).margin(1e-13));
}

TEST_CASE("Rayleigh case: zero mean, variance rho_t rho_a N") {
    SceneConfig scene = test_util::small_scene(4, 4);
    scene.kappa_t = scene.kappa_r = scene.kappa_a = 0.0;
    const LinkGeometry geom = derive_geometry(scene);
    const PhaseDesign design = optimal_phases(geom, scene);
    const ChannelMoments m = channel_moments(design, geom, scene, Side::Transmit);
    REQUIRE(std::abs(m.mean) == 0.0);
    REQUIRE(m.variance == Catch::Approx(geom.rho_t * geom.rho_a * 16.0).epsilon(1e-14));
    REQUIRE(m.second_moment == m.variance);
}

TEST_CASE("hand substitution: no noise, optimal phases, unit Rician factors") {
    SceneConfig scene = test_util::small_scene(5, 5);  // N = 25
    const LinkGeometry geom = derive_geometry(scene);
    const PhaseDesign design = optimal_phases(geom, scene);
    const ChannelMoments m = channel_moments(design, geom, scene, Side::Transmit);
    const double rp = geom.rho_t * geom.rho_a;
    const double n = 25.0;
    REQUIRE(std::abs(m.mean) == Catch::Approx(std::sqrt(rp) * n / 2.0).epsilon(1e-9));
    REQUIRE(m.second_moment ==
            Catch::Approx(rp * (n * n / 4.0 + 3.0 * n / 4.0)).epsilon(1e-9));
    REQUIRE(m.variance == Catch::Approx(m.second_moment - std::norm(m.mean)).epsilon(1e-12));
}

TEST_CASE("variance is independent of the design and of the noise model") {
    SceneConfig scene = test_util::small_scene(6, 3);
    RngStream rng(41);
    double reference = -1.0;
    for (auto model : {PhaseNoiseModel::none(), PhaseNoiseModel::von_mises(0.3),
                       PhaseNoiseModel::uniform(0.7)}) {
        scene.phase_noise = model;
        const LinkGeometry geom = derive_geometry(scene);
        for (int i = 0; i < 10; ++i) {
            const PhaseDesign design = random_phases(scene, rng);
            const ChannelMoments m = channel_moments(design, geom, scene, Side::Reflect);
            if (reference < 0.0) reference = m.variance;
            REQUIRE(m.variance == reference);
        }
    }
}

TEST_CASE("no random design beats the optimal second moment") {
    SceneConfig scene = test_util::small_scene(6, 6);
    scene.phase_noise = PhaseNoiseModel::uniform(0.2);
    const LinkGeometry geom = derive_geometry(scene);
    const PhaseDesign opt = optimal_phases(geom, scene);
    const double best = channel_moments(opt, geom, scene, Side::Transmit).second_moment;
    RngStream rng(42);
    for (int i = 0; i < 100; ++i) {
        const PhaseDesign d = random_phases(scene, rng);
        REQUIRE(channel_moments(d, geom, scene, Side::Transmit).second_moment <=
                best * (1.0 + 1e-12));
    }
}

TEST_CASE("the mean collapses as the phase-noise power grows") {
    SceneConfig scene = test_util::small_scene(5, 5);
    const LinkGeometry geom = derive_geometry(scene);
    const PhaseDesign design = optimal_phases(geom, scene);

    scene.phase_noise = PhaseNoiseModel::none();
    const double clean = std::abs(channel_moments(design, geom, scene, Side::Transmit).mean);

    // von Mises: xi(sigma_p^2 = 10) = I1(0.1)/I0(0.1) < 0.05
    scene.phase_noise = PhaseNoiseModel::von_mises(10.0);
    REQUIRE(std::abs(channel_moments(design, geom, scene, Side::Transmit).mean) <
            0.05 * clean);

    // uniform: sin(x)/x decays more slowly; sinc(sqrt(30)) ~ -0.132
    scene.phase_noise = PhaseNoiseModel::uniform(10.0);
    const double noisy = std::abs(channel_moments(design, geom, scene, Side::Transmit).mean);
    REQUIRE(noisy < 0.15 * clean);
    REQUIRE(noisy / clean ==
            Catch::Approx(std::abs(xi_factor(PhaseNoiseModel::uniform(10.0)))).epsilon(1e-12));
}

TEST_CASE("MC moments over 1e5 draws match the closed forms for a random design") {
    SceneConfig scene = test_util::small_scene(8, 8);
    scene.phase_noise = PhaseNoiseModel::uniform(0.1);
    scene.kappa_t = 3.0;
    const LinkGeometry geom = derive_geometry(scene);
    RngStream design_rng(43);
    const PhaseDesign design = random_phases(scene, design_rng);
    const ChannelMoments cm = channel_moments(design, geom, scene, Side::Transmit);

    RngStream rng(44);
    test_util::RunningComplexStats mean_acc;
    test_util::RunningStats power_acc;
    for (int i = 0; i < 100000; ++i) {
        const ChannelRealization real = draw_channels(scene, geom, rng);
        const auto h = equivalent_channel(real, design, geom, Side::Transmit);
        mean_acc.add(h);
        power_acc.add(std::norm(h));
    }
    REQUIRE(std::abs(mean_acc.mean() - cm.mean) < 4.0 * mean_acc.stderr_mean());

    // The closed-form second moment applies xi^2 to the full LoS coherent
    // term, which leaves out the diagonal element pairs (they carry no
    // phase-noise factor). The MC estimate therefore sits above the closed
    // form by exactly kappa_t kappa_a N (1 - xi^2) / ((1+kappa_t)(1+kappa_a))
    // times rho_t rho_a; assert the measured gap is that term and nothing
    // else, and surface both numbers in the output.
    const double xi = xi_factor(scene.phase_noise);
    const double diag = geom.rho_t * geom.rho_a * scene.kappa_t * scene.kappa_a * 64.0 *
                        (1.0 - xi * xi) /
                        ((1.0 + scene.kappa_t) * (1.0 + scene.kappa_a));
    const double gap = power_acc.mean() - cm.second_moment;
    INFO("second-moment MC-vs-closed gap " << gap << " (" << gap / cm.second_moment * 100.0
                                           << "% of closed form), predicted diagonal term "
                                           << diag << ", stderr " << power_acc.stderr_mean());
    REQUIRE(std::abs(gap - diag) < 4.0 * power_acc.stderr_mean());
}
