#pragma once

// Umbrella header: the full STAR-RIS NOMA uplink simulation toolkit.

#include "starnoma/channel.hpp"
#include "starnoma/config_io.hpp"
#include "starnoma/estimation.hpp"
#include "starnoma/experiments.hpp"
#include "starnoma/moments.hpp"
#include "starnoma/phase_design.hpp"
#include "starnoma/phase_noise.hpp"
#include "starnoma/rates.hpp"
#include "starnoma/rng.hpp"
#include "starnoma/scene.hpp"
#include "starnoma/special.hpp"
