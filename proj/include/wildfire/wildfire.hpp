#pragma once

// Simulation core. The I/O headers (config_io.hpp, render_png.hpp,
// logfile.hpp) are included separately since they pull in yaml-cpp / libpng.

#include "agent.hpp"
#include "agent_system.hpp"
#include "config.hpp"
#include "engine.hpp"
#include "fire.hpp"
#include "grid.hpp"
#include "metrics.hpp"
#include "render.hpp"
#include "rng.hpp"
#include "strategy.hpp"
