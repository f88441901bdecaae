#pragma once

// Umbrella header for the gradmode library.

#include "gradmode/errors.hpp"
#include "gradmode/grid.hpp"
#include "gradmode/oracles.hpp"
#include "gradmode/profiles.hpp"
#include "gradmode/reduction.hpp"
#include "gradmode/runner.hpp"
#include "gradmode/spectral.hpp"
#include "gradmode/spline.hpp"
#include "gradmode/susy.hpp"
#include "gradmode/tridiagonal.hpp"
#include "gradmode/version.hpp"
