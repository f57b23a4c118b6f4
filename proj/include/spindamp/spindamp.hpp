// Umbrella header.
#pragma once

#include "spindamp/bessel.hpp"
#include "spindamp/closedform.hpp"
#include "spindamp/core.hpp"
#include "spindamp/csv.hpp"
#include "spindamp/dynamics.hpp"
#include "spindamp/experiments.hpp"
#include "spindamp/pulses.hpp"
#include "spindamp/types.hpp"
