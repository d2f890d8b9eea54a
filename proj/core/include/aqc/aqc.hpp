#pragma once

#include "aqc/diagnostics.hpp"
#include "aqc/dynamics.hpp"
#include "aqc/error.hpp"
#include "aqc/hermite.hpp"
#include "aqc/identities.hpp"
#include "aqc/oscillator.hpp"
#include "aqc/phase_space.hpp"
#include "aqc/predictions.hpp"
#include "aqc/splitting.hpp"
