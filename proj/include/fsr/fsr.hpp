#pragma once

#include "fsr/baselines.hpp"
#include "fsr/engine.hpp"
#include "fsr/fft.hpp"
#include "fsr/grid.hpp"
#include "fsr/imaging.hpp"
#include "fsr/metrics.hpp"
#include "fsr/pnm.hpp"
#include "fsr/reconstructor.hpp"
#include "fsr/scheduler.hpp"
#include "fsr/spectral.hpp"
#include "fsr/synth.hpp"
#include "fsr/weighting.hpp"
