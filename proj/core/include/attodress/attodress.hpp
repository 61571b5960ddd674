#pragma once

#include "attodress/config.hpp"
#include "attodress/dressed.hpp"
#include "attodress/errors.hpp"
#include "attodress/experiments.hpp"
#include "attodress/grid.hpp"
#include "attodress/probe_model.hpp"
#include "attodress/propagator.hpp"
#include "attodress/pulses.hpp"
#include "attodress/report.hpp"
#include "attodress/spectrum.hpp"
#include "attodress/tridiagonal.hpp"
#include "attodress/units.hpp"
