#pragma once

// Umbrella header: the full scoring, benchmarking, and IO surface.

#include "warcast/benchmarks.hpp"
#include "warcast/bins.hpp"
#include "warcast/calendar.hpp"
#include "warcast/crps.hpp"
#include "warcast/ensemble.hpp"
#include "warcast/evaluate.hpp"
#include "warcast/forecast.hpp"
#include "warcast/grid.hpp"
#include "warcast/ignorance.hpp"
#include "warcast/interval.hpp"
#include "warcast/io/csv.hpp"
#include "warcast/io/formats.hpp"
#include "warcast/io/table_text.hpp"
#include "warcast/io/validate.hpp"
#include "warcast/panel.hpp"
#include "warcast/parallel.hpp"
#include "warcast/quantile.hpp"
#include "warcast/resample.hpp"
#include "warcast/rng.hpp"
#include "warcast/score.hpp"
#include "warcast/synth.hpp"
#include "warcast/units.hpp"
#include "warcast/window.hpp"
