#pragma once

// Umbrella header for the verlinde library.

#include "verlinde/cyclotomic.hpp"
#include "verlinde/errors.hpp"
#include "verlinde/laurent_series.hpp"
#include "verlinde/problem.hpp"
#include "verlinde/rational.hpp"
#include "verlinde/report.hpp"
#include "verlinde/residue.hpp"
#include "verlinde/root_system.hpp"
#include "verlinde/verlinde_sum.hpp"
