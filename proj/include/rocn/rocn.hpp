#pragma once

// Umbrella header: construction, validation, and certification of
// row-orthogonal column-normalized (ROCN) Bell inequalities.

#include "rocn/construct.hpp"
#include "rocn/core.hpp"
#include "rocn/io.hpp"
#include "rocn/matrix.hpp"
#include "rocn/report.hpp"
#include "rocn/selftest.hpp"
#include "rocn/strategy.hpp"
#include "rocn/symmetric.hpp"
