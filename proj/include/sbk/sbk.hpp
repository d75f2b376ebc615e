#pragma once

#include "sbk/chebyshev.hpp"
#include "sbk/coxeter.hpp"
#include "sbk/dunkl.hpp"
#include "sbk/errors.hpp"
#include "sbk/lie.hpp"
#include "sbk/precise.hpp"
#include "sbk/quadrature.hpp"
#include "sbk/random.hpp"
#include "sbk/report.hpp"
#include "sbk/sample_spec.hpp"
#include "sbk/series.hpp"
#include "sbk/su2.hpp"
#include "sbk/su2_group.hpp"
#include "sbk/test_functions.hpp"
