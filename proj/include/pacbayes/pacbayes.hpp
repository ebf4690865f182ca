#pragma once

// Umbrella header for the whole library.

#include "pacbayes/bound_kernels.hpp"
#include "pacbayes/csv.hpp"
#include "pacbayes/finite_model.hpp"
#include "pacbayes/local_bounds.hpp"
#include "pacbayes/nonlocal_bounds.hpp"
#include "pacbayes/optimize.hpp"
#include "pacbayes/registry.hpp"
#include "pacbayes/relative_bounds.hpp"
#include "pacbayes/report.hpp"
#include "pacbayes/svm.hpp"
#include "pacbayes/threshold_model.hpp"
#include "pacbayes/transductive_vapnik.hpp"
