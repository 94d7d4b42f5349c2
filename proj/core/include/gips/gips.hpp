#pragma once

#include "gips/colored_space.hpp"
#include "gips/errors.hpp"
#include "gips/estimate.hpp"
#include "gips/linalg.hpp"
#include "gips/permutation.hpp"
#include "gips/posterior.hpp"
#include "gips/random.hpp"
#include "gips/search.hpp"
#include "gips/simulate.hpp"
