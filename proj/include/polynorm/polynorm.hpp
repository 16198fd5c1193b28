#pragma once

// Umbrella header: sharp constants and verification machinery for uniform
// norms of polynomial products and factors on planar compact sets.

#include "polynorm/common.hpp"
#include "polynorm/constants.hpp"
#include "polynorm/geometry.hpp"
#include "polynorm/io.hpp"
#include "polynorm/parallel.hpp"
#include "polynorm/polynomials.hpp"
#include "polynorm/potential.hpp"
#include "polynorm/quadrature.hpp"
#include "polynorm/verify.hpp"
