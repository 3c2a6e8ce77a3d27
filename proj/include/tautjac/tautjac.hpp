#pragma once

// Umbrella header.

#include "cache.hpp"
#include "errors.hpp"
#include "fourier.hpp"
#include "liegen.hpp"
#include "newton.hpp"
#include "parse.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "relideal.hpp"
#include "weylop.hpp"
