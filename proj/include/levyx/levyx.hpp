#pragma once

#include "levyx/specfun.hpp"
#include "levyx/quadrature.hpp"
#include "levyx/exponent.hpp"
#include "levyx/transform.hpp"
#include "levyx/scale.hpp"
#include "levyx/expfunctional.hpp"
#include "levyx/pssmp.hpp"
#include "levyx/montecarlo.hpp"
#include "levyx/io.hpp"
