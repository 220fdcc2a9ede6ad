#ifndef BMOO_BMOO_HPP
#define BMOO_BMOO_HPP

#include "bmoo/bounds.hpp"
#include "bmoo/criterion.hpp"
#include "bmoo/domination.hpp"
#include "bmoo/driver.hpp"
#include "bmoo/gp.hpp"
#include "bmoo/hypervolume.hpp"
#include "bmoo/math.hpp"
#include "bmoo/problems.hpp"
#include "bmoo/rng.hpp"
#include "bmoo/smc_x.hpp"
#include "bmoo/smc_y.hpp"

#endif
