#pragma once

#include "betacalc/applications.hpp"
#include "betacalc/beta_map.hpp"
#include "betacalc/calculus.hpp"
#include "betacalc/error.hpp"
#include "betacalc/expr.hpp"
#include "betacalc/functionals.hpp"
#include "betacalc/inequalities.hpp"
#include "betacalc/quadrature.hpp"
#include "betacalc/random_cases.hpp"
#include "betacalc/suites.hpp"
