#pragma once

#include "mvbeta/asymptotics.hpp"
#include "mvbeta/closed_form.hpp"
#include "mvbeta/core.hpp"
#include "mvbeta/gauss_legendre.hpp"
#include "mvbeta/quadrature.hpp"
#include "mvbeta/recursion.hpp"
#include "mvbeta/sampling.hpp"
#include "mvbeta/scalar.hpp"
#include "mvbeta/special_functions.hpp"
#include "mvbeta/statistics.hpp"
#include "mvbeta/verify.hpp"
