#pragma once

#include "unproj/arith.hpp"
#include "unproj/budget.hpp"
#include "unproj/expr_io.hpp"
#include "unproj/groebner.hpp"
#include "unproj/ideal_ops.hpp"
#include "unproj/matrix.hpp"
#include "unproj/monomial.hpp"
#include "unproj/polynomial.hpp"
#include "unproj/report.hpp"
#include "unproj/ring.hpp"
#include "unproj/unprojection.hpp"
