#ifndef QEL_QEL_HPP
#define QEL_QEL_HPP

// Umbrella header.

#include "qel/analytic.hpp"
#include "qel/errors.hpp"
#include "qel/infogain.hpp"
#include "qel/optimize.hpp"
#include "qel/povm.hpp"
#include "qel/priors.hpp"
#include "qel/qmat.hpp"
#include "qel/quadrature.hpp"
#include "qel/spin.hpp"
#include "qel/states.hpp"
#include "qel/verify.hpp"

#endif
