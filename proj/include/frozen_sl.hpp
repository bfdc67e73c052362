#pragma once

// Forward and inverse spectral problems for Sturm-Liouville operators with a
// frozen argument:  -y'' + q(x) y(a) = lambda y,  y^(alpha)(0) = y^(beta)(pi) = 0,
// a = pi/k. JSON helpers live separately in frozen_sl/json_io.hpp.

#include "frozen_sl/config.hpp"
#include "frozen_sl/grid.hpp"
#include "frozen_sl/potential.hpp"
#include "frozen_sl/wfunction.hpp"
#include "frozen_sl/frozen_k.hpp"
#include "frozen_sl/operators.hpp"
#include "frozen_sl/characteristic.hpp"
#include "frozen_sl/roots.hpp"
#include "frozen_sl/forward.hpp"
#include "frozen_sl/inverse.hpp"
