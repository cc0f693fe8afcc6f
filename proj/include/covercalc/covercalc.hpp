#pragma once

// Umbrella header: the symbolic library and the brute-force oracle.
// The command layer (cli/run.hpp) additionally needs nlohmann/json.

#include "covercalc/arith.hpp"
#include "covercalc/cardinal.hpp"
#include "covercalc/cosets.hpp"
#include "covercalc/covering.hpp"
#include "covercalc/error.hpp"
#include "covercalc/euclidean.hpp"
#include "covercalc/fp_poly.hpp"
#include "covercalc/gaussian.hpp"
#include "covercalc/modules.hpp"
#include "covercalc/monoids.hpp"
#include "covercalc/oracle/search.hpp"
#include "covercalc/rings.hpp"
#include "covercalc/smith.hpp"
