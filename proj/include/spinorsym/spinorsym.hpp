#pragma once

// Umbrella header.

#include "spinorsym/errors.hpp"
#include "spinorsym/field.hpp"
#include "spinorsym/polynomial.hpp"
#include "spinorsym/linalg.hpp"
#include "spinorsym/spinor.hpp"
#include "spinorsym/conventions.hpp"
#include "spinorsym/jet.hpp"
#include "spinorsym/killing.hpp"
#include "spinorsym/parallel.hpp"
#include "spinorsym/symmetry.hpp"
#include "spinorsym/maxwell.hpp"
#include "spinorsym/dirac.hpp"
#include "spinorsym/report.hpp"
#include "spinorsym/cache.hpp"
