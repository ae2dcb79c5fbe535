#pragma once

#include "l1mm/bounds.hpp"
#include "l1mm/constructions.hpp"
#include "l1mm/dist_core.hpp"
#include "l1mm/error.hpp"
#include "l1mm/estimators.hpp"
#include "l1mm/experiments.hpp"
#include "l1mm/montecarlo.hpp"
#include "l1mm/numeric.hpp"
#include "l1mm/random.hpp"
#include "l1mm/report.hpp"
#include "l1mm/risk_exact.hpp"
