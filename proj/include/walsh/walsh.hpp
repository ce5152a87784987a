#pragma once

#include "walsh/numeric.hpp"
#include "walsh/random.hpp"
#include "walsh/dyadic_index.hpp"
#include "walsh/step_function.hpp"
#include "walsh/dyadic_domain.hpp"
#include "walsh/walsh_transform.hpp"
#include "walsh/martingale.hpp"
#include "walsh/weights.hpp"
#include "walsh/maximal.hpp"
#include "walsh/parallel.hpp"
#include "walsh/report.hpp"
#include "walsh/experiments.hpp"
