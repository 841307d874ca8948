#pragma once

#include "pickspace/blaschke.hpp"
#include "pickspace/classify.hpp"
#include "pickspace/conjugation.hpp"
#include "pickspace/errors.hpp"
#include "pickspace/generate.hpp"
#include "pickspace/gram.hpp"
#include "pickspace/hyperbolic.hpp"
#include "pickspace/multiplier.hpp"
#include "pickspace/pick.hpp"
#include "pickspace/tolerances.hpp"
