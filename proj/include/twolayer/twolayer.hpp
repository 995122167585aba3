#pragma once

#include "twolayer/bundled.hpp"
#include "twolayer/convergence.hpp"
#include "twolayer/curve.hpp"
#include "twolayer/dp.hpp"
#include "twolayer/error.hpp"
#include "twolayer/minimax.hpp"
#include "twolayer/network.hpp"
#include "twolayer/objective.hpp"
#include "twolayer/oracle.hpp"
#include "twolayer/report.hpp"
#include "twolayer/scenario.hpp"
#include "twolayer/table.hpp"
