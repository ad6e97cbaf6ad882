#pragma once

#include "dltv/agent.hpp"
#include "dltv/bandit.hpp"
#include "dltv/config.hpp"
#include "dltv/distribution.hpp"
#include "dltv/experiments.hpp"
#include "dltv/losses.hpp"
#include "dltv/mdp.hpp"
#include "dltv/online.hpp"
#include "dltv/oracle.hpp"
#include "dltv/quantile_table.hpp"
#include "dltv/record.hpp"
#include "dltv/rng.hpp"
#include "dltv/schedule.hpp"
#include "dltv/selection.hpp"
#include "dltv/stats.hpp"
