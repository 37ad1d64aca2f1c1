#pragma once

#include "cbandit/agents.hpp"
#include "cbandit/base_policy.hpp"
#include "cbandit/compliance.hpp"
#include "cbandit/environments.hpp"
#include "cbandit/experiment.hpp"
#include "cbandit/hhedge.hpp"
#include "cbandit/hierarchical.hpp"
#include "cbandit/ist_data.hpp"
#include "cbandit/policies.hpp"
#include "cbandit/random.hpp"
#include "cbandit/replay_cache.hpp"
#include "cbandit/thompson_bounded.hpp"
