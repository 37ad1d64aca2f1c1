#pragma once

#include "cbandit/policies/arm_distribution.hpp"
#include "cbandit/policies/epsilon_greedy.hpp"
#include "cbandit/policies/exp3.hpp"
#include "cbandit/policies/hedge.hpp"
#include "cbandit/policies/thompson.hpp"
