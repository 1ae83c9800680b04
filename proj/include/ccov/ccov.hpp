#pragma once

#include "core.hpp"
#include "kinematics.hpp"
#include "dynamics.hpp"
#include "waves.hpp"
#include "rqm.hpp"
