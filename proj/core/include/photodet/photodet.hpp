#pragma once

#include "photodet/error.hpp"
#include "photodet/inversion.hpp"
#include "photodet/io.hpp"
#include "photodet/log_real.hpp"
#include "photodet/model.hpp"
#include "photodet/oracle.hpp"
#include "photodet/povm.hpp"
#include "photodet/specfun.hpp"
#include "photodet/states.hpp"
#include "photodet/statistics.hpp"
