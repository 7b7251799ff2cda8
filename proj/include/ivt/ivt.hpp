#pragma once

#include "ivt/conjugacy.hpp"
#include "ivt/digit_codec.hpp"
#include "ivt/dynamics.hpp"
#include "ivt/error.hpp"
#include "ivt/ivt_core.hpp"
#include "ivt/measure.hpp"
#include "ivt/rule_table.hpp"
