#pragma once

#include "ellhyp/elliptic.hpp"
#include "ellhyp/twisted_chains.hpp"
#include "ellhyp/picard_lefschetz.hpp"
#include "ellhyp/local_system.hpp"
#include "ellhyp/loop_planner.hpp"
#include "ellhyp/config_space.hpp"
#include "ellhyp/quadrature.hpp"
#include "ellhyp/numeric_report.hpp"
