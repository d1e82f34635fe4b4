#pragma once

#include "apsat/assignment.hpp"
#include "apsat/cnf.hpp"
#include "apsat/experiment.hpp"
#include "apsat/graph.hpp"
#include "apsat/oracle.hpp"
#include "apsat/patching.hpp"
#include "apsat/reduction.hpp"
#include "apsat/sat_solver.hpp"
#include "apsat/solver.hpp"
