#pragma once

// Umbrella header for the library (the command layer lives in rbfhs/cli.hpp).

#include "rbfhs/bench.hpp"
#include "rbfhs/conflict.hpp"
#include "rbfhs/dpi.hpp"
#include "rbfhs/ids.hpp"
#include "rbfhs/io.hpp"
#include "rbfhs/logic/cnf.hpp"
#include "rbfhs/logic/formula.hpp"
#include "rbfhs/logic/reasoner.hpp"
#include "rbfhs/logic/sat.hpp"
#include "rbfhs/oracle.hpp"
#include "rbfhs/probability.hpp"
#include "rbfhs/search.hpp"
#include "rbfhs/sequential.hpp"
