#ifndef CCLS_CCLS_HPP
#define CCLS_CCLS_HPP

#include "ccls/analysis.hpp"
#include "ccls/bounds.hpp"
#include "ccls/builtin.hpp"
#include "ccls/chain.hpp"
#include "ccls/dsl.hpp"
#include "ccls/error.hpp"
#include "ccls/exact.hpp"
#include "ccls/expression.hpp"
#include "ccls/graph.hpp"
#include "ccls/level_structure.hpp"
#include "ccls/linalg.hpp"
#include "ccls/network.hpp"
#include "ccls/rational.hpp"
#include "ccls/report.hpp"
#include "ccls/simulation.hpp"

#endif  // CCLS_CCLS_HPP
