#pragma once

// Umbrella header for the fixpoint library: boolean dynamical systems,
// Post-class and graph-minor classification, the fixed-point dichotomy
// oracle, polynomial solvers, the CSP reduction, and the hardness gadgets.

#include "fixpoint/csp.hpp"
#include "fixpoint/dichotomy.hpp"
#include "fixpoint/errors.hpp"
#include "fixpoint/function.hpp"
#include "fixpoint/gadgets.hpp"
#include "fixpoint/gen.hpp"
#include "fixpoint/gf2.hpp"
#include "fixpoint/graph.hpp"
#include "fixpoint/io.hpp"
#include "fixpoint/minor.hpp"
#include "fixpoint/planar.hpp"
#include "fixpoint/post.hpp"
#include "fixpoint/rng.hpp"
#include "fixpoint/solve.hpp"
#include "fixpoint/system.hpp"
#include "fixpoint/treewidth.hpp"
