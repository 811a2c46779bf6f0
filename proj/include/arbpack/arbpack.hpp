#pragma once

// Umbrella header.

#include "arbpack/bitset.hpp"
#include "arbpack/connectivity.hpp"
#include "arbpack/error.hpp"
#include "arbpack/generator.hpp"
#include "arbpack/graph.hpp"
#include "arbpack/io.hpp"
#include "arbpack/lp.hpp"
#include "arbpack/matroid.hpp"
#include "arbpack/orientation.hpp"
#include "arbpack/packing.hpp"
#include "arbpack/polytope.hpp"
#include "arbpack/rational.hpp"
#include "arbpack/sfm.hpp"
