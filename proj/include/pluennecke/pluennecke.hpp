#pragma once

#include "pluennecke/constructors.hpp"
#include "pluennecke/graph.hpp"
#include "pluennecke/inverse.hpp"
#include "pluennecke/io.hpp"
#include "pluennecke/join.hpp"
#include "pluennecke/magnification.hpp"
#include "pluennecke/matching.hpp"
#include "pluennecke/ratio.hpp"
#include "pluennecke/regular.hpp"
