#pragma once
// Umbrella header for the qwalk library.

#include "walk.hpp"
#include "equivalence.hpp"
#include "encoding.hpp"
#include "circuit.hpp"
#include "qsim.hpp"
#include "synthesis.hpp"
