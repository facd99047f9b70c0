#pragma once

// Umbrella header.

#include "blocktype/algebra.hpp"
#include "blocktype/cohomology.hpp"
#include "blocktype/errors.hpp"
#include "blocktype/isomorphism.hpp"
#include "blocktype/linalg.hpp"
#include "blocktype/maps.hpp"
#include "blocktype/order.hpp"
#include "blocktype/parse.hpp"
#include "blocktype/rational.hpp"
