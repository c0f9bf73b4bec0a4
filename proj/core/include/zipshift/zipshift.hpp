#pragma once

#include "zipshift/codes.hpp"
#include "zipshift/errors.hpp"
#include "zipshift/graph.hpp"
#include "zipshift/horseshoe.hpp"
#include "zipshift/orbits.hpp"
#include "zipshift/point.hpp"
#include "zipshift/preimage.hpp"
#include "zipshift/rational.hpp"
#include "zipshift/space.hpp"
#include "zipshift/spec_io.hpp"
#include "zipshift/symbols.hpp"
