#pragma once

// Umbrella header.

#include "ratmod/cli.hpp"
#include "ratmod/conic.hpp"
#include "ratmod/field.hpp"
#include "ratmod/invariants2.hpp"
#include "ratmod/invariants3.hpp"
#include "ratmod/io.hpp"
#include "ratmod/moduli.hpp"
#include "ratmod/multipoly.hpp"
#include "ratmod/rational_map.hpp"
#include "ratmod/reconstruct.hpp"
