#pragma once

// Everything: groups and patterns, subshifts, the constructions, separated
// covering, certificates.

#include "group.hpp"
#include "pattern.hpp"
#include "configuration.hpp"
#include "language.hpp"
#include "subshift.hpp"
#include "smallness.hpp"
#include "irreducibility.hpp"
#include "block_map.hpp"
#include "phi.hpp"
#include "padding.hpp"
#include "shatter.hpp"
#include "gamma.hpp"
#include "scp.hpp"
#include "certificate.hpp"
#include "claims.hpp"
