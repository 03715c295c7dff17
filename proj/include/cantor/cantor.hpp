#pragma once
// Umbrella header.

#include "exact.hpp"
#include "seqcore.hpp"
#include "digitstream.hpp"
#include "psi.hpp"
#include "normstats.hpp"
#include "foundry.hpp"
#include "fracdim.hpp"
#include "spec_json.hpp"
