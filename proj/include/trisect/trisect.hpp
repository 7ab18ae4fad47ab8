#pragma once

// Umbrella header.

#include "trisect/ac.hpp"
#include "trisect/io.hpp"
#include "trisect/kirby.hpp"
#include "trisect/moves.hpp"
#include "trisect/replay.hpp"
#include "trisect/version.hpp"
