// Umbrella header for the ilc library.
#pragma once

#include "ilc/bitstring.hpp"
#include "ilc/codec.hpp"
#include "ilc/coverfree.hpp"
#include "ilc/distinguisher.hpp"
#include "ilc/errors.hpp"
#include "ilc/gf2.hpp"
#include "ilc/isolation.hpp"
#include "ilc/language.hpp"
#include "ilc/seed_expander.hpp"
