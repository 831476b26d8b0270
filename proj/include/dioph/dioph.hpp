#pragma once

#include "dioph/compiler.hpp"
#include "dioph/constructions.hpp"
#include "dioph/format.hpp"
#include "dioph/integer.hpp"
#include "dioph/pell.hpp"
#include "dioph/polynomial.hpp"
#include "dioph/propagation.hpp"
#include "dioph/relations.hpp"
#include "dioph/search.hpp"
#include "dioph/system.hpp"
