#pragma once

#include "hyperocta/errors.hpp"
#include "hyperocta/json_io.hpp"
#include "hyperocta/kunneth.hpp"
#include "hyperocta/numeric.hpp"
#include "hyperocta/octagen.hpp"
#include "hyperocta/rewriter.hpp"
#include "hyperocta/subsets.hpp"
#include "hyperocta/sympoly.hpp"
#include "hyperocta/zlattice.hpp"
