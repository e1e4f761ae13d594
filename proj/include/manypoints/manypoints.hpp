#pragma once

#include "manypoints/error.hpp"
#include "manypoints/gf.hpp"
#include "manypoints/linalg.hpp"
#include "manypoints/curves.hpp"
#include "manypoints/zeta.hpp"
#include "manypoints/picard.hpp"
#include "manypoints/abelian.hpp"
#include "manypoints/subgroups.hpp"
#include "manypoints/tables.hpp"
#include "manypoints/cft.hpp"
#include "manypoints/serre.hpp"
