#pragma once

#include "adsmass/clifford.hpp"
#include "adsmass/geometry.hpp"
#include "adsmass/killing_sets.hpp"
#include "adsmass/rest_mass.hpp"
#include "adsmass/so32.hpp"
#include "adsmass/spinor_preimage.hpp"
#include "adsmass/types.hpp"
