#pragma once

#include "finsemi/congruence.hpp"
#include "finsemi/endomorphism.hpp"
#include "finsemi/error.hpp"
#include "finsemi/inverse_system.hpp"
#include "finsemi/io.hpp"
#include "finsemi/limits.hpp"
#include "finsemi/morphism.hpp"
#include "finsemi/semigroup.hpp"
