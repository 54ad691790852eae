#pragma once

#include "msf/diffops.hpp"
#include "msf/group_geometry.hpp"
#include "msf/heisenberg.hpp"
#include "msf/numerics.hpp"
#include "msf/repr.hpp"
#include "msf/spherical_rn.hpp"
#include "msf/verifiers.hpp"
