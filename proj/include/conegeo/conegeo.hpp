// Umbrella header.
#pragma once

#include "conegeo/geometry.hpp"
#include "conegeo/horn.hpp"
#include "conegeo/mass.hpp"
#include "conegeo/modes.hpp"
#include "conegeo/numerics.hpp"
#include "conegeo/spectral.hpp"
#include "conegeo/weighted.hpp"
