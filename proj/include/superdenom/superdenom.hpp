// Umbrella header.
#pragma once

#include "lattice.hpp"
#include "root_system.hpp"
#include "weyl_group.hpp"
#include "simple_system.hpp"
#include "diagram.hpp"
#include "series.hpp"
#include "denominator.hpp"
#include "io.hpp"
#include "cli.hpp"
