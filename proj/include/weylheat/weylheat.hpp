#pragma once

// Umbrella header.

#include "weylheat/checks.hpp"
#include "weylheat/dd.hpp"
#include "weylheat/dihedral.hpp"
#include "weylheat/estimate.hpp"
#include "weylheat/gauss.hpp"
#include "weylheat/linalg.hpp"
#include "weylheat/orthogonal.hpp"
#include "weylheat/pde.hpp"
#include "weylheat/profiles.hpp"
#include "weylheat/report.hpp"
#include "weylheat/root_system.hpp"
#include "weylheat/series.hpp"
