#pragma once

#include "patchladder/analysis.hpp"
#include "patchladder/elements.hpp"
#include "patchladder/error.hpp"
#include "patchladder/fitting.hpp"
#include "patchladder/geometry.hpp"
#include "patchladder/io.hpp"
#include "patchladder/netlist.hpp"
#include "patchladder/network.hpp"
#include "patchladder/units.hpp"
#include "patchladder/version.hpp"
