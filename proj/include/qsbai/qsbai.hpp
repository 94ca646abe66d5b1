#pragma once

// Umbrella header.

#include "qsbai/analysis.hpp"
#include "qsbai/config.hpp"
#include "qsbai/environment.hpp"
#include "qsbai/errors.hpp"
#include "qsbai/graph.hpp"
#include "qsbai/runner.hpp"
#include "qsbai/walk.hpp"
