#pragma once

// Umbrella header: the whole library.

#include "tripal/analysis.hpp"
#include "tripal/cli.hpp"
#include "tripal/cnf.hpp"
#include "tripal/constructions.hpp"
#include "tripal/core.hpp"
#include "tripal/document.hpp"
#include "tripal/search.hpp"
