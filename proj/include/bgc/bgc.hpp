#pragma once

#include "bgc/anneal.hpp"
#include "bgc/canonical.hpp"
#include "bgc/core.hpp"
#include "bgc/estimate.hpp"
#include "bgc/fixtures.hpp"
#include "bgc/parallel.hpp"
#include "bgc/queue.hpp"
#include "bgc/random.hpp"
#include "bgc/search.hpp"
#include "bgc/stacks.hpp"
