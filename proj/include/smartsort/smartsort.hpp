#pragma once

#include "smartsort/baselines.hpp"
#include "smartsort/counters.hpp"
#include "smartsort/experiment.hpp"
#include "smartsort/fit.hpp"
#include "smartsort/heap.hpp"
#include "smartsort/input_gen.hpp"
#include "smartsort/metrics.hpp"
#include "smartsort/partition.hpp"
#include "smartsort/smart_sort.hpp"
