#pragma once

#include <gcea/benchmark.hpp>
#include <gcea/crossover.hpp>
#include <gcea/engine.hpp>
#include <gcea/error.hpp>
#include <gcea/genome.hpp>
#include <gcea/nk_io.hpp>
#include <gcea/nk_landscape.hpp>
#include <gcea/population.hpp>
#include <gcea/problem.hpp>
#include <gcea/random.hpp>
#include <gcea/stats.hpp>
