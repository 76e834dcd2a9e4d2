#pragma once

#include <tourn/vertex_set.hpp>
#include <tourn/errors.hpp>
#include <tourn/tournament.hpp>
#include <tourn/canonical.hpp>
#include <tourn/solutions.hpp>
#include <tourn/domgraph.hpp>
#include <tourn/analysis.hpp>
#include <tourn/report.hpp>
