#pragma once

#include "analytica/error.hpp"
#include "analytica/rational.hpp"
#include "analytica/interval.hpp"
#include "analytica/quadratic_surd.hpp"
#include "analytica/polynomial.hpp"
#include "analytica/set_catalog.hpp"
#include "analytica/poly_germs.hpp"
#include "analytica/expression.hpp"
#include "analytica/series.hpp"
#include "analytica/series_engine.hpp"
#include "analytica/rank.hpp"
#include "analytica/invariant_maps.hpp"
#include "analytica/upc.hpp"
#include "analytica/figures.hpp"
#include "analytica/json_io.hpp"
#include "analytica/registry.hpp"
