#pragma once

#include "qtorus/coeff.hpp"
#include "qtorus/commutation.hpp"
#include "qtorus/cyclotomic.hpp"
#include "qtorus/json_io.hpp"
#include "qtorus/lattice.hpp"
#include "qtorus/numeric.hpp"
#include "qtorus/oracle.hpp"
#include "qtorus/report.hpp"
#include "qtorus/series.hpp"
