#pragma once

#include "glt/lattice.hpp"
#include "glt/merit.hpp"
#include "glt/periodization.hpp"
#include "glt/pinn.hpp"
#include "glt/quadrature_bench.hpp"
#include "glt/samplers.hpp"
#include "glt/sobol.hpp"
#include "glt/table.hpp"
#include "glt/version.hpp"
