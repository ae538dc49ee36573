#pragma once

#include "salpeter/error.hpp"
#include "salpeter/nu_engine.hpp"
#include "salpeter/oracle.hpp"
#include "salpeter/polynomial.hpp"
#include "salpeter/potentials.hpp"
#include "salpeter/quadrature.hpp"
#include "salpeter/special_functions.hpp"
#include "salpeter/spectra.hpp"
#include "salpeter/types.hpp"
#include "salpeter/wavefunctions.hpp"
