#pragma once

#include "ellgreen/bernoulli.hpp"
#include "ellgreen/check_report.hpp"
#include "ellgreen/complex.hpp"
#include "ellgreen/elliptic.hpp"
#include "ellgreen/errors.hpp"
#include "ellgreen/green.hpp"
#include "ellgreen/lattice.hpp"
#include "ellgreen/mp_real.hpp"
#include "ellgreen/numerics.hpp"
#include "ellgreen/orderbound.hpp"
#include "ellgreen/rational.hpp"
#include "ellgreen/reckon.hpp"
#include "ellgreen/scalar.hpp"
