#pragma once

#include "ratseries/errors.hpp"
#include "ratseries/expr.hpp"
#include "ratseries/format.hpp"
#include "ratseries/hadamard.hpp"
#include "ratseries/hw.hpp"
#include "ratseries/oracle.hpp"
#include "ratseries/scalar.hpp"
#include "ratseries/series.hpp"
