#pragma once

#include <fracint/core.hpp>
#include <fracint/error.hpp>
#include <fracint/eval.hpp>
#include <fracint/expr.hpp>
#include <fracint/flip.hpp>
#include <fracint/grid.hpp>
#include <fracint/integral.hpp>
#include <fracint/quadrature.hpp>
#include <fracint/config.hpp>
#include <fracint/plot.hpp>
#include <fracint/verify.hpp>
