#pragma once

#include "l0qp/cover.hpp"
#include "l0qp/decomp.hpp"
#include "l0qp/error.hpp"
#include "l0qp/fenchel.hpp"
#include "l0qp/generators.hpp"
#include "l0qp/instance.hpp"
#include "l0qp/io.hpp"
#include "l0qp/oracle.hpp"
#include "l0qp/rng.hpp"
#include "l0qp/tridiag.hpp"
