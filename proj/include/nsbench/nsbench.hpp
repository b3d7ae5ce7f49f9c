#pragma once

#include "nsbench/error.hpp"
#include "nsbench/scalar.hpp"
#include "nsbench/var.hpp"
#include "nsbench/monomial.hpp"
#include "nsbench/polynomial.hpp"
#include "nsbench/linalg.hpp"
#include "nsbench/boolcube.hpp"
#include "nsbench/symmetric.hpp"
#include "nsbench/instances.hpp"
#include "nsbench/nullsatz.hpp"
#include "nsbench/dimension.hpp"
#include "nsbench/measures.hpp"
#include "nsbench/experiments.hpp"
