#pragma once

#include "sympeig/classify.hpp"
#include "sympeig/config.hpp"
#include "sympeig/errors.hpp"
#include "sympeig/expr.hpp"
#include "sympeig/interlacing.hpp"
#include "sympeig/linalg.hpp"
#include "sympeig/matrix.hpp"
#include "sympeig/models.hpp"
#include "sympeig/oracles.hpp"
#include "sympeig/rng.hpp"
#include "sympeig/symplectic.hpp"
