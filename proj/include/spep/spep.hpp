// Copyright (c) the spep contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "spep/bench.hpp"
#include "spep/classify.hpp"
#include "spep/common.hpp"
#include "spep/json_io.hpp"
#include "spep/linalg.hpp"
#include "spep/matrix_polynomial.hpp"
#include "spep/nullspace.hpp"
#include "spep/pep_solver.hpp"
#include "spep/problems.hpp"
#include "spep/projective.hpp"
#include "spep/qz.hpp"
#include "spep/random.hpp"
#include "spep/singular_methods.hpp"
