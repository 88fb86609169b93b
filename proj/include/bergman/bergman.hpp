#pragma once

#include "bergman/core.hpp"
#include "bergman/gauss_jacobi.hpp"
#include "bergman/fft.hpp"
#include "bergman/geometry.hpp"
#include "bergman/functions.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/kernels.hpp"
#include "bergman/spaces.hpp"
#include "bergman/families.hpp"
#include "bergman/operators.hpp"
#include "bergman/report.hpp"
#include "bergman/verifiers.hpp"
#include "bergman/experiments.hpp"
#include "bergman/checks.hpp"
#include "bergman/cli.hpp"
