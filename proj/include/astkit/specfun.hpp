// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "astkit/specfun/bessel.hpp"
#include "astkit/specfun/expint.hpp"
#include "astkit/specfun/gamma.hpp"
#include "astkit/specfun/struve.hpp"
