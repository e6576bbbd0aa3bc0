#ifndef WALD_WALD_HPP
#define WALD_WALD_HPP

#include "wald/hypothesis.hpp"
#include "wald/linalg.hpp"
#include "wald/statistics.hpp"
#include "wald/types.hpp"

#endif  // WALD_WALD_HPP
