#pragma once

#include "numbers.hpp"
#include "combinatorics.hpp"
#include "polynomial.hpp"
#include "ratfun.hpp"
#include "linalg.hpp"
#include "superring.hpp"
#include "frobenius.hpp"
#include "coinvariants.hpp"
#include "macdonald.hpp"
#include "cache.hpp"
#include "verifier.hpp"
#include "report.hpp"
