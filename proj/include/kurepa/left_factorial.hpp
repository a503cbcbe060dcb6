#pragma once

#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace kurepa {

using ExactInteger = boost::multiprecision::mpz_int;

/// K(n) = 0! + 1! + ... + (n-1)!, exactly. K(0) = 0 (empty sum).
ExactInteger left_factorial_exact(int n);

/// K(0), K(1), ..., K(n_max).
std::vector<ExactInteger> left_factorial_sequence(int n_max);

} // namespace kurepa
