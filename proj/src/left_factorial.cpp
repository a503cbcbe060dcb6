#include "kurepa/left_factorial.hpp"

#include "kurepa/errors.hpp"

namespace kurepa {

ExactInteger left_factorial_exact(int n) {
    if (n < 0) throw DomainError("left_factorial_exact: requires n >= 0");
    ExactInteger sum = 0;
    ExactInteger factorial = 1;
    for (int i = 0; i < n; ++i) {
        if (i > 0) factorial *= i;
        sum += factorial;
    }
    return sum;
}

std::vector<ExactInteger> left_factorial_sequence(int n_max) {
    if (n_max < 0) throw DomainError("left_factorial_sequence: requires n_max >= 0");
    std::vector<ExactInteger> out;
    out.reserve(static_cast<size_t>(n_max) + 1);
    ExactInteger sum = 0;
    ExactInteger factorial = 1;
    out.push_back(sum);
    for (int i = 0; i < n_max; ++i) {
        if (i > 0) factorial *= i;
        sum += factorial;
        out.push_back(sum);
    }
    return out;
}

} // namespace kurepa
