#ifndef NGT_OPERATOR_EXPANSION_HPP
#define NGT_OPERATOR_EXPANSION_HPP

#include <string>
#include <vector>

namespace ngt {

// (w^2 d/dw)^j = sum_{i=1..j} a_{j,i} w^{j+i} (d/dw)^i.
// rows[i-1] holds a_{j,i}. Entries are integers; they are exact in double up
// to j = 18 and correctly rounded beyond (documented loss past 2^53).
struct OperatorExpansion {
    long j = 0;
    std::vector<double> rows;
};

OperatorExpansion expand_operator(long j);  // 1 <= j <= 64

// Exact decimal strings for the same row, 128-bit integer arithmetic
// (j <= 24); used to pin the floating rows down in tests.
std::vector<std::string> expand_operator_exact(long j);

// rising(m, j) = m (m+1) ... (m+j-1); rising(m, 0) = 1.
double rising_factorial(double m, long j);
// falling(m, i) = m (m-1) ... (m-i+1).
double falling_factorial(double m, long i);

} // namespace ngt

#endif
