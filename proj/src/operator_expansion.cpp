#include "ngt/operator_expansion.hpp"

#include "ngt/errors.hpp"

namespace ngt {

double rising_factorial(double m, long j) {
    double p = 1.0;
    for (long i = 0; i < j; ++i) p *= m + double(i);
    return p;
}

double falling_factorial(double m, long i) {
    double p = 1.0;
    for (long k = 0; k < i; ++k) p *= m - double(k);
    return p;
}

OperatorExpansion expand_operator(long j) {
    if (j < 1 || j > 64) throw SchemaError("expand_operator: j must be in [1, 64]");
    std::vector<double> row{1.0};  // j = 1: a_{1,1} = 1
    for (long cur = 1; cur < j; ++cur) {
        std::vector<double> next(std::size_t(cur) + 1, 0.0);
        for (long i = 1; i <= cur + 1; ++i) {
            double keep = (i <= cur) ? double(cur + i) * row[std::size_t(i - 1)] : 0.0;
            double carry = (i >= 2) ? row[std::size_t(i - 2)] : 0.0;
            next[std::size_t(i - 1)] = keep + carry;
        }
        row = std::move(next);
    }
    return OperatorExpansion{j, std::move(row)};
}

std::vector<std::string> expand_operator_exact(long j) {
    if (j < 1 || j > 24) throw SchemaError("expand_operator_exact: j must be in [1, 24]");
    using u128 = unsigned __int128;
    std::vector<u128> row{1};
    for (long cur = 1; cur < j; ++cur) {
        std::vector<u128> next(std::size_t(cur) + 1, 0);
        for (long i = 1; i <= cur + 1; ++i) {
            u128 keep = (i <= cur) ? u128(cur + i) * row[std::size_t(i - 1)] : 0;
            u128 carry = (i >= 2) ? row[std::size_t(i - 2)] : 0;
            next[std::size_t(i - 1)] = keep + carry;
        }
        row = std::move(next);
    }
    std::vector<std::string> out;
    out.reserve(row.size());
    for (u128 v : row) {
        std::string s;
        if (v == 0) s = "0";
        while (v > 0) {
            s.insert(s.begin(), char('0' + int(v % 10)));
            v /= 10;
        }
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace ngt
