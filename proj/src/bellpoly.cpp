#include "ridgelab/bellpoly.hpp"

#include <cmath>
#include <string>

#include "ridgelab/error.hpp"

namespace ridgelab {

namespace {

void check_arguments(std::span<const cdouble> c, int n) {
    if (n < 0) {
        throw ArgumentError("bell polynomial order must be non-negative");
    }
    if (n > kMaxBellOrder) {
        throw ArgumentError("bell polynomial order " + std::to_string(n) + " exceeds " +
                            std::to_string(kMaxBellOrder));
    }
    if (c.size() < static_cast<std::size_t>(n)) {
        throw ArgumentError("bell polynomial of order " + std::to_string(n) + " needs " +
                            std::to_string(n) + " arguments, got " + std::to_string(c.size()));
    }
    for (int k = 0; k < n; ++k) {
        if (!std::isfinite(c[k].real()) || !std::isfinite(c[k].imag())) {
            throw DomainError("bell polynomial argument c_" + std::to_string(k + 1) +
                              " is not finite");
        }
    }
}

}  // namespace

std::vector<cdouble> complete_bell_sequence(std::span<const cdouble> c, int n) {
    check_arguments(c, n);

    std::vector<cdouble> bell(static_cast<std::size_t>(n) + 1);
    bell[0] = 1.0;

    // Pascal row C(m, 0..m), advanced one row per order.
    std::vector<double> row{1.0};
    for (int m = 1; m <= n; ++m) {
        // row holds C(m-1, p)
        cdouble sum = 0.0;
        for (int p = 0; p < m; ++p) {
            sum += row[static_cast<std::size_t>(p)] * c[static_cast<std::size_t>(m - p - 1)] *
                   bell[static_cast<std::size_t>(p)];
        }
        bell[static_cast<std::size_t>(m)] = sum;

        std::vector<double> next(row.size() + 1, 1.0);
        for (std::size_t p = 1; p < row.size(); ++p) {
            next[p] = row[p - 1] + row[p];
        }
        row = std::move(next);
    }
    return bell;
}

cdouble complete_bell(std::span<const cdouble> c, int n) {
    return complete_bell_sequence(c, n).back();
}

}  // namespace ridgelab
