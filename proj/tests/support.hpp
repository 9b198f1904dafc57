#pragma once

#include <complex>
#include <random>
#include <string>

#include "qgroupoid/algebra.hpp"
#include "qgroupoid/groupoid.hpp"

namespace testing {

using qgroupoid::Complex;

inline Complex random_complex(std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> n(0.0, scale);
    return {n(rng), n(rng)};
}

inline Complex random_integer_complex(std::mt19937_64& rng, int bound = 9) {
    std::uniform_int_distribution<int> u(-bound, bound);
    return {static_cast<double>(u(rng)), static_cast<double>(u(rng))};
}

inline qgroupoid::AlgebraElement random_element(const qgroupoid::GroupoidPtr& g, std::mt19937_64& rng,
                                                bool integer = false) {
    qgroupoid::AlgebraElement a(g);
    for (std::size_t i = 0; i < g->element_count(); ++i)
        a[qgroupoid::element_id(i)] = integer ? random_integer_complex(rng) : random_complex(rng);
    return a;
}

/// Coefficient matrix A[i][j] = a_{(xi,xj)} of an element of the pair groupoid, looked up by label.
inline Eigen::MatrixXcd pair_coefficients(const qgroupoid::AlgebraElement& a) {
    const auto& g = *a.groupoid();
    const auto n = static_cast<Eigen::Index>(g.outcome_count());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            m(i, j) = a.at("(x" + std::to_string(i + 1) + ",x" + std::to_string(j + 1) + ")");
    return m;
}

}  // namespace testing
