#pragma once

#include <doctest.h>

#include <memory>
#include <vector>

#include "algebroid/examples.hpp"

namespace fixtures {

using namespace algebroid;

inline AlgebraPtr shared(FiniteAlgebra a) { return std::make_shared<const FiniteAlgebra>(std::move(a)); }

/// Functions on k points with pointwise conjugation.
inline AlgebraPtr points(std::size_t k) { return shared(function_algebra(k).with_involution(Matrix::identity(k))); }

inline Matrix permutation(const std::vector<std::size_t>& image) {
    return Matrix::from_function(image.size(), image.size(),
                                 [&](std::size_t j) { return unit_vector(image.size(), image[j]); });
}

inline Matrix swap2() { return permutation({1, 0}); }

/// Rebuilds an algebroid after editing its raw data.
template <class Edit>
AlgebroidPtr edited(const Algebroid& m, Edit edit) {
    AlgebroidData d = m.data();
    edit(d);
    return make_algebroid(std::move(d));
}

inline Vector weights(long a, long b) { return Vector{Scalar(a), Scalar(b)}; }

inline AlgebroidPtr p2_functions() { return build_function_algebroid(pair_groupoid(2)); }
inline AlgebroidPtr p2_convolution() { return build_convolution_algebroid(pair_groupoid(2)); }
inline AlgebroidPtr z2_group_algebra() { return build_convolution_algebroid(group_groupoid(cyclic_group(2))); }
inline AlgebroidPtr f2_tensor() {
    return build_tensor_algebroid(points(2), points(2), Matrix::identity(2), Matrix::identity(2));
}

inline AlgebroidPtr f2_two_sided() {
    const FiniteHopf z2 = group_algebra_hopf(cyclic_group(2));
    return build_two_sided(points(2), z2, points(2), HopfAction{swap_action(z2), swap_action(z2)},
                           Matrix::identity(2), Matrix::identity(2));
}

inline AlgebroidPtr f2_crossed() {
    const FiniteHopf z2 = group_algebra_hopf(cyclic_group(2));
    return build_crossed_product(points(2), z2, swap_action(z2));
}

/// Reports failing entries through doctest before returning the verdict.
inline bool clean(const Report& r) {
    for (const auto& e : r.entries()) {
        if (!e.passed()) {
            MESSAGE(e.axiom << ": " << e.witness);
        }
    }
    return r.passed();
}

}  // namespace fixtures
