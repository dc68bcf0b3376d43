#pragma once

// Weighted-degree-then-reverse-lex monomial order. With positive weights this
// is a genuine monomial order (total, multiplicative, 1 minimal), so Buchberger
// terminates and reductions of weighted homogeneous inputs stay homogeneous.

#include "weights.hpp"

namespace nashjet {

struct MonomialOrder {
    WeightSystem weights;

    explicit MonomialOrder(WeightSystem w) : weights(std::move(w)) {}

    static MonomialOrder grevlex(int nvars) { return MonomialOrder(WeightSystem::ones(nvars)); }

    bool less(const MultiIndex& a, const MultiIndex& b) const {
        long da = weights.degree(a), db = weights.degree(b);
        if (da != db) return da < db;
        for (int i = a.size() - 1; i >= 0; --i)
            if (a[i] != b[i]) return a[i] > b[i];
        return false;
    }

    bool greater(const MultiIndex& a, const MultiIndex& b) const { return less(b, a); }

    friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
        return a.weights == b.weights;
    }
};

}  // namespace nashjet
