#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "multi_index.hpp"

namespace nashjet {

// Positive integer weights w with the weighted-degree functional m -> m . w.
class WeightSystem {
public:
    explicit WeightSystem(std::vector<int> w) : w_(std::move(w)) {
        if (w_.empty()) throw std::invalid_argument("weight vector must be non-empty");
        for (int v : w_)
            if (v < 1) throw std::invalid_argument("weights must be positive integers");
    }

    static WeightSystem ones(int nvars) {
        return WeightSystem(std::vector<int>(static_cast<std::size_t>(nvars), 1));
    }

    int size() const { return static_cast<int>(w_.size()); }
    int operator[](int i) const { return w_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& weights() const { return w_; }

    long degree(const MultiIndex& m) const {
        if (m.size() != size()) throw std::invalid_argument("weight/multi-index dimension mismatch");
        long t = 0;
        for (int i = 0; i < size(); ++i) t += static_cast<long>(w_[static_cast<std::size_t>(i)]) * m[i];
        return t;
    }

    int max_weight() const { return *std::max_element(w_.begin(), w_.end()); }
    int min_weight() const { return *std::min_element(w_.begin(), w_.end()); }

    friend bool operator==(const WeightSystem& a, const WeightSystem& b) { return a.w_ == b.w_; }
    friend bool operator!=(const WeightSystem& a, const WeightSystem& b) { return !(a == b); }

private:
    std::vector<int> w_;
};

}  // namespace nashjet
