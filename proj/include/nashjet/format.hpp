#pragma once

// Canonical text form. Terms are printed in descending weighted-grevlex order
// (unit weights unless an explicit weight system is supplied), so output is
// reproducible byte-for-byte and re-parses to the identical polynomial.

#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "polynomial.hpp"

namespace nashjet {

// x, y, z, u, v for s <= 5; x1..xs otherwise
inline std::vector<std::string> variable_names(int nvars) {
    static const char* aliases[] = {"x", "y", "z", "u", "v"};
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(nvars));
    for (int i = 0; i < nvars; ++i) {
        if (nvars <= 5)
            names.emplace_back(aliases[i]);
        else
            names.push_back("x" + std::to_string(i + 1));
    }
    return names;
}

inline std::string monomial_to_string(const MultiIndex& m,
                                      const std::vector<std::string>& names) {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!first) os << '*';
        os << names[static_cast<std::size_t>(i)];
        if (m[i] > 1) os << '^' << m[i];
        first = false;
    }
    return os.str();
}

inline std::string to_string(const Polynomial& f, const WeightSystem* display_weights = nullptr) {
    if (f.is_zero()) return "0";
    MonomialOrder order = display_weights ? MonomialOrder(*display_weights)
                                          : MonomialOrder::grevlex(f.nvars());
    std::vector<const Term*> terms;
    terms.reserve(f.term_count());
    for (const Term& t : f.terms()) terms.push_back(&t);
    std::sort(terms.begin(), terms.end(), [&](const Term* a, const Term* b) {
        return order.greater(a->monomial, b->monomial);
    });

    auto names = variable_names(f.nvars());
    std::ostringstream os;
    bool first = true;
    for (const Term* t : terms) {
        Rational c = t->coefficient;
        bool negative = c < 0;
        if (negative) c = -c;
        if (first) {
            if (negative) os << '-';
        } else {
            os << (negative ? " - " : " + ");
        }
        std::string mono = monomial_to_string(t->monomial, names);
        if (mono.empty()) {
            os << rational_to_string(c);
        } else {
            if (c != 1) os << rational_to_string(c) << '*';
            os << mono;
        }
        first = false;
    }
    return os.str();
}

}  // namespace nashjet
