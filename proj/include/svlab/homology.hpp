#pragma once

#include "chain.hpp"
#include "complex.hpp"
#include "snf.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace svlab {

/** Integral homology: Betti numbers and torsion coefficients per degree.
 *  Torsion lists are in divisibility order (d1 | d2 | ...). */
struct HomologyProfile {
    std::vector<long long> betti;
    std::map<int, std::vector<Int>> torsion;

    long long euler_characteristic() const {
        long long chi = 0;
        for (std::size_t k = 0; k < betti.size(); ++k)
            chi += (k % 2 == 0) ? betti[k] : -betti[k];
        return chi;
    }
};

namespace detail {

inline std::vector<VertexTuple> free_simplices(const Complex& complex, int k,
                                               const Complex* relative_to) {
    std::vector<VertexTuple> result;
    for (const auto& simplex : complex.simplices(k))
        if (!relative_to || !relative_to->contains(simplex))
            result.push_back(simplex);
    return result;
}

}  // namespace detail

/**
 * Matrix of the boundary map C_k -> C_{k-1} in the ascending-tuple bases.
 * If relative_to is given, simplices of the subcomplex are omitted from
 * both chain groups (quotient complex).
 */
inline IntMatrix boundary_matrix(const Complex& complex, int k,
                                 const Complex* relative_to = nullptr) {
    auto domain = detail::free_simplices(complex, k, relative_to);
    auto codomain = detail::free_simplices(complex, k - 1, relative_to);
    std::map<VertexTuple, int> row_of;
    for (std::size_t i = 0; i < codomain.size(); ++i)
        row_of.emplace(codomain[i], static_cast<int>(i));

    IntMatrix matrix(codomain.size(), std::vector<Int>(domain.size(), 0));
    for (std::size_t j = 0; j < domain.size(); ++j) {
        const auto& simplex = domain[j];
        for (std::size_t i = 0; i < simplex.size(); ++i) {
            auto it = row_of.find(face_of(simplex, i));
            if (it == row_of.end()) continue;
            matrix[it->second][j] += (i % 2 == 0) ? 1 : -1;
        }
    }
    return matrix;
}

/**
 * Integral homology of the complex, or of the pair (complex, relative_to),
 * via Smith normal form of the boundary matrices.
 */
inline HomologyProfile homology(const Complex& complex,
                                const Complex* relative_to = nullptr) {
    if (relative_to) {
        for (int k = 0; k <= relative_to->dim(); ++k)
            for (const auto& simplex : relative_to->simplices(k))
                if (!complex.contains(simplex))
                    throw InvalidComplex(relative_to->name() +
                                         " is not a subcomplex of " +
                                         complex.name());
    }

    const int dim = complex.dim();
    std::vector<long long> counts(dim + 2, 0);
    std::vector<int> ranks(dim + 2, 0);
    std::vector<std::vector<Int>> diagonals(dim + 2);
    for (int k = 0; k <= dim; ++k)
        counts[k] = static_cast<long long>(
            detail::free_simplices(complex, k, relative_to).size());
    for (int k = 1; k <= dim; ++k) {
        diagonals[k] = smith_diagonal(boundary_matrix(complex, k, relative_to));
        ranks[k] = static_cast<int>(diagonals[k].size());
    }

    HomologyProfile profile;
    profile.betti.resize(dim + 1, 0);
    for (int k = 0; k <= dim; ++k) {
        profile.betti[k] = counts[k] - ranks[k] - ranks[k + 1];
        std::vector<Int> torsion;
        for (const auto& d : diagonals[k + 1])
            if (d > 1) torsion.push_back(d);
        if (!torsion.empty()) profile.torsion.emplace(k, std::move(torsion));
    }
    return profile;
}

}  // namespace svlab
