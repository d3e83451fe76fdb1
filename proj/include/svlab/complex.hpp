#pragma once

#include "simplex.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace svlab {

struct InvalidComplex : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * Finite simplicial complex given by its top-dimensional facets.
 *
 * Facets are ordered vertex tuples; the tuple order encodes an orientation
 * of each facet (swapping two vertices flips it). The complex itself is the
 * downward closure of the facets, so it is pure by construction. Vertex
 * indices live in [0, vertex_count). Duplicate facets (as unordered sets)
 * are rejected: every cell of the complex is determined by its vertex set.
 */
class Complex {
public:
    Complex(std::string name, int dim, int vertex_count,
            std::vector<VertexTuple> facets)
        : name_(std::move(name)),
          dim_(dim),
          vertex_count_(vertex_count),
          facets_(std::move(facets)) {
        validate();
    }

    const std::string& name() const { return name_; }
    int dim() const { return dim_; }
    int vertex_count() const { return vertex_count_; }
    const std::vector<VertexTuple>& facets() const { return facets_; }
    std::size_t facet_count() const { return facets_.size(); }

    /** Ascending tuples of all k-simplices, sorted lexicographically. */
    const std::vector<VertexTuple>& simplices(int k) const {
        auto it = simplex_cache_.find(k);
        if (it != simplex_cache_.end()) return it->second;
        std::set<VertexTuple> found;
        if (k >= 0 && k <= dim_) {
            std::vector<VertexTuple> scratch;
            for (const auto& facet : facets_) {
                auto [sorted, sign] = canonical(facet);
                (void)sign;
                scratch.clear();
                append_subfaces(sorted, k, scratch);
                found.insert(scratch.begin(), scratch.end());
            }
        }
        auto [pos, inserted] = simplex_cache_.emplace(
            k, std::vector<VertexTuple>(found.begin(), found.end()));
        (void)inserted;
        return pos->second;
    }

    bool contains(const VertexTuple& ascending) const {
        if (ascending.empty()) return false;
        const auto& level = simplices(static_cast<int>(ascending.size()) - 1);
        return std::binary_search(level.begin(), level.end(), ascending);
    }

    /** Alternating sum of simplex counts over all degrees. */
    long long euler_characteristic() const {
        long long chi = 0;
        for (int k = 0; k <= dim_; ++k) {
            long long count = static_cast<long long>(simplices(k).size());
            chi += (k % 2 == 0) ? count : -count;
        }
        return chi;
    }

    /** Vertices actually used by some facet, ascending. */
    std::vector<int> support() const {
        std::set<int> used;
        for (const auto& facet : facets_) used.insert(facet.begin(), facet.end());
        return {used.begin(), used.end()};
    }

private:
    void validate() const {
        if (dim_ < 0) throw InvalidComplex(name_ + ": negative dimension");
        if (vertex_count_ <= 0)
            throw InvalidComplex(name_ + ": vertex_count must be positive");
        if (facets_.empty()) throw InvalidComplex(name_ + ": no facets");
        std::set<VertexTuple> seen;
        for (const auto& facet : facets_) {
            if (static_cast<int>(facet.size()) != dim_ + 1)
                throw InvalidComplex(name_ + ": facet arity != dim+1");
            for (int v : facet)
                if (v < 0 || v >= vertex_count_)
                    throw InvalidComplex(name_ + ": vertex index out of range");
            VertexTuple sorted;
            try {
                sorted = canonical(facet).first;
            } catch (const DegenerateSimplex&) {
                throw InvalidComplex(name_ + ": facet with repeated vertex");
            }
            if (!seen.insert(sorted).second)
                throw InvalidComplex(name_ + ": duplicate facet");
        }
    }

    std::string name_;
    int dim_;
    int vertex_count_;
    std::vector<VertexTuple> facets_;
    mutable std::map<int, std::vector<VertexTuple>> simplex_cache_;
};

}  // namespace svlab
