#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace svlab {

/** Ordered vertex tuple; orientation is the permutation parity of the tuple. */
using VertexTuple = std::vector<int>;

struct DegenerateSimplex : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** Parity of the permutation sorting `tuple` ascending: +1 even, -1 odd.
 *  Throws on repeated vertices. */
inline int sort_parity(VertexTuple& tuple) {
    int sign = 1;
    for (std::size_t i = 1; i < tuple.size(); ++i) {
        for (std::size_t j = i; j > 0 && tuple[j - 1] >= tuple[j]; --j) {
            if (tuple[j - 1] == tuple[j])
                throw DegenerateSimplex("repeated vertex in simplex");
            std::swap(tuple[j - 1], tuple[j]);
            sign = -sign;
        }
    }
    return sign;
}

/** Canonical form: ascending tuple plus the sign relating it to the input. */
inline std::pair<VertexTuple, int> canonical(VertexTuple tuple) {
    int sign = sort_parity(tuple);
    return {std::move(tuple), sign};
}

inline bool is_ascending(const VertexTuple& tuple) {
    return std::is_sorted(tuple.begin(), tuple.end(),
                          [](int a, int b) { return a <= b; }) &&
           std::adjacent_find(tuple.begin(), tuple.end()) == tuple.end();
}

/** The i-th codimension-1 face (vertex i dropped), order preserved. */
inline VertexTuple face_of(const VertexTuple& tuple, std::size_t i) {
    VertexTuple face;
    face.reserve(tuple.size() - 1);
    for (std::size_t j = 0; j < tuple.size(); ++j)
        if (j != i) face.push_back(tuple[j]);
    return face;
}

/** All faces of given dimension (ascending tuples) of one ascending simplex. */
inline void append_subfaces(const VertexTuple& simplex, int face_dim,
                            std::vector<VertexTuple>& out) {
    const int k = face_dim + 1;
    const int n = static_cast<int>(simplex.size());
    if (k > n || k <= 0) return;
    std::vector<int> pick(k);
    for (int i = 0; i < k; ++i) pick[i] = i;
    while (true) {
        VertexTuple face(k);
        for (int i = 0; i < k; ++i) face[i] = simplex[pick[i]];
        out.push_back(std::move(face));
        int i = k - 1;
        while (i >= 0 && pick[i] == n - k + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
}

}  // namespace svlab
