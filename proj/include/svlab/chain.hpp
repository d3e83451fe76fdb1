#pragma once

#include "complex.hpp"
#include "rational.hpp"
#include "simplex.hpp"

#include <map>
#include <stdexcept>

namespace svlab {

struct ChainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * Sparse simplicial chain with exact rational coefficients.
 *
 * Terms are kept canonical: keys are ascending vertex tuples, orientation
 * signs are absorbed into the coefficients, zero coefficients are erased.
 */
class Chain {
public:
    using Terms = std::map<VertexTuple, Rational>;

    explicit Chain(int degree) : degree_(degree) {
        if (degree < 0) throw ChainError("negative chain degree");
    }

    int degree() const { return degree_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    /** Adds coeff * tuple, canonicalizing the tuple's orientation. */
    void add(VertexTuple tuple, const Rational& coeff) {
        if (static_cast<int>(tuple.size()) != degree_ + 1)
            throw ChainError("term arity does not match chain degree");
        if (coeff == 0) return;
        auto [sorted, sign] = canonical(std::move(tuple));
        auto it = terms_.find(sorted);
        Rational value = sign > 0 ? coeff : Rational(-coeff);
        if (it == terms_.end()) {
            terms_.emplace(std::move(sorted), std::move(value));
        } else {
            it->second += value;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Rational coefficient(const VertexTuple& tuple) const {
        auto [sorted, sign] = canonical(tuple);
        auto it = terms_.find(sorted);
        if (it == terms_.end()) return Rational(0);
        return sign > 0 ? it->second : Rational(-it->second);
    }

    Chain& operator+=(const Chain& other) {
        if (other.degree_ != degree_) throw ChainError("degree mismatch in sum");
        for (const auto& [tuple, coeff] : other.terms_) {
            auto it = terms_.find(tuple);
            if (it == terms_.end()) {
                terms_.emplace(tuple, coeff);
            } else {
                it->second += coeff;
                if (it->second == 0) terms_.erase(it);
            }
        }
        return *this;
    }

    Chain& operator*=(const Rational& scalar) {
        if (scalar == 0) {
            terms_.clear();
        } else {
            for (auto& [tuple, coeff] : terms_) coeff *= scalar;
        }
        return *this;
    }

    friend Chain operator+(Chain lhs, const Chain& rhs) { return lhs += rhs; }
    friend Chain operator*(const Rational& s, Chain c) { return c *= s; }
    friend Chain operator-(Chain c) { return c *= Rational(-1); }
    friend Chain operator-(Chain lhs, const Chain& rhs) {
        Chain neg = rhs;
        neg *= Rational(-1);
        return lhs += neg;
    }
    friend bool operator==(const Chain& a, const Chain& b) {
        return a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

    bool integral() const {
        for (const auto& [tuple, coeff] : terms_)
            if (denominator(coeff) != 1) return false;
        return true;
    }

private:
    int degree_;
    Terms terms_;
};

/** l1 norm: sum of absolute values of the coefficients. */
inline Rational l1_norm(const Chain& chain) {
    Rational total = 0;
    for (const auto& [tuple, coeff] : chain.terms()) total += abs(coeff);
    return total;
}

/** Simplicial boundary. Every term must name a simplex of `host`. */
inline Chain boundary(const Complex& host, const Chain& chain) {
    if (chain.degree() == 0) return Chain(0);
    Chain result(chain.degree() - 1);
    for (const auto& [tuple, coeff] : chain.terms()) {
        if (!host.contains(tuple))
            throw ChainError("chain term is not a simplex of " + host.name());
        for (std::size_t i = 0; i < tuple.size(); ++i) {
            Rational face_coeff = (i % 2 == 0) ? coeff : Rational(-coeff);
            result.add(face_of(tuple, i), face_coeff);
        }
    }
    return result;
}

/** Boundary of one oriented facet, as a chain (no membership check). */
inline Chain tuple_boundary(const VertexTuple& tuple, const Rational& coeff) {
    if (tuple.size() <= 1) return Chain(0);
    Chain result(static_cast<int>(tuple.size()) - 2);
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        Rational face_coeff = (i % 2 == 0) ? coeff : Rational(-coeff);
        result.add(face_of(tuple, i), face_coeff);
    }
    return result;
}

}  // namespace svlab
