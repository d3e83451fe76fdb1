#pragma once

#include "rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace svlab {

struct IntervalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * One-sided-exact rational interval for a nonnegative invariant. The lower
 * endpoint may be strict (open), which encodes "positive but with no known
 * rational witness". A missing upper endpoint means +infinity.
 */
struct Interval {
    Rational lo = 0;
    bool lo_strict = false;
    std::optional<Rational> hi;  // nullopt = unbounded above

    static Interval unknown() { return Interval{}; }

    static Interval point(Rational value) {
        return Interval{value, false, value};
    }

    static Interval at_least(Rational value, bool strict = false) {
        return Interval{std::move(value), strict, std::nullopt};
    }

    bool empty() const {
        if (!hi) return false;
        if (lo > *hi) return true;
        return lo == *hi && lo_strict;
    }

    bool is_point() const { return hi && lo == *hi && !lo_strict; }

    bool bounded() const { return hi.has_value(); }

    /** Raises the lower endpoint; returns whether anything changed. */
    bool narrow_lo(const Rational& value, bool strict) {
        if (value > lo) {
            lo = value;
            lo_strict = strict;
            return true;
        }
        if (value == lo && strict && !lo_strict) {
            lo_strict = true;
            return true;
        }
        return false;
    }

    /** Lowers the upper endpoint; returns whether anything changed. */
    bool narrow_hi(const Rational& value) {
        if (!hi || value < *hi) {
            hi = value;
            return true;
        }
        return false;
    }

    /** Intersects with another interval; returns whether anything changed. */
    bool intersect(const Interval& other) {
        bool changed = narrow_lo(other.lo, other.lo_strict);
        if (other.hi) changed = narrow_hi(*other.hi) || changed;
        return changed;
    }

    friend bool operator==(const Interval& a, const Interval& b) {
        return a.lo == b.lo && a.lo_strict == b.lo_strict && a.hi == b.hi;
    }
};

inline Interval add(const Interval& a, const Interval& b) {
    Interval out;
    out.lo = a.lo + b.lo;
    out.lo_strict = a.lo_strict || b.lo_strict;
    if (a.hi && b.hi) out.hi = *a.hi + *b.hi;
    return out;
}

/** Scales by a positive rational constant. */
inline Interval scale(const Interval& interval, const Rational& factor) {
    if (factor <= 0) throw IntervalError("scale factor must be positive");
    Interval out;
    out.lo = interval.lo * factor;
    out.lo_strict = interval.lo_strict;
    if (interval.hi) out.hi = *interval.hi * factor;
    return out;
}

/**
 * Product of two nonnegative intervals. A point zero absorbs an unbounded
 * partner (the invariants modelled here are finite reals).
 */
inline Interval mul(const Interval& a, const Interval& b) {
    Interval out;
    out.lo = a.lo * b.lo;
    out.lo_strict = (a.lo_strict && (b.lo_strict || b.lo > 0)) ||
                    (b.lo_strict && (a.lo_strict || a.lo > 0));
    if (a.is_point() && a.lo == 0) return Interval::point(0);
    if (b.is_point() && b.lo == 0) return Interval::point(0);
    if (a.hi && b.hi) out.hi = *a.hi * *b.hi;
    return out;
}

inline std::string to_string(const Interval& interval) {
    std::string out = interval.lo_strict ? "(" : "[";
    out += to_string(interval.lo);
    out += ", ";
    out += interval.hi ? to_string(*interval.hi) : "inf";
    out += interval.hi ? "]" : ")";
    return out;
}

}  // namespace svlab
