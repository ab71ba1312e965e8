#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

#include "dimlab/errors.hpp"

namespace dimlab {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational. Always reduced with positive denominator; arithmetic is
// arbitrary precision, so combinatorial predicates (>= s+gamma etc.) are
// decided exactly. Serialized as "num/den" ("3" is accepted on input as 3/1,
// non-reduced or zero-denominator strings are rejected).
class Rat {
public:
    Rat() : q_(0) {}
    Rat(long long n) : q_(n) {}  // NOLINT: implicit by design, mirrors integer literals
    Rat(long long num, long long den) {
        require(den != 0, "ValueOutOfRange", "rational with zero denominator");
        q_ = boost::multiprecision::cpp_rational(num, den);
    }
    explicit Rat(boost::multiprecision::cpp_rational q) : q_(std::move(q)) {}

    static Rat from_big(const BigInt& num, const BigInt& den) {
        require(den != 0, "ValueOutOfRange", "rational with zero denominator");
        return Rat(boost::multiprecision::cpp_rational(num, den));
    }

    BigInt num() const { return boost::multiprecision::numerator(q_); }
    BigInt den() const { return boost::multiprecision::denominator(q_); }

    Rat operator+(const Rat& o) const { return Rat(q_ + o.q_); }
    Rat operator-(const Rat& o) const { return Rat(q_ - o.q_); }
    Rat operator*(const Rat& o) const { return Rat(q_ * o.q_); }
    Rat operator/(const Rat& o) const {
        require(o.q_ != 0, "ValueOutOfRange", "division by zero");
        return Rat(q_ / o.q_);
    }
    Rat operator-() const { return Rat(-q_); }
    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }

    bool operator==(const Rat& o) const { return q_ == o.q_; }
    bool operator!=(const Rat& o) const { return q_ != o.q_; }
    bool operator<(const Rat& o) const { return q_ < o.q_; }
    bool operator<=(const Rat& o) const { return q_ <= o.q_; }
    bool operator>(const Rat& o) const { return q_ > o.q_; }
    bool operator>=(const Rat& o) const { return q_ >= o.q_; }

    Rat abs() const { return q_ < 0 ? Rat(-q_) : *this; }

    // floor(num/den) as a BigInt
    BigInt floor() const {
        BigInt n = num(), d = den();
        BigInt q = n / d;
        if (n % d != 0 && n < 0) --q;
        return q;
    }
    BigInt ceil() const {
        BigInt n = num(), d = den();
        BigInt q = n / d;
        if (n % d != 0 && n > 0) ++q;
        return q;
    }

    bool in_unit_interval() const { return q_ >= 0 && q_ <= 1; }

    double to_double() const { return q_.convert_to<double>(); }

    std::string str() const {
        return num().str() + "/" + den().str();
    }

    // Strict parser: "num" or "num/den", den > 0, already reduced.
    static Rat parse(const std::string& s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) {
                return Rat(boost::multiprecision::cpp_rational(BigInt(s)));
            }
            BigInt n(s.substr(0, slash));
            BigInt d(s.substr(slash + 1));
            require(d > 0, "ValueOutOfRange", "denominator must be positive in '" + s + "'");
            require(boost::multiprecision::gcd(boost::multiprecision::abs(n), d) == 1,
                    "ValueOutOfRange", "rational '" + s + "' is not reduced");
            return Rat(boost::multiprecision::cpp_rational(n, d));
        } catch (const Error&) {
            throw;
        } catch (const std::exception&) {
            fail("ValueOutOfRange", "cannot parse rational '" + s + "'");
        }
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

private:
    boost::multiprecision::cpp_rational q_;
};

inline Rat min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

} // namespace dimlab
