#pragma once

#include <stdexcept>
#include <string>

namespace skewdiv {

/// A prime modulus, verified by trial division at construction.
class Prime {
public:
    explicit Prime(long long value) : value_(value) {
        if (!is_prime(value))
            throw std::invalid_argument("p must be prime (got " + std::to_string(value) + ")");
    }

    long long value() const { return value_; }

    static bool is_prime(long long n) {
        if (n < 2) return false;
        if (n % 2 == 0) return n == 2;
        for (long long d = 3; d * d <= n; d += 2)
            if (n % d == 0) return false;
        return true;
    }

    friend bool operator==(const Prime& a, const Prime& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Prime& a, const Prime& b) { return a.value_ != b.value_; }

private:
    long long value_;
};

} // namespace skewdiv
