#pragma once
// Shared plumbing: error types, deterministic RNG, exact rationals.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace advtk {

// Thrown on malformed inputs / violated preconditions (CLI exit code 2).
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& m) : std::runtime_error(m) {}
};

// Thrown when a verification step fails (CLI exit code 1).
struct VerifyError : std::runtime_error {
    explicit VerifyError(const std::string& m) : std::runtime_error(m) {}
};

// Thrown when a configured resource cap is exceeded (CLI exit code 3).
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& m) : std::runtime_error(m) {}
};

// splitmix64: tiny, portable, fully deterministic across platforms.
struct Rng {
    uint64_t state;
    explicit Rng(uint64_t seed) : state(seed) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0,1)
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }
    // uniform integer in [0, m)
    uint64_t below(uint64_t m) { return next() % m; }
};

// Exact rational on int64 with normalized sign and gcd-reduced terms.
// Overflow in intermediate products is checked via __int128.
struct Rat {
    long long num = 0;
    long long den = 1;

    Rat() = default;
    Rat(long long n) : num(n), den(1) {}
    Rat(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw UsageError("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    static long long checked(__int128 v) {
        if (v > __int128(INT64_MAX) || v < __int128(INT64_MIN))
            throw CapExceeded("rational arithmetic overflow");
        return (long long)v;
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat(checked(__int128(a.num) * b.den + __int128(b.num) * a.den),
                   checked(__int128(a.den) * b.den));
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return Rat(checked(__int128(a.num) * b.den - __int128(b.num) * a.den),
                   checked(__int128(a.den) * b.den));
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return Rat(checked(__int128(a.num) * b.num), checked(__int128(a.den) * b.den));
    }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.num == 0) throw UsageError("rational division by zero");
        return Rat(checked(__int128(a.num) * b.den), checked(__int128(a.den) * b.num));
    }
    friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }

    double to_double() const { return double(num) / double(den); }
    std::string str() const {
        return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
    }
};

// Parses "123", "-7", "a/b" or a decimal literal into a double; rationals are
// converted exactly when representable.
double parse_number(const std::string& s);

// Parses "a/b" or integer strings into an exact rational; throws UsageError on
// decimals that are not integers.
Rat parse_rational(const std::string& s);

} // namespace advtk
