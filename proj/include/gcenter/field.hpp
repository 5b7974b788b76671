// Exact scalars: prime fields F_p and the rationals, selected at runtime.
// Rational arithmetic is int64-based with __int128 intermediates; anything
// that would leave int64 after reduction throws std::overflow_error.
#pragma once

#include <string>

namespace gcenter {

// For F_p: num in [0, p), den == 1.  For Q: num/den reduced, den >= 1.
// Representations are canonical, so valuewise equality is exact equality.
struct Scalar {
    long long num = 0;
    long long den = 1;

    bool operator==(const Scalar&) const = default;
};

class Field {
  public:
    static Field fp(long long p);
    static Field rationals();
    // Accepts "q", "f2", "f5", "f101", or general "f<p>" with p prime.
    static Field parse_name(const std::string& name);

    bool is_fp() const { return p_ != 0; }
    long long characteristic() const { return p_; }
    std::string name() const;

    Scalar zero() const { return {0, 1}; }
    Scalar one() const;
    Scalar from_int(long long v) const;
    Scalar make_fraction(long long num, long long den) const;

    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar sub(const Scalar& a, const Scalar& b) const;
    Scalar mul(const Scalar& a, const Scalar& b) const;
    Scalar div(const Scalar& a, const Scalar& b) const;
    Scalar neg(const Scalar& a) const;
    Scalar inv(const Scalar& a) const;

    bool is_zero(const Scalar& a) const { return a.num == 0; }
    bool is_one(const Scalar& a) const;
    bool eq(const Scalar& a, const Scalar& b) const;

    std::string to_string(const Scalar& a) const;
    Scalar parse(const std::string& text) const;

    bool operator==(const Field& other) const { return p_ == other.p_; }
    bool operator!=(const Field& other) const { return p_ != other.p_; }

  private:
    long long p_ = 0; // 0 means rationals
};

} // namespace gcenter
