#include "gcenter/field.hpp"

#include <numeric>
#include <stdexcept>

namespace gcenter {

namespace {

constexpr long long kInt64Max = 0x7fffffffffffffffLL;

long long checked_narrow(__int128 v) {
    if (v > static_cast<__int128>(kInt64Max) || v < -static_cast<__int128>(kInt64Max))
        throw std::overflow_error("rational arithmetic exceeded 64-bit range");
    return static_cast<long long>(v);
}

bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

long long mod_pow(long long base, long long exp, long long p) {
    long long acc = 1 % p;
    base %= p;
    while (exp > 0) {
        if (exp & 1) acc = checked_narrow(static_cast<__int128>(acc) * base % p);
        base = checked_narrow(static_cast<__int128>(base) * base % p);
        exp >>= 1;
    }
    return acc;
}

// Reduce num/den to lowest terms with den >= 1.
Scalar normalize_q(__int128 num, __int128 den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) { num = -num; den = -den; }
    if (num == 0) return {0, 1};
    __int128 a = num < 0 ? -num : num, b = den;
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    return {checked_narrow(num / a), checked_narrow(den / a)};
}

} // namespace

Field Field::fp(long long p) {
    if (!is_prime(p)) throw std::invalid_argument("field order must be prime: " + std::to_string(p));
    Field f;
    f.p_ = p;
    return f;
}

Field Field::rationals() { return Field{}; }

Field Field::parse_name(const std::string& name) {
    if (name == "q" || name == "Q") return rationals();
    if (name.size() >= 2 && (name[0] == 'f' || name[0] == 'F')) {
        long long p = 0;
        try {
            p = std::stoll(name.substr(1));
        } catch (const std::exception&) {
            throw std::invalid_argument("unrecognized field name: " + name);
        }
        return fp(p);
    }
    throw std::invalid_argument("unrecognized field name: " + name);
}

std::string Field::name() const {
    return is_fp() ? "f" + std::to_string(p_) : "q";
}

Scalar Field::one() const { return {1, 1}; }

Scalar Field::from_int(long long v) const {
    if (!is_fp()) return {v, 1};
    long long r = v % p_;
    if (r < 0) r += p_;
    return {r, 1};
}

Scalar Field::make_fraction(long long num, long long den) const {
    if (is_fp()) return div(from_int(num), from_int(den));
    return normalize_q(num, den);
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
    if (is_fp()) return from_int(a.num + b.num);
    return normalize_q(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                       static_cast<__int128>(a.den) * b.den);
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const { return add(a, neg(b)); }

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
    if (is_fp()) return {checked_narrow(static_cast<__int128>(a.num) * b.num % p_), 1};
    return normalize_q(static_cast<__int128>(a.num) * b.num,
                       static_cast<__int128>(a.den) * b.den);
}

Scalar Field::div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

Scalar Field::neg(const Scalar& a) const {
    if (is_fp()) return a.num == 0 ? a : Scalar{p_ - a.num, 1};
    return {-a.num, a.den};
}

Scalar Field::inv(const Scalar& a) const {
    if (is_zero(a)) throw std::domain_error("division by zero");
    if (is_fp()) return {mod_pow(a.num, p_ - 2, p_), 1};
    return normalize_q(a.den, a.num);
}

bool Field::is_one(const Scalar& a) const { return a.num == 1 && a.den == 1; }

bool Field::eq(const Scalar& a, const Scalar& b) const {
    return a.num == b.num && a.den == b.den;
}

std::string Field::to_string(const Scalar& a) const {
    if (a.den == 1) return std::to_string(a.num);
    return std::to_string(a.num) + "/" + std::to_string(a.den);
}

Scalar Field::parse(const std::string& text) const {
    auto slash = text.find('/');
    if (slash == std::string::npos) return from_int(std::stoll(text));
    return make_fraction(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
}

} // namespace gcenter
