#pragma once

// Exact field scalars: arbitrary-precision rationals and prime fields with a
// runtime modulus.  Everything downstream is templated on the scalar type K
// together with a FieldCtx<K> that can manufacture constants; for rationals
// the context is stateless, for F_p it carries the modulus.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hwcat {

/// Arbitrary-precision rational, a thin value wrapper around mpq_class.
/// The wrapper keeps gmp's expression templates out of generic code and
/// guarantees canonical form after every operation.
class Rat {
public:
    Rat() : v_(0) {}
    explicit Rat(long n) : v_(n) {}
    Rat(long num, long den) : v_(num, den) {
        if (den == 0) throw std::invalid_argument("Rat: zero denominator");
        v_.canonicalize();
    }
    explicit Rat(const mpq_class& v) : v_(v) { v_.canonicalize(); }
    explicit Rat(const std::string& s) : v_(s) { v_.canonicalize(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat operator+(const Rat& o) const { return Rat(mpq_class(v_ + o.v_)); }
    Rat operator-(const Rat& o) const { return Rat(mpq_class(v_ - o.v_)); }
    Rat operator*(const Rat& o) const { return Rat(mpq_class(v_ * o.v_)); }
    Rat operator/(const Rat& o) const {
        if (o.is_zero()) throw std::domain_error("Rat: division by zero");
        return Rat(mpq_class(v_ / o.v_));
    }
    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }

    Rat inv() const {
        if (is_zero()) throw std::domain_error("Rat: inverse of zero");
        return Rat(mpq_class(1 / v_));
    }

    bool operator==(const Rat& o) const { return v_ == o.v_; }
    bool operator!=(const Rat& o) const { return v_ != o.v_; }

    const mpq_class& value() const { return v_; }
    std::string str() const { return v_.get_str(); }

private:
    mpq_class v_;
};

/// Element of F_p for a runtime prime p, stored reduced.  A default-built
/// value has p == 0 and denotes the zero scalar of "any" prime field; it
/// binds to a concrete modulus on first contact with a bound operand.  Only
/// zero is ever unbound, so arithmetic stays unambiguous.
class Fp {
public:
    Fp() : v_(0), p_(0) {}
    Fp(std::uint64_t v, std::uint64_t p) : v_(0), p_(p) {
        if (p == 0) throw std::invalid_argument("Fp: modulus must be positive");
        v_ = v % p;
    }
    static Fp from_signed(long long v, std::uint64_t p) {
        if (p == 0) throw std::invalid_argument("Fp: modulus must be positive");
        long long r = v % static_cast<long long>(p);
        if (r < 0) r += static_cast<long long>(p);
        return Fp(static_cast<std::uint64_t>(r), p);
    }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    std::uint64_t residue() const { return v_; }
    std::uint64_t modulus() const { return p_; }

    Fp operator-() const {
        if (v_ == 0) return *this;
        return Fp(p_ - v_, p_);
    }
    Fp operator+(const Fp& o) const {
        std::uint64_t p = join(o);
        if (p == 0) return Fp();
        return Fp((v_ % p + o.v_ % p) % p, p);
    }
    Fp operator-(const Fp& o) const { return *this + (-o); }
    Fp operator*(const Fp& o) const {
        std::uint64_t p = join(o);
        if (p == 0) return Fp();
        using u128 = unsigned __int128;
        return Fp(static_cast<std::uint64_t>((u128(v_ % p) * u128(o.v_ % p)) % p), p);
    }
    Fp operator/(const Fp& o) const { return *this * o.inv(); }
    Fp& operator+=(const Fp& o) { *this = *this + o; return *this; }
    Fp& operator-=(const Fp& o) { *this = *this - o; return *this; }
    Fp& operator*=(const Fp& o) { *this = *this * o; return *this; }

    Fp inv() const {
        if (v_ == 0) throw std::domain_error("Fp: inverse of zero");
        // extended Euclid on (v, p)
        long long a = static_cast<long long>(v_), m = static_cast<long long>(p_);
        long long x0 = 1, x1 = 0, r0 = a, r1 = m;
        while (r1 != 0) {
            long long q = r0 / r1;
            long long r2 = r0 - q * r1; r0 = r1; r1 = r2;
            long long x2 = x0 - q * x1; x0 = x1; x1 = x2;
        }
        if (r0 != 1) throw std::domain_error("Fp: modulus not prime (gcd != 1)");
        long long x = x0 % m; if (x < 0) x += m;
        return Fp(static_cast<std::uint64_t>(x), p_);
    }

    bool operator==(const Fp& o) const {
        if (v_ != o.v_) return false;
        return p_ == o.p_ || p_ == 0 || o.p_ == 0;
    }
    bool operator!=(const Fp& o) const { return !(*this == o); }

    std::string str() const { return std::to_string(v_); }

private:
    // common modulus of two operands; 0 when both are unbound zeros
    std::uint64_t join(const Fp& o) const {
        if (p_ != 0 && o.p_ != 0 && p_ != o.p_)
            throw std::domain_error("Fp: mixed moduli " + std::to_string(p_) + " and " +
                                    std::to_string(o.p_));
        return p_ != 0 ? p_ : o.p_;
    }

    std::uint64_t v_, p_;
};

/// Constant factory for a scalar type.  Carries whatever runtime state the
/// field needs (nothing for Q, the modulus for F_p).
template <class K>
struct FieldCtx;

template <>
struct FieldCtx<Rat> {
    Rat zero() const { return Rat(); }
    Rat one() const { return Rat(1); }
    Rat from_long(long n) const { return Rat(n); }
    Rat from_ratio(long num, long den) const { return Rat(num, den); }
    std::uint64_t characteristic() const { return 0; }
    std::string describe() const { return "q"; }
    bool operator==(const FieldCtx&) const { return true; }
};

template <>
struct FieldCtx<Fp> {
    std::uint64_t p = 0;

    Fp zero() const { return Fp(0, p); }
    Fp one() const { return Fp(1, p); }
    Fp from_long(long n) const { return Fp::from_signed(n, p); }
    Fp from_ratio(long num, long den) const {
        return Fp::from_signed(num, p) * Fp::from_signed(den, p).inv();
    }
    std::uint64_t characteristic() const { return p; }
    std::string describe() const { return "fp:" + std::to_string(p); }
    bool operator==(const FieldCtx& o) const { return p == o.p; }
};

inline std::string show(const Rat& x) { return x.str(); }
inline std::string show(const Fp& x) { return x.str(); }

} // namespace hwcat
