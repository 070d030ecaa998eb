#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace satsched {

/// Arbitrary-precision rational kept in canonical form (gcd(|num|, den) = 1, den > 0).
///
/// Thin value wrapper around GMP's mpq_class so that expression templates never
/// leak into `auto` deductions and every result is canonicalized.
class Rational {
public:
	Rational() = default;
	Rational(long value) : v_(value) {}  // NOLINT(google-explicit-constructor)
	Rational(int value) : v_(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)
	Rational(long num, long den);
	explicit Rational(mpq_class value) : v_(std::move(value)) { v_.canonicalize(); }

	/// Parses "p/q", an integer, or a plain decimal such as "-1.25".
	static Rational parse(std::string_view text);

	/// "p/q", or "p" when the denominator is one.
	std::string str() const;
	double to_double() const { return v_.get_d(); }

	mpz_class num() const { return v_.get_num(); }
	mpz_class den() const { return v_.get_den(); }
	const mpq_class& raw() const { return v_; }

	bool is_zero() const { return sgn(v_) == 0; }
	int sign() const { return sgn(v_); }

	/// Smallest integer >= this value.
	mpz_class ceil() const;
	mpz_class floor() const;

	Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
	Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
	Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
	Rational& operator/=(const Rational& o);

	friend Rational operator+(Rational a, const Rational& b) { return a += b; }
	friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
	friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
	friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
	friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

	friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
	friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
		const int c = cmp(a.v_, b.v_);
		return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
	}

	friend std::ostream& operator<<(std::ostream& os, const Rational& r);

private:
	mpq_class v_{0};
};

using Time = Rational;

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Best rational approximation of sqrt(n) from its continued-fraction convergents:
/// the first convergent whose relative error is below `rel_tol`.
Rational sqrt_convergent(unsigned n, double rel_tol = 1e-6);

/// Decimal rendering with `digits` significant digits, for human-facing output only.
std::string to_decimal(const Rational& r, int digits = 15);

}  // namespace satsched
