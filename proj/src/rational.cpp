#include "satsched/rational.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace satsched {

Rational::Rational(long num, long den) {
	if (den == 0) throw std::invalid_argument("rational with zero denominator");
	v_ = mpq_class(num, den);
	v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
	if (o.is_zero()) throw std::domain_error("rational division by zero");
	v_ /= o.v_;
	return *this;
}

namespace {

bool all_digits(std::string_view s) {
	if (s.empty()) return false;
	for (char c : s)
		if (c < '0' || c > '9') return false;
	return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
	bool negative = false;
	if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
		negative = s.front() == '-';
		s.remove_prefix(1);
	}
	if (!all_digits(s)) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
	mpz_class z(std::string(s), 10);
	return negative ? mpz_class(-z) : z;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
	while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
	while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
	if (text.empty()) throw std::invalid_argument("empty rational");

	if (const auto slash = text.find('/'); slash != std::string_view::npos) {
		const mpz_class num = parse_integer(text.substr(0, slash), text);
		const std::string_view den_text = text.substr(slash + 1);
		if (!all_digits(den_text)) throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
		const mpz_class den(std::string(den_text), 10);
		if (den == 0) throw std::invalid_argument("rational with zero denominator: '" + std::string(text) + "'");
		return Rational(mpq_class(num, den));
	}

	if (const auto dot = text.find('.'); dot != std::string_view::npos) {
		std::string_view int_part = text.substr(0, dot);
		const std::string_view frac_part = text.substr(dot + 1);
		bool negative = false;
		if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
			negative = int_part.front() == '-';
			int_part.remove_prefix(1);
		}
		if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
		    (!frac_part.empty() && !all_digits(frac_part)))
			throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
		mpz_class scale = 1;
		mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac_part.size());
		mpz_class num = int_part.empty() ? mpz_class(0) : mpz_class(std::string(int_part), 10);
		num *= scale;
		if (!frac_part.empty()) num += mpz_class(std::string(frac_part), 10);
		if (negative) num = -num;
		return Rational(mpq_class(num, scale));
	}

	return Rational(mpq_class(parse_integer(text, text)));
}

std::string Rational::str() const {
	if (v_.get_den() == 1) return v_.get_num().get_str();
	return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

mpz_class Rational::ceil() const {
	mpz_class q;
	mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
	return q;
}

mpz_class Rational::floor() const {
	mpz_class q;
	mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
	return q;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational sqrt_convergent(unsigned n, double rel_tol) {
	const auto root = static_cast<unsigned long>(std::sqrt(static_cast<double>(n)));
	unsigned long a0 = root;
	while ((a0 + 1) * (a0 + 1) <= n) ++a0;
	while (a0 * a0 > n) --a0;
	if (a0 * a0 == n) return Rational(static_cast<long>(a0));

	// Periodic continued fraction of sqrt(n): m_{k+1} = d_k a_k - m_k, d_{k+1} = (n - m_{k+1}^2) / d_k.
	const double target = std::sqrt(static_cast<double>(n));
	mpz_class h_prev = 1, h = a0, k_prev = 0, k = 1;
	unsigned long m = 0, d = 1, a = a0;
	for (int iter = 0; iter < 200; ++iter) {
		const Rational approx(mpq_class(h, k));
		if (std::abs(approx.to_double() - target) / target < rel_tol) return approx;
		m = d * a - m;
		d = (n - m * m) / d;
		a = (a0 + m) / d;
		mpz_class h_next = a * h + h_prev;
		mpz_class k_next = a * k + k_prev;
		h_prev = h;
		h = h_next;
		k_prev = k;
		k = k_next;
	}
	throw std::runtime_error("sqrt_convergent did not reach the requested tolerance");
}

std::string to_decimal(const Rational& r, int digits) {
	char buf[64];
	std::snprintf(buf, sizeof buf, "%.*g", digits, r.to_double());
	return buf;
}

}  // namespace satsched
