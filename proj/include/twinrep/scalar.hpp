#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstdint>
#include <regex>
#include <stdexcept>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>

namespace twinrep {

// =============================================================================
// Errors
// =============================================================================

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical precondition was violated (b = 0, a = 1 where forbidden,
/// division by zero, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// =============================================================================
// Tolerance
// =============================================================================

inline constexpr double kDefaultEps = 1e-9;

/// Zero/equality threshold for the floating-point backend. Ignored by the
/// exact backend.
struct Tolerance {
  double eps = kDefaultEps;

  /// Process-wide default; the CLI overrides it from TWINREP_EPS.
  static Tolerance standard() { return Tolerance{global().load()}; }

  static void set_standard(double eps) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
      throw DomainError("tolerance must be a positive finite number");
    }
    global().store(eps);
  }

 private:
  static std::atomic<double>& global() {
    static std::atomic<double> value{kDefaultEps};
    return value;
  }
};

// =============================================================================
// Exact backend: Gaussian rationals p/q + (r/s) i
// =============================================================================

class GaussianRational {
 public:
  static constexpr bool is_exact = true;
  static constexpr std::string_view backend_name = "exact";

  GaussianRational() = default;

  template <std::integral I>
  GaussianRational(I value) : re_(static_cast<long>(value)) {}  // NOLINT

  GaussianRational(mpq_class re, mpq_class im = 0)  // NOLINT
      : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussianRational rational(long num, long den) {
    if (den == 0) throw DomainError("zero denominator");
    return GaussianRational(mpq_class(num, den));
  }

  static GaussianRational i() { return GaussianRational(0, 1); }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }

  /// |x|^2, exact.
  mpq_class norm() const { return mpq_class(re_ * re_ + im_ * im_); }

  GaussianRational conj() const { return {re_, mpq_class(-im_)}; }

  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussianRational operator-() const { return {mpq_class(-re_), mpq_class(-im_)}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    mpq_class re = re_ * o.re_ - im_ * o.im_;
    mpq_class im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    if (sgn(o.im_) == 0) {
      re_ /= o.re_;
      im_ /= o.re_;
      return *this;
    }
    mpq_class n = o.norm();
    mpq_class re = (re_ * o.re_ + im_ * o.im_) / n;
    mpq_class im = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational x, const GaussianRational& y) { return x += y; }
  friend GaussianRational operator-(GaussianRational x, const GaussianRational& y) { return x -= y; }
  friend GaussianRational operator*(GaussianRational x, const GaussianRational& y) { return x *= y; }
  friend GaussianRational operator/(GaussianRational x, const GaussianRational& y) { return x /= y; }

  friend bool operator==(const GaussianRational& x, const GaussianRational& y) {
    return x.re_ == y.re_ && x.im_ == y.im_;
  }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

// =============================================================================
// Float backend: complex double compared under a tolerance
// =============================================================================

class ComplexFloat {
 public:
  static constexpr bool is_exact = false;
  static constexpr std::string_view backend_name = "float";

  ComplexFloat() = default;

  template <std::integral I>
  ComplexFloat(I value) : z_(static_cast<double>(value), 0.0) {}  // NOLINT

  ComplexFloat(double re, double im = 0.0) : z_(re, im) {}  // NOLINT
  explicit ComplexFloat(std::complex<double> z) : z_(z) {}
  explicit ComplexFloat(const GaussianRational& x) : z_(x.to_complex()) {}

  static ComplexFloat i() { return ComplexFloat(0.0, 1.0); }

  double re() const { return z_.real(); }
  double im() const { return z_.imag(); }
  double abs() const { return std::abs(z_); }
  std::complex<double> to_complex() const { return z_; }

  ComplexFloat conj() const { return ComplexFloat(std::conj(z_)); }
  ComplexFloat operator-() const { return ComplexFloat(-z_); }

  ComplexFloat& operator+=(const ComplexFloat& o) { z_ += o.z_; return *this; }
  ComplexFloat& operator-=(const ComplexFloat& o) { z_ -= o.z_; return *this; }
  ComplexFloat& operator*=(const ComplexFloat& o) { z_ *= o.z_; return *this; }
  ComplexFloat& operator/=(const ComplexFloat& o) {
    if (o.abs() <= Tolerance::standard().eps) {
      throw DomainError("division by a float scalar within tolerance of zero");
    }
    z_ /= o.z_;
    return *this;
  }

  friend ComplexFloat operator+(ComplexFloat x, const ComplexFloat& y) { return x += y; }
  friend ComplexFloat operator-(ComplexFloat x, const ComplexFloat& y) { return x -= y; }
  friend ComplexFloat operator*(ComplexFloat x, const ComplexFloat& y) { return x *= y; }
  friend ComplexFloat operator/(ComplexFloat x, const ComplexFloat& y) { return x /= y; }

  /// Tolerance equality |x-y| <= eps * max(1, |x|, |y|) at the standard eps.
  friend bool operator==(const ComplexFloat& x, const ComplexFloat& y);

  /// Bitwise comparison, for serialization round trips.
  bool identical(const ComplexFloat& o) const {
    return std::bit_cast<std::uint64_t>(re()) == std::bit_cast<std::uint64_t>(o.re()) &&
           std::bit_cast<std::uint64_t>(im()) == std::bit_cast<std::uint64_t>(o.im());
  }

 private:
  std::complex<double> z_{0.0, 0.0};
};

// =============================================================================
// Backend-generic comparison helpers
// =============================================================================

inline bool is_zero(const GaussianRational& x, Tolerance = {}) { return x.is_zero(); }
inline bool is_zero(const ComplexFloat& x, Tolerance tol = Tolerance::standard()) {
  return x.abs() <= tol.eps;
}

inline bool approx_equal(const GaussianRational& x, const GaussianRational& y, Tolerance = {}) {
  return x == y;
}
inline bool approx_equal(const ComplexFloat& x, const ComplexFloat& y,
                         Tolerance tol = Tolerance::standard()) {
  const double scale = std::max({1.0, x.abs(), y.abs()});
  return std::abs(x.to_complex() - y.to_complex()) <= tol.eps * scale;
}

inline bool operator==(const ComplexFloat& x, const ComplexFloat& y) {
  return approx_equal(x, y, Tolerance::standard());
}

/// Magnitude used for pivot selection and diagnostics.
inline double magnitude(const GaussianRational& x) { return std::abs(x.to_complex()); }
inline double magnitude(const ComplexFloat& x) { return x.abs(); }

template <class F>
concept Scalar = requires(const F& x, const F& y, Tolerance tol) {
  { x + y } -> std::same_as<F>;
  { x - y } -> std::same_as<F>;
  { x * y } -> std::same_as<F>;
  { x / y } -> std::same_as<F>;
  { -x } -> std::same_as<F>;
  { is_zero(x, tol) } -> std::same_as<bool>;
  { approx_equal(x, y, tol) } -> std::same_as<bool>;
  { magnitude(x) } -> std::convertible_to<double>;
  { x.to_complex() } -> std::same_as<std::complex<double>>;
  { F::i() } -> std::same_as<F>;
  { F::is_exact } -> std::convertible_to<bool>;
};

/// x^e for any integer e; negative exponents require x != 0.
template <Scalar F>
F ipow(const F& x, int e) {
  if (e < 0) return F(1) / ipow(x, -e);
  F result(1);
  F base = x;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

/// Converts between backends. Exact -> float rounds; float -> exact is refused.
template <Scalar To, Scalar From>
To scalar_cast(const From& x) {
  if constexpr (std::same_as<To, From>) {
    return x;
  } else if constexpr (To::is_exact) {
    static_assert(!To::is_exact || From::is_exact, "cannot convert a float scalar to exact");
  } else {
    return To(x.to_complex());
  }
}

// =============================================================================
// Text format
//   EXACT := INT "/" POSINT ("+"|"-") INT "/" POSINT "*i"
//   FLOAT := DECIMAL ("+"|"-") DECIMAL "i"
// Shorthands accepted on input: "p", "p/q" (exact reals).
// =============================================================================

using AnyScalar = std::variant<GaussianRational, ComplexFloat>;

namespace detail {

inline mpq_class make_rational(const std::string& num, const std::string& den) {
  mpz_class q(den, 10);
  if (q == 0) throw ParseError("zero denominator in '" + num + "/" + den + "'");
  mpq_class r(mpz_class(num, 10), q);
  r.canonicalize();
  return r;
}

inline std::string strip_plus(std::string s) {
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  return s;
}

inline double parse_double(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) throw ParseError("malformed decimal '" + text + "'");
  return value;
}

inline std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw Error("cannot format double");
  return std::string(buf, ptr);
}

inline std::string format_rational(const mpq_class& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace detail

inline AnyScalar parse_scalar(std::string_view text) {
  static const std::regex exact_re(R"(^([+-]?\d+)/(\d+)([+-])([+-]?\d+)/(\d+)\*i$)");
  static const std::regex rational_re(R"(^([+-]?\d+)(?:/(\d+))?$)");
  static const std::regex float_re(
      R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)([+-])((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i$)");
  static const std::regex real_re(R"(^[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?$)");

  const std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, exact_re)) {
    mpq_class re = detail::make_rational(detail::strip_plus(m[1]), m[2]);
    mpq_class im = detail::make_rational(detail::strip_plus(m[4]), m[5]);
    if (m[3] == "-") im = -im;
    return GaussianRational(re, im);
  }
  if (std::regex_match(s, m, rational_re)) {
    const std::string den = m[2].matched ? std::string(m[2]) : std::string("1");
    return GaussianRational(detail::make_rational(detail::strip_plus(m[1]), den));
  }
  if (std::regex_match(s, m, float_re)) {
    double re = detail::parse_double(m[1]);
    double im = detail::parse_double(m[3]);
    if (m[2] == "-") im = -im;
    return ComplexFloat(re, im);
  }
  if (std::regex_match(s, real_re)) {
    return ComplexFloat(detail::parse_double(s), 0.0);
  }
  throw ParseError("malformed scalar '" + s + "'");
}

inline std::string format_scalar(const GaussianRational& x) {
  const bool negative_im = sgn(x.im()) < 0;
  return detail::format_rational(x.re()) + (negative_im ? "-" : "+") +
         detail::format_rational(negative_im ? mpq_class(-x.im()) : x.im()) + "*i";
}

inline std::string format_scalar(const ComplexFloat& x) {
  const bool negative_im = std::signbit(x.im());
  return detail::format_double(x.re()) + (negative_im ? "-" : "+") +
         detail::format_double(std::abs(x.im())) + "i";
}

inline std::string format_scalar(const AnyScalar& x) {
  return std::visit([](const auto& v) { return format_scalar(v); }, x);
}

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& x) { return os << format_scalar(x); }
inline std::ostream& operator<<(std::ostream& os, const ComplexFloat& x) { return os << format_scalar(x); }

/// Exact value of a decimal literal such as "-0.25" or "3e2".
inline mpq_class parse_decimal_exact(std::string_view text) {
  static const std::regex dec_re(R"(^([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?$)");
  const std::string s(text);
  std::smatch m;
  if (s.empty() || !std::regex_match(s, m, dec_re) || (m[2].length() == 0 && m[3].length() == 0)) {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      return detail::make_rational(detail::strip_plus(s.substr(0, slash)), s.substr(slash + 1));
    }
    throw ParseError("malformed decimal '" + s + "'");
  }
  std::string digits = std::string(m[2]) + std::string(m[3]);
  if (digits.empty()) digits = "0";
  long exponent = m[4].matched ? std::stol(m[4]) : 0;
  exponent -= static_cast<long>(m[3].length());
  mpz_class num(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  mpq_class r = exponent >= 0 ? mpq_class(num * scale) : mpq_class(num, scale);
  r.canonicalize();
  if (m[1] == "-") r = -r;
  return r;
}

}  // namespace twinrep
