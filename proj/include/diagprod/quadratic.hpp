#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace diagprod {

/// Exact rational on int64 with 128-bit intermediates; throws
/// std::overflow_error if a reduced value leaves the 64-bit range.
class Rational {
 public:
  Rational() = default;
  Rational(long long n) : num_(n), den_(1) {}
  Rational(long long n, long long d);

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_ > 0 ? 1 : num_ < 0 ? -1 : 0; }
  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }
  std::string to_string() const;

  Rational operator-() const { return Rational(-num_, den_); }
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  bool operator==(const Rational&) const = default;
  bool operator<(const Rational& o) const { return (*this - o).sign() < 0; }

 private:
  long long num_ = 0;
  long long den_ = 1;
  static Rational make(__int128 n, __int128 d);
};

/// Square-free part decomposition: n = s^2 * d with d square-free.
struct SquareFree {
  long long square_root;  // s
  long long free_part;    // d (carries the sign of n)
};
SquareFree square_free_part(long long n);

/// Exact value x + y*sqrt(D) with D square-free (D < 0 encodes the
/// imaginary branch: sqrt(D) = i sqrt(|D|)). D == 1 iff the value is
/// rational; then y == 0.
class QuadVal {
 public:
  QuadVal() = default;
  QuadVal(Rational r) : x_(r) {}
  QuadVal(long long n) : x_(Rational(n)) {}
  QuadVal(Rational x, Rational y, long long D);

  const Rational& rational_part() const { return x_; }
  const Rational& surd_coeff() const { return y_; }
  long long surd() const { return D_; }
  bool is_rational() const { return D_ == 1; }
  bool is_zero() const { return x_.is_zero() && y_.is_zero(); }
  bool is_real() const { return D_ >= 1; }

  QuadVal operator-() const { return QuadVal(-x_, -y_, D_); }
  friend QuadVal operator+(const QuadVal& a, const QuadVal& b);
  friend QuadVal operator-(const QuadVal& a, const QuadVal& b);
  friend QuadVal operator*(const QuadVal& a, const QuadVal& b);
  /// Division within the field Q(sqrt(D)); both operands must live there.
  friend QuadVal operator/(const QuadVal& a, const QuadVal& b);

  /// Complex conjugate (identity for real values).
  QuadVal conj() const;
  /// |v|^2, exact; rational for D < 0, possibly quadratic for D > 0.
  QuadVal abs_sq() const;
  /// Sign of a real value, exact.
  int sign() const;
  /// Exact comparison of real values across different fields.
  static int compare(const QuadVal& a, const QuadVal& b);

  std::complex<double> to_complex() const;
  std::string to_string() const;

  bool operator==(const QuadVal&) const = default;

 private:
  Rational x_;
  Rational y_;
  long long D_ = 1;
};

/// Exact finite sum r + sum_D c_D sqrt(D) over several square-free D; used
/// for orthogonality accumulations that mix different quadratic fields.
class QuadMix {
 public:
  void add(const QuadVal& v);
  void add_product(const QuadVal& a, const QuadVal& b);
  bool is_zero() const;
  Rational rational_part() const;
  std::string to_string() const;

 private:
  std::map<long long, Rational> coeff_;  // D -> coefficient, D = 1 rational
  void add_term(long long D, const Rational& c);
};

}  // namespace diagprod
