#include "diagprod/quadratic.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <vector>

namespace diagprod {

namespace {

long long checked_cast(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN)
    throw std::overflow_error("Rational: 64-bit overflow");
  return static_cast<long long>(v);
}

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational Rational::make(__int128 n, __int128 d) {
  if (d == 0) throw std::invalid_argument("Rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const __int128 g = n == 0 ? d : gcd128(n, d);
  Rational r;
  r.num_ = checked_cast(n / g);
  r.den_ = checked_cast(d / g);
  return r;
}

Rational::Rational(long long n, long long d) {
  *this = make(n, d);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::make(static_cast<__int128>(a.num_) * b.den_ +
                            static_cast<__int128>(b.num_) * a.den_,
                        static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::make(static_cast<__int128>(a.num_) * b.num_,
                        static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::invalid_argument("Rational: division by zero");
  return Rational::make(static_cast<__int128>(a.num_) * b.den_,
                        static_cast<__int128>(a.den_) * b.num_);
}

SquareFree square_free_part(long long n) {
  if (n == 0) throw std::invalid_argument("square_free_part: zero");
  SquareFree out{1, n < 0 ? -1 : 1};
  long long m = n < 0 ? -n : n;
  for (long long p = 2; p * p <= m; ++p) {
    while (m % (p * p) == 0) {
      m /= p * p;
      out.square_root *= p;
    }
  }
  out.free_part *= m;
  return out;
}

QuadVal::QuadVal(Rational x, Rational y, long long D) : x_(x), y_(y), D_(D) {
  if (y_.is_zero()) {
    D_ = 1;
    return;
  }
  if (D_ == 0) throw std::invalid_argument("QuadVal: D = 0");
  const auto sf = square_free_part(D_);
  if (sf.free_part == 1) {  // perfect square: fold into the rational part
    x_ += y_ * Rational(sf.square_root);
    y_ = Rational(0);
    D_ = 1;
    return;
  }
  y_ = y_ * Rational(sf.square_root);
  D_ = sf.free_part;
}

QuadVal operator+(const QuadVal& a, const QuadVal& b) {
  if (a.is_rational() || b.is_rational() || a.D_ == b.D_) {
    const long long D = a.is_rational() ? b.D_ : a.D_;
    return QuadVal(a.x_ + b.x_, a.y_ + b.y_, D);
  }
  throw std::invalid_argument("QuadVal: sum across different surds");
}

QuadVal operator-(const QuadVal& a, const QuadVal& b) { return a + (-b); }

QuadVal operator*(const QuadVal& a, const QuadVal& b) {
  if (a.is_rational() || b.is_rational() || a.D_ == b.D_) {
    const long long D = a.is_rational() ? b.D_ : a.D_;
    return QuadVal(a.x_ * b.x_ + a.y_ * b.y_ * Rational(a.is_rational() || b.is_rational() ? 0 : D),
                   a.x_ * b.y_ + a.y_ * b.x_, D);
  }
  throw std::invalid_argument("QuadVal: product across different surds (use QuadMix)");
}

QuadVal operator/(const QuadVal& a, const QuadVal& b) {
  if (b.is_zero()) throw std::invalid_argument("QuadVal: division by zero");
  if (b.is_rational())
    return QuadVal(a.x_ / b.x_, a.y_ / b.x_, a.D_);
  if (!a.is_rational() && a.D_ != b.D_)
    throw std::invalid_argument("QuadVal: division across different surds");
  // multiply by the conjugate of b within Q(sqrt(D))
  const QuadVal bc(b.x_, -b.y_, b.D_);
  const Rational nrm = b.x_ * b.x_ - b.y_ * b.y_ * Rational(b.D_);
  const QuadVal num = a * bc;
  return QuadVal(num.x_ / nrm, num.y_ / nrm, num.D_);
}

QuadVal QuadVal::conj() const {
  if (D_ < 0) return QuadVal(x_, -y_, D_);
  return *this;
}

QuadVal QuadVal::abs_sq() const {
  if (D_ < 0) return QuadVal(x_ * x_ - y_ * y_ * Rational(D_));
  return *this * *this;
}

namespace {

// minimal unsigned big natural, little-endian 64-bit limbs; used only by the
// exact sign/comparison routines, where squaring chains outgrow 128 bits
struct BigNat {
  std::vector<unsigned long long> w;

  static BigNat from_u128(unsigned __int128 v) {
    BigNat n;
    while (v) {
      n.w.push_back(static_cast<unsigned long long>(v));
      v >>= 64;
    }
    return n;
  }
};

BigNat mul(const BigNat& a, const BigNat& b) {
  if (a.w.empty() || b.w.empty()) return {};
  BigNat out;
  out.w.assign(a.w.size() + b.w.size(), 0);
  for (size_t i = 0; i < a.w.size(); ++i) {
    unsigned __int128 carry = 0;
    for (size_t j = 0; j < b.w.size(); ++j) {
      carry += static_cast<unsigned __int128>(a.w[i]) * b.w[j] + out.w[i + j];
      out.w[i + j] = static_cast<unsigned long long>(carry);
      carry >>= 64;
    }
    size_t k = i + b.w.size();
    while (carry) {
      carry += out.w[k];
      out.w[k++] = static_cast<unsigned long long>(carry);
      carry >>= 64;
    }
  }
  while (!out.w.empty() && out.w.back() == 0) out.w.pop_back();
  return out;
}

int cmp(const BigNat& a, const BigNat& b) {
  if (a.w.size() != b.w.size()) return a.w.size() < b.w.size() ? -1 : 1;
  for (size_t i = a.w.size(); i-- > 0;)
    if (a.w[i] != b.w[i]) return a.w[i] < b.w[i] ? -1 : 1;
  return 0;
}

// signed fraction on 128-bit parts, denominator positive, never reduced
struct Frac128 {
  __int128 num = 0;
  __int128 den = 1;

  static Frac128 of(const Rational& r) {
    return {static_cast<__int128>(r.num()), static_cast<__int128>(r.den())};
  }
  int sign() const { return num > 0 ? 1 : num < 0 ? -1 : 0; }
};

Frac128 sub(const Frac128& a, const Frac128& b) {
  // operands come from int64-backed rationals, so the products fit 128 bits
  return {a.num * b.den - b.num * a.den, a.den * b.den};
}

unsigned __int128 uabs(__int128 v) {
  return v < 0 ? -static_cast<unsigned __int128>(v)
               : static_cast<unsigned __int128>(v);
}

// sign of x + y sqrt(D), exact at any magnitude
int sign_with_surd(const Frac128& x, const Frac128& y, long long D) {
  const int sx = x.sign(), sy = y.sign();
  if (sy == 0) return sx;
  if (sx == 0) return sy;
  if (sx == sy) return sx;
  // opposite signs: compare x^2 against y^2 D, cross-multiplied
  const BigNat lhs = mul(mul(BigNat::from_u128(uabs(x.num)),
                             BigNat::from_u128(uabs(x.num))),
                         mul(BigNat::from_u128(uabs(y.den)),
                             BigNat::from_u128(uabs(y.den))));
  const BigNat rhs = mul(mul(mul(BigNat::from_u128(uabs(y.num)),
                                 BigNat::from_u128(uabs(y.num))),
                             BigNat::from_u128(static_cast<unsigned __int128>(D))),
                         mul(BigNat::from_u128(uabs(x.den)),
                             BigNat::from_u128(uabs(x.den))));
  const int c = cmp(lhs, rhs);
  if (c == 0) return 0;
  return c > 0 ? sx : sy;
}

}  // namespace

int QuadVal::sign() const {
  if (!is_real()) throw std::invalid_argument("QuadVal::sign: complex value");
  return sign_with_surd(Frac128::of(x_), Frac128::of(y_), D_);
}

namespace {

// signed big integer on top of BigNat; only what the comparator needs
struct BigInt {
  int sgn = 0;
  BigNat mag;

  static BigInt of(__int128 v) {
    BigInt b;
    b.sgn = v > 0 ? 1 : v < 0 ? -1 : 0;
    b.mag = BigNat::from_u128(uabs(v));
    return b;
  }
};

BigInt mul(const BigInt& a, const BigInt& b) {
  BigInt out;
  out.sgn = a.sgn * b.sgn;
  if (out.sgn) out.mag = mul(a.mag, b.mag);
  return out;
}

BigNat sub_abs(const BigNat& a, const BigNat& b) {  // requires a >= b
  BigNat out = a;
  long long borrow = 0;
  for (size_t i = 0; i < out.w.size(); ++i) {
    const unsigned long long sub_limb = i < b.w.size() ? b.w[i] : 0;
    unsigned __int128 cur = static_cast<unsigned __int128>(out.w[i]);
    cur -= sub_limb;
    cur -= borrow;
    out.w[i] = static_cast<unsigned long long>(cur);
    borrow = (cur >> 64) ? 1 : 0;  // wrapped below zero
  }
  while (!out.w.empty() && out.w.back() == 0) out.w.pop_back();
  return out;
}

BigNat add_abs(const BigNat& a, const BigNat& b) {
  BigNat out;
  const size_t n = std::max(a.w.size(), b.w.size());
  out.w.assign(n, 0);
  unsigned __int128 carry = 0;
  for (size_t i = 0; i < n; ++i) {
    carry += i < a.w.size() ? a.w[i] : 0;
    carry += i < b.w.size() ? b.w[i] : 0;
    out.w[i] = static_cast<unsigned long long>(carry);
    carry >>= 64;
  }
  if (carry) out.w.push_back(static_cast<unsigned long long>(carry));
  return out;
}

BigInt add(const BigInt& a, const BigInt& b) {
  if (a.sgn == 0) return b;
  if (b.sgn == 0) return a;
  BigInt out;
  if (a.sgn == b.sgn) {
    out.sgn = a.sgn;
    out.mag = add_abs(a.mag, b.mag);
    return out;
  }
  const int c = cmp(a.mag, b.mag);
  if (c == 0) return out;
  out.sgn = c > 0 ? a.sgn : b.sgn;
  out.mag = c > 0 ? sub_abs(a.mag, b.mag) : sub_abs(b.mag, a.mag);
  return out;
}

// sign of (NX/DX) + (NY/DY) sqrt(D) with big components, DX, DY > 0
int sign_with_surd_big(const BigInt& nx, const BigNat& dx, const BigInt& ny,
                       const BigNat& dy, long long D) {
  if (ny.sgn == 0) return nx.sgn;
  if (nx.sgn == 0) return ny.sgn;
  if (nx.sgn == ny.sgn) return nx.sgn;
  const BigNat lhs = mul(mul(nx.mag, nx.mag), mul(dy, dy));
  const BigNat rhs = mul(mul(mul(ny.mag, ny.mag),
                             BigNat::from_u128(static_cast<unsigned __int128>(D))),
                         mul(dx, dx));
  const int c = cmp(lhs, rhs);
  if (c == 0) return 0;
  return c > 0 ? nx.sgn : ny.sgn;
}

}  // namespace

int QuadVal::compare(const QuadVal& a, const QuadVal& b) {
  if (!a.is_real() || !b.is_real())
    throw std::invalid_argument("QuadVal::compare: complex value");
  if (a.is_rational() || b.is_rational() || a.D_ == b.D_) {
    const long long D = a.is_rational() ? b.D_ : a.D_;
    return sign_with_surd(sub(Frac128::of(a.x_), Frac128::of(b.x_)),
                          sub(Frac128::of(a.y_), Frac128::of(b.y_)), D);
  }
  // different surds: a - b = T - U with T = (x - x') + y sqrt(Da) in one
  // field and U = y' sqrt(Db); when T and U share a sign, the order of T^2
  // (still in the field of sqrt(Da)) against the rational U^2 settles it
  const Frac128 c = sub(Frac128::of(a.x_), Frac128::of(b.x_));
  const Frac128 y = Frac128::of(a.y_);
  const Frac128 yp = Frac128::of(b.y_);
  const int st = sign_with_surd(c, y, a.D_);
  const int su = yp.sign();
  if (st != su) return st < su ? -1 : (st > su ? 1 : 0);
  if (st == 0) return 0;
  // T^2 - U^2 = [c^2/cd^2 + y^2 Da/yd^2 - yp^2 Db/ypd^2] + [2cy/(cd yd)] sqrt(Da)
  // over the common denominator cd^2 yd^2 ypd^2; numerators leave 128 bits
  const BigNat cd2 = mul(BigNat::from_u128(uabs(c.den)), BigNat::from_u128(uabs(c.den)));
  const BigNat yd2 = mul(BigNat::from_u128(uabs(y.den)), BigNat::from_u128(uabs(y.den)));
  const BigNat ypd2 = mul(BigNat::from_u128(uabs(yp.den)), BigNat::from_u128(uabs(yp.den)));
  const BigInt da = BigInt::of(a.D_);
  const BigInt db = BigInt::of(b.D_);
  BigInt nx = mul(mul(BigInt::of(c.num), BigInt::of(c.num)), {1, mul(yd2, ypd2)});
  nx = add(nx, mul(mul(mul(BigInt::of(y.num), BigInt::of(y.num)), da),
                   {1, mul(cd2, ypd2)}));
  BigInt neg = mul(mul(mul(BigInt::of(yp.num), BigInt::of(yp.num)), db),
                   {1, mul(cd2, yd2)});
  neg.sgn = -neg.sgn;
  nx = add(nx, neg);
  const BigNat dxall = mul(mul(cd2, yd2), ypd2);
  const BigInt ny = mul(mul(BigInt::of(2), BigInt::of(c.num)), BigInt::of(y.num));
  const BigNat dyall = mul(BigNat::from_u128(uabs(c.den)), BigNat::from_u128(uabs(y.den)));
  const int s2 = sign_with_surd_big(nx, dxall, ny, dyall, a.D_);
  return st > 0 ? s2 : -s2;
}

std::complex<double> QuadVal::to_complex() const {
  const double xr = x_.to_double();
  if (D_ >= 1) return {xr + y_.to_double() * std::sqrt(static_cast<double>(D_)), 0.0};
  return {xr, y_.to_double() * std::sqrt(static_cast<double>(-D_))};
}

std::string QuadVal::to_string() const {
  if (is_rational()) return x_.to_string();
  std::ostringstream out;
  out << '(' << x_.to_string() << (y_.sign() < 0 ? "-" : "+")
      << (y_.sign() < 0 ? (-y_).to_string() : y_.to_string()) << "*sqrt("
      << D_ << "))";
  return out.str();
}

void QuadMix::add_term(long long D, const Rational& c) {
  if (c.is_zero()) return;
  auto it = coeff_.find(D);
  if (it == coeff_.end()) {
    coeff_.emplace(D, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) coeff_.erase(it);
}

void QuadMix::add(const QuadVal& v) {
  add_term(1, v.rational_part());
  if (!v.is_rational()) add_term(v.surd(), v.surd_coeff());
}

void QuadMix::add_product(const QuadVal& a, const QuadVal& b) {
  if (a.is_rational() || b.is_rational() || a.surd() == b.surd()) {
    add(a * b);
    return;
  }
  // (x + y sqrt(D))(x' + y' sqrt(D')) with D != D'
  add_term(1, a.rational_part() * b.rational_part());
  add_term(b.surd(), a.rational_part() * b.surd_coeff());
  add_term(a.surd(), a.surd_coeff() * b.rational_part());
  const auto sf = square_free_part(a.surd() * b.surd());
  add_term(sf.free_part,
           a.surd_coeff() * b.surd_coeff() * Rational(sf.square_root));
}

bool QuadMix::is_zero() const { return coeff_.empty(); }

Rational QuadMix::rational_part() const {
  auto it = coeff_.find(1);
  return it == coeff_.end() ? Rational(0) : it->second;
}

std::string QuadMix::to_string() const {
  if (coeff_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [D, c] : coeff_) {
    if (!first) out << " + ";
    out << c.to_string();
    if (D != 1) out << "*sqrt(" << D << ")";
    first = false;
  }
  return out.str();
}

}  // namespace diagprod
