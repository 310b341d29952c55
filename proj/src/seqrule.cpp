#include "diagprod/seqrule.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace diagprod {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

long next_prime_geq(long n) {
  while (!is_prime(n)) ++n;
  return n;
}

SeqRule SeqRule::arith(long a, long b) {
  SeqRule r;
  r.kind_ = Kind::Arith;
  r.a_ = a;
  r.b_ = b;
  return r;
}

SeqRule SeqRule::constant(long c) {
  SeqRule r;
  r.kind_ = Kind::Const;
  r.a_ = c;
  return r;
}

SeqRule SeqRule::ident() {
  SeqRule r;
  r.kind_ = Kind::Ident;
  return r;
}

SeqRule SeqRule::primes_geq(long p) {
  SeqRule r;
  r.kind_ = Kind::PrimesGeq;
  r.a_ = p;
  return r;
}

SeqRule SeqRule::tower(long base) {
  if (base < 2) throw std::invalid_argument("SeqRule::tower: base must be >= 2");
  SeqRule r;
  r.kind_ = Kind::Tower;
  r.a_ = base;
  return r;
}

SeqRule SeqRule::list(std::vector<long> values) {
  if (values.empty()) throw std::invalid_argument("SeqRule::list: empty");
  SeqRule r;
  r.kind_ = Kind::List;
  r.values_ = std::move(values);
  return r;
}

SeqRule SeqRule::parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  std::vector<long> args;
  if (colon != std::string::npos) {
    std::istringstream in(text.substr(colon + 1));
    std::string tok;
    while (std::getline(in, tok, ',')) args.push_back(std::stol(tok));
  }
  if (name == "ident") return ident();
  if (name == "arith" && args.size() == 2) return arith(args[0], args[1]);
  if (name == "const" && args.size() == 1) return constant(args[0]);
  if (name == "primes-geq" && args.size() == 1) return primes_geq(args[0]);
  if (name == "tower" && args.size() == 1) return tower(args[0]);
  if (name == "list" && !args.empty()) return list(std::move(args));
  throw std::invalid_argument("SeqRule::parse: bad rule '" + text + "'");
}

long SeqRule::at(int n) const {
  if (n < 1) throw std::invalid_argument("SeqRule::at: n must be >= 1");
  switch (kind_) {
    case Kind::Arith:
      return a_ * n + b_;
    case Kind::Const:
      return a_;
    case Kind::Ident:
      return n;
    case Kind::PrimesGeq: {
      long p = next_prime_geq(a_);
      for (int i = 1; i < n; ++i) p = next_prime_geq(p + 1);
      return p;
    }
    case Kind::Tower: {
      long v = a_;
      for (int i = 1; i < n; ++i) {
        if (v > 3037000499L) throw std::overflow_error("SeqRule: tower overflow");
        v *= v;
      }
      return v;
    }
    case Kind::List: {
      const int len = static_cast<int>(values_.size());
      if (n <= len) return values_[n - 1];
      return values_.back() + 2L * (n - len);
    }
  }
  throw std::logic_error("SeqRule::at: unreachable");
}

double SeqRule::log_at(int n) const {
  if (kind_ == Kind::Tower)
    return std::ldexp(1.0, n - 1) * std::log(static_cast<double>(a_));
  return std::log(static_cast<double>(at(n)));
}

std::optional<int> SeqRule::eventually_at_least(long v) const {
  switch (kind_) {
    case Kind::Arith: {
      if (a_ <= 0) return (a_ == 0 && b_ >= v) ? std::optional<int>(1) : std::nullopt;
      long n = (v - b_ + a_ - 1) / a_;
      return static_cast<int>(std::max(1L, n));
    }
    case Kind::Const:
      return a_ >= v ? std::optional<int>(1) : std::nullopt;
    case Kind::Ident:
      return static_cast<int>(std::max(1L, v));
    case Kind::PrimesGeq: {
      // primes are strictly increasing; scan
      for (int n = 1;; ++n)
        if (at(n) >= v) return n;
    }
    case Kind::Tower: {
      for (int n = 1;; ++n) {
        if (log_at(n) >= std::log(static_cast<double>(std::max(v, 2L)))) return n;
        if (n > 64) return std::nullopt;  // unreachable for sane v
      }
    }
    case Kind::List: {
      // continuation grows by +2 per step, so a threshold always appears;
      // the explicit prefix need not be monotone, scan it fully
      const int len = static_cast<int>(values_.size());
      long last_violation = 0;
      for (int m = 1; m <= len; ++m)
        if (values_[m - 1] < v) last_violation = m;
      if (values_.back() < v) {
        const long j = (v - values_.back() + 1) / 2;  // first j with back+2j >= v
        last_violation = std::max(last_violation, len + j - 1);
      }
      return static_cast<int>(last_violation + 1);
    }
  }
  return std::nullopt;
}

bool SeqRule::strictly_increasing_prefix(int count) const {
  for (int n = 1; n < count; ++n)
    if (at(n) >= at(n + 1)) return false;
  return true;
}

std::string SeqRule::to_string() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::Arith:
      out << "arith:" << a_ << ',' << b_;
      break;
    case Kind::Const:
      out << "const:" << a_;
      break;
    case Kind::Ident:
      out << "ident";
      break;
    case Kind::PrimesGeq:
      out << "primes-geq:" << a_;
      break;
    case Kind::Tower:
      out << "tower:" << a_;
      break;
    case Kind::List: {
      out << "list:";
      for (size_t i = 0; i < values_.size(); ++i)
        out << (i ? "," : "") << values_[i];
      break;
    }
  }
  return out.str();
}

}  // namespace diagprod
