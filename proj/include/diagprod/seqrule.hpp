#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace diagprod {

/// Deterministic 1-indexed integer sequence rule. Named forms:
///   "arith:a,b"     -> a*n + b
///   "const:c"       -> c
///   "ident"         -> n
///   "primes-geq:p"  -> n-th prime >= p
///   "tower:b"       -> b^(2^(n-1))
///   "list:v1,v2,.." -> explicit values, continued by v_last + 2*(n - len)
/// at(n) throws std::overflow_error once values leave the int64 range
/// (tower rules); log_at(n) stays exact in log space for all n.
class SeqRule {
 public:
  SeqRule() = default;

  static SeqRule arith(long a, long b);
  static SeqRule constant(long c);
  static SeqRule ident();
  static SeqRule primes_geq(long p);
  static SeqRule tower(long base);
  static SeqRule list(std::vector<long> values);
  static SeqRule parse(const std::string& text);

  long at(int n) const;
  double log_at(int n) const;

  /// Smallest n0 such that at(m) >= v for every m >= n0, when the rule is
  /// eventually monotone enough to guarantee it; nullopt if never.
  std::optional<int> eventually_at_least(long v) const;

  bool strictly_increasing_prefix(int count) const;
  std::string to_string() const;

  bool operator==(const SeqRule&) const = default;

 private:
  enum class Kind { Arith, Const, Ident, PrimesGeq, Tower, List };
  Kind kind_ = Kind::Const;
  long a_ = 0, b_ = 0;
  std::vector<long> values_;
};

bool is_prime(long n);
long next_prime_geq(long n);

}  // namespace diagprod
