#pragma once

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "diagprod/perm.hpp"
#include "diagprod/quadratic.hpp"

namespace diagprod {

/// Partitions are non-increasing sequences of positive parts.
using Partition = std::vector<int>;

bool is_partition(const Partition& p);
int partition_size(const Partition& p);
std::vector<Partition> partitions_of(int n);
Partition conjugate_partition(const Partition& p);
bool self_conjugate(const Partition& p);
/// Diagonal hook lengths 2(p_i - i) + 1 along the Durfee square; for a
/// self-conjugate partition these are distinct odd numbers summing to n.
std::vector<int> diagonal_hooks(const Partition& p);
std::vector<int> hook_lengths(const Partition& p);
long long hook_dimension(const Partition& p);

std::string partition_key(const Partition& p);

/// Conjugacy-class bookkeeping for Sym(n): classes are cycle types, i.e.
/// partitions of n.
long long factorial(int n);
long long sym_class_size(const Partition& type);
int type_sign(const Partition& type);
Perm canonical_of_type(const Partition& type);  // consecutive cycles

/// Murnaghan-Nakayama: the exact irreducible Sym character value
/// chi^lambda at the class of cycle type mu, with shared memoization.
class CharacterEngine {
 public:
  long long mn_value(const Partition& lambda, const Partition& mu);
  long long dimension(const Partition& lambda);

 private:
  std::map<std::string, long long> memo_;
};

CharacterEngine& shared_engine();

/// One conjugacy class of Alt(n): the even cycle type, which half it is
/// when the Sym class splits (types with all parts odd and distinct), a
/// representative, and the Alt class size.
struct AltClass {
  Partition type;
  bool splits = false;
  int half = 0;  // 0 = distinguished class, 1 = its mate; 0 when non-split
  Perm rep;
  long long size = 0;
};

std::vector<AltClass> alt_classes(int n);

/// Whether an even permutation lies in the distinguished half of its split
/// class (conjugating permutation onto the canonical representative is even).
int split_half_of(const Perm& g);

/// Irreducible Alt(n) character: a restriction chi^lambda|Alt (lambda not
/// self-conjugate; lambda and its conjugate give the same one) or one of the
/// split pair chi^+/chi^- (lambda self-conjugate).
class AltChar {
 public:
  static std::vector<AltChar> all_irreducible(int n);
  /// The restriction, or the split pair, for one lambda.
  static std::vector<AltChar> restrict_to_alt(const Partition& lambda);

  int n() const { return n_; }
  const Partition& lambda() const { return lambda_; }
  bool split() const { return split_; }
  int sign() const { return split_sign_; }  // +1 / -1 within a split pair
  long long dim() const { return dim_; }
  bool trivial() const;
  std::string name() const;

  QuadVal value(const AltClass& c) const;
  QuadVal value(const Perm& g) const;
  QuadVal normalized(const AltClass& c) const;
  QuadVal normalized(const Perm& g) const;

 private:
  int n_ = 0;
  Partition lambda_;
  bool split_ = false;
  int split_sign_ = 0;
  long long dim_ = 0;
  int eps_ = 0;             // (-1)^((n-k)/2) for the split formula
  long long surd_rad_ = 0;  // eps * prod(diagonal hooks)
  Partition hook_type_;     // the split class type (diagonal hooks)
};

/// Largest |phi(class)| over all nontrivial irreducible normalized Alt(n)
/// characters, exact comparison; returns the value and a witness.
struct MaxCharValue {
  QuadVal abs_sq;  // |phi|^2, exact
  double abs_value;
  Partition witness_lambda;
  std::string witness_name;
};
MaxCharValue max_nontrivial_value(int n, const AltClass& c, int cap = 16);

/// Gram positive-definiteness: min eigenvalue of [f(g_j^-1 g_i)] >= -tol.
bool gram_psd_check(const std::vector<Perm>& sample,
                    const std::function<std::complex<double>(const Perm&)>& f,
                    double tol, double* min_eig = nullptr);

/// Tensor product of class functions on a product group, evaluated on
/// tuples: prod_i f_i(g_i).
std::complex<double> thoma_tensor(
    const std::vector<std::function<std::complex<double>(const Perm&)>>& fs,
    const std::vector<Perm>& tuple);

/// Trivial extension: f on the subgroup (membership predicate), 0 outside.
std::function<std::complex<double>(const Perm&)> trivial_extension(
    const std::function<bool(const Perm&)>& in_subgroup,
    const std::function<std::complex<double>(const Perm&)>& f);

/// Exact first-orthogonality checks; they throw on the first violation.
void check_sym_orthogonality(int n);
void check_alt_orthogonality(int n);

/// Full character tables as CSV (rows = characters, columns = classes).
std::string sym_table_csv(int n);
std::string alt_table_csv(int n);

}  // namespace diagprod
