#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "diagprod/basegroups.hpp"
#include "diagprod/perm.hpp"
#include "diagprod/seqrule.hpp"

namespace diagprod {

/// Raised when no multiplicativity horizon can be certified for a requested
/// word length within the configured levels.
struct HorizonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using BaseElement = std::variant<LampElement, AZElement>;

bool base_is_identity(const BaseElement& e);
BaseElement base_mul(const BaseElement& a, const BaseElement& b);
BaseElement base_inv(const BaseElement& a);
std::string base_key(const BaseElement& e);
std::string base_to_string(const BaseElement& e);

/// Parameters of a diagonal product over Alt(d(n)): the base LEF group, the
/// level sequences, and how many coordinates elements materialize.
///
/// Level certificates: level m is multiplicative for word budget B iff
///   A(Z) base:       d(m) >= 4B + 1,
///   lamplighter:     r(m) >= 4B + 1 and d(m) - 2 r(m) >= 4B + 1.
/// Products of two budget-B/2 elements then evaluate exactly through theta,
/// and theta is injective on the corresponding extent window.
class DiagSpec {
 public:
  static DiagSpec classical(SeqRule d, int desk_levels);
  /// admissibility_promise declares that the intended infinite family
  /// satisfies n <= r(n) <= d(n)/3 (Bradford condition (a)); it is validated
  /// on the materialized prefix and extends certificates past it.
  static DiagSpec lamplighter(SeqRule d, SeqRule r, int desk_levels,
                              bool admissibility_promise);

  BaseKind base() const { return base_; }
  int levels() const { return desk_levels_; }
  long d_at(int n) const { return d_.at(n); }
  long r_at(int n) const { return r_.at(n); }
  const SeqRule& d_rule() const { return d_; }
  const SeqRule& r_rule() const { return r_; }
  bool admissibility_promise() const { return promise_; }

  std::vector<std::string> gen_labels() const;
  BaseElement base_identity() const;
  /// Base-group generator, 0-indexed: 0 = shift generator, 1 = lamp/3-cycle.
  BaseElement base_gen(int which) const;

  /// theta_m applied to a base element (m may exceed desk levels).
  Perm theta(int m, const BaseElement& g) const;
  /// theta_m image of a generator.
  Perm gen_image(int m, int which) const;

  bool level_certified(int m, long budget) const;
  /// Smallest n0 such that every level m >= n0 (continuation included) is
  /// certified at this budget; nullopt when the continuation cannot be
  /// certified (lamplighter without the admissibility promise).
  std::optional<int> certified_from(long budget) const;

  std::string to_string() const;

 private:
  BaseKind base_ = BaseKind::ClassicalAZ;
  SeqRule d_;
  SeqRule r_;
  int desk_levels_ = 0;
  bool promise_ = false;

  void validate() const;
};

/// Words over the marked generators: letters are alphabet indices in the
/// fixed order (g1, g2, g1^-1, g2^-1).
using Word = std::vector<int>;

Word word_inverse(const Word& w);
std::string word_to_string(const Word& w, const std::vector<std::string>& labels);
Word parse_word(const std::string& text, const std::vector<std::string>& labels);

/// Element of the diagonal product, stored as its exact base-group tail plus
/// explicit coordinates at every desk level; `budget` bounds the word length
/// it was assembled from, which drives the multiplicativity certificates.
struct DiagElement {
  BaseElement tail;
  std::vector<Perm> coords;
  long budget = 0;

  bool operator==(const DiagElement& o) const {
    return tail == o.tail && coords == o.coords;
  }
  std::string key() const;
};

DiagElement diag_identity(const DiagSpec& spec);
DiagElement from_word(const DiagSpec& spec, const Word& word);
DiagElement mul(const DiagSpec& spec, const DiagElement& a, const DiagElement& b);
DiagElement inv(const DiagSpec& spec, const DiagElement& a);

BaseElement tail_map(const DiagElement& a);
bool in_kernel(const DiagElement& a);

/// First n explicit coordinates.
std::vector<Perm> project_Un(const DiagElement& a, int n);
/// Zero the first n coordinates, keep the tail: the Gamma_{n+1} factor.
DiagElement project_Gamma_n(const DiagElement& a, int n);
/// Element of U_n <= Gamma with the given coordinates and trivial tail.
DiagElement embed_Un(const DiagSpec& spec, const std::vector<Perm>& coords);

/// Asymptotic section Phi_n: coordinates below n trivial, theta_m(g) from n
/// on, tail g. Throws SupportTooWide when g does not fit a level window.
DiagElement phi_section(const DiagSpec& spec, const BaseElement& g, int n);

/// The approximating endomorphism pi_k = iota_k . p_k: coordinates <= k are
/// kept, every later coordinate is the k-th propagated along the inclusions
/// [d(k)] c [d(k+1)] c ...; the tail becomes the stable finitary reading of
/// the propagated coordinate (A(Z) base). Domain: ker t, or t^{-1}(Alt_fin)
/// when widen_domain is set (A(Z) base only).
DiagElement pi_k(const DiagSpec& spec, const DiagElement& a, int k,
                 bool widen_domain = false);

/// Marking adapter so the generic ball machinery runs over Gamma.
struct DiagMarking {
  using Elem = DiagElement;
  const DiagSpec* spec;

  explicit DiagMarking(const DiagSpec& s) : spec(&s) {}
  Elem identity() const { return diag_identity(*spec); }
  Elem mul(const Elem& a, const Elem& b) const { return diagprod::mul(*spec, a, b); }
  Elem inv(const Elem& a) const { return diagprod::inv(*spec, a); }
  std::vector<Elem> generators() const;
  std::vector<std::string> labels() const { return spec->gen_labels(); }
  std::string key(const Elem& e) const { return e.key(); }
};

struct WitnessCertificate {
  int level = 0;            // the single nontrivial coordinate
  Word word;                // the witness word
  int length = 0;
  int verified_through = 0; // explicit triviality checked up to this level
  bool continuation_certified = false;  // window certificate covers the rest
  int rejected_candidates = 0;  // shorter pairs failing continuation checks
};

/// Meet-in-the-middle search for a nontrivial word of length <= radius_budget
/// whose element has trivial tail and trivial coordinates at every index
/// except `level`. Deterministic: the minimal-length, lexicographically-first
/// verified witness is returned. Candidates are verified by direct word
/// evaluation at continuation levels up to the certified index.
std::optional<WitnessCertificate> find_wn(const DiagSpec& spec, int level,
                                          int radius_budget,
                                          std::size_t element_budget = 10'000'000);

/// Independent re-verification of a witness certificate: re-evaluates the
/// word from scratch and re-checks every claim.
bool verify_witness(const DiagSpec& spec, const WitnessCertificate& cert);

std::string diag_to_json(const DiagSpec& spec, const DiagElement& e);

}  // namespace diagprod
