#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "diagprod/linalg.hpp"
#include "diagprod/marked.hpp"

namespace diagprod {

/// Normalized Hilbert-Schmidt distance sqrt(tr((A-B)*(A-B)) / d).
double d_hs(const CMatrix& a, const CMatrix& b);

/// Re-unitarize through the polar factor when ||U*U - I||_HS drifts past
/// the tolerance; returns the input otherwise.
CMatrix enforce_unitary(const CMatrix& u, double tol = 1e-10);

/// Ball of a marked permutation group with element lookup; the domain on
/// which almost representations are evaluated by their BFS first-words.
struct RepDomain {
  PermMarking marking;
  Ball<PermMarking> ball;
  std::unordered_map<std::string, int> index;

  RepDomain(const PermMarking& m, int radius, std::size_t budget = 10'000'000);

  bool closed() const { return ball.table.level_sizes.back() == 0; }
  std::size_t size() const { return ball.elems.size(); }
  int find(const Perm& g) const;  // -1 when outside the ball
};

/// Family of unitaries indexed by the marking's generators; inverse letters
/// evaluate to adjoints. The measured defect is cached alongside. A zero
/// horizon means the map extends to any radius by word evaluation.
struct AlmostRep {
  std::vector<std::string> labels;
  std::vector<CMatrix> gens;
  int dim = 0;
  int horizon = 0;
  double measured_defect = 0;

  CMatrix eval_letter(int letter) const;
  CMatrix eval_word(const std::vector<int>& word) const;
};

/// Evaluates the rep on every ball state by first-words, BFS order.
std::vector<CMatrix> evaluate_states(const AlmostRep& rep, const RepDomain& dom);

/// Def-1.1 defect: max over pairs g, h in the ball with gh in the ball of
/// d_HS(phi(gh), phi(g) phi(h)).
double defect(const AlmostRep& rep, const RepDomain& dom);

/// Exact representation constructors.
AlmostRep trivial_rep(const PermMarking& m);
AlmostRep permutation_rep(const PermMarking& m);
/// Restriction of the permutation rep to the orthogonal complement of the
/// all-ones vector (dimension d - 1).
AlmostRep standard_rep(const PermMarking& m);
/// Left-regular representation of the closed group (dimension |F|).
AlmostRep regular_rep(const RepDomain& closed_dom);
/// Internal tensor product g -> a(g) (x) b(g) of reps of one marking.
AlmostRep tensor_rep(const AlmostRep& a, const AlmostRep& b);

/// Each generator multiplied by exp(i eps H) with an independent random
/// Hermitian H of normalized HS norm 1; seeds derived from the master seed.
AlmostRep perturb(const AlmostRep& rep, double eps, unsigned long seed);

struct CorrectionReport {
  bool converged = false;
  int iterations = 0;
  double final_defect = 0;
  std::vector<double> distance_to_input;  // per generator
  AlmostRep rep;
};

/// Group-averaged polar correction on a closed domain:
///   A(s) <- polar(|F|^-1 sum_h phi(s h) phi(h)*),
/// re-extend from generators, until the defect drops below tol. Exact
/// representations are fixed points. Non-convergence is reported, never
/// silent; a singular average raises std::runtime_error from the polar
/// factor.
CorrectionReport correct(const AlmostRep& rep, const RepDomain& closed_dom,
                         double tol = 1e-8, int max_iters = 200);

/// Normalized trace tr(phi(g))/dim as a function on the closed group.
std::function<std::complex<double>(const Perm&)> finite_dim_trace(
    const AlmostRep& rep, const RepDomain& dom);

struct HadwinShulmanResult {
  int best = -1;
  double best_deviation = 0;
  bool within = false;
};

/// Candidate finite-dimensional traces against a target on a common sample:
/// picks the candidate minimizing the max pointwise deviation.
HadwinShulmanResult hadwin_shulman_check(
    const std::vector<std::complex<double>>& target,
    const std::vector<std::vector<std::complex<double>>>& candidates,
    double eps);

}  // namespace diagprod
