#include "diagprod/almostrep.hpp"

#include <cmath>
#include <memory>
#include <random>

namespace diagprod {

double d_hs(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("d_hs: dimension mismatch");
  return (a - b).frobenius() / std::sqrt(static_cast<double>(a.rows()));
}

CMatrix enforce_unitary(const CMatrix& u, double tol) {
  const CMatrix gram = u.adjoint() * u;
  if (d_hs(gram, CMatrix::identity(u.rows())) <= tol) return u;
  return polar_unitary(u);
}

RepDomain::RepDomain(const PermMarking& m, int radius, std::size_t budget)
    : marking(m), ball(diagprod::ball(m, radius, true, budget)) {
  for (std::size_t i = 0; i < ball.elems.size(); ++i)
    index.emplace(m.key(ball.elems[i]), static_cast<int>(i));
}

int RepDomain::find(const Perm& g) const {
  const auto it = index.find(g.key());
  return it == index.end() ? -1 : it->second;
}

CMatrix AlmostRep::eval_letter(int letter) const {
  const int k = static_cast<int>(gens.size());
  if (letter < k) return gens[letter];
  return gens[letter - k].adjoint();
}

CMatrix AlmostRep::eval_word(const std::vector<int>& word) const {
  CMatrix acc = CMatrix::identity(dim);
  for (int letter : word) acc = acc * eval_letter(letter);
  return acc;
}

std::vector<CMatrix> evaluate_states(const AlmostRep& rep,
                                     const RepDomain& dom) {
  const auto& t = dom.ball.table;
  std::vector<CMatrix> out(dom.size());
  out[0] = CMatrix::identity(rep.dim);
  for (std::size_t s = 1; s < dom.size(); ++s) {
    // first_word[s] extends a previously evaluated state by one letter
    const auto& w = t.first_word[s];
    const std::vector<int> prefix(w.begin(), w.end() - 1);
    // BFS order guarantees the prefix state has a smaller id
    int pred = 0;
    {
      // locate the prefix state by replaying its word through delta
      int cur = 0;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) cur = t.delta[cur][w[i]];
      pred = cur;
    }
    out[s] = out[pred] * rep.eval_letter(w.back());
  }
  return out;
}

double defect(const AlmostRep& rep, const RepDomain& dom) {
  if (rep.horizon > 0 && dom.ball.table.radius > rep.horizon)
    throw std::invalid_argument("defect: ball radius exceeds the rep horizon");
  const auto mat = evaluate_states(rep, dom);
  double worst = 0;
  for (std::size_t i = 0; i < dom.size(); ++i)
    for (std::size_t j = 0; j < dom.size(); ++j) {
      const int k = dom.find(dom.marking.mul(dom.ball.elems[i], dom.ball.elems[j]));
      if (k < 0) continue;
      worst = std::max(worst, d_hs(mat[k], mat[i] * mat[j]));
    }
  return worst;
}

AlmostRep trivial_rep(const PermMarking& m) {
  AlmostRep rep;
  rep.labels = m.labels();
  rep.dim = 1;
  for (std::size_t i = 0; i < m.generators().size(); ++i)
    rep.gens.push_back(CMatrix::identity(1));
  return rep;
}

AlmostRep permutation_rep(const PermMarking& m) {
  AlmostRep rep;
  rep.labels = m.labels();
  rep.dim = m.degree;
  for (const auto& g : m.generators()) {
    CMatrix p(m.degree, m.degree);
    for (int j = 1; j <= m.degree; ++j) p(g(j) - 1, j - 1) = 1.0;
    rep.gens.push_back(std::move(p));
  }
  return rep;
}

namespace {

// isometry onto the orthogonal complement of the all-ones vector
CMatrix sum_zero_isometry(int d) {
  CMatrix q(d, d - 1);
  for (int k = 1; k < d; ++k) {
    const double norm = std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) q(i, k - 1) = 1.0 / norm;
    q(k, k - 1) = -static_cast<double>(k) / norm;
  }
  return q;
}

}  // namespace

AlmostRep standard_rep(const PermMarking& m) {
  const AlmostRep perm = permutation_rep(m);
  const CMatrix q = sum_zero_isometry(m.degree);
  const CMatrix qt = q.adjoint();
  AlmostRep rep;
  rep.labels = perm.labels;
  rep.dim = m.degree - 1;
  for (const auto& g : perm.gens) rep.gens.push_back(qt * g * q);
  return rep;
}

AlmostRep regular_rep(const RepDomain& dom) {
  if (!dom.closed())
    throw std::invalid_argument("regular_rep: the marked group is not closed");
  const int n = static_cast<int>(dom.size());
  AlmostRep rep;
  rep.labels = dom.marking.labels();
  rep.dim = n;
  for (const auto& s : dom.marking.generators()) {
    CMatrix p(n, n);
    for (int j = 0; j < n; ++j) {
      const int i = dom.find(dom.marking.mul(s, dom.ball.elems[j]));
      if (i < 0) throw std::logic_error("regular_rep: domain not closed");
      p(i, j) = 1.0;
    }
    rep.gens.push_back(std::move(p));
  }
  return rep;
}

AlmostRep tensor_rep(const AlmostRep& a, const AlmostRep& b) {
  if (a.gens.size() != b.gens.size())
    throw std::invalid_argument("tensor_rep: marking mismatch");
  AlmostRep rep;
  rep.labels = a.labels;
  rep.dim = a.dim * b.dim;
  for (std::size_t i = 0; i < a.gens.size(); ++i)
    rep.gens.push_back(a.gens[i].kronecker(b.gens[i]));
  return rep;
}

AlmostRep perturb(const AlmostRep& rep, double eps, unsigned long seed) {
  std::mt19937_64 master(seed);
  AlmostRep out = rep;
  for (auto& g : out.gens) {
    const unsigned long sub = master();
    const CMatrix h = random_hermitian_unit(rep.dim, sub);
    g = enforce_unitary(g * exp_i_hermitian(h, eps));
  }
  return out;
}

CorrectionReport correct(const AlmostRep& rep, const RepDomain& dom,
                         double tol, int max_iters) {
  if (!dom.closed())
    throw std::invalid_argument("correct: the marked group must close");
  const int nf = static_cast<int>(dom.size());
  const auto& gens = dom.marking.generators();
  CorrectionReport report;
  report.rep = rep;
  for (int iter = 0; iter <= max_iters; ++iter) {
    const double d = defect(report.rep, dom);
    report.final_defect = d;
    report.iterations = iter;
    if (d < tol) {
      report.converged = true;
      report.rep.measured_defect = d;
      break;
    }
    if (iter == max_iters) break;
    const auto mat = evaluate_states(report.rep, dom);
    std::vector<CMatrix> next;
    for (std::size_t si = 0; si < gens.size(); ++si) {
      CMatrix avg(rep.dim, rep.dim);
      for (int j = 0; j < nf; ++j) {
        const int sh = dom.find(dom.marking.mul(gens[si], dom.ball.elems[j]));
        avg = avg + mat[sh] * mat[j].adjoint();
      }
      avg = avg.scaled(1.0 / static_cast<double>(nf));
      next.push_back(polar_unitary(avg));
    }
    report.rep.gens = std::move(next);
  }
  report.distance_to_input.clear();
  for (std::size_t i = 0; i < rep.gens.size(); ++i)
    report.distance_to_input.push_back(d_hs(report.rep.gens[i], rep.gens[i]));
  return report;
}

std::function<std::complex<double>(const Perm&)> finite_dim_trace(
    const AlmostRep& rep, const RepDomain& dom) {
  auto mats = std::make_shared<std::vector<CMatrix>>(evaluate_states(rep, dom));
  auto domain = std::make_shared<RepDomain>(dom);
  const double dim = rep.dim;
  return [mats, domain, dim](const Perm& g) -> std::complex<double> {
    const int i = domain->find(g);
    if (i < 0) throw std::invalid_argument("finite_dim_trace: outside domain");
    return (*mats)[i].trace() / dim;
  };
}

HadwinShulmanResult hadwin_shulman_check(
    const std::vector<std::complex<double>>& target,
    const std::vector<std::vector<std::complex<double>>>& candidates,
    double eps) {
  if (candidates.empty())
    throw std::invalid_argument("hadwin_shulman_check: no candidates");
  HadwinShulmanResult res;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (candidates[c].size() != target.size())
      throw std::invalid_argument("hadwin_shulman_check: sample mismatch");
    double dev = 0;
    for (std::size_t i = 0; i < target.size(); ++i)
      dev = std::max(dev, std::abs(candidates[c][i] - target[i]));
    if (res.best < 0 || dev < res.best_deviation) {
      res.best = static_cast<int>(c);
      res.best_deviation = dev;
    }
  }
  res.within = res.best_deviation < eps;
  return res;
}

}  // namespace diagprod
