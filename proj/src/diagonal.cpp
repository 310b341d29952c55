#include "diagprod/diagonal.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "diagprod/marked.hpp"
#include "json.hpp"

namespace diagprod {

bool base_is_identity(const BaseElement& e) {
  return std::visit([](const auto& x) { return x.is_identity(); }, e);
}

BaseElement base_mul(const BaseElement& a, const BaseElement& b) {
  if (std::holds_alternative<LampElement>(a))
    return lamp_mul(std::get<LampElement>(a), std::get<LampElement>(b));
  return az_mul(std::get<AZElement>(a), std::get<AZElement>(b));
}

BaseElement base_inv(const BaseElement& a) {
  if (std::holds_alternative<LampElement>(a))
    return lamp_inv(std::get<LampElement>(a));
  return az_inv(std::get<AZElement>(a));
}

std::string base_key(const BaseElement& e) {
  std::string k(1, std::holds_alternative<LampElement>(e) ? 'L' : 'A');
  std::visit([&](const auto& x) { k += x.key(); }, e);
  return k;
}

std::string base_to_string(const BaseElement& e) {
  return std::visit([](const auto& x) { return x.to_string(); }, e);
}

void DiagSpec::validate() const {
  if (desk_levels_ < 1)
    throw std::invalid_argument("DiagSpec: need at least one desk level");
  if (d_.at(1) < 5) throw std::invalid_argument("DiagSpec: need d(1) >= 5");
  for (int n = 1; n <= desk_levels_ + 1; ++n) {
    if (d_.at(n) % 2 == 0)
      throw std::invalid_argument("DiagSpec: d(n) must be odd");
    if (d_.at(n) >= d_.at(n + 1))
      throw std::invalid_argument("DiagSpec: d must be strictly increasing");
  }
  if (base_ == BaseKind::Lamplighter) {
    for (int n = 1; n <= desk_levels_; ++n) {
      const long r = r_.at(n), d = d_.at(n);
      if (r < 1 || 2 * r > d - 1)
        throw std::invalid_argument("DiagSpec: need 2r(n) <= d(n) - 1");
      if (promise_ && (r < n || 3 * r > d))
        throw std::invalid_argument(
            "DiagSpec: admissibility promise violated on the materialized "
            "prefix (need n <= r(n) <= d(n)/3)");
    }
  }
}

DiagSpec DiagSpec::classical(SeqRule d, int desk_levels) {
  DiagSpec s;
  s.base_ = BaseKind::ClassicalAZ;
  s.d_ = std::move(d);
  s.r_ = SeqRule::constant(1);
  s.desk_levels_ = desk_levels;
  s.validate();
  return s;
}

DiagSpec DiagSpec::lamplighter(SeqRule d, SeqRule r, int desk_levels,
                               bool admissibility_promise) {
  DiagSpec s;
  s.base_ = BaseKind::Lamplighter;
  s.d_ = std::move(d);
  s.r_ = std::move(r);
  s.desk_levels_ = desk_levels;
  s.promise_ = admissibility_promise;
  s.validate();
  return s;
}

std::vector<std::string> DiagSpec::gen_labels() const {
  if (base_ == BaseKind::Lamplighter) return {"a", "b"};
  return {"s", "t"};
}

BaseElement DiagSpec::base_identity() const {
  if (base_ == BaseKind::Lamplighter) return LampElement{};
  return AZElement{};
}

BaseElement DiagSpec::base_gen(int which) const {
  if (base_ == BaseKind::Lamplighter)
    return which == 0 ? LampElement::alpha() : LampElement::beta();
  return which == 0 ? BaseElement(AZElement::shift_gen())
                    : BaseElement(AZElement::tau());
}

Perm DiagSpec::theta(int m, const BaseElement& g) const {
  const long d = d_at(m);
  if (d > 1'000'000) throw std::invalid_argument("DiagSpec::theta: degree too large");
  if (base_ == BaseKind::Lamplighter)
    return theta_lamp(std::get<LampElement>(g), static_cast<int>(d),
                      static_cast<int>(r_at(m)));
  return theta_az(std::get<AZElement>(g), static_cast<int>(d));
}

Perm DiagSpec::gen_image(int m, int which) const {
  return theta(m, base_gen(which));
}

bool DiagSpec::level_certified(int m, long budget) const {
  const long d = d_at(m);
  if (base_ == BaseKind::ClassicalAZ) return d >= 4 * budget + 1;
  const long r = r_at(m);
  return r >= 4 * budget + 1 && d - 2 * r >= 4 * budget + 1;
}

std::optional<int> DiagSpec::certified_from(long budget) const {
  if (base_ == BaseKind::ClassicalAZ) {
    // d is strictly increasing (validated on the prefix; all rules continue
    // increasing), so the first level reaching the window bound certifies
    // everything beyond it.
    auto n0 = d_.eventually_at_least(4 * budget + 1);
    if (!n0) return std::nullopt;
    return *n0;
  }
  if (!promise_) return std::nullopt;
  // under (a): r(m) >= m and d(m) - 2 r(m) >= r(m) >= m
  long n0 = 4 * budget + 1;
  // the materialized prefix may satisfy the window earlier; shrink greedily
  while (n0 > 1 && level_certified(static_cast<int>(n0 - 1), budget)) --n0;
  return static_cast<int>(n0);
}

std::string DiagSpec::to_string() const {
  std::ostringstream out;
  out << (base_ == BaseKind::Lamplighter ? "lamplighter" : "classical")
      << "; d=" << d_.to_string();
  if (base_ == BaseKind::Lamplighter)
    out << "; r=" << r_.to_string() << (promise_ ? "; admissible(a)" : "");
  out << "; levels=" << desk_levels_;
  return out.str();
}

Word word_inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(*it ^ 2);
  return out;
}

std::string word_to_string(const Word& w,
                           const std::vector<std::string>& labels) {
  std::string out;
  for (int a : w) {
    if (!out.empty()) out += ' ';
    out += labels[a & 1];
    if (a & 2) out += '\'';
  }
  return out.empty() ? "e" : out;
}

Word parse_word(const std::string& text,
                const std::vector<std::string>& labels) {
  Word w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "e") continue;
    bool inv = false;
    if (tok.size() > 1 && tok.back() == '\'') {
      inv = true;
      tok.pop_back();
    }
    int idx = -1;
    for (size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == tok) idx = static_cast<int>(i);
    if (idx < 0) throw std::invalid_argument("parse_word: unknown letter " + tok);
    w.push_back(idx | (inv ? 2 : 0));
  }
  return w;
}

std::string DiagElement::key() const {
  std::string k = base_key(tail);
  for (const auto& p : coords) {
    k += '|';
    k += p.key();
  }
  return k;
}

DiagElement diag_identity(const DiagSpec& spec) {
  DiagElement e;
  e.tail = spec.base_identity();
  for (int m = 1; m <= spec.levels(); ++m)
    e.coords.emplace_back(static_cast<int>(spec.d_at(m)));
  e.budget = 0;
  return e;
}

namespace {

void check_budget(const DiagSpec& spec, long budget) {
  if (!spec.certified_from(budget))
    throw HorizonError(
        "no multiplicativity horizon certifiable at word length " +
        std::to_string(budget) + " for spec [" + spec.to_string() + "]");
}

DiagElement gen_element(const DiagSpec& spec, int letter) {
  const int which = letter & 1;
  const bool invert = letter & 2;
  DiagElement e;
  BaseElement g = spec.base_gen(which);
  e.tail = invert ? base_inv(g) : g;
  for (int m = 1; m <= spec.levels(); ++m) {
    Perm p = spec.gen_image(m, which);
    e.coords.push_back(invert ? p.inverse() : p);
  }
  e.budget = 1;
  return e;
}

}  // namespace

DiagElement from_word(const DiagSpec& spec, const Word& word) {
  check_budget(spec, static_cast<long>(word.size()));
  DiagElement acc = diag_identity(spec);
  for (int letter : word) acc = mul(spec, acc, gen_element(spec, letter));
  acc.budget = static_cast<long>(word.size());
  return acc;
}

DiagElement mul(const DiagSpec& spec, const DiagElement& a,
                const DiagElement& b) {
  if (a.coords.size() != b.coords.size())
    throw std::invalid_argument("diag mul: different specs");
  DiagElement r;
  r.tail = base_mul(a.tail, b.tail);
  r.coords.reserve(a.coords.size());
  for (size_t i = 0; i < a.coords.size(); ++i)
    r.coords.push_back(a.coords[i] * b.coords[i]);
  r.budget = a.budget + b.budget;
  check_budget(spec, r.budget);
  return r;
}

DiagElement inv(const DiagSpec& spec, const DiagElement& a) {
  (void)spec;
  DiagElement r;
  r.tail = base_inv(a.tail);
  r.coords.reserve(a.coords.size());
  for (const auto& p : a.coords) r.coords.push_back(p.inverse());
  r.budget = a.budget;
  return r;
}

BaseElement tail_map(const DiagElement& a) { return a.tail; }

bool in_kernel(const DiagElement& a) { return base_is_identity(a.tail); }

std::vector<Perm> project_Un(const DiagElement& a, int n) {
  if (n < 0 || n > static_cast<int>(a.coords.size()))
    throw std::invalid_argument("project_Un: bad index");
  return {a.coords.begin(), a.coords.begin() + n};
}

DiagElement project_Gamma_n(const DiagElement& a, int n) {
  if (n < 1 || n > static_cast<int>(a.coords.size()) + 1)
    throw std::invalid_argument("project_Gamma_n: bad index");
  DiagElement r = a;
  for (int m = 0; m < n - 1; ++m) r.coords[m] = Perm(r.coords[m].degree());
  return r;
}

DiagElement embed_Un(const DiagSpec& spec, const std::vector<Perm>& coords) {
  DiagElement r = diag_identity(spec);
  if (coords.size() > r.coords.size())
    throw std::invalid_argument("embed_Un: too many coordinates");
  for (size_t i = 0; i < coords.size(); ++i) {
    if (coords[i].degree() != r.coords[i].degree())
      throw std::invalid_argument("embed_Un: degree mismatch");
    if (!coords[i].is_even())
      throw std::invalid_argument("embed_Un: odd coordinate");
    r.coords[i] = coords[i];
  }
  return r;
}

DiagElement phi_section(const DiagSpec& spec, const BaseElement& g, int n) {
  if (n < 1) throw std::invalid_argument("phi_section: n must be >= 1");
  DiagElement r = diag_identity(spec);
  r.tail = g;
  for (int m = n; m <= spec.levels(); ++m) r.coords[m - 1] = spec.theta(m, g);
  r.budget = std::visit([](const auto& x) { return x.extent(); }, g);
  return r;
}

namespace {

// Stable finitary reading of a permutation of [d] as an element of
// Alt_fin(Z) supported on non-negative residues.
AZElement stable_reading(const Perm& p) {
  std::map<long, long> m;
  for (int x : p.support()) m[x - 1] = p(x) - 1;
  return AZElement{0, WindowPerm::from_map(std::move(m))};
}

}  // namespace

DiagElement pi_k(const DiagSpec& spec, const DiagElement& a, int k,
                 bool widen_domain) {
  if (k < 1 || k > spec.levels())
    throw std::invalid_argument("pi_k: level out of range");
  if (!in_kernel(a)) {
    if (!widen_domain)
      throw std::domain_error("pi_k: element outside ker t");
    if (spec.base() != BaseKind::ClassicalAZ)
      throw std::domain_error(
          "pi_k: widened domain t^-1(Alt_fin) requires the A(Z) base");
    const auto& t = std::get<AZElement>(a.tail);
    if (t.shift != 0)
      throw std::domain_error("pi_k: tail outside Alt_fin(Z)");
  }
  DiagElement r = a;
  Perm chain = a.coords[k - 1];
  for (int m = k + 1; m <= spec.levels(); ++m) {
    chain = chain.extended(static_cast<int>(spec.d_at(m)));
    r.coords[m - 1] = chain;
  }
  if (spec.base() == BaseKind::ClassicalAZ) {
    r.tail = stable_reading(chain);
  } else {
    // no lamplighter element matches a propagated-constant pattern
    if (!chain.is_identity())
      throw std::domain_error(
          "pi_k: propagated coordinate has no lamplighter tail reading");
    r.tail = spec.base_identity();
  }
  return r;
}

std::vector<DiagElement> DiagMarking::generators() const {
  return {gen_element(*spec, 0), gen_element(*spec, 1)};
}

namespace {

// BFS ball over the diagonal group, tracking first-words.
struct DiagBall {
  std::vector<DiagElement> elems;
  std::vector<int> length;
  std::vector<Word> word;
};

DiagBall diag_ball(const DiagSpec& spec, int radius, std::size_t budget) {
  DiagBall b;
  std::vector<DiagElement> alphabet;
  for (int letter : {0, 1, 2, 3}) alphabet.push_back(gen_element(spec, letter));
  b.elems.push_back(diag_identity(spec));
  b.length.push_back(0);
  b.word.push_back({});
  std::unordered_map<std::string, int> seen;
  seen.emplace(b.elems[0].key(), 0);
  std::size_t lo = 0;
  for (int rad = 1; rad <= radius; ++rad) {
    const std::size_t hi = b.elems.size();
    for (std::size_t i = lo; i < hi; ++i)
      for (int letter = 0; letter < 4; ++letter) {
        DiagElement ne = mul(spec, b.elems[i], alphabet[letter]);
        auto k = ne.key();
        if (!seen.count(k)) {
          if (b.elems.size() >= budget)
            throw BallBudgetExceeded(
                "find_wn: element budget exceeded at radius " +
                std::to_string(rad));
          seen.emplace(std::move(k), static_cast<int>(b.elems.size()));
          b.elems.push_back(std::move(ne));
          b.length.push_back(rad);
          Word w = b.word[i];
          w.push_back(letter);
          b.word.push_back(std::move(w));
        }
      }
    lo = hi;
  }
  return b;
}

// Verifies that the word evaluates trivially at level m, in sparse residue
// arithmetic (exact for arbitrarily large d). The accumulated image is kept
// in the normal form sigma . C^rot with sigma a sparse permutation of Z/d.
bool trivial_at_level(const DiagSpec& spec, const Word& w, int m) {
  const long d = spec.d_at(m);
  const long r = spec.base() == BaseKind::Lamplighter ? spec.r_at(m) : 0;
  const auto normr = [d](long x) { return ((x % d) + d) % d; };
  long rot = 0;
  std::map<long, long> sigma;
  auto sig = [&](long x) {
    auto it = sigma.find(x);
    return it == sigma.end() ? x : it->second;
  };
  // base 3-cycle residues: A(Z): (-1, 0, 1); lamplighter: (0, r, 2r)
  const long c0 = spec.base() == BaseKind::Lamplighter ? 0 : d - 1;
  const long c1 = spec.base() == BaseKind::Lamplighter ? r : 0;
  const long c2 = spec.base() == BaseKind::Lamplighter ? normr(2 * r) : 1;
  for (int letter : w) {
    const bool invert = letter & 2;
    if ((letter & 1) == 0) {
      rot = normr(rot + (invert ? -1 : 1));
      continue;
    }
    // acc * T = (sigma . (C^rot T C^-rot)) . C^rot, the shifted 3-cycle
    std::map<long, long> cyc;
    const long p0 = normr(c0 + rot), p1 = normr(c1 + rot), p2 = normr(c2 + rot);
    if (!invert) {
      cyc[p0] = p1;
      cyc[p1] = p2;
      cyc[p2] = p0;
    } else {
      cyc[p0] = p2;
      cyc[p2] = p1;
      cyc[p1] = p0;
    }
    std::map<long, long> next;
    for (const auto& [x, y] : sigma) {
      (void)y;
      if (!cyc.count(x)) next[x] = sig(x);
    }
    for (const auto& [x, y] : cyc) next[x] = sig(y);
    for (auto it = next.begin(); it != next.end();)
      it = it->second == it->first ? next.erase(it) : std::next(it);
    sigma = std::move(next);
  }
  return rot == 0 && sigma.empty();
}

}  // namespace

std::optional<WitnessCertificate> find_wn(const DiagSpec& spec, int level,
                                          int radius_budget,
                                          std::size_t element_budget) {
  if (radius_budget < 1) throw std::invalid_argument("find_wn: radius < 1");
  if (level < 1 || level > spec.levels())
    throw std::invalid_argument("find_wn: level out of range");
  const int half = (radius_budget + 1) / 2;
  const DiagBall ball = diag_ball(spec, half, element_budget);

  // bucket by everything except the target coordinate
  std::unordered_map<std::string, std::vector<int>> buckets;
  for (size_t i = 0; i < ball.elems.size(); ++i) {
    const auto& e = ball.elems[i];
    std::string k = base_key(e.tail);
    for (size_t m = 0; m < e.coords.size(); ++m) {
      if (static_cast<int>(m) == level - 1) continue;
      k += '|';
      k += e.coords[m].key();
    }
    buckets[k].push_back(static_cast<int>(i));
  }

  struct Candidate {
    int length;
    Word word;
  };
  std::vector<Candidate> cands;
  for (const auto& [k, ids] : buckets) {
    (void)k;
    if (ids.size() < 2) continue;
    for (size_t x = 0; x < ids.size(); ++x)
      for (size_t y = 0; y < ids.size(); ++y) {
        if (x == y) continue;
        const int u = ids[x], v = ids[y];
        const int len = ball.length[u] + ball.length[v];
        if (len > radius_budget) continue;
        Word w = word_inverse(ball.word[u]);
        w.insert(w.end(), ball.word[v].begin(), ball.word[v].end());
        cands.push_back({len, std::move(w)});
      }
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.length != b.length) return a.length < b.length;
    return a.word < b.word;
  });

  int rejected = 0;
  for (const auto& c : cands) {
    const auto from = spec.certified_from(c.length);
    const int verify_to =
        from ? std::max(spec.levels(), *from - 1) : spec.levels();
    bool ok = true;
    for (int m = spec.levels() + 1; m <= verify_to && ok; ++m)
      ok = trivial_at_level(spec, c.word, m);
    if (!ok) {
      ++rejected;
      continue;
    }
    WitnessCertificate cert;
    cert.level = level;
    cert.word = c.word;
    cert.length = c.length;
    cert.verified_through = verify_to;
    cert.continuation_certified = from.has_value();
    cert.rejected_candidates = rejected;
    return cert;
  }
  return std::nullopt;
}

bool verify_witness(const DiagSpec& spec, const WitnessCertificate& cert) {
  if (cert.word.empty()) return false;
  const DiagElement e = from_word(spec, cert.word);
  if (!in_kernel(e)) return false;
  bool nontrivial_at_level = false;
  for (int m = 1; m <= spec.levels(); ++m) {
    if (m == cert.level) {
      nontrivial_at_level = !e.coords[m - 1].is_identity();
    } else if (!e.coords[m - 1].is_identity()) {
      return false;
    }
  }
  if (!nontrivial_at_level) return false;
  for (int m = spec.levels() + 1; m <= cert.verified_through; ++m)
    if (!trivial_at_level(spec, cert.word, m)) return false;
  return static_cast<int>(cert.word.size()) == cert.length;
}

std::string diag_to_json(const DiagSpec& spec, const DiagElement& e) {
  nlohmann::json j;
  j["tail"] = base_to_string(e.tail);
  nlohmann::json coords = nlohmann::json::object();
  for (size_t m = 0; m < e.coords.size(); ++m)
    coords[std::to_string(m + 1)] = e.coords[m].to_cycle_string();
  j["coords"] = coords;
  j["levels"] = spec.levels();
  j["budget"] = e.budget;
  return j.dump();
}

}  // namespace diagprod
