#include "diagprod/characters.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "diagprod/linalg.hpp"
#include "diagprod/seqrule.hpp"

namespace diagprod {

bool is_partition(const Partition& p) {
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 1) return false;
    if (i && p[i] > p[i - 1]) return false;
  }
  return true;
}

int partition_size(const Partition& p) {
  return std::accumulate(p.begin(), p.end(), 0);
}

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  Partition cur;
  // descending lexicographic order, largest part first
  std::function<void(int, int)> rec = [&](int rest, int maxpart) {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = std::min(rest, maxpart); part >= 1; --part) {
      cur.push_back(part);
      rec(rest - part, part);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

Partition conjugate_partition(const Partition& p) {
  Partition c;
  for (int col = 1; !p.empty() && col <= p[0]; ++col) {
    int cnt = 0;
    for (int part : p) cnt += part >= col;
    c.push_back(cnt);
  }
  return c;
}

bool self_conjugate(const Partition& p) { return p == conjugate_partition(p); }

std::vector<int> diagonal_hooks(const Partition& p) {
  std::vector<int> h;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] < static_cast<int>(i) + 1) break;
    h.push_back(2 * (p[i] - static_cast<int>(i)) - 1);
  }
  return h;
}

std::vector<int> hook_lengths(const Partition& p) {
  const Partition c = conjugate_partition(p);
  std::vector<int> hooks;
  for (size_t i = 0; i < p.size(); ++i)
    for (int j = 0; j < p[i]; ++j)
      hooks.push_back(p[i] - j + c[j] - static_cast<int>(i) - 1);
  return hooks;
}

long long hook_dimension(const Partition& p) {
  // n! / prod(hooks) via prime exponents, exact for any n whose dimension
  // fits 64 bits
  const int n = partition_size(p);
  std::map<int, long long> expo;
  for (long long q = 2; q <= n; ++q) {
    if (!is_prime(q)) continue;
    long long e = 0;
    for (long long pk = q; pk <= n; pk *= q) e += n / pk;
    expo[static_cast<int>(q)] = e;
  }
  for (int h : hook_lengths(p)) {
    int m = h;
    for (int q = 2; q <= m; ++q)
      while (m % q == 0) {
        m /= q;
        --expo[q];
      }
  }
  __int128 dim = 1;
  for (const auto& [q, e] : expo) {
    if (e < 0) throw std::logic_error("hook_dimension: negative exponent");
    for (long long i = 0; i < e; ++i) {
      dim *= q;
      if (dim > INT64_MAX)
        throw std::overflow_error("hook_dimension: 64-bit overflow");
    }
  }
  return static_cast<long long>(dim);
}

std::string partition_key(const Partition& p) {
  std::string k;
  for (int part : p) {
    k += std::to_string(part);
    k += '.';
  }
  return k;
}

long long factorial(int n) {
  if (n > 20) throw std::overflow_error("factorial: 64-bit overflow");
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

long long sym_class_size(const Partition& type) {
  const int n = partition_size(type);
  long long z = 1;
  int run = 0;
  for (size_t i = 0; i < type.size(); ++i) {
    z *= type[i];
    run = (i && type[i] == type[i - 1]) ? run + 1 : 1;
    z *= run;
  }
  return factorial(n) / z;
}

int type_sign(const Partition& type) {
  const int n = partition_size(type);
  return ((n - static_cast<int>(type.size())) % 2 == 0) ? 1 : -1;
}

Perm canonical_of_type(const Partition& type) {
  const int n = partition_size(type);
  std::vector<std::vector<int>> cycles;
  int next = 1;
  for (int len : type) {
    std::vector<int> cyc(len);
    std::iota(cyc.begin(), cyc.end(), next);
    next += len;
    if (len > 1) cycles.push_back(std::move(cyc));
  }
  return Perm::from_cycles(n, cycles);
}

namespace {

// beta-numbers: strictly decreasing b_i = lambda_i + (k - i), 1-indexed i
std::vector<int> beta_numbers(const Partition& p) {
  const int k = static_cast<int>(p.size());
  std::vector<int> b(k);
  for (int i = 0; i < k; ++i) b[i] = p[i] + (k - 1 - i);
  return b;
}

Partition from_beta(std::vector<int> b) {
  std::sort(b.begin(), b.end(), std::greater<int>());
  const int k = static_cast<int>(b.size());
  Partition p;
  for (int i = 0; i < k; ++i) {
    const int part = b[i] - (k - 1 - i);
    if (part > 0) p.push_back(part);
  }
  return p;
}

}  // namespace

long long CharacterEngine::mn_value(const Partition& lambda,
                                    const Partition& mu) {
  if (partition_size(lambda) != partition_size(mu))
    throw std::invalid_argument("mn_value: |lambda| != |mu|");
  if (lambda.empty()) return 1;
  const std::string key = partition_key(lambda) + "|" + partition_key(mu);
  const auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;

  // remove a border strip of length mu[0]; recursion over the rest of mu
  const int strip = mu[0];
  const Partition rest(mu.begin() + 1, mu.end());
  const std::vector<int> betas = beta_numbers(lambda);
  __int128 total = 0;
  for (size_t i = 0; i < betas.size(); ++i) {
    const int target = betas[i] - strip;
    if (target < 0) continue;
    if (std::find(betas.begin(), betas.end(), target) != betas.end()) continue;
    int height = 0;
    for (int b : betas) height += (b > target && b < betas[i]);
    std::vector<int> nb = betas;
    nb[static_cast<int>(i)] = target;
    const long long sub = mn_value(from_beta(std::move(nb)), rest);
    total += (height % 2 == 0) ? sub : -sub;
  }
  if (total > INT64_MAX || total < INT64_MIN)
    throw std::overflow_error("mn_value: 64-bit overflow");
  const long long t64 = static_cast<long long>(total);
  memo_.emplace(key, t64);
  return t64;
}

long long CharacterEngine::dimension(const Partition& lambda) {
  return hook_dimension(lambda);
}

CharacterEngine& shared_engine() {
  static CharacterEngine engine;
  return engine;
}

namespace {

bool splits_in_alt(const Partition& type) {
  for (size_t i = 0; i < type.size(); ++i) {
    if (type[i] % 2 == 0) return false;
    if (i && type[i] == type[i - 1]) return false;
  }
  return true;
}

}  // namespace

std::vector<AltClass> alt_classes(int n) {
  std::vector<AltClass> out;
  for (const auto& type : partitions_of(n)) {
    if (type_sign(type) != 1) continue;
    AltClass c;
    c.type = type;
    c.splits = splits_in_alt(type);
    c.rep = canonical_of_type(type);
    c.size = c.splits ? sym_class_size(type) / 2 : sym_class_size(type);
    if (c.splits) {
      AltClass mate = c;
      mate.half = 1;
      // conjugate the representative by a transposition inside the longest
      // cycle (or any odd permutation): swapping two adjacent cycle points
      const Perm t = Perm::from_cycles(n, {{1, 2}});
      mate.rep = t * c.rep * t.inverse();
      out.push_back(c);
      out.push_back(std::move(mate));
    } else {
      out.push_back(std::move(c));
    }
  }
  return out;
}

int split_half_of(const Perm& g) {
  const CycleType ct = g.cycle_type();
  const Partition type = ct.as_partition();
  if (!splits_in_alt(type))
    throw std::invalid_argument("split_half_of: class does not split");
  // build the conjugator h with h * canonical * h^-1 = g; cycle lengths are
  // distinct so the matching is unique up to rotation, which is even iff the
  // cycle length is odd (it is), so rotations do not change the parity
  const Perm canon = canonical_of_type(type);
  const int n = g.degree();
  // decompose g into cycles sorted by decreasing length
  std::vector<char> seen(n, 0);
  std::vector<std::vector<int>> gcycles;
  for (int i = 1; i <= n; ++i) {
    if (seen[i - 1]) continue;
    std::vector<int> cyc;
    for (int j = i; !seen[j - 1]; j = g(j)) {
      seen[j - 1] = 1;
      cyc.push_back(j);
    }
    gcycles.push_back(std::move(cyc));
  }
  std::sort(gcycles.begin(), gcycles.end(),
            [](const auto& a, const auto& b) { return a.size() > b.size(); });
  std::vector<int> himg(n);
  int next = 1;
  for (const auto& cyc : gcycles) {
    for (int point : cyc) himg[next++ - 1] = point;
  }
  const Perm h = Perm::from_images(std::move(himg));
  // h maps the canonical rep onto g
  return h.is_even() ? 0 : 1;
}

std::vector<AltChar> AltChar::restrict_to_alt(const Partition& lambda) {
  const int n = partition_size(lambda);
  if (n < 3)
    throw std::invalid_argument("restrict_to_alt: need n >= 3");
  std::vector<AltChar> out;
  AltChar base;
  base.n_ = n;
  base.lambda_ = lambda;
  base.dim_ = hook_dimension(lambda);
  if (!self_conjugate(lambda)) {
    base.split_ = false;
    out.push_back(std::move(base));
    return out;
  }
  const std::vector<int> hooks = diagonal_hooks(lambda);
  const int k = static_cast<int>(hooks.size());
  base.split_ = true;
  base.dim_ /= 2;
  base.eps_ = ((n - k) / 2) % 2 == 0 ? 1 : -1;
  long long rad = base.eps_;
  for (int h : hooks) rad *= h;
  base.surd_rad_ = rad;
  base.hook_type_ = Partition(hooks.begin(), hooks.end());
  AltChar plus = base, minus = base;
  plus.split_sign_ = 1;
  minus.split_sign_ = -1;
  out.push_back(std::move(plus));
  out.push_back(std::move(minus));
  return out;
}

std::vector<AltChar> AltChar::all_irreducible(int n) {
  std::vector<AltChar> out;
  for (const auto& lambda : partitions_of(n)) {
    const Partition conj = conjugate_partition(lambda);
    if (lambda > conj) continue;  // one representative per conjugate pair
    for (auto& ch : restrict_to_alt(lambda)) out.push_back(std::move(ch));
  }
  return out;
}

bool AltChar::trivial() const {
  return dim_ == 1 && !split_;
}

std::string AltChar::name() const {
  std::string s = "[";
  for (size_t i = 0; i < lambda_.size(); ++i)
    s += (i ? "," : "") + std::to_string(lambda_[i]);
  s += "]";
  if (split_) s += split_sign_ > 0 ? "+" : "-";
  return s;
}

QuadVal AltChar::value(const AltClass& c) const {
  const long long chi = shared_engine().mn_value(lambda_, c.type);
  if (!split_) return QuadVal(Rational(chi));
  if (c.type != hook_type_) return QuadVal(Rational(chi, 2));
  // the split class of the diagonal-hook type: (eps +- sqrt(eps prod h)) / 2
  const int orientation = (c.half == 0 ? 1 : -1) * split_sign_;
  return QuadVal(Rational(eps_, 2), Rational(orientation, 2), surd_rad_);
}

QuadVal AltChar::value(const Perm& g) const {
  if (!g.is_even()) throw std::invalid_argument("AltChar: odd permutation");
  AltClass c;
  c.type = g.cycle_type().as_partition();
  if (partition_size(c.type) != n_)
    throw std::invalid_argument("AltChar: degree mismatch");
  c.splits = splits_in_alt(c.type);
  c.half = (split_ && c.type == hook_type_) ? split_half_of(g) : 0;
  return value(c);
}

QuadVal AltChar::normalized(const AltClass& c) const {
  return value(c) / QuadVal(Rational(dim_));
}

QuadVal AltChar::normalized(const Perm& g) const {
  return value(g) / QuadVal(Rational(dim_));
}

MaxCharValue max_nontrivial_value(int n, const AltClass& c, int cap) {
  if (n > cap)
    throw std::overflow_error(
        "max_nontrivial_value: full-table scan beyond the cap of n = " +
        std::to_string(cap));
  MaxCharValue best;
  best.abs_sq = QuadVal(Rational(-1));
  for (const auto& ch : AltChar::all_irreducible(n)) {
    if (ch.trivial()) continue;
    const QuadVal v = ch.normalized(c);
    const QuadVal a2 = v.abs_sq();
    if (QuadVal::compare(a2, best.abs_sq) > 0) {
      best.abs_sq = a2;
      best.abs_value = std::sqrt(a2.to_complex().real());
      best.witness_lambda = ch.lambda();
      best.witness_name = ch.name();
    }
  }
  return best;
}

bool gram_psd_check(const std::vector<Perm>& sample,
                    const std::function<std::complex<double>(const Perm&)>& f,
                    double tol, double* min_eig) {
  const int m = static_cast<int>(sample.size());
  CMatrix gram(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      gram(i, j) = f(sample[j].inverse() * sample[i]);
  const double lo = min_hermitian_eigenvalue(gram);
  if (min_eig) *min_eig = lo;
  return lo >= -tol;
}

std::complex<double> thoma_tensor(
    const std::vector<std::function<std::complex<double>(const Perm&)>>& fs,
    const std::vector<Perm>& tuple) {
  if (fs.size() != tuple.size())
    throw std::invalid_argument("thoma_tensor: arity mismatch");
  std::complex<double> v{1.0, 0.0};
  for (size_t i = 0; i < fs.size(); ++i) v *= fs[i](tuple[i]);
  return v;
}

std::function<std::complex<double>(const Perm&)> trivial_extension(
    const std::function<bool(const Perm&)>& in_subgroup,
    const std::function<std::complex<double>(const Perm&)>& f) {
  return [in_subgroup, f](const Perm& g) -> std::complex<double> {
    return in_subgroup(g) ? f(g) : std::complex<double>{0.0, 0.0};
  };
}

void check_sym_orthogonality(int n) {
  const auto parts = partitions_of(n);
  auto& eng = shared_engine();
  // cache one full table column-major
  std::vector<long long> sizes;
  for (const auto& mu : parts) sizes.push_back(sym_class_size(mu));
  std::vector<std::vector<long long>> table(parts.size());
  for (size_t r = 0; r < parts.size(); ++r)
    for (const auto& mu : parts) table[r].push_back(eng.mn_value(parts[r], mu));
  for (size_t a = 0; a < parts.size(); ++a)
    for (size_t b = a; b < parts.size(); ++b) {
      __int128 sum = 0;
      for (size_t c = 0; c < parts.size(); ++c)
        sum += static_cast<__int128>(sizes[c]) * table[a][c] * table[b][c];
      const __int128 expect = a == b ? static_cast<__int128>(factorial(n)) : 0;
      if (sum != expect)
        throw std::runtime_error("Sym(" + std::to_string(n) +
                                 ") orthogonality fails at rows " +
                                 partition_key(parts[a]) + " " +
                                 partition_key(parts[b]));
    }
}

void check_alt_orthogonality(int n) {
  const auto classes = alt_classes(n);
  const auto chars = AltChar::all_irreducible(n);
  const long long order = factorial(n) / 2;
  for (size_t a = 0; a < chars.size(); ++a)
    for (size_t b = a; b < chars.size(); ++b) {
      QuadMix sum;
      for (const auto& c : classes) {
        const QuadVal va = chars[a].value(c);
        const QuadVal vb = chars[b].value(c).conj();
        sum.add_product(va * QuadVal(Rational(c.size)), vb);
      }
      if (a == b) sum.add(QuadVal(Rational(-order)));
      if (!sum.is_zero())
        throw std::runtime_error("Alt(" + std::to_string(n) +
                                 ") orthogonality fails at " + chars[a].name() +
                                 ", " + chars[b].name() + " -> " +
                                 sum.to_string());
    }
}

std::string sym_table_csv(int n) {
  const auto parts = partitions_of(n);
  auto& eng = shared_engine();
  std::ostringstream out;
  out << "partition";
  for (const auto& mu : parts) out << ",\"" << partition_key(mu) << "\"";
  out << '\n';
  for (const auto& lam : parts) {
    out << '"' << partition_key(lam) << '"';
    for (const auto& mu : parts) out << ',' << eng.mn_value(lam, mu);
    out << '\n';
  }
  return out.str();
}

std::string alt_table_csv(int n) {
  const auto classes = alt_classes(n);
  const auto chars = AltChar::all_irreducible(n);
  std::ostringstream out;
  out << "character";
  for (const auto& c : classes)
    out << ",\"" << partition_key(c.type) << (c.splits ? (c.half ? "B" : "A") : "")
        << "\"";
  out << '\n';
  for (const auto& ch : chars) {
    out << '"' << ch.name() << '"';
    for (const auto& c : classes) out << ',' << ch.value(c).to_string();
    out << '\n';
  }
  return out.str();
}

}  // namespace diagprod
