#include "diagprod/perm.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace diagprod {

int CycleType::degree() const {
  int d = fixed;
  for (int c : cycles) d += c;
  return d;
}

int CycleType::support_size() const {
  int s = 0;
  for (int c : cycles) s += c;
  return s;
}

std::vector<int> CycleType::as_partition() const {
  std::vector<int> parts = cycles;
  parts.insert(parts.end(), fixed, 1);
  return parts;
}

Perm::Perm(int degree) : img_(degree) {
  if (degree < 0) throw std::invalid_argument("Perm: negative degree");
  std::iota(img_.begin(), img_.end(), 1);
}

Perm Perm::from_images(std::vector<int> images) {
  const int d = static_cast<int>(images.size());
  std::vector<char> seen(d, 0);
  for (int v : images) {
    if (v < 1 || v > d || seen[v - 1])
      throw std::invalid_argument("Perm: images are not a bijection of [d]");
    seen[v - 1] = 1;
  }
  Perm p;
  p.img_ = std::move(images);
  return p;
}

Perm Perm::from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
  Perm p(degree);
  for (const auto& cyc : cycles) {
    if (cyc.size() < 2) continue;
    for (size_t i = 0; i < cyc.size(); ++i) {
      const int a = cyc[i];
      const int b = cyc[(i + 1) % cyc.size()];
      if (a < 1 || a > degree || b < 1 || b > degree)
        throw std::invalid_argument("Perm: cycle entry out of range");
      if (p.img_[a - 1] != a)
        throw std::invalid_argument("Perm: cycles are not disjoint");
      p.img_[a - 1] = b;
    }
  }
  // from_cycles can only fail to be a bijection via the disjointness check
  return p;
}

Perm Perm::parse(int degree, std::string_view text) {
  std::vector<std::vector<int>> cycles;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == ',' || text[i] == '\t')) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw std::invalid_argument("Perm::parse: expected '('");
    ++i;
    std::vector<int> cyc;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      int v = 0;
      if (!isdigit(static_cast<unsigned char>(text[i])))
        throw std::invalid_argument("Perm::parse: expected digit");
      while (i < text.size() && isdigit(static_cast<unsigned char>(text[i])))
        v = v * 10 + (text[i++] - '0');
      cyc.push_back(v);
      skip_ws();
    }
    if (i >= text.size()) throw std::invalid_argument("Perm::parse: missing ')'");
    ++i;
    if (!cyc.empty()) cycles.push_back(std::move(cyc));
    skip_ws();
  }
  return from_cycles(degree, cycles);
}

bool Perm::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (img_[i] != i + 1) return false;
  return true;
}

Perm Perm::inverse() const {
  Perm r;
  r.img_.resize(img_.size());
  for (int i = 0; i < degree(); ++i) r.img_[img_[i] - 1] = i + 1;
  return r;
}

Perm Perm::pow(long long e) const {
  Perm base = e >= 0 ? *this : inverse();
  unsigned long long k = e >= 0 ? static_cast<unsigned long long>(e)
                                : static_cast<unsigned long long>(-(e + 1)) + 1;
  Perm acc(degree());
  while (k) {
    if (k & 1) acc = compose(acc, base);
    base = compose(base, base);
    k >>= 1;
  }
  return acc;
}

std::vector<int> Perm::support() const {
  std::vector<int> s;
  for (int i = 0; i < degree(); ++i)
    if (img_[i] != i + 1) s.push_back(i + 1);
  return s;
}

int Perm::sign() const {
  // (-1)^(d - number of cycles, fixed points included)
  const int d = degree();
  std::vector<char> seen(d, 0);
  int cycles = 0;
  for (int i = 0; i < d; ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (int j = i; !seen[j]; j = img_[j] - 1) seen[j] = 1;
  }
  return ((d - cycles) % 2 == 0) ? 1 : -1;
}

CycleType Perm::cycle_type() const {
  const int d = degree();
  std::vector<char> seen(d, 0);
  CycleType t;
  for (int i = 0; i < d; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = img_[j] - 1) {
      seen[j] = 1;
      ++len;
    }
    if (len == 1)
      ++t.fixed;
    else
      t.cycles.push_back(len);
  }
  std::sort(t.cycles.begin(), t.cycles.end(), std::greater<int>());
  return t;
}

Perm Perm::extended(int m) const {
  if (m < degree()) throw std::invalid_argument("Perm::extended: degree shrinks");
  Perm r(m);
  std::copy(img_.begin(), img_.end(), r.img_.begin());
  return r;
}

std::string Perm::to_cycle_string() const {
  const int d = degree();
  std::vector<char> seen(d, 0);
  std::ostringstream out;
  bool any = false;
  for (int i = 0; i < d; ++i) {
    if (seen[i] || img_[i] == i + 1) continue;
    any = true;
    out << '(';
    bool first = true;
    for (int j = i; !seen[j]; j = img_[j] - 1) {
      seen[j] = 1;
      if (!first) out << ' ';
      out << j + 1;
      first = false;
    }
    out << ')';
  }
  if (!any) return "()";
  return out.str();
}

std::string Perm::key() const {
  std::string k(sizeof(int) * img_.size(), '\0');
  if (!img_.empty()) std::memcpy(k.data(), img_.data(), k.size());
  return k;
}

Perm compose(const Perm& p, const Perm& q) {
  if (p.degree() != q.degree())
    throw std::invalid_argument("Perm compose: degree mismatch");
  Perm r;
  std::vector<int> img(p.degree());
  for (int i = 1; i <= p.degree(); ++i) img[i - 1] = p(q(i));
  return Perm::from_images(std::move(img));
}

WindowPerm WindowPerm::from_map(std::map<long, long> images) {
  std::map<long, long> canon;
  std::map<long, long> inv;
  for (const auto& [a, b] : images) {
    if (a == b) continue;
    canon[a] = b;
    if (!inv.emplace(b, a).second)
      throw std::invalid_argument("WindowPerm: not injective");
  }
  // bijection on the support: every image must itself be a moved point
  for (const auto& [b, a] : inv) {
    (void)a;
    if (!canon.count(b))
      throw std::invalid_argument("WindowPerm: support is not stable");
  }
  WindowPerm w;
  w.img_ = std::move(canon);
  return w;
}

WindowPerm WindowPerm::transposition(long a, long b) {
  if (a == b) throw std::invalid_argument("WindowPerm: degenerate transposition");
  WindowPerm w;
  w.img_[a] = b;
  w.img_[b] = a;
  return w;
}

WindowPerm WindowPerm::cycle(const std::vector<long>& points) {
  std::map<long, long> m;
  for (size_t i = 0; i < points.size(); ++i)
    m[points[i]] = points[(i + 1) % points.size()];
  return from_map(std::move(m));
}

long WindowPerm::operator()(long i) const {
  auto it = img_.find(i);
  return it == img_.end() ? i : it->second;
}

WindowPerm WindowPerm::inverse() const {
  WindowPerm r;
  for (const auto& [a, b] : img_) r.img_[b] = a;
  return r;
}

std::vector<long> WindowPerm::support() const {
  std::vector<long> s;
  s.reserve(img_.size());
  for (const auto& [a, b] : img_) {
    (void)b;
    s.push_back(a);
  }
  return s;
}

int WindowPerm::sign() const {
  std::map<long, char> seen;
  int parity = 0;
  for (const auto& [a, b] : img_) {
    (void)b;
    if (seen[a]) continue;
    int len = 0;
    for (long j = a; !seen[j]; j = (*this)(j)) {
      seen[j] = 1;
      ++len;
    }
    parity ^= (len - 1) & 1;
  }
  return parity ? -1 : 1;
}

WindowPerm WindowPerm::shift_conjugate(long m) const {
  WindowPerm r;
  for (const auto& [a, b] : img_) r.img_[a + m] = b + m;
  return r;
}

std::string WindowPerm::to_cycle_string() const {
  if (img_.empty()) return "()";
  std::map<long, char> seen;
  std::ostringstream out;
  for (const auto& [a, b] : img_) {
    (void)b;
    if (seen[a]) continue;
    out << '(';
    bool first = true;
    for (long j = a; !seen[j]; j = (*this)(j)) {
      seen[j] = 1;
      if (!first) out << ' ';
      out << j;
      first = false;
    }
    out << ')';
  }
  return out.str();
}

std::string WindowPerm::key() const {
  std::string k;
  k.reserve(img_.size() * 2 * sizeof(long));
  for (const auto& [a, b] : img_) {
    k.append(reinterpret_cast<const char*>(&a), sizeof(long));
    k.append(reinterpret_cast<const char*>(&b), sizeof(long));
  }
  return k;
}

WindowPerm compose(const WindowPerm& p, const WindowPerm& q) {
  WindowPerm r;
  std::map<long, long> img;
  for (const auto& [a, b] : q.moved()) img[a] = p(b);
  for (const auto& [a, b] : p.moved()) {
    (void)b;
    if (!img.count(a)) img[a] = p(a);
  }
  return WindowPerm::from_map(std::move(img));
}

Perm neumann_alpha(int d) {
  std::vector<int> img(d);
  for (int i = 1; i <= d; ++i) img[i - 1] = i == d ? 1 : i + 1;
  return Perm::from_images(std::move(img));
}

Perm neumann_beta(int d, int r) {
  if (r < 1 || 2 * r > d - 1)
    throw std::invalid_argument("neumann_beta: need 1 <= 2r <= d-1");
  return Perm::from_cycles(d, {{1, 1 + r, 1 + 2 * r}});
}

std::pair<Perm, Perm> neumann_generators(const std::vector<int>& d,
                                         const std::vector<int>& r, int n) {
  if (n < 1 || n > static_cast<int>(d.size()) || n > static_cast<int>(r.size()))
    throw std::invalid_argument("neumann_generators: index out of range");
  if (d.empty() || d[0] < 5)
    throw std::invalid_argument("neumann_generators: need d(1) >= 5");
  for (size_t i = 0; i < d.size(); ++i) {
    if (d[i] % 2 == 0)
      throw std::invalid_argument("neumann_generators: d(n) must be odd");
    if (i + 1 < d.size() && d[i] >= d[i + 1])
      throw std::invalid_argument("neumann_generators: d must be strictly increasing");
  }
  for (size_t i = 0; i < r.size() && i < d.size(); ++i)
    if (r[i] < 1 || 2 * r[i] > d[i] - 1)
      throw std::invalid_argument("neumann_generators: need 2r(n) <= d(n)-1");
  return {neumann_alpha(d[n - 1]), neumann_beta(d[n - 1], r[n - 1])};
}

WindowPerm bekka_witness(int k) {
  if (k < 1 || k % 2 == 0)
    throw std::invalid_argument("bekka_witness: k must be a positive odd integer");
  WindowPerm x;
  for (int i = 0; i <= k; ++i) {
    const long j = 2L * (i + static_cast<long>(k) * k);
    x = x * WindowPerm::transposition(j, j + 1);
  }
  return x;
}

WindowPerm shift_commutator(const WindowPerm& x) {
  return x.inverse() * x.shift_conjugate(1);
}

}  // namespace diagprod
