#include "diagprod/basegroups.hpp"

#include <algorithm>
#include <sstream>

namespace diagprod {

long LampElement::extent() const {
  long e = std::abs(shift);
  for (const auto& [j, v] : lamps) {
    (void)v;
    e = std::max(e, std::abs(j));
  }
  return e;
}

std::string LampElement::key() const {
  std::string k;
  k.append(reinterpret_cast<const char*>(&shift), sizeof(long));
  for (const auto& [j, v] : lamps) {
    k.append(reinterpret_cast<const char*>(&j), sizeof(long));
    k.push_back(static_cast<char>(v));
  }
  return k;
}

std::string LampElement::to_string() const {
  std::ostringstream out;
  out << "shift=" << shift << "; lamps={";
  bool first = true;
  for (const auto& [j, v] : lamps) {
    if (!first) out << ',';
    out << j << ':' << v;
    first = false;
  }
  out << '}';
  return out.str();
}

LampElement LampElement::alpha() { return LampElement{1, {}}; }

LampElement LampElement::beta() { return LampElement{0, {{0, 1}}}; }

LampElement lamp_mul(const LampElement& a, const LampElement& b) {
  LampElement r;
  r.shift = a.shift + b.shift;
  r.lamps = a.lamps;
  for (const auto& [j, v] : b.lamps) {
    const long jj = j + a.shift;
    const int nv = (r.lamps.count(jj) ? r.lamps[jj] + v : v) % 3;
    if (nv == 0)
      r.lamps.erase(jj);
    else
      r.lamps[jj] = nv;
  }
  return r;
}

LampElement lamp_inv(const LampElement& a) {
  // (k,f)^-1 = (-k, g) with g(j) = -f(j + k)
  LampElement r;
  r.shift = -a.shift;
  for (const auto& [j, v] : a.lamps) r.lamps[j - a.shift] = 3 - v;
  return r;
}

long AZElement::extent() const {
  long e = std::abs(shift);
  for (const auto& [j, v] : perm.moved()) {
    e = std::max(e, std::abs(j));
    e = std::max(e, std::abs(v));
  }
  return e;
}

std::string AZElement::key() const {
  std::string k;
  k.append(reinterpret_cast<const char*>(&shift), sizeof(long));
  k += perm.key();
  return k;
}

std::string AZElement::to_string() const {
  std::ostringstream out;
  out << "shift=" << shift << "; perm=" << perm.to_cycle_string();
  return out.str();
}

AZElement AZElement::shift_gen() { return AZElement{1, {}}; }

AZElement AZElement::tau() {
  return AZElement{0, WindowPerm::cycle({-1, 0, 1})};
}

AZElement az_mul(const AZElement& a, const AZElement& b) {
  // realized maps compose: (a b)(j) = a(b(j)) = a.shift + b.shift + ...
  // (k,s)(k',s') = (k+k', shift_conjugate(s, -k') * s')
  AZElement r;
  r.shift = a.shift + b.shift;
  r.perm = a.perm.shift_conjugate(-b.shift) * b.perm;
  return r;
}

AZElement az_inv(const AZElement& a) {
  AZElement r;
  r.shift = -a.shift;
  r.perm = a.perm.inverse().shift_conjugate(a.shift);
  return r;
}

namespace {

int mod_point(long x, int d) {
  long m = x % d;
  if (m < 0) m += d;
  return static_cast<int>(m) + 1;  // residue as a 1-based point of [d]
}

Perm alpha_power(int d, long k) {
  std::vector<int> img(d);
  for (int i = 0; i < d; ++i) img[i] = mod_point(i + k, d);
  return Perm::from_images(std::move(img));
}

}  // namespace

Perm theta_lamp(const LampElement& g, int d, int r) {
  if (r < 1 || 2 * r > d - 1)
    throw std::invalid_argument("theta_lamp: need 1 <= 2r <= d-1");
  Perm acc(d);
  for (const auto& [j, v] : g.lamps) {
    // alpha^j beta alpha^{-j} is the 3-cycle at positions shifted by j
    const Perm t = Perm::from_cycles(
        d, {{mod_point(j, d), mod_point(j + r, d), mod_point(j + 2L * r, d)}});
    acc = acc * (v == 1 ? t : t.inverse());
  }
  return acc * alpha_power(d, g.shift);
}

Perm theta_az(const AZElement& g, int d) {
  // the closed window [-floor(d/2), floor(d/2)] holds exactly d integers,
  // so residues are injective on any support inside it
  const long half = d / 2;
  std::vector<int> img(d);
  for (int i = 0; i < d; ++i) img[i] = i + 1;
  for (const auto& [j, v] : g.perm.moved()) {
    if (std::abs(j) > half || std::abs(v) > half)
      throw SupportTooWide("theta_az: support exceeds the residue window of d=" +
                           std::to_string(d));
    img[mod_point(j, d) - 1] = mod_point(v, d);
  }
  return alpha_power(d, g.shift) * Perm::from_images(std::move(img));
}

EncodedMarking encode_alternating(
    int group_size, const std::function<int(int, int)>& mul, int identity,
    const std::vector<std::pair<std::string, int>>& s_images) {
  EncodedMarking out;
  auto inverse_of = [&](int x) {
    for (int y = 0; y < group_size; ++y)
      if (mul(x, y) == identity) return y;
    throw std::invalid_argument("encode_alternating: no inverse, not a group");
  };
  for (const auto& [label, gx] : s_images) {
    std::vector<int> img(group_size);
    for (int h = 0; h < group_size; ++h) img[h] = mul(gx, h) + 1;
    Perm p = Perm::from_images(std::move(img));
    if (!p.is_even())
      throw std::domain_error(
          "encode_alternating: left multiplication by theta(" + label +
          ") is an odd permutation");
    out.labels.push_back(label);
    out.perms.push_back(std::move(p));
  }
  for (const auto& [label, gx] : s_images) {
    out.labels.push_back("t_" + label);
    if (gx == identity) {  // degenerate triple (e, e, e) collapses
      out.perms.push_back(Perm(group_size));
      continue;
    }
    const int ginv = inverse_of(gx);
    if (ginv == gx)
      throw std::invalid_argument(
          "encode_alternating: degenerate 3-cycle for t_" + label);
    out.perms.push_back(
        Perm::from_cycles(group_size, {{ginv + 1, identity + 1, gx + 1}}));
  }
  return out;
}

namespace {

// Symmetrized ball of the base group to the given radius, exact elements.
template <class Elem, class Mul, class Inv>
std::vector<Elem> base_ball(const std::vector<Elem>& gens, const Elem& id,
                            Mul mul, Inv inv,
                            const std::function<std::string(const Elem&)>& key,
                            int radius) {
  std::vector<Elem> alphabet;
  for (const auto& g : gens) {
    alphabet.push_back(g);
    alphabet.push_back(inv(g));
  }
  std::vector<Elem> elems{id};
  std::map<std::string, int> seen{{key(id), 0}};
  size_t lo = 0;
  for (int rad = 1; rad <= radius; ++rad) {
    const size_t hi = elems.size();
    for (size_t i = lo; i < hi; ++i)
      for (const auto& a : alphabet) {
        Elem ne = mul(elems[i], a);
        auto k = key(ne);
        if (!seen.count(k)) {
          seen.emplace(std::move(k), static_cast<int>(elems.size()));
          elems.push_back(std::move(ne));
        }
      }
    lo = hi;
  }
  return elems;
}

template <class Elem, class Mul, class Theta>
bool level_ok(const std::vector<Elem>& ball, Mul mul, Theta theta) {
  // injectivity on the ball
  std::map<std::string, int> images;
  std::vector<Perm> th(ball.size());
  for (size_t i = 0; i < ball.size(); ++i) {
    th[i] = theta(ball[i]);
    if (!images.emplace(th[i].key(), static_cast<int>(i)).second) return false;
  }
  // multiplicativity on all pairs
  for (size_t i = 0; i < ball.size(); ++i)
    for (size_t j = 0; j < ball.size(); ++j)
      if (theta(mul(ball[i], ball[j])) != th[i] * th[j]) return false;
  return true;
}

}  // namespace

std::optional<int> multiplicativity_radius(const ThetaFamily& fam, int radius,
                                           int M) {
  M = std::min(M, fam.levels());
  std::vector<bool> ok(M + 1, false);
  if (fam.base == BaseKind::ClassicalAZ) {
    auto ball = base_ball<AZElement>(
        {AZElement::shift_gen(), AZElement::tau()}, AZElement{}, az_mul,
        az_inv, [](const AZElement& e) { return e.key(); }, radius);
    for (int m = 1; m <= M; ++m) {
      try {
        ok[m] = level_ok(ball, az_mul, [&](const AZElement& e) {
          return theta_az(e, fam.d[m - 1]);
        });
      } catch (const SupportTooWide&) {
        ok[m] = false;
      }
    }
  } else {
    auto ball = base_ball<LampElement>(
        {LampElement::alpha(), LampElement::beta()}, LampElement{}, lamp_mul,
        lamp_inv, [](const LampElement& e) { return e.key(); }, radius);
    for (int m = 1; m <= M; ++m)
      ok[m] = level_ok(ball, lamp_mul, [&](const LampElement& e) {
        return theta_lamp(e, fam.d[m - 1], fam.r[m - 1]);
      });
  }
  for (int n0 = 1; n0 <= M; ++n0) {
    bool all = true;
    for (int m = n0; m <= M; ++m) all = all && ok[m];
    if (all) return n0;
  }
  return std::nullopt;
}

}  // namespace diagprod
