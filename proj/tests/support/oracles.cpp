#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cdalg::oracle {

namespace {

Vec add(const Vec& a, const Vec& b) {
  Vec out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
  return out;
}

Vec scale(const Element& c, const Vec& a) {
  Vec out;
  for (const auto& e : a) out.push_back(c * e);
  return out;
}

}  // namespace

Vec doubling_conjugate(const Vec& x) {
  Vec out = x;
  for (std::size_t i = 1; i < out.size(); ++i) out[i] = -out[i];
  return out;
}

Vec doubling_multiply(const std::vector<Element>& gammas, const Vec& x, const Vec& y) {
  if (x.size() == 1) return {x[0] * y[0]};
  const std::size_t h = x.size() / 2;
  const std::vector<Element> inner(gammas.begin(), gammas.end() - 1);
  const Vec a1(x.begin(), x.begin() + h), a2(x.begin() + h, x.end());
  const Vec b1(y.begin(), y.begin() + h), b2(y.begin() + h, y.end());
  const Vec lo = add(doubling_multiply(inner, a1, b1),
                     scale(gammas.back(), doubling_multiply(inner, doubling_conjugate(b2), a2)));
  const Vec hi = add(doubling_multiply(inner, a2, doubling_conjugate(b1)), doubling_multiply(inner, b2, a1));
  Vec out = lo;
  out.insert(out.end(), hi.begin(), hi.end());
  return out;
}

Vec random_vector(const Field& f, std::size_t n, std::mt19937_64& rng, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  Vec out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!f.is_function_field()) {
      out.push_back(Element::from_int(f, dist(rng)));
      continue;
    }
    Element e = Element::from_int(f, dist(rng));
    for (int v = 0; v < f.num_vars(); ++v) e = e + Element::from_int(f, dist(rng)) * Element::variable(f, v);
    out.push_back(e);
  }
  return out;
}

CDElement random_element(const Algebra& a, std::mt19937_64& rng) {
  return CDElement(a, random_vector(a->field(), a->dim(), rng));
}

std::optional<std::vector<std::uint64_t>> fp_zero_exhaustive(const std::vector<std::uint64_t>& c, std::uint64_t p) {
  const std::size_t n = c.size();
  std::vector<std::uint64_t> x(n, 0);
  while (true) {
    std::size_t i = 0;
    while (i < n && x[i] == p - 1) x[i++] = 0;
    if (i == n) return std::nullopt;
    ++x[i];
    std::uint64_t s = 0;
    for (std::size_t j = 0; j < n; ++j) s = (s + c[j] % p * (x[j] * x[j] % p)) % p;
    if (s == 0) return x;
  }
}

std::optional<std::vector<long>> q_zero_box(const std::vector<long>& c, long h) {
  const std::size_t n = c.size();
  std::vector<long> x(n, -h);
  while (true) {
    bool nonzero = false;
    long s = 0;
    for (std::size_t j = 0; j < n; ++j) {
      s += c[j] * x[j] * x[j];
      nonzero = nonzero || x[j] != 0;
    }
    if (nonzero && s == 0) return x;
    std::size_t i = 0;
    while (i < n && x[i] == h) x[i++] = -h;
    if (i == n) return std::nullopt;
    ++x[i];
  }
}

namespace {

bool box_rec(const std::vector<long>& c, long h, std::size_t i, long partial, bool nonzero, std::vector<long>& x) {
  const std::size_t n = c.size();
  if (i + 1 == n) {
    // c_n y^2 = -partial
    if (partial % c[i] != 0) return false;
    const long q = -partial / c[i];
    if (q < 0) return false;
    const long y = static_cast<long>(std::llround(std::sqrt(static_cast<double>(q))));
    for (long r = std::max(0L, y - 1); r <= y + 1; ++r) {
      if (r * r == q && r <= h && (r != 0 || nonzero)) {
        x[i] = r;
        return true;
      }
    }
    return false;
  }
  if (partial != 0) {
    bool same_sign = true;
    for (std::size_t j = i; j < n; ++j) same_sign = same_sign && ((c[j] > 0) == (partial > 0));
    if (same_sign) return false;
  }
  for (long v = 0; v <= h; ++v) {
    x[i] = v;
    if (box_rec(c, h, i + 1, partial + c[i] * v * v, nonzero || v != 0, x)) return true;
  }
  return false;
}

}  // namespace

std::optional<std::vector<long>> q_zero_box_fast(const std::vector<long>& c, long h) {
  std::vector<long> x(c.size(), 0);
  if (box_rec(c, h, 0, 0, false, x)) return x;
  return std::nullopt;
}

std::vector<CDElement> all_elements(const Algebra& a) {
  const std::uint64_t p = a->field().characteristic();
  std::vector<CDElement> out;
  std::vector<long> x(a->dim(), 0);
  while (true) {
    Vec c;
    for (long v : x) c.push_back(Element::from_int(a->field(), v));
    out.emplace_back(a, c);
    std::size_t i = 0;
    while (i < x.size() && x[i] == static_cast<long>(p) - 1) x[i++] = 0;
    if (i == x.size()) return out;
    ++x[i];
  }
}

namespace {

std::string key(const CDElement& x) {
  std::string s;
  for (const auto& e : x.coeffs()) s += e.to_string() + ",";
  return s;
}

// Sumset layers: layer n holds every sum of n elements of `squares`.
unsigned layered(const Algebra& a, const std::vector<CDElement>& squares, const CDElement& target, unsigned cap,
                 unsigned offset) {
  std::vector<CDElement> layer{CDElement::zero(a)};
  for (unsigned n = 1; n <= cap + offset; ++n) {
    std::set<std::string> keys;
    std::vector<CDElement> next;
    for (const auto& s : layer) {
      for (const auto& q : squares) {
        CDElement v = s + q;
        if (keys.insert(key(v)).second) next.push_back(std::move(v));
      }
    }
    if (keys.count(key(target)) && n > offset) return n - offset;
    layer = std::move(next);
  }
  return 0;
}

}  // namespace

unsigned fp_level_bruteforce(const Algebra& a, unsigned cap) {
  std::set<std::string> keys;
  std::vector<CDElement> squares;
  for (const auto& x : all_elements(a)) {
    CDElement s = x * x;
    if (keys.insert(key(s)).second) squares.push_back(s);
  }
  return layered(a, squares, -CDElement::one(a), cap, 0);
}

unsigned fp_sublevel_bruteforce(const Algebra& a, unsigned cap) {
  std::set<std::string> keys;
  std::vector<CDElement> squares;
  for (const auto& x : all_elements(a)) {
    CDElement s = x * x;
    if (!s.is_zero() && keys.insert(key(s)).second) squares.push_back(s);
  }
  // 0 as a sum of n+1 nonzero squares: the layer index minus one.
  const unsigned n = layered(a, squares, CDElement::zero(a), cap, 1);
  return n;
}

DiagonalForm form_of(const Field& f, const std::vector<long>& c) {
  Vec v;
  for (long x : c) v.push_back(Element::from_int(f, x));
  return DiagonalForm(f, v);
}

}  // namespace cdalg::oracle
