#include "cdalg/brown.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <random>
#include <thread>

#include "cdalg/errors.hpp"
#include "cdalg/forms.hpp"

namespace cdalg {

BrownInstance build_brown(int t, const Field& base) {
  if (t < 1 || t > kMaxBrownDoublings) {
    throw Error(ErrorCode::DimensionTooLarge, "Brown instances need 1 <= t <= " + std::to_string(kMaxBrownDoublings));
  }
  if (base.is_function_field()) throw Error(ErrorCode::WrongField, "base must be Q or F_p");
  BrownInstance b;
  b.t = t;
  b.base = base;
  b.field = Field::function_field(base, t);
  std::vector<Element> gammas;
  for (int j = 0; j < t; ++j) gammas.push_back(Element::variable(b.field, j));
  b.algebra = build_algebra(b.field, std::move(gammas));
  return b;
}

namespace {

long draw(std::mt19937_64& rng) { return static_cast<long>(rng() % 5) - 2; }

Element sample_scalar(const Field& f, unsigned degree, std::mt19937_64& rng) {
  if (!f.is_function_field()) return Element::from_int(f, draw(rng));
  const int m = f.num_vars();
  Polynomial poly(f.characteristic(), m);
  Monomial mono;
  // every exponent vector in [0, degree]^m
  while (true) {
    const long c = draw(rng);
    if (c != 0) poly = poly + Polynomial::monomial(f.characteristic(), m, mono, c);
    int v = 0;
    while (v < m && mono.exp[v] == degree) mono.exp[v++] = 0;
    if (v == m) break;
    ++mono.exp[v];
  }
  return Element::from_polynomial(f, poly);
}

}  // namespace

CDElement sample_element(const Algebra& a, unsigned degree, std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  while (true) {
    std::vector<Element> c;
    c.reserve(a->dim());
    for (std::size_t i = 0; i < a->dim(); ++i) c.push_back(sample_scalar(a->field(), degree, rng));
    CDElement x(a, std::move(c));
    if (!x.is_zero()) return x;
  }
}

ZeroDivisorReport zero_divisor_sample_test(const Algebra& a, const SamplerOptions& options) {
  ZeroDivisorReport report;
  report.samples = options.samples;
  std::vector<char> zero(options.samples, 0);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> stop_at{options.samples};
  auto worker = [&]() {
    for (std::size_t i = next++; i < options.samples; i = next++) {
      if (i >= stop_at.load()) break;
      const CDElement x = sample_element(a, options.degree, options.seed, 2 * i);
      const CDElement y = sample_element(a, options.degree, options.seed, 2 * i + 1);
      if ((x * y).is_zero()) {
        zero[i] = 1;
        if (options.stop_at_first) {
          std::size_t cur = stop_at.load();
          while (i < cur && !stop_at.compare_exchange_weak(cur, i)) {
          }
        }
      }
    }
  };
  const unsigned n = std::max(1U, options.workers);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  const std::size_t limit = options.stop_at_first ? std::min(options.samples, stop_at.load() + 1) : options.samples;
  report.samples = limit;
  for (std::size_t i = 0; i < limit; ++i) {
    if (!zero[i]) continue;
    ++report.counterexamples;
    if (!report.first_index) {
      report.first_index = i;
      report.first_pair = std::make_pair(sample_element(a, options.degree, options.seed, 2 * i),
                                         sample_element(a, options.degree, options.seed, 2 * i + 1));
    }
  }
  return report;
}

IsotropyResult division_certificate(const BrownInstance& b) {
  IsotropyResult r = monomial_anisotropy_certificate(norm_form(*b.algebra));
  if (b.t >= 4) {
    r.note = "norm anisotropy does not by itself exclude zero divisors beyond dimension 8";
  }
  return r;
}

namespace {

using Coeffs = std::vector<Element>;

bool all_zero(const Coeffs& v) {
  return std::all_of(v.begin(), v.end(), [](const Element& e) { return e.is_zero(); });
}

Polynomial lcm(const Polynomial& a, const Polynomial& b) {
  const Polynomial g = gcd(a, b);
  return *(a * b).exact_div(g);
}

// v = v_1 / v_2 with v_1 polynomial coordinates and v_2 the lcm of the denominators.
std::pair<Coeffs, Polynomial> clear_denominators(const Field& f, const Coeffs& v) {
  Polynomial den = Polynomial::constant(f.characteristic(), f.num_vars(), 1);
  for (const auto& e : v) {
    if (!e.is_zero()) den = lcm(den, e.rational_function().den).monic();
  }
  const Element den_e = Element::from_polynomial(f, den);
  Coeffs out;
  for (const auto& e : v) out.push_back(e * den_e);
  return {out, den};
}

Coeffs scale(const Field& f, const Coeffs& v, const Polynomial& p) {
  const Element e = Element::from_polynomial(f, p);
  Coeffs out;
  for (const auto& x : v) out.push_back(x * e);
  return out;
}

int order(const Coeffs& v, int var) {
  int best = std::numeric_limits<int>::max();
  for (const auto& e : v) {
    if (!e.is_zero()) best = std::min(best, valuation(e, var));
  }
  return best;
}

struct Halves {
  Coeffs a, b, c, d;
};

Halves split(const CDElement& x, const CDElement& y) {
  const auto h = static_cast<std::ptrdiff_t>(x.dim() / 2);
  const auto& xc = x.coeffs();
  const auto& yc = y.coeffs();
  return {Coeffs(xc.begin(), xc.begin() + h), Coeffs(xc.begin() + h, xc.end()), Coeffs(yc.begin(), yc.begin() + h),
          Coeffs(yc.begin() + h, yc.end())};
}

struct Components {
  Coeffs a3, b3, c3, d3;
};

Components clear_all(const Field& f, const Halves& hv) {
  auto [a1, a2] = clear_denominators(f, hv.a);
  auto [b1, b2] = clear_denominators(f, hv.b);
  auto [c1, c2] = clear_denominators(f, hv.c);
  auto [d1, d2] = clear_denominators(f, hv.d);
  return {scale(f, a1, b2), scale(f, b1, a2), scale(f, c1, d2), scale(f, d1, c2)};
}

}  // namespace

ParityOrders parity_orders(const CDElement& x, const CDElement& y) {
  const AlgebraSpec& spec = *x.algebra();
  const Field& f = spec.field();
  if (!f.is_function_field() || spec.doublings() < 1) {
    throw Error(ErrorCode::WrongField, "parity orders need an algebra over a rational function field");
  }
  const Halves hv = split(x, y);
  if (all_zero(hv.a) || all_zero(hv.b) || all_zero(hv.c) || all_zero(hv.d)) {
    throw Error(ErrorCode::PreconditionViolation, "a, b, c, d must all be nonzero");
  }
  const Components comp = clear_all(f, hv);
  const int var = f.num_vars() - 1;
  return {order(comp.a3, var), order(comp.b3, var), order(comp.c3, var), order(comp.d3, var)};
}

Refutation valuation_parity_refuter(const Algebra& alg, const CDElement& x, const CDElement& y) {
  if (!x.algebra()->same_as(*alg) || !y.algebra()->same_as(*alg)) {
    throw Error(ErrorCode::AlgebraMismatch, "elements of a different algebra");
  }
  if (alg->doublings() < 1) throw Error(ErrorCode::ScalarAlgebra, "needs at least one doubling");
  if (x.is_zero() || y.is_zero()) throw Error(ErrorCode::PreconditionViolation, "x and y must be nonzero");
  if (!(x * y).is_zero()) throw Error(ErrorCode::ProductNotZero, "x * y != 0; nothing to refute");

  const Halves hv = split(x, y);
  const bool a0 = all_zero(hv.a), b0 = all_zero(hv.b), c0 = all_zero(hv.c), d0 = all_zero(hv.d);
  const std::vector<Element> sub_gammas(alg->gammas().begin(), alg->gammas().end() - 1);
  const Algebra sub = build_algebra(alg->field(), sub_gammas);
  auto elem = [&](const Coeffs& v) { return CDElement(sub, v); };
  auto product_nonzero = [&](const Coeffs& u, const Coeffs& v) { return !(elem(u) * elem(v)).is_zero(); };

  Refutation r;
  const std::string no_zero_divisors = "A_{t-1} has zero divisors, so the induction hypothesis fails";
  if (a0 && !b0) {
    r.case_id = "i";
    r.explanation = "a = 0 and b != 0: d b = 0 and b conj(c) = 0 give d = c = 0, so y = 0, false";
    if (!c0 || !d0) r.broken_step = no_zero_divisors;
  } else if (b0 && !a0) {
    r.case_id = "ii";
    r.explanation = "b = 0 and a != 0: a c = 0 and d a = 0 give d = c = 0, so y = 0, false";
    if (!c0 || !d0) r.broken_step = no_zero_divisors;
  } else if (c0 && !d0) {
    r.case_id = "iii";
    r.explanation = "c = 0 and d != 0: conj(d) b = 0 and d a = 0 give a = b = 0, so x = 0, false";
    if (!a0 || !b0) r.broken_step = no_zero_divisors;
  } else if (d0 && !c0) {
    r.case_id = "iv";
    r.explanation = "d = 0 and c != 0: a c = 0 and b conj(c) = 0 give a = b = 0, so x = 0, false";
    if (!a0 || !b0) r.broken_step = no_zero_divisors;
  } else {
    r.case_id = "parity";
    const Field& f = alg->field();
    const int var = f.num_vars() - 1;
    if (!f.is_function_field() || !(alg->gammas().back() == Element::variable(f, var))) {
      r.explanation = "a, b, c, d all nonzero";
      r.broken_step = "the last parameter is not the indeterminate X_t, so there is no X_t-adic valuation";
      return r;
    }
    const ParityOrders o = parity_orders(x, y);
    r.orders = o;
    r.explanation = "a, b, c, d all nonzero; a3 c3 + X_t conj(d3) b3 = 0 forces m + p = n + r + 1 and b3 conj(c3) + d3 a3 = 0 "
                    "forces n + p = r + m, so 2m+p+r = 2n+p+r+1 with m = " +
                    std::to_string(o.m) + ", n = " + std::to_string(o.n) + ", p = " + std::to_string(o.p) +
                    ", r = " + std::to_string(o.r) + ", which is false by parity";
    // The argument needs the lowest coefficients of each product to multiply to nonzero.
    const Components comp = clear_all(f, hv);
    auto conj = [](Coeffs v) {
      for (std::size_t i = 1; i < v.size(); ++i) v[i] = -v[i];
      return v;
    };
    auto ord_product = [&](const Coeffs& u, const Coeffs& v) {
      const CDElement prod = elem(u) * elem(v);
      return prod.is_zero() ? std::numeric_limits<int>::max() : order(prod.coeffs(), var);
    };
    if (!product_nonzero(comp.a3, comp.c3) || ord_product(comp.a3, comp.c3) != o.m + o.p ||
        ord_product(conj(comp.d3), comp.b3) != o.r + o.n || ord_product(comp.b3, conj(comp.c3)) != o.n + o.p ||
        ord_product(comp.d3, comp.a3) != o.r + o.m) {
      r.broken_step = "a lowest-order coefficient product vanishes in A_{t-1}; " + no_zero_divisors;
    }
  }
  return r;
}

Refutation valuation_parity_refuter(const BrownInstance& b, const CDElement& x, const CDElement& y) {
  return valuation_parity_refuter(b.algebra, x, y);
}

}  // namespace cdalg
