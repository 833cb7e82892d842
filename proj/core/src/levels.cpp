#include "cdalg/levels.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <unordered_map>

#include "cdalg/errors.hpp"
#include "cdalg/modular.hpp"

namespace cdalg {

std::string LevelValue::to_string() const {
  switch (kind) {
    case Kind::Exact: return std::to_string(n);
    case Kind::AtMost: return "<=" + std::to_string(n);
    case Kind::Infinite: return "infinity";
    case Kind::Unknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(DivisionStatus d) noexcept {
  switch (d) {
    case DivisionStatus::Division: return "division";
    case DivisionStatus::NonDivision: return "non-division";
    case DivisionStatus::Undetermined: return "undetermined";
  }
  return "undetermined";
}

DiagonalForm ones_plus_multiple(const Algebra& a, std::size_t ones_count, std::size_t tp_copies) {
  std::vector<Element> c(ones_count, Element::one(a->field()));
  if (tp_copies > 0) {
    const auto tp = a->pure_betas();
    for (std::size_t k = 0; k < tp_copies; ++k) c.insert(c.end(), tp.begin(), tp.end());
  }
  return DiagonalForm(a->field(), std::move(c));
}

bool check_level_witness(const std::vector<CDElement>& y) {
  if (y.empty()) return false;
  CDElement sum = CDElement::zero(y.front().algebra());
  for (const auto& e : y) sum = sum + e * e;
  return sum == CDElement::scalar(sum.algebra(), -Element::one(sum.algebra()->field()));
}

bool check_sublevel_witness(const std::vector<CDElement>& y) {
  if (y.size() < 2) return false;
  CDElement sum = CDElement::zero(y.front().algebra());
  for (const auto& e : y) {
    const CDElement sq = e * e;
    if (sq.is_zero()) return false;
    sum = sum + sq;
  }
  return sum.is_zero();
}

DivisionLabel division_label(const Algebra& a) {
  DivisionLabel out;
  if (a->doublings() == 0) {
    out.status = DivisionStatus::Division;
    out.reason = "the base field";
    return out;
  }
  const IsotropyResult iso = isotropic(norm_form(*a));
  if (iso.isotropic()) {
    out.status = DivisionStatus::NonDivision;
    if (iso.witness) {
      // n_C and <1> + (-T_P) agree coefficientwise, so the witness is a coordinate vector.
      CDElement x(a, *iso.witness);
      CDElement y = conjugate(x);
      if (!(x * y).is_zero()) throw Error(ErrorCode::PreconditionViolation, "internal: norm witness is not a zero divisor");
      out.reason = "norm form isotropic; x * conj(x) = n(x) = 0";
      out.zero_divisors = std::make_pair(std::move(x), std::move(y));
    } else {
      out.reason = "norm form isotropic (zero divisor not materialized)";
    }
  } else if (iso.anisotropic()) {
    if (a->doublings() <= 3) {
      out.status = DivisionStatus::Division;
      out.reason = "norm form anisotropic and multiplicative";
    } else {
      out.reason = "norm form anisotropic; not sufficient beyond dimension 8";
    }
  } else {
    out.reason = "norm form isotropy unknown";
  }
  return out;
}

namespace {

CDElement pure_element(const Algebra& a, const std::vector<Element>& pure) {
  std::vector<Element> c{Element::zero(a->field())};
  c.insert(c.end(), pure.begin(), pure.end());
  return CDElement(a, std::move(c));
}

// s(A) = 1 iff -1 is a square in K or T_P represents -1: y^2 = -1 forces
// y_1 y'' = 0 since y^2 = (y_1^2 + T_P(y'')) 1 + 2 y_1 y''.
struct LevelOne {
  Answer answer = Answer::Unknown;
  std::optional<CDElement> root;
};

LevelOne level_one(const Algebra& a) {
  const Element minus_one = -Element::one(a->field());
  if (auto r = is_square(minus_one)) return {Answer::Yes, CDElement::scalar(a, *r)};
  if (a->doublings() == 0) return {Answer::No, std::nullopt};
  const Representation rep = represents(pure_trace_form(*a), minus_one);
  LevelOne out{rep.answer, std::nullopt};
  if (rep.witness) out.root = pure_element(a, *rep.witness);
  return out;
}

// ---------------------------------------------------------------------------
// F_p^q as integer codes, coordinate 0 least significant.

class FpSpace {
 public:
  FpSpace(const Algebra& a, std::uint64_t size) : a_(a), p_(a->field().characteristic()), q_(a->dim()), size_(size) {
    for (std::size_t i = 0; i < q_; ++i) betas_.push_back(a->beta(i).residue());
  }

  std::uint64_t size() const { return size_; }

  std::vector<std::uint64_t> decode(std::uint64_t code) const {
    std::vector<std::uint64_t> d(q_);
    for (std::size_t i = 0; i < q_; ++i) {
      d[i] = code % p_;
      code /= p_;
    }
    return d;
  }

  std::uint64_t encode(const std::vector<std::uint64_t>& d) const {
    std::uint64_t code = 0;
    for (std::size_t i = q_; i-- > 0;) code = code * p_ + d[i];
    return code;
  }

  std::uint64_t square(std::uint64_t code) const {
    const auto y = decode(code);
    std::vector<std::uint64_t> s(q_, 0);
    std::uint64_t c0 = 0;
    for (std::size_t i = 0; i < q_; ++i) {
      c0 = modular::add(c0, modular::mul(betas_[i], modular::mul(y[i], y[i], p_), p_), p_);
    }
    s[0] = c0;
    const std::uint64_t two_y1 = modular::add(y[0], y[0], p_);
    for (std::size_t i = 1; i < q_; ++i) s[i] = modular::mul(two_y1, y[i], p_);
    return encode(s);
  }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t out = 0;
    std::uint64_t place = 1;
    for (std::size_t i = 0; i < q_; ++i) {
      out += modular::add(a % p_, b % p_, p_) * place;
      a /= p_;
      b /= p_;
      place *= p_;
    }
    return out;
  }

  std::uint64_t negate(std::uint64_t a) const {
    auto d = decode(a);
    for (auto& x : d) x = modular::neg(x, p_);
    return encode(d);
  }

  std::uint64_t minus_one() const {
    std::vector<std::uint64_t> d(q_, 0);
    d[0] = p_ - 1;
    return encode(d);
  }

  CDElement element(std::uint64_t code) const {
    const auto d = decode(code);
    std::vector<Element> c;
    c.reserve(q_);
    for (auto x : d) c.push_back(Element::from_int(a_->field(), static_cast<long>(x)));
    return CDElement(a_, std::move(c));
  }

 private:
  Algebra a_;
  std::uint64_t p_;
  std::size_t q_;
  std::uint64_t size_;
  std::vector<std::uint64_t> betas_;
};

constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

std::optional<std::uint64_t> space_size(const Algebra& a, std::uint64_t cap) {
  const std::uint64_t p = a->field().characteristic();
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < a->dim(); ++i) {
    if (size > cap / p) return std::nullopt;
    size *= p;
  }
  return size;
}

// root[v] = smallest y with y^2 = v, or kNone.
std::vector<std::uint64_t> square_roots(const FpSpace& sp) {
  std::vector<std::uint64_t> root(sp.size(), kNone);
  for (std::uint64_t y = 0; y < sp.size(); ++y) {
    const std::uint64_t v = sp.square(y);
    if (root[v] == kNone) root[v] = y;
  }
  return root;
}

SearchOutcome level_fp(const Algebra& a, const SearchOptions& opt) {
  SearchOutcome out;
  const auto size = space_size(a, opt.max_elements);
  if (!size) {
    const LevelOne one = level_one(a);
    out.method = "structural";
    if (one.answer == Answer::Yes && one.root) {
      out.value = LevelValue::exact(1);
      out.witness = {*one.root};
      return out;
    }
    // -1 = u^2 + w^2 always has a solution in F_p
    const Field& f = a->field();
    const std::uint64_t p = f.characteristic();
    const std::uint64_t ones3[3] = {1, 1, 1};
    const auto z = find_zero_fp(ones3, p);  // (u, w, 1)
    if (one.answer == Answer::No && z) {
      out.value = LevelValue::exact(2);
      out.witness = {CDElement::scalar(a, Element::from_int(f, static_cast<long>((*z)[0]))),
                     CDElement::scalar(a, Element::from_int(f, static_cast<long>((*z)[1])))};
      return out;
    }
    out.note = "space too large for exhaustive search";
    return out;
  }
  const FpSpace sp(a, *size);
  const auto root = square_roots(sp);
  std::vector<std::uint64_t> squares;
  for (std::uint64_t v = 0; v < sp.size(); ++v) {
    if (root[v] != kNone) squares.push_back(v);
  }
  out.method = "exhaustive-search";
  // layer[v]: least n with v a sum of n squares; pred/used give the last step.
  std::vector<std::uint8_t> layer(sp.size(), 0);
  std::vector<std::uint64_t> pred(sp.size(), kNone);
  std::vector<std::uint64_t> used(sp.size(), kNone);
  std::vector<std::uint64_t> frontier;
  for (auto v : squares) {
    layer[v] = 1;
    used[v] = v;
    frontier.push_back(v);
  }
  const std::uint64_t target = sp.minus_one();
  std::uint64_t work = 0;
  for (unsigned n = 1; n <= opt.max_n; ++n) {
    if (layer[target] != 0) {
      out.value = LevelValue::exact(n);
      std::uint64_t v = target;
      while (v != kNone) {
        out.witness.push_back(sp.element(root[used[v]]));
        v = pred[v];
      }
      std::reverse(out.witness.begin(), out.witness.end());
      return out;
    }
    if (n == opt.max_n) break;
    work += frontier.size() * squares.size();
    if (work > opt.work_budget) {
      out.note = "work budget exhausted; s > " + std::to_string(n);
      return out;
    }
    std::vector<std::uint64_t> next;
    for (auto u : frontier) {
      for (auto s : squares) {
        const std::uint64_t v = sp.add(u, s);
        if (layer[v] != 0) continue;
        layer[v] = static_cast<std::uint8_t>(n + 1);
        pred[v] = u;
        used[v] = s;
        next.push_back(v);
      }
    }
    if (next.empty()) {
      out.value = LevelValue::infinite();
      return out;
    }
    frontier = std::move(next);
  }
  out.note = "s > " + std::to_string(opt.max_n);
  return out;
}

SearchOutcome sublevel_fp(const Algebra& a, const SearchOptions& opt) {
  SearchOutcome out;
  const auto size = space_size(a, std::min<std::uint64_t>(opt.max_elements, 1U << 20));
  if (!size) {
    out.method = "structural";
    out.note = "space too large for exhaustive search";
    return out;
  }
  const FpSpace sp(a, *size);
  const auto root = square_roots(sp);
  std::vector<std::uint64_t> squares;
  for (std::uint64_t v = 1; v < sp.size(); ++v) {
    if (root[v] != kNone) squares.push_back(v);
  }
  out.method = "exhaustive-search";
  // layers[m-1][v] = a nonzero square s with v - s in layer m-1, or kNone
  std::vector<std::vector<std::uint64_t>> layers;
  std::vector<std::uint64_t> current(sp.size(), kNone);
  std::vector<std::uint64_t> members;
  for (auto v : squares) {
    current[v] = v;
    members.push_back(v);
  }
  layers.push_back(current);
  std::uint64_t work = 0;
  for (unsigned m = 2; m <= opt.max_n + 1; ++m) {
    work += members.size() * squares.size();
    if (work > opt.work_budget) {
      out.note = "work budget exhausted; sublevel > " + std::to_string(m - 2);
      return out;
    }
    std::vector<std::uint64_t> next(sp.size(), kNone);
    std::vector<std::uint64_t> next_members;
    for (auto u : members) {
      for (auto s : squares) {
        const std::uint64_t v = sp.add(u, s);
        if (next[v] != kNone) continue;
        next[v] = s;
        next_members.push_back(v);
      }
    }
    layers.push_back(std::move(next));
    members = std::move(next_members);
    if (layers.back()[0] != kNone) {
      out.value = LevelValue::exact(m - 1);
      std::uint64_t v = 0;
      for (std::size_t l = layers.size(); l-- > 0;) {
        const std::uint64_t s = layers[l][v];
        out.witness.push_back(sp.element(root[s]));
        v = sp.add(v, sp.negate(s));
      }
      std::reverse(out.witness.begin(), out.witness.end());
      return out;
    }
    if (members.empty()) {
      out.value = LevelValue::infinite();
      return out;
    }
  }
  out.note = "sublevel > " + std::to_string(opt.max_n);
  return out;
}

// ---------------------------------------------------------------------------
// Bounded search over Q.

std::string key_of(const CDElement& x) {
  std::string k;
  for (const auto& c : x.coeffs()) {
    k += c.to_string();
    k += ',';
  }
  return k;
}

struct SquareTable {
  std::vector<CDElement> roots;
  std::vector<CDElement> values;
  std::unordered_map<std::string, std::size_t> index;  // key of value -> first position
};

std::optional<SquareTable> rational_squares(const Algebra& a, unsigned h, std::uint64_t cap, bool nonzero) {
  const std::size_t q = a->dim();
  long double count = h;
  for (std::size_t i = 0; i < q; ++i) count *= 2.0L * h + 1;
  if (count > static_cast<long double>(cap)) return std::nullopt;
  SquareTable t;
  std::vector<long> v(q, -static_cast<long>(h));
  const Field& f = a->field();
  for (unsigned d = 1; d <= h; ++d) {
    std::fill(v.begin(), v.end(), -static_cast<long>(h));
    while (true) {
      bool zero = std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
      if (!zero) {
        std::vector<Element> c;
        c.reserve(q);
        for (auto x : v) c.push_back(Element::from_rational(f, mpq_class(x, d)));
        CDElement y(a, std::move(c));
        CDElement sq = y * y;
        if (!(nonzero && sq.is_zero())) {
          auto [it, inserted] = t.index.emplace(key_of(sq), t.values.size());
          if (inserted) {
            t.roots.push_back(std::move(y));
            t.values.push_back(std::move(sq));
          }
        }
      }
      std::size_t k = 0;
      while (k < q && v[k] == static_cast<long>(h)) v[k++] = -static_cast<long>(h);
      if (k == q) break;
      ++v[k];
    }
  }
  return t;
}

// Finds i, j with values[i] + values[j] == target.
std::optional<std::pair<std::size_t, std::size_t>> two_sum(const SquareTable& t, const CDElement& target,
                                                           std::uint64_t& work, std::uint64_t budget) {
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    if (++work > budget) return std::nullopt;
    auto it = t.index.find(key_of(target - t.values[i]));
    if (it != t.index.end()) return std::make_pair(i, it->second);
  }
  return std::nullopt;
}

// Finds i, j, k with values[i] + values[j] + values[k] == target.
std::optional<std::array<std::size_t, 3>> three_sum(const SquareTable& t, const CDElement& target,
                                                    std::uint64_t& work, std::uint64_t budget) {
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    if (auto jk = two_sum(t, target - t.values[i], work, budget)) return std::array{i, jk->first, jk->second};
    if (work > budget) return std::nullopt;
  }
  return std::nullopt;
}

SearchOutcome level_q(const Algebra& a, const SearchOptions& opt) {
  SearchOutcome out;
  out.method = "bounded-search";
  const LevelOne one = level_one(a);
  if (one.answer == Answer::Yes) {
    out.value = LevelValue::exact(1);
    if (one.root) {
      out.witness = {*one.root};
    } else {
      out.note = "witness pending";
    }
    return out;
  }
  if (opt.max_n < 2) return out;
  const auto table = rational_squares(a, opt.height, opt.max_elements, false);
  if (!table) {
    out.note = "candidate box too large";
    return out;
  }
  const CDElement minus_one = CDElement::scalar(a, -Element::one(a->field()));
  std::uint64_t work = 0;
  if (auto ij = two_sum(*table, minus_one, work, opt.work_budget)) {
    out.value = one.answer == Answer::No ? LevelValue::exact(2) : LevelValue::at_most(2);
    out.witness = {table->roots[ij->first], table->roots[ij->second]};
    return out;
  }
  if (opt.max_n >= 3) {
    if (auto ijk = three_sum(*table, minus_one, work, opt.work_budget)) {
      out.value = LevelValue::at_most(3);
      for (auto i : *ijk) out.witness.push_back(table->roots[i]);
      return out;
    }
  }
  out.note = "no representation of -1 found at height " + std::to_string(opt.height);
  return out;
}

SearchOutcome sublevel_q(const Algebra& a, const SearchOptions& opt) {
  SearchOutcome out;
  out.method = "bounded-search";
  const auto table = rational_squares(a, opt.height, opt.max_elements, true);
  if (!table) {
    out.note = "candidate box too large";
    return out;
  }
  const CDElement zero = CDElement::zero(a);
  std::uint64_t work = 0;
  if (auto ij = two_sum(*table, zero, work, opt.work_budget)) {
    out.value = LevelValue::exact(1);
    out.witness = {table->roots[ij->first], table->roots[ij->second]};
    return out;
  }
  if (opt.max_n >= 2) {
    if (auto ijk = three_sum(*table, zero, work, opt.work_budget)) {
      out.value = LevelValue::at_most(2);
      for (auto i : *ijk) out.witness.push_back(table->roots[i]);
      return out;
    }
  }
  out.note = "no vanishing sum found at height " + std::to_string(opt.height);
  return out;
}

}  // namespace

SearchOutcome level_search(const Algebra& a, const SearchOptions& options) {
  SearchOutcome out;
  switch (a->field().kind()) {
    case FieldKind::PrimeField: out = level_fp(a, options); break;
    case FieldKind::Rationals: out = level_q(a, options); break;
    case FieldKind::RationalFunctionField: {
      out.method = "structural";
      const LevelOne one = level_one(a);
      if (one.answer == Answer::Yes && one.root) {
        out.value = LevelValue::exact(1);
        out.witness = {*one.root};
      } else {
        out.note = "only s = 1 is decided over function fields";
      }
      break;
    }
  }
  if (!out.witness.empty() && !check_level_witness(out.witness)) {
    throw Error(ErrorCode::PreconditionViolation, "internal: level witness does not sum to -1");
  }
  return out;
}

SearchOutcome sublevel_search(const Algebra& a, const SearchOptions& options) {
  SearchOutcome out;
  // s(A) = 1 gives 1^2 + y^2 = 0
  const LevelOne one = level_one(a);
  if (one.answer == Answer::Yes && one.root) {
    out.value = LevelValue::exact(1);
    out.method = "structural";
    out.witness = {CDElement::one(a), *one.root};
  } else {
    switch (a->field().kind()) {
      case FieldKind::PrimeField: out = sublevel_fp(a, options); break;
      case FieldKind::Rationals: out = sublevel_q(a, options); break;
      case FieldKind::RationalFunctionField:
        out.method = "structural";
        out.note = "only sublevel 1 via s = 1 is decided over function fields";
        break;
    }
  }
  if (!out.witness.empty() && !check_sublevel_witness(out.witness)) {
    throw Error(ErrorCode::PreconditionViolation, "internal: sublevel witness is invalid");
  }
  return out;
}

LevelValue level_field(const Field& k, unsigned cap) {
  switch (k.kind()) {
    case FieldKind::Rationals: return LevelValue::infinite();
    case FieldKind::RationalFunctionField: throw Error(ErrorCode::WrongField, "level_field needs Q or F_p");
    case FieldKind::PrimeField: break;
  }
  const std::uint64_t p = k.characteristic();
  // sums of n squares, grown one square at a time
  std::vector<bool> sq(p, false);
  for (std::uint64_t x = 0; x < p; ++x) sq[modular::mul(x, x, p)] = true;
  std::vector<bool> reach = sq;
  for (unsigned n = 1; n <= cap; ++n) {
    if (reach[p - 1]) {
      if ((n & (n - 1)) != 0) throw Error(ErrorCode::PreconditionViolation, "level is not a power of 2");
      return LevelValue::exact(n);
    }
    std::vector<bool> next(p, false);
    for (std::uint64_t u = 0; u < p; ++u) {
      if (!reach[u]) continue;
      for (std::uint64_t s = 0; s < p; ++s) {
        if (sq[s]) next[modular::add(u, s, p)] = true;
      }
    }
    reach = std::move(next);
  }
  return LevelValue::unknown();
}

std::optional<BoundEntry> bound_31iii(const Algebra& a, unsigned n) {
  if (a->doublings() == 0 || n == 0) return std::nullopt;
  const DiagonalForm form = ones_plus_multiple(a, 1, n);
  BoundEntry e{"31iii", form, isotropic(form, false), ""};
  if (e.result.isotropic()) e.implied = "s <= " + std::to_string(n);
  return e;
}

LevelReport compute_levels(const Algebra& a, const SearchOptions& options) {
  LevelReport r;
  r.algebra = a;
  r.division = division_label(a);
  SearchOutcome lv = level_search(a, options);
  SearchOutcome sub = sublevel_search(a, options);
  r.level = lv.value;
  r.sublevel = sub.value;
  r.level_witness = std::move(lv.witness);
  r.sublevel_witness = std::move(sub.witness);
  if (!lv.note.empty()) r.notes.push_back("level: " + lv.note);
  if (!sub.note.empty()) r.notes.push_back("sublevel: " + sub.note);
  const bool exhaustive = a->field().kind() == FieldKind::PrimeField && r.level.is_exact() && r.sublevel.is_exact();
  r.method = exhaustive ? "exhaustive-search" : "bounded-search";
  for (unsigned n = 1; n <= std::min(options.max_n, 4U); ++n) {
    if (auto b = bound_31iii(a, n)) r.bounds_trace.push_back(std::move(*b));
  }
  if (r.level.kind == LevelValue::Kind::Unknown && r.division.status == DivisionStatus::Division) {
    for (const auto& b : r.bounds_trace) {
      if (b.result.isotropic()) {
        r.level = LevelValue::at_most(static_cast<unsigned>(std::stoul(b.implied.substr(5))));
        r.method = "proposition-bound";
        break;
      }
    }
  }
  return r;
}

}  // namespace cdalg
