#include "cdalg/propositions.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "cdalg/errors.hpp"
#include "cdalg/modular.hpp"

namespace cdalg {

std::string_view to_string(TestVerdict v) noexcept {
  switch (v) {
    case TestVerdict::Consistent: return "consistent";
    case TestVerdict::Violated: return "violated";
    case TestVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

const std::vector<std::string>& known_props() {
  static const std::vector<std::string> ids{"31i", "31ii", "31iii", "32a", "32c", "33", "34",
                                            "35",  "35L",  "36",    "37",  "37L", "38", "39"};
  return ids;
}

bool is_known_prop(const std::string& id) {
  const auto& ids = known_props();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

Verdict InstanceContext::isotropy(const DiagonalForm& phi) {
  const std::string key = phi.to_string();
  auto it = iso_cache_.find(key);
  if (it != iso_cache_.end()) return it->second;
  const Verdict v = isotropic(phi, false).verdict;
  iso_cache_.emplace(key, v);
  return v;
}

Answer InstanceContext::represents_minus_one(const DiagonalForm& phi) {
  const std::string key = phi.to_string();
  auto it = rep_cache_.find(key);
  if (it != rep_cache_.end()) return it->second;
  // phi represents -1 iff phi + <1> is isotropic
  const Verdict v = isotropy(orth_sum(phi, DiagonalForm(phi.field(), {Element::one(phi.field())})));
  const Answer a = v == Verdict::Isotropic ? Answer::Yes : v == Verdict::Anisotropic ? Answer::No : Answer::Unknown;
  rep_cache_.emplace(key, a);
  return a;
}

namespace {

enum class Tri { False, True, Unknown };

std::string_view tri_text(Tri t) {
  switch (t) {
    case Tri::False: return "false";
    case Tri::True: return "true";
    case Tri::Unknown: return "unknown";
  }
  return "unknown";
}

Tri from_verdict(Verdict v) {
  return v == Verdict::Isotropic ? Tri::True : v == Verdict::Anisotropic ? Tri::False : Tri::Unknown;
}

Tri from_answer(Answer a) { return a == Answer::Yes ? Tri::True : a == Answer::No ? Tri::False : Tri::Unknown; }

Tri tri_or(Tri a, Tri b) {
  if (a == Tri::True || b == Tri::True) return Tri::True;
  if (a == Tri::False && b == Tri::False) return Tri::False;
  return Tri::Unknown;
}

Tri tri_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::True && b == Tri::True) return Tri::True;
  return Tri::Unknown;
}

// value <= n
Tri at_most(const LevelValue& v, long n) {
  switch (v.kind) {
    case LevelValue::Kind::Exact: return static_cast<long>(v.n) <= n ? Tri::True : Tri::False;
    case LevelValue::Kind::AtMost: return static_cast<long>(v.n) <= n ? Tri::True : Tri::Unknown;
    case LevelValue::Kind::Infinite: return Tri::False;
    case LevelValue::Kind::Unknown: return Tri::Unknown;
  }
  return Tri::Unknown;
}

// value == n
Tri equals(const LevelValue& v, long n) {
  switch (v.kind) {
    case LevelValue::Kind::Exact: return static_cast<long>(v.n) == n ? Tri::True : Tri::False;
    case LevelValue::Kind::AtMost: return static_cast<long>(v.n) < n ? Tri::False : Tri::Unknown;
    case LevelValue::Kind::Infinite: return Tri::False;
    case LevelValue::Kind::Unknown: return Tri::Unknown;
  }
  return Tri::Unknown;
}

std::string statement(const std::string& text, Tri value) { return text + " = " + std::string(tri_text(value)); }

PropTest iff(PropTest t, const std::string& l, Tri lv, const std::string& r, Tri rv) {
  t.lhs = statement(l, lv);
  t.rhs = statement(r, rv);
  if (lv == Tri::Unknown || rv == Tri::Unknown) {
    t.verdict = TestVerdict::Inconclusive;
    t.reason = "ground truth unavailable";
  } else if (lv == rv) {
    t.verdict = TestVerdict::Consistent;
  } else {
    t.verdict = TestVerdict::Violated;
    t.reason = "sides disagree";
  }
  return t;
}

PropTest implies(PropTest t, const std::string& l, Tri lv, const std::string& r, Tri rv) {
  t.lhs = statement(l, lv);
  t.rhs = statement(r, rv);
  if (lv == Tri::False) {
    t.verdict = TestVerdict::Consistent;
    t.reason = "premise false";
  } else if (rv == Tri::True) {
    t.verdict = TestVerdict::Consistent;
  } else if (lv == Tri::True && rv == Tri::False) {
    t.verdict = TestVerdict::Violated;
    t.reason = "premise holds, conclusion fails";
  } else {
    t.verdict = TestVerdict::Inconclusive;
    t.reason = "ground truth unavailable";
  }
  return t;
}

PropTest outside(PropTest t, const std::string& hypothesis) {
  t.verdict = TestVerdict::Inconclusive;
  t.reason = "outside hypothesis: " + hypothesis;
  return t;
}

// Combines sub-statements: any violation wins, then any inconclusive.
PropTest combine(PropTest t, const std::vector<PropTest>& parts) {
  bool any_violated = false;
  bool any_inconclusive = false;
  for (const auto& p : parts) {
    if (!t.lhs.empty()) {
      t.lhs += "; ";
      t.rhs += "; ";
    }
    t.lhs += p.prop + ": " + p.lhs;
    t.rhs += p.prop + ": " + p.rhs;
    if (p.verdict == TestVerdict::Violated) {
      any_violated = true;
      t.reason = p.prop + " " + p.reason;
    }
    if (p.verdict == TestVerdict::Inconclusive) any_inconclusive = true;
  }
  if (any_violated) {
    t.verdict = TestVerdict::Violated;
  } else if (any_inconclusive) {
    t.verdict = TestVerdict::Inconclusive;
    t.reason = "some parts inconclusive";
  } else {
    t.verdict = TestVerdict::Consistent;
  }
  return t;
}

std::string form_name(std::size_t ones, std::size_t tp) {
  std::string s;
  if (ones == 1) s = "<1> + ";
  if (ones > 1) s = std::to_string(ones) + "x<1> + ";
  return s + std::to_string(tp) + "xT_P";
}

// -1 as a sum of n squares of pure elements, by enumerating the value set of T_P over F_p.
Tri pure_sum_fp(const Algebra& a, unsigned n) {
  const std::uint64_t p = a->field().characteristic();
  const std::size_t m = a->dim() - 1;
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (count > (1U << 22) / p) return Tri::Unknown;
    count *= p;
  }
  std::vector<std::uint64_t> beta;
  for (std::size_t i = 1; i < a->dim(); ++i) beta.push_back(a->beta(i).residue());
  std::vector<bool> values(p, false);
  for (std::uint64_t code = 0; code < count; ++code) {
    std::uint64_t c = code;
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const std::uint64_t d = c % p;
      c /= p;
      v = modular::add(v, modular::mul(beta[i], modular::mul(d, d, p), p), p);
    }
    values[v] = true;
  }
  std::vector<bool> reach = values;
  for (unsigned k = 1; k < n; ++k) {
    std::vector<bool> next(p, false);
    for (std::uint64_t u = 0; u < p; ++u) {
      if (!reach[u]) continue;
      for (std::uint64_t v = 0; v < p; ++v) {
        if (values[v]) next[modular::add(u, v, p)] = true;
      }
    }
    reach = std::move(next);
  }
  return reach[p - 1] ? Tri::True : Tri::False;
}

}  // namespace

PropTest run_test(const std::string& prop, InstanceContext& ctx, int k) {
  if (!is_known_prop(prop)) throw Error(ErrorCode::ParseError, "unknown proposition id '" + prop + "'");
  if (k < 0 || k > 10) throw Error(ErrorCode::PreconditionViolation, "k must lie in 0..10");
  const Algebra& a = ctx.algebra();
  const LevelReport& r = ctx.report();
  const int t = a->doublings();
  const long pow2 = 1L << k;
  PropTest base;
  base.prop = prop;
  base.k = k;
  if (t == 0) return outside(base, "t >= 1");

  auto iso = [&](std::size_t ones, std::size_t tp) {
    return from_verdict(ctx.isotropy(ones_plus_multiple(a, ones, tp)));
  };
  const std::string s = "s(A)";
  const std::string sub = "sublevel(A)";

  if (prop == "31i") {
    const auto n = static_cast<std::size_t>(pow2);
    const DiagonalForm form = scale_multiple(n, trace_form(*a));
    return implies(base, s + " <= " + std::to_string(n), at_most(r.level, pow2),
                   std::to_string(n) + "xT_C represents -1", from_answer(ctx.represents_minus_one(form)));
  }
  if (prop == "31ii") {
    if (a->field().kind() != FieldKind::PrimeField) return outside(base, "exhaustive check needs F_p");
    const auto n = static_cast<std::size_t>(pow2);
    const DiagonalForm form = scale_multiple(n, pure_trace_form(*a));
    return iff(base, "-1 is a sum of " + std::to_string(n) + " pure squares", pure_sum_fp(a, static_cast<unsigned>(n)),
               std::to_string(n) + "xT_P represents -1", from_answer(ctx.represents_minus_one(form)));
  }
  if (prop == "31iii") {
    const auto n = static_cast<std::size_t>(pow2);
    return implies(base, form_name(1, n) + " isotropic", iso(1, n), s + " <= " + std::to_string(n), at_most(r.level, pow2));
  }
  if (prop == "32a") {
    if (k <= 1) return outside(base, "k > 1");
    const long n = pow2 - 1;
    return iff(base, s + " <= " + std::to_string(n), at_most(r.level, n), form_name(1, static_cast<std::size_t>(n)) + " isotropic",
               iso(1, static_cast<std::size_t>(n)));
  }
  if (prop == "32c") {
    if (is_square(-Element::one(a->field()))) return outside(base, "-1 not a square in K");
    return iff(base, s + " = 1", equals(r.level, 1), "T_C isotropic", from_verdict(ctx.isotropy(trace_form(*a))));
  }
  if (prop == "33") {
    const auto n = static_cast<std::size_t>(pow2);
    return iff(base, std::to_string(n) + "xT_C isotropic", from_verdict(ctx.isotropy(scale_multiple(n, trace_form(*a)))),
               form_name(1, n) + " isotropic", iso(1, n));
  }
  if (prop == "34") {
    if (t < 2) return outside(base, "t >= 2");
    const auto n = static_cast<std::size_t>(pow2);
    const auto m = static_cast<std::size_t>(1 + (2 * pow2) / 3);
    return implies(base, form_name(0, n) + " isotropic", iso(0, n), form_name(0, m) + " isotropic", iso(0, m));
  }
  if (prop == "35") {
    if (t < 2 || k <= 1) return outside(base, "t >= 2 and k > 1");
    const long n = pow2 - 1;
    return iff(base, sub + " <= " + std::to_string(n), at_most(r.sublevel, n),
               form_name(1, static_cast<std::size_t>(n)) + " isotropic", iso(1, static_cast<std::size_t>(n)));
  }
  if (prop == "35L") {
    if (k < 1) return outside(base, "n = 2^k - 1 >= 1");
    const auto n = static_cast<std::size_t>(pow2 - 1);
    return iff(base, sub + " <= " + std::to_string(n), at_most(r.sublevel, static_cast<long>(n)),
               form_name(1, n) + " or " + form_name(0, n + 1) + " isotropic", tri_or(iso(1, n), iso(0, n + 1)));
  }
  if (prop == "36") {
    if (t < 2) return outside(base, "dim A > 2");
    return implies(base, "n_C isotropic", from_verdict(ctx.isotropy(norm_form(*a))), s + " = " + sub + " = 1",
                   tri_and(equals(r.level, 1), equals(r.sublevel, 1)));
  }
  if (prop == "37") {
    if (k < t) return outside(base, "k >= t");
    const auto n = static_cast<std::size_t>(pow2);
    return iff(base, s + " <= " + std::to_string(n), at_most(r.level, pow2), form_name(n + 1, n - 1) + " isotropic",
               iso(n + 1, n - 1));
  }
  if (prop == "37L") {
    const auto n = static_cast<std::size_t>(pow2);
    return iff(base, s + " <= " + std::to_string(n), at_most(r.level, pow2),
               form_name(n + 1, n - 1) + " or " + form_name(1, n) + " isotropic", tri_or(iso(n + 1, n - 1), iso(1, n)));
  }
  if (prop == "38") {
    std::vector<PropTest> parts;
    if (k >= 2) {
      PropTest p1 = base;
      p1.prop = "38i";
      const long n = pow2 - 1;
      parts.push_back(iff(p1, sub + " <= " + std::to_string(n), at_most(r.sublevel, n), s + " <= " + std::to_string(n),
                          at_most(r.level, n)));
      PropTest p2 = base;
      p2.prop = "38ii";
      // sublevel = n with 2^(k-1) <= n < 2^k
      Tri in_range = Tri::Unknown;
      if (r.sublevel.kind == LevelValue::Kind::Exact) {
        const long v = r.sublevel.n;
        in_range = (pow2 / 2 <= v && v < pow2) ? Tri::True : Tri::False;
      } else if (r.sublevel.kind == LevelValue::Kind::Infinite) {
        in_range = Tri::False;
      }
      parts.push_back(implies(p2, sub + " in [" + std::to_string(pow2 / 2) + ", " + std::to_string(pow2) + ")", in_range,
                              s + " <= " + std::to_string(n), at_most(r.level, n)));
    }
    PropTest p3 = base;
    p3.prop = "38iii";
    parts.push_back(implies(p3, sub + " = 1", equals(r.sublevel, 1), s + " <= 2", at_most(r.level, 2)));
    return combine(base, parts);
  }
  // 39
  std::vector<PropTest> parts;
  if (k >= 2) {
    PropTest p1 = base;
    p1.prop = "39i";
    parts.push_back(implies(p1, sub + " = " + std::to_string(pow2 - 1), equals(r.sublevel, pow2 - 1),
                            s + " = " + std::to_string(pow2 - 1), equals(r.level, pow2 - 1)));
    PropTest p2 = base;
    p2.prop = "39ii";
    parts.push_back(implies(p2, s + " = " + std::to_string(pow2), equals(r.level, pow2), sub + " = " + std::to_string(pow2),
                            equals(r.sublevel, pow2)));
  }
  if (k >= 1) {
    PropTest p3 = base;
    p3.prop = "39iii";
    parts.push_back(implies(p3, s + " = " + std::to_string(pow2 + 1), equals(r.level, pow2 + 1),
                            sub + " in {" + std::to_string(pow2) + ", " + std::to_string(pow2 + 1) + "}",
                            tri_or(equals(r.sublevel, pow2), equals(r.sublevel, pow2 + 1))));
  }
  if (parts.empty()) return outside(base, "k >= 1");
  return combine(base, parts);
}

std::string reproduction_command(const std::vector<std::string>& props, const Field& field,
                                 const std::vector<Element>& gammas, int k) {
  std::string cmd = "cdalg sweep --props ";
  for (std::size_t i = 0; i < props.size(); ++i) cmd += (i ? "," : "") + props[i];
  cmd += " --fields '" + field.to_string() + "' --t " + std::to_string(gammas.size()) + " --gammas '";
  for (std::size_t i = 0; i < gammas.size(); ++i) cmd += (i ? "," : "") + gammas[i].to_string();
  cmd += "' --k " + std::to_string(k) + ".." + std::to_string(k);
  return cmd;
}

namespace {

struct Job {
  Field field;
  std::vector<Element> gammas;
};

std::vector<Job> enumerate_jobs(const SweepSpec& spec) {
  std::vector<Job> jobs;
  for (const auto& f : spec.fields) {
    for (int t : spec.doublings) {
      if (t < 0 || t > kMaxDoublings) throw Error(ErrorCode::DimensionTooLarge, "t out of range");
      if (!spec.fixed_gammas.empty()) {
        if (spec.fixed_gammas.size() != static_cast<std::size_t>(t)) continue;
        std::vector<Element> g;
        for (const auto& e : spec.fixed_gammas) g.push_back(Element::parse(f, e));
        // a value vanishing in this field gives no algebra
        if (std::none_of(g.begin(), g.end(), [](const Element& e) { return e.is_zero(); })) {
          jobs.push_back({f, std::move(g)});
        }
        continue;
      }
      if (spec.gamma_values.empty() && t > 0) continue;
      std::vector<Element> values;
      for (const auto& e : spec.gamma_values) {
        Element v = Element::parse(f, e);
        if (!v.is_zero()) values.push_back(std::move(v));
      }
      if (values.empty() && t > 0) continue;
      std::vector<std::size_t> idx(static_cast<std::size_t>(t), 0);
      while (true) {
        std::vector<Element> g;
        for (auto i : idx) g.push_back(values[i]);
        jobs.push_back({f, std::move(g)});
        std::size_t pos = idx.size();
        while (pos-- > 0) {
          if (++idx[pos] < values.size()) break;
          idx[pos] = 0;
        }
        if (pos == static_cast<std::size_t>(-1)) break;
      }
    }
  }
  return jobs;
}

std::string job_key(const Job& j) {
  std::string k = j.field.to_string() + "|";
  for (const auto& g : j.gammas) k += g.to_string() + ",";
  return k;
}

}  // namespace

SweepReport sweep(const SweepSpec& spec) {
  for (const auto& p : spec.props) {
    if (!is_known_prop(p)) throw Error(ErrorCode::ParseError, "unknown proposition id '" + p + "'");
  }
  if (spec.k_min > spec.k_max) throw Error(ErrorCode::ParseError, "empty k range");
  const std::vector<Job> jobs = enumerate_jobs(spec);

  // Level reports are computed once per distinct (field, reduced gammas).
  std::vector<std::string> keys;
  std::map<std::string, std::size_t> unique;
  std::vector<std::size_t> job_slot;
  std::vector<const Job*> distinct;
  for (const auto& j : jobs) {
    const std::string key = job_key(j);
    auto [it, inserted] = unique.emplace(key, distinct.size());
    if (inserted) distinct.push_back(&j);
    job_slot.push_back(it->second);
  }

  struct Slot {
    std::optional<LevelReport> report;
    std::vector<PropTest> tests;
    std::string error;
  };
  std::vector<Slot> slots(distinct.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < distinct.size(); i = next++) {
      const Job& j = *distinct[i];
      try {
        const Algebra a = build_algebra(j.field, j.gammas);
        slots[i].report = compute_levels(a, spec.search);
        if (spec.division_only && slots[i].report->division.status != DivisionStatus::Division) continue;
        InstanceContext ctx(*slots[i].report);
        for (const auto& p : spec.props) {
          if (p == "36") {
            slots[i].tests.push_back(run_test(p, ctx, spec.k_min));
            continue;
          }
          for (int k = spec.k_min; k <= spec.k_max; ++k) slots[i].tests.push_back(run_test(p, ctx, k));
        }
      } catch (const Error& e) {
        slots[i].error = e.what();
      }
    }
  };
  const unsigned n_workers = std::max(1U, std::min<unsigned>(spec.workers, static_cast<unsigned>(distinct.size())));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& s : slots) {
    if (!s.error.empty()) throw Error(ErrorCode::PreconditionViolation, s.error);
  }

  SweepReport out;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const Slot& s = slots[job_slot[i]];
    if (spec.division_only && s.report->division.status != DivisionStatus::Division) continue;
    InstanceReport inst{jobs[i].field, jobs[i].gammas, *s.report, s.tests, ""};
    bool violated = false;
    for (const auto& t : inst.tests) {
      switch (t.verdict) {
        case TestVerdict::Consistent: ++out.consistent; break;
        case TestVerdict::Violated:
          ++out.violated;
          violated = true;
          break;
        case TestVerdict::Inconclusive: ++out.inconclusive; break;
      }
    }
    if (violated) {
      int k = -1;
      std::vector<std::string> props;
      for (const auto& t : inst.tests) {
        if (t.verdict != TestVerdict::Violated) continue;
        if (std::find(props.begin(), props.end(), t.prop) == props.end()) props.push_back(t.prop);
        if (k < 0) k = t.k;
      }
      inst.reproduce = reproduction_command(props, inst.field, inst.gammas, k);
    }
    out.instances.push_back(std::move(inst));
  }
  return out;
}

}  // namespace cdalg
