// Acceptance criteria 1-9. One PASS/FAIL line per criterion; exit status is
// the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cdalg/brown.hpp"
#include "cdalg/errors.hpp"
#include "cdalg/forms.hpp"
#include "cdalg/isotropy.hpp"
#include "cdalg/levels.hpp"
#include "cdalg/propositions.hpp"
#include "cdalg/serialize.hpp"
#include "oracles.hpp"

using namespace cdalg;

namespace {

// Pinned limits, in seconds.
constexpr double kLimit1 = 60;
constexpr double kLimit2 = 60;
constexpr double kLimit4 = 300;
constexpr double kLimit6 = 600;
constexpr double kLimit8 = 300;

constexpr std::size_t kLawSamples = 1000;
constexpr std::size_t kCompositionSamples = 1000;
constexpr std::size_t kHurwitzSamples = 10000;
constexpr std::size_t kFpForms = 500;
constexpr std::size_t kQForms = 200;
constexpr long kBoxHeight = 50;
constexpr std::size_t kBrownSamples = 1000;
constexpr std::size_t kControlSamples = 100;
constexpr std::uint64_t kSeed = 7;

const std::vector<long> kGammaValues{1, -1, 2, -2};

struct Check {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::vector<Algebra> grid(const char* field, int t_max) {
  const Field f = Field::parse(field);
  std::vector<Algebra> out;
  for (int t = 0; t <= t_max; ++t) {
    std::vector<std::size_t> idx(static_cast<std::size_t>(t), 0);
    while (true) {
      std::vector<Element> g;
      for (auto i : idx) g.push_back(Element::from_int(f, kGammaValues[i]));
      out.push_back(build_algebra(f, g));
      std::size_t pos = idx.size();
      while (pos-- > 0) {
        if (++idx[pos] < kGammaValues.size()) break;
        idx[pos] = 0;
      }
      if (pos == static_cast<std::size_t>(-1)) break;
    }
  }
  return out;
}

std::string name(const Algebra& a) {
  std::string s = a->field().to_string() + " (";
  for (std::size_t i = 0; i < a->gammas().size(); ++i) s += (i ? "," : "") + a->gammas()[i].to_string();
  return s + ")";
}

CDElement draw(const Algebra& a, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-5, 5);
  std::vector<Element> c;
  for (std::size_t i = 0; i < a->dim(); ++i) c.push_back(Element::from_int(a->field(), d(rng)));
  return CDElement(a, std::move(c));
}

Check criterion1() {
  Check c;
  std::size_t instances = 0;
  for (const char* f : {"Fp:3", "Fp:5", "Q"}) {
    for (const Algebra& a : grid(f, 4)) {
      ++instances;
      std::mt19937_64 rng(kSeed + instances);
      const DiagonalForm tc = trace_form(*a);
      const Element two = Element::from_int(a->field(), 2);
      CDElement prev = draw(a, rng);
      for (std::size_t i = 0; i < kLawSamples; ++i) {
        const CDElement x = draw(a, rng);
        if (!(x * x - x.scaled(trace(x)) + CDElement::scalar(a, norm(x))).is_zero()) {
          c.fail("quadratic law fails on " + name(a));
        }
        if (conjugate(x * prev) != conjugate(prev) * conjugate(x)) c.fail("conjugation law fails on " + name(a));
        if (tc.evaluate(x.coeffs()) * two != trace(x * x)) c.fail("T_C(x) != t(x^2)/2 on " + name(a));
        prev = x;
      }
    }
  }
  if (c.ok) c.detail = std::to_string(instances) + " instances x " + std::to_string(kLawSamples) + " elements";
  return c;
}

Check criterion2() {
  Check c;
  std::size_t pairs = 0;
  for (const char* f : {"Fp:3", "Fp:5", "Q"}) {
    for (const Algebra& a : grid(f, 3)) {
      std::mt19937_64 rng(kSeed);
      for (std::size_t i = 0; i < kCompositionSamples; ++i) {
        const CDElement x = draw(a, rng), y = draw(a, rng);
        ++pairs;
        if (norm(x * y) != norm(x) * norm(y)) c.fail("n(xy) != n(x)n(y) on " + name(a));
      }
    }
  }
  std::size_t worst = 0;
  for (const Algebra& a : grid("Fp:3", 4)) {
    if (a->doublings() != 4) continue;
    std::mt19937_64 rng(kSeed);
    std::size_t found = 0;
    for (std::size_t i = 1; i <= kHurwitzSamples && !found; ++i) {
      const CDElement x = draw(a, rng), y = draw(a, rng);
      if (norm(x * y) != norm(x) * norm(y)) found = i;
    }
    if (!found) c.fail("no norm violation within 10000 samples on " + name(a));
    worst = std::max(worst, found);
  }
  if (c.ok) {
    c.detail = std::to_string(pairs) + " pairs multiplicative for t <= 3; t = 4 over F_3 violated within " +
               std::to_string(worst) + " samples";
  }
  return c;
}

Check criterion3() {
  Check c;
  std::mt19937_64 rng(kSeed);
  for (const char* fd : {"Fp:3", "Fp:5", "Q"}) {
    const Field f = Field::parse(fd);
    for (int n = 1; n <= 4; ++n) {
      for (int rep = 0; rep < 50; ++rep) {
        std::vector<Element> a;
        for (int i = 0; i < n; ++i) {
          Element e = oracle::random_vector(f, 1, rng, -10, 10)[0];
          if (e.is_zero()) e = Element::one(f);
          a.push_back(e);
        }
        DiagonalForm iterated = DiagonalForm(f, {Element::one(f)});
        for (const auto& e : a) iterated = tensor(iterated, DiagonalForm(f, {Element::one(f), e}));
        if (!pfister(f, a).same_multiset(iterated)) c.fail("pfister != iterated tensor over " + f.to_string());
      }
    }
    for (const Algebra& a : grid(fd, 4)) {
      if (a->doublings() == 0) continue;
      const DiagonalForm one(f, {Element::one(f)});
      const DiagonalForm tp = pure_trace_form(*a);
      if (!norm_form(*a).same_multiset(orth_sum(one, scalar_scale(Element::from_int(f, -1), tp)))) {
        c.fail("n_C != <1> + -T_P on " + name(a));
      }
      if (!trace_form(*a).same_multiset(orth_sum(one, tp))) c.fail("T_C != <1> + T_P on " + name(a));
    }
  }
  if (c.ok) c.detail = "pfister n <= 4 and all 1023 algebra instances";
  return c;
}

bool witness_ok(const DiagonalForm& phi, const IsotropyResult& r) {
  if (!r.witness) return false;
  bool nonzero = false;
  for (const auto& e : *r.witness) nonzero = nonzero || !e.is_zero();
  return nonzero && phi.evaluate(*r.witness).is_zero();
}

Check criterion4() {
  Check c;
  std::mt19937_64 rng(kSeed);
  std::size_t iso = 0;
  for (std::uint64_t p : {3ULL, 5ULL, 7ULL}) {
    const Field f = Field::prime(p);
    for (std::size_t i = 0; i < kFpForms; ++i) {
      const std::size_t n = 1 + rng() % 8;
      std::vector<Element> coeffs;
      for (std::size_t j = 0; j < n; ++j) coeffs.push_back(Element::from_int(f, 1 + static_cast<long>(rng() % (p - 1))));
      const DiagonalForm phi(f, coeffs);
      const IsotropyResult fast = isotropic_fp(phi);
      const IsotropyResult brute = isotropic_bruteforce(phi, 1);
      if (fast.verdict != brute.verdict) c.fail("verdict mismatch on " + phi.to_string());
      if (fast.isotropic() && !witness_ok(phi, fast)) c.fail("bad witness on " + phi.to_string());
      if (brute.isotropic() && !witness_ok(phi, brute)) c.fail("bad brute witness on " + phi.to_string());
      iso += fast.isotropic();
    }
  }
  std::size_t unmatched = 0;
  const Field q = Field::rationals();
  for (std::size_t i = 0; i < kQForms; ++i) {
    const std::size_t n = 1 + rng() % 5;
    std::vector<long> cl;
    while (cl.size() < n) {
      const long v = static_cast<long>(rng() % 21) - 10;
      if (v != 0) cl.push_back(v);
    }
    const DiagonalForm phi = oracle::form_of(q, cl);
    const IsotropyResult hm = isotropic_q(phi);
    const auto box = oracle::q_zero_box_fast(cl, kBoxHeight);
    if (hm.verdict == Verdict::Unknown) c.fail("no verdict on " + phi.to_string());
    if (box && hm.anisotropic()) c.fail("box zero for anisotropic " + phi.to_string());
    if (hm.witness && !witness_ok(phi, hm)) c.fail("bad witness on " + phi.to_string());
    if (hm.isotropic() && !box) ++unmatched;
  }
  if (c.ok) {
    c.detail = std::to_string(3 * kFpForms) + " F_p forms agree (" + std::to_string(iso) + " isotropic); " +
               std::to_string(kQForms) + " Q forms consistent, " + std::to_string(unmatched) +
               " isotropic without a zero of height <= 50";
  }
  return c;
}

SweepSpec sweep5() {
  SweepSpec s;
  s.props = {"33", "34"};
  s.fields = {Field::prime(3), Field::prime(5)};
  s.doublings = {2, 3};
  s.gamma_values = {"1", "-1", "2", "-2"};
  s.k_min = 0;
  s.k_max = 2;
  return s;
}

Check criterion5(std::string& json) {
  Check c;
  const SweepReport r = sweep(sweep5());
  json = dump(to_json(r));
  if (r.instances.size() != 2 * (16 + 64)) c.fail("expected 160 instances");
  for (const auto& inst : r.instances) {
    for (const auto& t : inst.tests) {
      if (t.verdict != TestVerdict::Consistent) {
        c.fail("Prop " + t.prop + " k=" + std::to_string(t.k) + " " + std::string(to_string(t.verdict)) + " on " +
               inst.field.to_string() + ": " + t.reason);
      }
    }
  }
  if (c.ok) c.detail = std::to_string(r.consistent) + " tests consistent on " + std::to_string(r.instances.size()) + " instances";
  return c;
}

Check criterion6(std::string& json) {
  Check c;
  SweepSpec s;
  s.props = {"38", "39"};
  s.fields = {Field::prime(3)};
  s.doublings = {2};
  s.gamma_values = {"1", "-1", "2", "-2"};
  s.k_min = 1;
  s.k_max = 3;
  const SweepReport r = sweep(s);
  json = dump(to_json(r));
  if (r.instances.size() != 16) c.fail("expected 16 gamma vectors");
  for (const auto& inst : r.instances) {
    const LevelReport& lr = inst.levels;
    const std::string who = name(lr.algebra);
    if (lr.method != "exhaustive-search" || !lr.level.is_exact() || !lr.sublevel.is_exact()) {
      c.fail("search incomplete on " + who);
      continue;
    }
    if (lr.sublevel.n > lr.level.n) c.fail("sublevel > level on " + who);
    if (!check_level_witness(lr.level_witness) || !check_sublevel_witness(lr.sublevel_witness)) c.fail("bad witness on " + who);
    if (oracle::fp_level_bruteforce(lr.algebra, 4) != lr.level.n) c.fail("level disagrees with sumset oracle on " + who);
    if (oracle::fp_sublevel_bruteforce(lr.algebra, 4) != lr.sublevel.n) c.fail("sublevel disagrees with sumset oracle on " + who);
    if (isotropic(norm_form(*lr.algebra)).isotropic() && (lr.level.n != 1 || lr.sublevel.n != 1)) {
      c.fail("n_C isotropic but levels not 1 on " + who);
    }
    for (const auto& t : inst.tests) {
      if (t.verdict == TestVerdict::Violated) c.fail("Prop " + t.prop + " violated on " + who);
    }
  }
  if (c.ok) c.detail = "16 instances exhaustive; " + std::to_string(r.consistent) + " relation checks consistent";
  return c;
}

Check criterion7(std::string& json) {
  Check c;
  Json all = Json::array();
  const Field q = Field::rationals();
  for (long g2 : {-1L, -2L}) {
    const Algebra a = build_algebra(q, {Element::from_int(q, -1), Element::from_int(q, g2)});
    const LevelReport lr = compute_levels(a);
    InstanceContext ctx(lr);
    const PropTest t = run_test("32c", ctx, 0);
    Json j = to_json(lr);
    j["test_32c"] = to_json(t);
    all.push_back(j);
    const std::string who = name(a);
    const IsotropyResult nc = isotropic(norm_form(*a));
    if (!nc.anisotropic() || nc.method != "hasse-minkowski") c.fail("norm form not certified anisotropic on " + who);
    if (lr.division.status != DivisionStatus::Division) c.fail("not labelled division on " + who);
    if (lr.level != LevelValue::exact(1) || lr.sublevel != LevelValue::exact(1)) c.fail("s, sublevel != 1 on " + who);
    if (!check_level_witness(lr.level_witness) || !check_sublevel_witness(lr.sublevel_witness)) c.fail("bad witness on " + who);
    if (!isotropic(trace_form(*a)).isotropic()) c.fail("T_C anisotropic on " + who);
    if (is_square(Element::from_int(q, -1))) c.fail("-1 is a square in Q");
    if (t.verdict != TestVerdict::Consistent) c.fail("Prop 3.2(c) " + std::string(to_string(t.verdict)) + " on " + who);
  }
  json = dump(all);
  if (c.ok) c.detail = "(-1,-1) and (-1,-2): division, s = sublevel = 1 with witnesses";
  return c;
}

Check criterion8(std::string& json) {
  Check c;
  Json all = Json::array();
  for (int t = 1; t <= 4; ++t) {
    const BrownInstance b = build_brown(t, Field::rationals());
    const IsotropyResult cert = division_certificate(b);
    Json j{{"t", std::to_string(t)}, {"certificate", to_json(cert)}};
    if (!cert.anisotropic()) c.fail("certificate not anisotropic at t=" + std::to_string(t));
    if (t <= 3) {
      SamplerOptions o;
      o.samples = kBrownSamples;
      o.degree = 2;
      o.seed = kSeed;
      const ZeroDivisorReport z = zero_divisor_sample_test(b.algebra, o);
      j["sampler"] = to_json(z);
      if (z.counterexamples != 0) c.fail("zero divisor sampled at t=" + std::to_string(t));
    }
    all.push_back(j);
  }
  const Field f3 = Field::prime(3);
  const Algebra control = build_algebra(f3, {Element::one(f3), Element::one(f3)});
  SamplerOptions o;
  o.samples = kControlSamples;
  o.seed = kSeed;
  const ZeroDivisorReport z = zero_divisor_sample_test(control, o);
  all.push_back(Json{{"control", to_json(z)}});
  if (!z.first_pair || !(z.first_pair->first * z.first_pair->second).is_zero()) {
    c.fail("control found no zero divisor within 100 samples");
  }
  json = dump(all);
  if (c.ok) c.detail = "certificates t = 1..4; no zero divisors t <= 3; control hit at sample " + std::to_string(*z.first_index + 1);
  return c;
}

struct Timed {
  Check check;
  double seconds = 0;
};

Timed timed(const std::function<Check()>& f) {
  const auto start = std::chrono::steady_clock::now();
  Timed t;
  try {
    t.check = f();
  } catch (const std::exception& e) {
    t.check.fail(std::string("exception: ") + e.what());
  }
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return t;
}

int report(int id, Timed t, double limit) {
  if (limit > 0 && t.seconds > limit) {
    std::ostringstream os;
    os << "runtime " << t.seconds << " s over the " << limit << " s limit";
    t.check.fail(os.str());
  }
  std::printf("criterion %d: %s  %s (%.1f s)\n", id, t.check.ok ? "PASS" : "FAIL", t.check.detail.c_str(), t.seconds);
  std::fflush(stdout);
  return t.check.ok ? 0 : 1;
}

}  // namespace

int main() {
  int failed = 0;
  failed += report(1, timed(criterion1), kLimit1);
  failed += report(2, timed(criterion2), kLimit2);
  failed += report(3, timed(criterion3), 0);
  failed += report(4, timed(criterion4), kLimit4);

  std::string j5, j6, j7, j8;
  failed += report(5, timed([&] { return criterion5(j5); }), 0);
  failed += report(6, timed([&] { return criterion6(j6); }), kLimit6);
  failed += report(7, timed([&] { return criterion7(j7); }), 0);
  failed += report(8, timed([&] { return criterion8(j8); }), kLimit8);

  failed += report(9, timed([&] {
                     Check c;
                     std::string r5, r6, r7, r8;
                     criterion5(r5);
                     criterion6(r6);
                     criterion7(r7);
                     criterion8(r8);
                     if (r5 != j5) c.fail("criterion 5 report differs");
                     if (r6 != j6) c.fail("criterion 6 report differs");
                     if (r7 != j7) c.fail("criterion 7 report differs");
                     if (r8 != j8) c.fail("criterion 8 report differs");
                     if (c.ok) {
                       c.detail = "reports of criteria 5-8 byte-identical (" +
                                  std::to_string(j5.size() + j6.size() + j7.size() + j8.size()) + " bytes)";
                     }
                     return c;
                   }),
                   0);
  return failed;
}
