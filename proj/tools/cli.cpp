#include "cli.hpp"

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "cdalg/errors.hpp"

namespace cdalg::cli {

namespace {

Error parse_error(const std::string& msg) { return Error(ErrorCode::ParseError, msg); }

Field checked_field(const std::string& text) {
  try {
    return Field::parse(text);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw;
    throw parse_error("bad field '" + text + "': " + e.what());
  }
}

std::vector<Element> checked_elements(const Field& f, const std::vector<std::string>& items, const char* what) {
  std::vector<Element> out;
  for (const auto& s : items) {
    try {
      out.push_back(Element::parse(f, s));
    } catch (const Error& e) {
      throw parse_error(std::string("bad ") + what + " '" + s + "': " + e.what());
    }
  }
  return out;
}

DiagonalForm checked_form(const Field& f, const std::string& text) {
  try {
    return DiagonalForm::parse(f, text);
  } catch (const Error& e) {
    throw parse_error("bad form '" + text + "': " + e.what());
  }
}

void parse_range(const std::string& text, int& lo, int& hi) {
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      lo = hi = std::stoi(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } else {
      const std::string a = text.substr(0, dots), b = text.substr(dots + 2);
      lo = std::stoi(a, &used);
      if (used != a.size()) throw std::invalid_argument(a);
      hi = std::stoi(b, &used);
      if (used != b.size()) throw std::invalid_argument(b);
    }
  } catch (const std::logic_error&) {
    throw parse_error("bad range '" + text + "': expected a..b");
  }
  if (lo < 0 || hi < lo) throw parse_error("bad range '" + text + "': need 0 <= a <= b");
}

void validate(const RunConfig& c) {
  if (c.command == "sweep") {
    for (const auto& f : c.fields) checked_field(f);
    for (const auto& p : c.props) {
      if (!is_known_prop(p)) throw parse_error("unknown proposition '" + p + "'");
    }
    if (c.fields.empty()) throw parse_error("--fields is required");
  } else if (c.command == "brown") {
    checked_field(c.base);
    if (c.gammas.empty() && (c.t < 1 || c.t > kMaxBrownDoublings)) throw parse_error("--t must be in 1..4");
  } else {
    const Field f = checked_field(c.field);
    checked_elements(f, c.gammas, "gamma");
    if (!c.form.empty()) checked_form(f, c.form);
    for (const auto& p : c.props) {
      if (!is_known_prop(p)) throw parse_error("unknown proposition '" + p + "'");
    }
  }
  if (c.max_n == 0 || c.height == 0 || c.samples == 0 || c.multiple == 0) {
    throw parse_error("budgets must be positive");
  }
}

std::string basis_name(std::size_t i) { return "f" + std::to_string(i + 1); }

}  // namespace

RunConfig parse_config(int argc, const char* const* argv) {
  RunConfig c;
  CLI::App app{"Cayley-Dickson algebras, quadratic forms and levels over exact fields", "cdalg"};
  app.set_config("--config", "", "Read options from a TOML/INI file");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--report,-o", c.output, "Write the JSON report here instead of stdout");

  auto field_opts = [&](CLI::App* sub) {
    sub->add_option("--field", c.field, "Q, Fp:p, Q(X1..Xm) or Fp:p(X1..Xm)");
    sub->add_option("--gammas", c.gammas, "Doubling parameters")->delimiter(',')->allow_extra_args(false);
  };
  auto budget_opts = [&](CLI::App* sub) {
    sub->add_option("--max-n", c.max_n, "Largest n searched");
    sub->add_option("--height", c.height, "Height bound for searches over Q");
  };
  std::string k_range;
  auto prop_opts = [&](CLI::App* sub) {
    sub->add_option("--props", c.props, "Proposition ids")->delimiter(',')->allow_extra_args(false);
    sub->add_option("--k", k_range, "Range a..b of k");
  };

  auto* algebra = app.add_subcommand("algebra", "Multiplication table and forms of an algebra");
  field_opts(algebra);

  auto* forms = app.add_subcommand("forms", "Build a diagonal form");
  forms->add_option("--field", c.field, "Field descriptor");
  forms->add_option("--form", c.form, "Comma-separated coefficients");
  forms->add_option("--pfister", c.pfister, "Pfister form <<a1,...,an>>")->delimiter(',')->allow_extra_args(false);
  forms->add_option("--orth", c.orth, "Orthogonal sum with this form");
  forms->add_option("--tensor", c.tensor, "Tensor product with this form");
  forms->add_option("--multiple", c.multiple, "n x phi");
  forms->add_option("--scale", c.scale, "Scale by a field element");
  forms->add_flag("--pure", c.pure, "Drop the first coefficient");

  auto* iso = app.add_subcommand("isotropy", "Decide isotropy of a form");
  iso->add_option("--field", c.field, "Field descriptor");
  iso->add_option("--form", c.form, "Comma-separated coefficients")->required();
  iso->add_option("--represents", c.represents, "Also decide whether the form represents this value");
  iso->add_option("--bruteforce-height", c.bruteforce_height, "Cross-check with a box search of this height");

  auto* level = app.add_subcommand("level", "Level and sublevel of an algebra");
  field_opts(level);
  budget_opts(level);
  prop_opts(level);

  auto* sw = app.add_subcommand("sweep", "Test propositions over a grid of instances");
  prop_opts(sw);
  budget_opts(sw);
  sw->add_option("--fields", c.fields, "Field descriptors")->delimiter(',')->allow_extra_args(false);
  sw->add_option("--t", c.doublings, "Numbers of doublings")->delimiter(',')->allow_extra_args(false);
  sw->add_option("--gamma-values", c.gamma_values, "Values each gamma ranges over")
      ->delimiter(',')
      ->allow_extra_args(false);
  sw->add_option("--gammas", c.gammas, "A single fixed gamma vector")->delimiter(',')->allow_extra_args(false);
  sw->add_flag("--division-only", c.division_only, "Keep only instances labelled division");
  sw->add_option("--workers", c.workers, "Worker threads");

  auto* brown = app.add_subcommand("brown", "Brown's division algebras");
  brown->add_option("--t", c.t, "Number of doublings, 1..4");
  brown->add_option("--base", c.base, "Base field Q or Fp:p");
  brown->add_option("--samples", c.samples, "Sampled pairs");
  brown->add_option("--degree", c.degree, "Exponent bound per variable");
  brown->add_option("--seed", c.seed, "Sampler seed");
  brown->add_option("--workers", c.workers, "Worker threads");
  brown->add_option("--field", c.field, "Control instance: field");
  brown->add_option("--gammas", c.gammas, "Control instance: gammas instead of a Brown algebra")
      ->delimiter(',')
      ->allow_extra_args(false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::Success&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw parse_error(e.what());
  }
  for (auto* sub : app.get_subcommands()) c.command = sub->get_name();
  if (!k_range.empty()) parse_range(k_range, c.k_min, c.k_max);
  validate(c);
  return c;
}

namespace {

Outcome run_algebra(const RunConfig& c) {
  const Field f = Field::parse(c.field);
  const Algebra a = build_algebra(f, checked_elements(f, c.gammas, "gamma"));
  Json table = Json::array();
  for (std::size_t i = 0; i < a->dim(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < a->dim(); ++j) {
      const Element s = a->structure_constant(i, j);
      row.push_back(Json{{"coefficient", s.to_string()}, {"basis", basis_name(i ^ j)}});
    }
    table.push_back(row);
  }
  Json report{{"instance", to_json(*a)},
              {"dim", std::to_string(a->dim())},
              {"table", table},
              {"trace_form", to_json(trace_form(*a))},
              {"pure_trace_form", to_json(pure_trace_form(*a))},
              {"norm_form", to_json(norm_form(*a))},
              {"division", to_json(division_label(a))}};
  return {report, 0};
}

Outcome run_forms(const RunConfig& c) {
  const Field f = Field::parse(c.field);
  DiagonalForm phi = c.pfister.empty() ? checked_form(f, c.form) : [&] {
    const auto a = checked_elements(f, c.pfister, "pfister entry");
    return pfister(f, a);
  }();
  if (!c.orth.empty()) phi = orth_sum(phi, checked_form(f, c.orth));
  if (!c.tensor.empty()) phi = tensor(phi, checked_form(f, c.tensor));
  if (c.multiple != 1) phi = scale_multiple(c.multiple, phi);
  if (!c.scale.empty()) phi = scalar_scale(checked_elements(f, {c.scale}, "scale").front(), phi);
  if (c.pure) phi = pure_subform(phi);
  return {Json{{"field", f.to_string()}, {"form", to_json(phi)}, {"dim", std::to_string(phi.dim())}}, 0};
}

Outcome run_isotropy(const RunConfig& c) {
  const Field f = Field::parse(c.field);
  const DiagonalForm phi = checked_form(f, c.form);
  const IsotropyResult r = isotropic(phi);
  Json report = to_json(r);
  report["form"] = to_json(phi);
  report["field"] = f.to_string();
  int code = r.verdict == Verdict::Unknown ? 3 : 0;
  if (c.bruteforce_height > 0) {
    const IsotropyResult b = isotropic_bruteforce(phi, c.bruteforce_height);
    report["bruteforce"] = to_json(b);
    if (b.verdict != Verdict::Unknown && r.verdict != Verdict::Unknown && b.verdict != r.verdict) code = 2;
    if (b.isotropic() && r.anisotropic()) code = 2;
  }
  if (!c.represents.empty()) {
    const Element v = checked_elements(f, {c.represents}, "value").front();
    const Representation rep = represents(phi, v);
    const char* ans = rep.answer == Answer::Yes ? "yes" : rep.answer == Answer::No ? "no" : "unknown";
    Json j{{"value", v.to_string()}, {"answer", ans}};
    if (rep.witness) {
      Json w = Json::array();
      for (const auto& e : *rep.witness) w.push_back(e.to_string());
      j["witness"] = w;
    } else {
      j["witness"] = nullptr;
    }
    report["represents"] = j;
  }
  return {report, code};
}

SearchOptions search_options(const RunConfig& c) {
  SearchOptions s;
  s.max_n = c.max_n;
  s.height = c.height;
  return s;
}

Outcome run_level(const RunConfig& c) {
  const Field f = Field::parse(c.field);
  const Algebra a = build_algebra(f, checked_elements(f, c.gammas, "gamma"));
  const LevelReport lr = compute_levels(a, search_options(c));
  Json report = to_json(lr);
  int code = lr.level.kind == LevelValue::Kind::Unknown ? 3 : 0;
  if (!c.props.empty()) {
    InstanceContext ctx(lr);
    Json tests = Json::array();
    std::size_t violated = 0, consistent = 0;
    for (const auto& p : c.props) {
      for (int k = c.k_min; k <= c.k_max; ++k) {
        const PropTest t = run_test(p, ctx, k);
        violated += t.verdict == TestVerdict::Violated;
        consistent += t.verdict == TestVerdict::Consistent;
        tests.push_back(to_json(t));
      }
    }
    report["tests"] = tests;
    if (violated > 0) {
      code = 2;
    } else if (consistent == 0) {
      code = 3;
    }
  }
  return {report, code};
}

Outcome run_sweep(const RunConfig& c) {
  SweepSpec spec;
  spec.props = c.props.empty() ? known_props() : c.props;
  for (const auto& f : c.fields) spec.fields.push_back(Field::parse(f));
  spec.doublings = c.doublings.empty() ? std::vector<int>{2} : c.doublings;
  spec.gamma_values = c.gamma_values;
  spec.fixed_gammas = c.gammas;
  spec.k_min = c.k_min;
  spec.k_max = c.k_max;
  spec.division_only = c.division_only;
  spec.search = search_options(c);
  spec.workers = c.workers;
  const SweepReport r = sweep(spec);
  return {to_json(r), exit_code_for(r)};
}

Outcome run_brown(const RunConfig& c) {
  SamplerOptions opts;
  opts.samples = c.samples;
  opts.degree = c.degree;
  opts.seed = c.seed;
  opts.workers = c.workers;
  Json report;
  if (!c.gammas.empty()) {
    // Control instance: zero products are expected, so they do not fail the run.
    const Field f = Field::parse(c.field);
    const Algebra a = build_algebra(f, checked_elements(f, c.gammas, "gamma"));
    const ZeroDivisorReport z = zero_divisor_sample_test(a, opts);
    report = Json{{"instance", to_json(*a)}, {"control", true}, {"sampler", to_json(z)}};
    return {report, 0};
  }
  const BrownInstance b = build_brown(c.t, Field::parse(c.base));
  const ZeroDivisorReport z = zero_divisor_sample_test(b.algebra, opts);
  report = Json{{"instance", to_json(*b.algebra)},
                {"t", std::to_string(b.t)},
                {"control", false},
                {"certificate", to_json(division_certificate(b))},
                {"sampler", to_json(z)},
                {"seed", std::to_string(c.seed)},
                {"degree", std::to_string(c.degree)}};
  if (z.first_pair) {
    report["refutation"] = to_json(valuation_parity_refuter(b, z.first_pair->first, z.first_pair->second));
  }
  return {report, z.counterexamples > 0 ? 2 : 0};
}

}  // namespace

Outcome run(const RunConfig& config) {
  if (config.command == "algebra") return run_algebra(config);
  if (config.command == "forms") return run_forms(config);
  if (config.command == "isotropy") return run_isotropy(config);
  if (config.command == "level") return run_level(config);
  if (config.command == "sweep") return run_sweep(config);
  if (config.command == "brown") return run_brown(config);
  throw parse_error("unknown command '" + config.command + "'");
}

void emit_report(const Json& report, const std::string& path) {
  const std::string text = dump(report);
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IOError, "cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw Error(ErrorCode::IOError, "failed writing '" + path + "'");
}

int exit_code_for(const SweepReport& r) {
  if (r.violated > 0) return 2;
  if (r.consistent == 0 && r.inconclusive > 0) return 3;
  return 0;
}

}  // namespace cdalg::cli
