#include "cdalg/serialize.hpp"

#include "cdalg/errors.hpp"

namespace cdalg {

namespace {

std::string num(std::size_t n) { return std::to_string(n); }

Json elements(const std::vector<Element>& v) {
  Json arr = Json::array();
  for (const auto& e : v) arr.push_back(e.to_string());
  return arr;
}

}  // namespace

Json to_json(const Element& e) { return e.to_string(); }

Json to_json(const CDElement& x) { return elements(x.coeffs()); }

Json to_json(const std::vector<CDElement>& xs) {
  Json arr = Json::array();
  for (const auto& x : xs) arr.push_back(to_json(x));
  return arr;
}

Json to_json(const AlgebraSpec& a) {
  return Json{{"field", a.field().to_string()}, {"gammas", elements(a.gammas())}};
}

Json to_json(const DiagonalForm& phi) { return elements(phi.coeffs()); }

Json to_json(const CertificateNode& node) {
  Json j{{"branch", node.branch}, {"verdict", std::string(to_string(node.verdict))}};
  j["variable"] = node.variable < 0 ? Json(nullptr) : Json("X" + std::to_string(node.variable + 1));
  Json idx = Json::array();
  for (auto i : node.indices) idx.push_back(num(i));
  j["indices"] = idx;
  if (node.variable < 0) j["residue"] = node.residue;
  Json kids = Json::array();
  for (const auto& c : node.children) kids.push_back(to_json(c));
  j["children"] = kids;
  return j;
}

Json to_json(const IsotropyResult& r) {
  Json j{{"verdict", std::string(to_string(r.verdict))}, {"method", r.method}};
  j["witness"] = r.witness ? elements(*r.witness) : Json(nullptr);
  if (r.certificate) j["certificate"] = to_json(*r.certificate);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json to_json(const LevelValue& v) { return v.to_string(); }

Json to_json(const DivisionLabel& d) {
  Json j{{"status", std::string(to_string(d.status))}, {"reason", d.reason}};
  if (d.zero_divisors) j["zero_divisors"] = Json::array({to_json(d.zero_divisors->first), to_json(d.zero_divisors->second)});
  return j;
}

Json to_json(const LevelReport& r) {
  Json trace = Json::array();
  for (const auto& b : r.bounds_trace) {
    trace.push_back(Json{{"prop", b.prop},
                         {"form", to_json(b.form)},
                         {"result", to_json(b.result)},
                         {"implied", b.implied.empty() ? Json(nullptr) : Json(b.implied)}});
  }
  return Json{{"instance", to_json(*r.algebra)},
              {"level", to_json(r.level)},
              {"sublevel", to_json(r.sublevel)},
              {"method", r.method},
              {"witnesses", Json{{"level", to_json(r.level_witness)}, {"sublevel", to_json(r.sublevel_witness)}}},
              {"bounds_trace", trace},
              {"division", to_json(r.division)},
              {"notes", r.notes}};
}

Json to_json(const PropTest& t) {
  Json j{{"prop", t.prop},
         {"k", std::to_string(t.k)},
         {"lhs", t.lhs},
         {"rhs", t.rhs},
         {"verdict", std::string(to_string(t.verdict))}};
  if (!t.reason.empty()) j["reason"] = t.reason;
  return j;
}

Json to_json(const InstanceReport& r) {
  Json j = to_json(r.levels);
  j["instance"] = Json{{"field", r.field.to_string()}, {"gammas", elements(r.gammas)}};
  Json tests = Json::array();
  for (const auto& t : r.tests) tests.push_back(to_json(t));
  j["tests"] = tests;
  if (!r.reproduce.empty()) j["reproduce"] = r.reproduce;
  return j;
}

Json to_json(const SweepReport& r) {
  Json inst = Json::array();
  for (const auto& i : r.instances) inst.push_back(to_json(i));
  return Json{{"instances", inst},
              {"summary", Json{{"instances", num(r.instances.size())},
                               {"consistent", num(r.consistent)},
                               {"violated", num(r.violated)},
                               {"inconclusive", num(r.inconclusive)}}}};
}

Json to_json(const ZeroDivisorReport& r) {
  Json j{{"samples", num(r.samples)}, {"counterexamples", num(r.counterexamples)}};
  j["first_index"] = r.first_index ? Json(num(*r.first_index)) : Json(nullptr);
  j["first_pair"] = r.first_pair ? Json::array({to_json(r.first_pair->first), to_json(r.first_pair->second)}) : Json(nullptr);
  return j;
}

Json to_json(const Refutation& r) {
  Json j{{"case", r.case_id}, {"explanation", r.explanation}};
  if (r.orders) {
    j["orders"] = Json{{"m", std::to_string(r.orders->m)},
                       {"n", std::to_string(r.orders->n)},
                       {"p", std::to_string(r.orders->p)},
                       {"r", std::to_string(r.orders->r)}};
  }
  j["broken_step"] = r.broken_step.empty() ? Json(nullptr) : Json(r.broken_step);
  return j;
}

CDElement cdelement_from_json(const Algebra& a, const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "element must be a JSON array");
  std::vector<Element> c;
  for (const auto& e : j) {
    if (!e.is_string()) throw Error(ErrorCode::ParseError, "coefficients must be strings");
    c.push_back(Element::parse(a->field(), e.get<std::string>()));
  }
  return CDElement(a, std::move(c));
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace cdalg
