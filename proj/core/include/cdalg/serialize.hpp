#pragma once

#include <string>

#include "json.hpp"

#include "cdalg/brown.hpp"
#include "cdalg/levels.hpp"
#include "cdalg/propositions.hpp"

namespace cdalg {

using Json = nlohmann::json;

// Every number goes out as an exact string; object keys come out sorted.

Json to_json(const Element& e);
Json to_json(const CDElement& x);
Json to_json(const std::vector<CDElement>& xs);
Json to_json(const AlgebraSpec& a);
Json to_json(const DiagonalForm& phi);
Json to_json(const CertificateNode& node);
Json to_json(const IsotropyResult& r);
Json to_json(const LevelValue& v);
Json to_json(const DivisionLabel& d);
Json to_json(const LevelReport& r);
Json to_json(const PropTest& t);
Json to_json(const InstanceReport& r);
Json to_json(const SweepReport& r);
Json to_json(const ZeroDivisorReport& r);
Json to_json(const Refutation& r);

/// Inverse of to_json(CDElement): an array of coefficient expressions.
CDElement cdelement_from_json(const Algebra& a, const Json& j);

/// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

}  // namespace cdalg
