#pragma once

#include <string>

#include "bfred/bfredholm.hpp"
#include "bfred/family.hpp"
#include "bfred/fredholm.hpp"
#include "bfred/operator.hpp"
#include "bfred/pathconnect.hpp"
#include "bfred/weyl.hpp"
#include "json.hpp"

namespace bfred::io {

using Json = nlohmann::json;

/* Document conventions: rationals are strings "p/q" (or "p"), never
 * floats; a Gaussian rational is {"re": "p/q", "im": "p/q"} with a bare
 * string meaning a purely real value; a Laurent polynomial maps
 * decimal-string degrees to Gaussian rationals; matrices are row-major
 * arrays of arrays.  Emission always picks the shortest of these forms
 * and sorted keys, so equal values serialize identically. */

Json to_json(const GaussianRational& v);
Json to_json(const LaurentPoly& f);
Json to_json(const ExactMatrix& m);
Json to_json(const BlockOperator& op);
Json to_json(const OperatorFamily& f);
Json to_json(const NormalDiagonalOperator& op);
Json to_json(const NormalFamily& f);
Json to_json(const OperatorPath& p);

/* Parsers validate as they go and throw malformed_document with a field
 * breadcrumb (e.g. "blocks[2].symbol"), so callers can surface the exact
 * offending location. */
GaussianRational gaussian_from_json(const Json& j, const std::string& where = "value");
ParamComplex complex_from_json(const Json& j);
LaurentPoly laurent_from_json(const Json& j, const std::string& where = "symbol");
ExactMatrix matrix_from_json(const Json& j, const std::string& where = "matrix");
BlockOperator operator_from_json(const Json& j, const std::string& where = "operator");
OperatorFamily family_from_json(const Json& j);
NormalDiagonalOperator normal_from_json(const Json& j, const std::string& where = "operator");
NormalFamily normal_family_from_json(const Json& j);
OperatorPath path_from_json(const Json& j);

/* A family document whose operators carry "exceptional"/"tails" holds
 * normal diagonal data; one with "blocks" holds block operators. */
bool describes_normal_family(const Json& j);
bool describes_family(const Json& j);

/* Verdicts and reports (emit only; they are outputs, not inputs). */
Json to_json(const FredholmVerdict& v);
Json to_json(const NullityDefect& nd);
Json to_json(const BFredholmVerdict& v);
Json to_json(const SpectralIndices& s);
Json to_json(const StabilizationReport& r);
Json index_vector_to_json(const IndexVector& u, const ParamComplex& c);
Json to_json(const SpectralReport& r);
Json to_json(const WeylBrowderVerdict& v);
Json to_json(const PathReport& r);
Json to_json(const HomotopyReport& r, const ParamComplex& base);
Json to_json(const LocalConstancyReport& r);

/* Text/file plumbing.  parse_text throws malformed_document with the
 * parser's byte position; load_file throws io_error. */
Json parse_text(const std::string& text);
std::string load_file(const std::string& path);
std::string dump(const Json& j);

}  // namespace bfred::io
