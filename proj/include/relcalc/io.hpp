#pragma once

// JSON file formats. Writers emit canonical documents (canonical bases,
// "gram" omitted for the standard inner product), so write(read(x)) == x
// byte for byte on anything a writer produced.

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "relcalc/harness.hpp"

namespace relcalc::io {

using Json = nlohmann::ordered_json;

Json rational_to_json(const Rational& r);
/// `field` names the offending location in ParseError messages.
Rational rational_from_json(const Json& j, const std::string& field);

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j, const std::string& field, std::size_t expected_size);
/// Row-major array of rows.
Json matrix_to_json(const RatMatrix& m);
RatMatrix matrix_from_json(const Json& j, const std::string& field);

Json space_to_json(const InnerProductSpace& h);
InnerProductSpace space_from_json(const Json& j, const std::string& field = "space");

Json subspace_to_json(const Subspace& w);

Json relation_to_json(const LinearRelation& t);
LinearRelation relation_from_json(const Json& j);

/// The four fields of the format plus "space", the ambient space of the
/// domain basis, which cannot be recovered otherwise.
Json repmap_to_json(const RepresentingMap& q);
RepresentingMap repmap_from_json(const Json& j);

Json witness_to_json(const Witness& w);
Json check_to_json(const CheckResult& r);
Json instance_to_json(const InstanceReport& r);
/// Array of instance objects; the summary line is printed separately.
Json suite_to_json(const SuiteReport& r);

/// Parses text; JSON syntax errors become ParseError.
Json parse(const std::string& text, const std::string& source);
Json read_file(const std::string& path);
/// Two-space indented document with a trailing newline.
std::string dump(const Json& j);
void write_file(const std::string& path, const Json& j);

}  // namespace relcalc::io
