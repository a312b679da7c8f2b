#pragma once

#include <string>

#include "json.hpp"

#include "evenlat/glue.hpp"
#include "evenlat/planner.hpp"

namespace evenlat {

using Json = nlohmann::ordered_json;

// Parses JSON text; InvalidInput naming `source`, line and column on error.
Json parse_json(const std::string& text, const std::string& source);

// Indented JSON with arrays of scalars kept on one line.
std::string pretty(const Json& j);

// Integers are JSON numbers when they fit in 64 bits, decimal strings otherwise.
Json to_json(const Int& x);
Json to_json(const IntMatrix& m);
Json rational_to_json(const Rat& x);  // "a/b"

// The readers throw InvalidInput with the JSON pointer of the offending value.
Int int_from_json(const Json& j, const std::string& where);
IntMatrix int_matrix_from_json(const Json& j, const std::string& where);
Rat rational_from_json(const Json& j, const std::string& where);

// {"label": string?, "gram": [[int,...],...]}, or a string naming a built-in.
Json to_json(const IntegralLattice& l);
IntegralLattice lattice_from_json(const Json& j, const std::string& where = "");

// {"ambient": <lattice|label>, "basis": [[int,...],...]}
Json to_json(const Embedding& e);
Embedding embedding_from_json(const Json& j, const std::string& where = "");

// {"orders": [int,...], "q": ["a/b",...], "b": [["a/b",...],...]}
Json to_json(const FiniteQuadraticForm& a);
FiniteQuadraticForm fqf_from_json(const Json& j, const std::string& where = "");

// {"left": FQF, "right": FQF, "graph": [[int,...],...]}
Json to_json(const GlueMap& g);
GlueMap glue_from_json(const Json& j, const std::string& where = "");

// {"matrix": [[int,...],...]}; validated against `lattice`.
Json to_json(const Isometry& g);
Isometry isometry_from_json(const Json& j, const IntegralLattice& lattice, const std::string& where = "");

Json to_json(const Signature& s);
Json to_json(const StabilityReport& r);
Json to_json(const ComponentConstants& c);
Json to_json(const LineClassCount& c);
Json to_json(const IndexPSublattice& s);
Json to_json(const DiscSplit& d);
Json to_json(const GroupReport& r);
Json to_json(const JordanDecomposition& d);
Json to_json(const UnitNormVector& u);
Json to_json(const CoveringCertificate& c);
Json to_json(const TriangleDatum& t);
Json to_json(const BrauerPair& b);

}  // namespace evenlat
