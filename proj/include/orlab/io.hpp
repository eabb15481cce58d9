#pragma once

#include <string>

#include <json.hpp>

#include "orlab/collapse.hpp"
#include "orlab/folding.hpp"
#include "orlab/pictures.hpp"

namespace orlab {

using Json = nlohmann::json;

/// Compact dump with sorted keys and a trailing newline. Every writer below
/// orders entries by id, so parse -> serialize is byte-stable.
std::string dump_canonical(const Json& j);
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Complex: {"vertices":[v],"edges":[[id,src,dst]],"cells":[[id,[[edge,sign],...]]]}.
// A cell with a nonzero basepoint carries it as a third entry.
Json complex_to_json(const TwoComplex& k);
TwoComplex complex_from_json(const Json& j);

// Map: "vertex_map":[[id,image]], "edge_map":[[id,image,sign]],
// "cell_map":[[id,image,rotation,degree]], plus "source" and "target".
Json map_to_json(const CombMap& f);
CombMap map_from_json(const Json& j);

/// Complex fields plus "e" and, when present, "alpha".
Json enlargement_to_json(const SimpleEnlargement& y);
/// Reads the complex and recognises it as an enlargement. "e" defaults to
/// `e` and "alpha" to `alpha` when the document omits them.
SimpleEnlargement enlargement_from_json(const Json& j, std::optional<Id> e = std::nullopt,
                                        std::optional<Id> alpha = std::nullopt);

Json path_to_json(const std::vector<DirectedEdge>& path);
std::vector<DirectedEdge> path_from_json(const Json& j);

// Picture: "surface":{"genus","boundary"}, "vertices":[[[edge,sign],...]],
// "arcs":[[label,end,end]] with end {"vertex","slot"} or {"boundary","index"},
// "circles":[label].
Json picture_to_json(const Picture& p);
Picture picture_from_json(const Json& j);

Json word_to_json(const Word& w);
Json bigint_to_json(const BigInt& v);
Json betti_to_json(const BettiVector& b);
Json violations_to_json(const ValidationReport& r);
Json fold_to_json(const FoldResult& r);
Json certificate_to_json(const CollapseCertificate& c);
CollapseCertificate certificate_from_json(const Json& j);
Json stuck_to_json(const StuckWitness& s);
Json split_to_json(const RelatorSplit& s);
Json classification_to_json(const EdgeClassification& c);

}  // namespace orlab
