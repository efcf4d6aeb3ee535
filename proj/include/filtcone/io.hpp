#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "filtcone/cone.hpp"
#include "filtcone/persistence.hpp"
#include "filtcone/verifier.hpp"

namespace filtcone::io {

using Json = nlohmann::ordered_json;

/// Parse failure or a document that names unknown ids.
class ParseError : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

Json parse_text(const std::string& text, const std::string& origin);
Json read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const Json& doc);

/// {"name", "generators": [{"id", "filtration"}], "boundary": {id: [ids]}}; keys sorted,
/// generators with zero differential omitted.
Json to_json(const FilteredComplex& c);
/// Builds the complex; structural problems throw ParseError. Validity is not checked here.
FilteredComplex complex_from_json(const Json& doc);

/// A complex given inline or as a path (relative to base_dir).
FilteredComplex complex_from_ref(const Json& ref, const std::filesystem::path& base_dir);

/// {"source", "target", "shift", "matrix"}; matrix keys sorted, zero columns omitted.
Json to_json(const FilteredLinearMap& f);
FilteredMap map_from_json(const Json& doc, const std::filesystem::path& base_dir);

/// Reassociation spec: {"E", "F", "G" (inline or path), "f": {"shift", "matrix"} from F to G,
/// "g": {"shift", "matrix"} from E into [F -> G], whose F-generators carry the "F." prefix}.
struct ReassocSpec {
    FilteredComplex e;
    ConeInput inner;
    FilteredMap g;
    double s_g = 0.0;
};
ReassocSpec reassoc_spec_from_json(const Json& doc, const std::filesystem::path& base_dir);

Json to_json(ExtendedReal v);
Json to_json(const Barcode& b);
Json to_json(const InvariantProfile& p);
Json to_json(const NamedCheck& c);
Json to_json(const SuiteReport& r);
Json to_json(const DemoReport& r);
Json to_json(const CampaignReport& r);
Json to_json(const RefilterResult& r);
Json to_json(const ReassocResult& r);

/// "sigma+ = -inf, sigma- = inf, rho = -inf, beta = 3"
std::string profile_line(const InvariantProfile& p);

}  // namespace filtcone::io
