#pragma once

#include <json.hpp>

#include <string>

#include "webq/braid.hpp"
#include "webq/operator_q.hpp"
#include "webq/skeleton.hpp"
#include "webq/stab.hpp"
#include "webq/webs.hpp"

namespace webq::io {

using nlohmann::json;

struct ParseError : Error {
    using Error::Error;
};

/// Whitespace-separated signed generator indices, e.g. "1 2 -1".
BraidWord parseWordText(const std::string& text, int n);
std::string wordText(const BraidWord& w);

/// Comma-separated labels, e.g. "1,2,3".
std::vector<int> parseLabels(const std::string& text);

json laurentJson(const Laurent& p);
Laurent laurentFromJson(const json& j);

json operatorJson(const OperatorQ& op);

/// {"n":..., "N":..., "gamma":[...], "prefix":[...], "period":[...]} with an
/// optional embedded "cert" carrying the word's color-completeness witness.
struct WordFile {
    InfiniteBraidWord word;
    Coloring gamma;
    std::optional<CompletenessCertificate> cert;
};

json infiniteWordJson(const InfiniteBraidWord& w, const Coloring& gamma);
WordFile infiniteWordFromJson(const json& j);

/// {"head":[[a,b],...], "tail":{"start":..., "stride":..., "pattern":[[dA,dB],...]}}
json certificateJson(const CompletenessCertificate& c);
CompletenessCertificate certificateFromJson(const json& j);

json skeletonJson(const ComplexSkeleton& s);
json conePresentationJson(const ConePresentation& c);

json biInfiniteJson(const BiInfiniteWord& w);
BiInfiniteWord biInfiniteFromJson(const json& j);

json stabReportJson(const StabReport& r);

json loadJsonFile(const std::string& path);

}  // namespace webq::io
