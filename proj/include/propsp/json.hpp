#pragma once

#include <json.hpp>

#include "propsp/compat.hpp"
#include "propsp/schatten.hpp"
#include "propsp/spectra.hpp"

namespace propsp {

using Json = nlohmann::ordered_json;

/// Non-finite numbers become null.
Json json_number(double v);
/// [[re, im], ...] row-major.
Json json_matrix(const Matrix& m);
Json json_values(const Vector& v);

Json to_json(const CompatReport& r);
Json to_json(const SpectrumReport& r);
Json to_json(const RieszResult& r);
Json to_json(const VVPlusReport& r);
Json to_json(const ZCriterion& r);
Json to_json(const SylvesterResult& r);
Json to_json(const CqReport& r);
Json to_json(const TwoCompanionsReport& r);
Json to_json(const AdzNormReport& r);

}  // namespace propsp
