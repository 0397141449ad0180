#pragma once

#include <nlohmann/json.hpp>

#include "fw/tate.hpp"

namespace fw {

using json = nlohmann::ordered_json;

json to_json(const Eigenvalue& ev);
json to_json(const Spectrum& s);
json to_json(const ZetaFunction& z);
json to_json(const CaseReport& r);
json to_json(const GammaNorm& n);

} // namespace fw
