#pragma once

#include <optional>
#include <string>

#include "dkg/field.hpp"

namespace dkg {

// 32-byte header ("DKGF", version, n, components, L, padding) followed by
// little-endian (re, im) doubles per component per node, row-major. A JSON
// sidecar `<path>.json` records the grid and, if given, the time grid/time.
void write_snapshot(const std::string& path, const Field& f, std::optional<TimeGrid> tg = std::nullopt,
                    double t = 0.0);
Field read_snapshot(const std::string& path);

}  // namespace dkg
