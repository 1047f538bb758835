#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "causality/causal_history.hpp"
#include "causality/itc.hpp"
#include "causality/scalar_clocks.hpp"
#include "causality/universe.hpp"
#include "causality/vector_clock.hpp"

namespace causality {

struct AreaColumn {
  std::string label;
  std::uint64_t height = 0;
  std::optional<std::uint64_t> dot;
  bool owned = false;

  bool operator==(const AreaColumn&) const = default;
};

/// Column-per-identity picture of a clock: known events stack up to the
/// column height, a dot may float above it, and owned columns are marked.
struct AreaDiagram {
  std::vector<AreaColumn> columns;
  bool operator==(const AreaDiagram&) const = default;
};

AreaDiagram diagram_of(const VectorClock& v, std::optional<std::string_view> owner = std::nullopt);
/// The owner defaults to the node of the dot.
AreaDiagram diagram_of(const DottedClock& d, std::optional<std::string_view> owner = std::nullopt);
/// Gap-free histories only; the dot (if any) floats above its column and
/// its node is the default owner.
AreaDiagram diagram_of(const CausalHistory& h, const Universe& universe,
                       std::optional<std::string_view> owner = std::nullopt);
/// One shared column.
AreaDiagram diagram_of(const LamportStamp& s);
AreaDiagram diagram_of(const PlausibleClock& c, std::optional<std::size_t> owned_entry = std::nullopt);
/// Discretizes the unit interval into 2^depth columns; depth defaults to
/// the stamp's own maximum tree depth.
AreaDiagram diagram_of(const ItcStamp& s, std::optional<unsigned> depth = std::nullopt);

/// Rows from the tallest cell down to 1 (`#` known, `o` dot, space
/// otherwise), then the ownership row (`^`/`-`) and the label row. Every
/// line is exactly `2 * columns - 1` characters wide.
std::string render_ascii(const AreaDiagram& d);

}  // namespace causality
