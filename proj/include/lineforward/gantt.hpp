#pragma once

#include <string>

#include "lineforward/core.hpp"

namespace lineforward {

struct GanttOptions {
  int cell_width = 10;
  int cell_height = 16;
  bool annotate_releases = true;
};

// Renders a schedule as a standalone SVG: one row per router, one column per
// step, contiguous same-block runs merged into single rectangles, block
// releases marked on the origin row. Output is deterministic for a given
// instance and trace (integer coordinates, block colors assigned in first
// appearance order). The trace must validate. An empty trace yields a frame
// with axes only.
std::string gantt_svg(const Instance& instance, const Trace& trace,
                      const std::string& title, const GanttOptions& options = {});

// Two schedules of the same instance side by side on a shared time scale.
std::string gantt_svg_pair(const Instance& instance, const Trace& left,
                           const std::string& left_title, const Trace& right,
                           const std::string& right_title,
                           const GanttOptions& options = {});

// Plain-text rendering for terminals: one line per router, one character per
// step (block letter, '#' for unlabeled, '.' for idle), plus a legend.
// Throws when the grid would exceed 200000 cells.
std::string gantt_text(const Instance& instance, const Trace& trace);

}  // namespace lineforward
