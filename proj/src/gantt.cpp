#include "lineforward/gantt.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <vector>

#include "lineforward/engine.hpp"

namespace lineforward {

namespace {

constexpr const char* kPalette[] = {
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1",
    "#edc948", "#76b7b2", "#ff9da7", "#9c755f", "#bab0ac",
};
constexpr int kPaletteSize = static_cast<int>(sizeof(kPalette) / sizeof(kPalette[0]));
constexpr const char* kUnlabeledColor = "#999999";

std::string escape_xml(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Blocks in order of first appearance in the packet list.
std::vector<std::string> block_order(const Instance& instance) {
  std::vector<std::string> order;
  for (const Packet& p : instance.packets) {
    if (p.block.empty()) continue;
    if (std::find(order.begin(), order.end(), p.block) == order.end())
      order.push_back(p.block);
  }
  return order;
}

std::map<std::string, std::string> block_colors(const Instance& instance) {
  std::map<std::string, std::string> colors;
  int next = 0;
  for (const std::string& block : block_order(instance))
    colors[block] = kPalette[next++ % kPaletteSize];
  return colors;
}

// Step between axis labels, at most limit labels over span cells.
long long nice_step(long long span, long long limit) {
  long long step = 1;
  while (true) {
    for (long long unit : {step, 2 * step, 5 * step})
      if ((span + unit - 1) / unit <= limit) return unit;
    step *= 10;
  }
}

struct Run {
  Time start = 0;
  Time end = 0;  // inclusive
  std::string block;
  PacketId only_packet = 0;  // meaningful when the run is a single assignment
  int hops = 0;
};

// Contiguous same-block stretches per router. Unlabeled assignments never merge.
std::map<RouterIndex, std::vector<Run>> merged_runs(const Instance& instance,
                                                    const Trace& trace) {
  std::map<PacketId, std::string> label;
  for (const Packet& p : instance.packets) label[p.id] = p.block;

  std::map<RouterIndex, std::vector<Run>> result;
  for (const Assignment& a : trace.assignments) {
    auto& runs = result[a.router];
    const std::string& block = label.at(a.packet);
    if (!runs.empty() && !block.empty() && runs.back().block == block &&
        runs.back().end + 1 == a.t) {
      runs.back().end = a.t;
      runs.back().hops += 1;
    } else {
      runs.push_back({a.t, a.t, block, a.packet, 1});
    }
  }
  return result;
}

void check_valid(const Instance& instance, const Trace& trace) {
  auto violations = validate_trace(instance, trace);
  if (!violations.empty())
    throw std::invalid_argument("gantt: trace invalid: " +
                                to_string(violations.front()));
}

// One chart drawn at offset (x0, y0). Returns the drawn width in pixels.
void draw_chart(std::ostringstream& svg, const Instance& instance,
                const Trace& trace, const std::string& title, Time columns,
                int x0, int y0, const GanttOptions& opt) {
  const int cw = opt.cell_width;
  const int ch = opt.cell_height;
  const int left = 70;
  const int top = 24;
  const long long rows = std::max<long long>(instance.k, 1);
  const long long plot_w = columns * cw;
  const long long plot_h = rows * ch;

  svg << "<text x=\"" << x0 << "\" y=\"" << (y0 + 14) << "\" class=\"title\">"
      << escape_xml(title) << "</text>\n";

  // Axes: left and bottom edges of the plot area.
  const long long ax = x0 + left;
  const long long ay = y0 + top;
  svg << "<path d=\"M" << ax << " " << ay << " V" << (ay + plot_h) << " H"
      << (ax + std::max<long long>(plot_w, 1)) << "\" class=\"axis\"/>\n";

  const long long row_step = nice_step(rows, 24);
  for (long long i = 1; i <= instance.k; i += row_step) {
    svg << "<text x=\"" << (ax - 4) << "\" y=\""
        << (ay + (i - 1) * ch + ch / 2 + 4) << "\" text-anchor=\"end\">r" << i
        << "</text>\n";
  }
  if (columns > 0) {
    const long long tick_step = nice_step(columns, 16);
    for (long long t = 0; t < columns; t += tick_step) {
      svg << "<path d=\"M" << (ax + t * cw) << " " << (ay + plot_h) << " v4\" "
          << "class=\"axis\"/>\n"
          << "<text x=\"" << (ax + t * cw) << "\" y=\"" << (ay + plot_h + 14)
          << "\">" << t << "</text>\n";
    }
  }

  auto colors = block_colors(instance);
  auto fill_of = [&](const std::string& block) -> std::string {
    if (block.empty()) return kUnlabeledColor;
    return colors.at(block);
  };

  for (const auto& [router, runs] : merged_runs(instance, trace)) {
    const long long ry = ay + (router - 1) * static_cast<long long>(ch);
    for (const Run& run : runs) {
      const long long rx = ax + run.start * cw;
      const long long rw = (run.end - run.start + 1) * cw;
      svg << "<rect x=\"" << rx << "\" y=\"" << (ry + 1) << "\" width=\"" << rw
          << "\" height=\"" << (ch - 2) << "\" fill=\"" << fill_of(run.block)
          << "\"><title>";
      if (run.hops == 1 && run.block.empty())
        svg << "packet " << run.only_packet;
      else if (run.hops == 1)
        svg << escape_xml(run.block) << " packet " << run.only_packet;
      else
        svg << escape_xml(run.block) << " (" << run.hops << " hops)";
      svg << " t=" << run.start;
      if (run.end != run.start) svg << ".." << run.end;
      svg << " router " << router << "</title></rect>\n";
      // Label runs wide enough to hold the text.
      if (!run.block.empty() &&
          rw >= 7 * static_cast<long long>(run.block.size()) + 2)
        svg << "<text x=\"" << (rx + rw / 2) << "\" y=\"" << (ry + ch / 2 + 4)
            << "\" text-anchor=\"middle\" class=\"cell\">"
            << escape_xml(run.block) << "</text>\n";
    }
  }

  if (opt.annotate_releases) {
    // First release of each block, marked on its origin row.
    std::map<std::string, const Packet*> first;
    for (const Packet& p : instance.packets) {
      if (p.block.empty()) continue;
      auto [it, inserted] = first.try_emplace(p.block, &p);
      if (!inserted && p.release < it->second->release) it->second = &p;
    }
    for (const std::string& block : block_order(instance)) {
      const Packet* p = first.at(block);
      const long long mx = ax + p->release * cw;
      const long long my = ay + (p->origin - 1) * static_cast<long long>(ch);
      svg << "<path d=\"M" << mx << " " << my << " l3 -5 h-6 z\" fill=\""
          << fill_of(block) << "\"><title>" << escape_xml(block)
          << " released t=" << p->release << " at router " << p->origin
          << "</title></path>\n";
    }
  }
}

}  // namespace

std::string gantt_svg(const Instance& instance, const Trace& trace,
                      const std::string& title, const GanttOptions& options) {
  check_valid(instance, trace);
  const Time columns = trace.horizon + 1;
  const long long width =
      70 + columns * options.cell_width + 20;
  const long long height =
      24 + std::max<long long>(instance.k, 1) * options.cell_height + 30;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n"
      << "<style>text{font:10px monospace;fill:#333}"
      << ".title{font-weight:bold}.cell{fill:#fff}"
      << ".axis{stroke:#333;fill:none}</style>\n"
      << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"#ffffff\"/>\n";
  draw_chart(svg, instance, trace, title, columns, 0, 0, options);
  svg << "</svg>\n";
  return svg.str();
}

std::string gantt_svg_pair(const Instance& instance, const Trace& left,
                           const std::string& left_title, const Trace& right,
                           const std::string& right_title,
                           const GanttOptions& options) {
  check_valid(instance, left);
  check_valid(instance, right);
  const Time columns = std::max(left.horizon, right.horizon) + 1;
  const long long chart_w = 70 + columns * options.cell_width + 20;
  const long long width = 2 * chart_w;
  const long long height =
      24 + std::max<long long>(instance.k, 1) * options.cell_height + 30;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n"
      << "<style>text{font:10px monospace;fill:#333}"
      << ".title{font-weight:bold}.cell{fill:#fff}"
      << ".axis{stroke:#333;fill:none}</style>\n"
      << "<rect width=\"" << width << "\" height=\"" << height
      << "\" fill=\"#ffffff\"/>\n";
  draw_chart(svg, instance, left, left_title, columns, 0, 0, options);
  draw_chart(svg, instance, right, right_title, columns,
             static_cast<int>(chart_w), 0, options);
  svg << "</svg>\n";
  return svg.str();
}

std::string gantt_text(const Instance& instance, const Trace& trace) {
  check_valid(instance, trace);
  const Time columns = trace.horizon + 1;
  const long long cells = static_cast<long long>(columns) * instance.k;
  if (cells > 200000)
    throw std::invalid_argument("gantt_text: grid too large (" +
                                std::to_string(cells) + " cells)");

  const std::string alphabet =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";
  auto order = block_order(instance);
  std::map<std::string, char> letter;
  for (std::size_t i = 0; i < order.size(); ++i)
    letter[order[i]] = i < alphabet.size() ? alphabet[i] : '?';

  std::map<PacketId, std::string> label;
  for (const Packet& p : instance.packets) label[p.id] = p.block;

  std::vector<std::string> grid(static_cast<std::size_t>(instance.k) + 1,
                                std::string(static_cast<std::size_t>(columns), '.'));
  for (const Assignment& a : trace.assignments) {
    const std::string& block = label.at(a.packet);
    grid[a.router][static_cast<std::size_t>(a.t)] =
        block.empty() ? '#' : letter.at(block);
  }

  std::ostringstream out;
  int name_w = static_cast<int>(std::to_string(instance.k).size());
  for (RouterIndex i = 1; i <= instance.k; ++i) {
    std::string num = std::to_string(i);
    out << "router " << std::string(name_w - num.size(), ' ') << num << " |"
        << grid[i] << "|\n";
  }
  out << std::string(9 + name_w, ' ') << "t=0";
  if (columns > 1) out << " .. " << (columns - 1);
  out << "\n";
  for (const std::string& block : order)
    out << letter.at(block) << " = " << block << "\n";
  return out.str();
}

}  // namespace lineforward
