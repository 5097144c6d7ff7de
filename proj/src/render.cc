// Copyright 2026 The lsqpe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lsqpe/render.h"

#include <fmt/format.h>

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace lsqpe {

namespace {

// All geometry is in half data-qubit units; one unit is 16 px.
constexpr int kHalf = 8;
constexpr const char* kXColor = "#b3b3b3";
constexpr const char* kZColor = "#6fa8dc";
constexpr const char* kMerge = "#2e9d3a";
constexpr const char* kTwist = "#f4d03f";

class Canvas {
 public:
  Canvas(const LayoutSpec& l, std::size_t title_chars) {
    margin_ = l.factories > 0 ? 2 * (3 * l.d + 4) : 2;
    top_ = margin_ + 4;  // room for the title
    width_ = std::max<int>((2 * l.grid_width() + 2 * margin_) * kHalf,
                           static_cast<int>(title_chars) * 8 + 2 * margin_ * kHalf);
    height_ = (2 * l.grid_height() + top_ + 2) * kHalf;
  }

  // Grid half-units to pixels.
  int px(int hx) const { return (hx + margin_) * kHalf; }
  int py(int hy) const { return (hy + top_) * kHalf; }

  template <typename... Args>
  void emit(fmt::format_string<Args...> f, Args&&... args) {
    fmt::format_to(std::back_inserter(out_), f, std::forward<Args>(args)...);
    out_.push_back('\n');
  }

  void rect(int hx, int hy, int hw, int hh, const char* fill, const char* extra = "") {
    emit(R"(<rect x="{}" y="{}" width="{}" height="{}" fill="{}"{}/>)", px(hx), py(hy), hw * kHalf,
         hh * kHalf, fill, extra);
  }

  void dot(int hx, int hy, int r, const char* fill) {
    emit(R"(<circle cx="{}" cy="{}" r="{}" fill="{}"/>)", px(hx), py(hy), r, fill);
  }

  void text(int hx, int hy, const std::string& s, int size = 12) {
    emit(R"(<text x="{}" y="{}" font-family="sans-serif" font-size="{}">{}</text>)", px(hx), py(hy),
         size, s);
  }

  // Half-disc on the chord between two boundary qubits, bulging to the left
  // of the direction of travel.
  void half_disc(int hx1, int hy1, int hx2, int hy2, const char* fill) {
    emit(R"(<path d="M {} {} A {} {} 0 0 1 {} {} Z" fill="{}"/>)", px(hx1), py(hy1), kHalf, kHalf,
         px(hx2), py(hy2), fill);
  }

  void arrow(int hx1, int hy1, int hx2, int hy2) {
    emit(R"svg(<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}" stroke-width="1.5" marker-end="url(#arrow)"/>)svg",
         px(hx1), py(hy1), px(hx2), py(hy2), kMerge);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::string& out() { return out_; }

 private:
  int margin_ = 0, top_ = 0, width_ = 0, height_ = 0;
  std::string out_;
};

// d x d rotated surface-code patch with its top-left qubit at data-qubit
// coordinates (x, y).
void draw_patch(Canvas& c, int d, int x, int y, const std::string& label) {
  auto qx = [&](int i) { return 2 * (x + i) + 1; };
  auto qy = [&](int j) { return 2 * (y + j) + 1; };
  for (int j = 0; j + 1 < d; ++j)
    for (int i = 0; i + 1 < d; ++i)
      c.rect(qx(i), qy(j), 2, 2, (i + j) % 2 == 0 ? kXColor : kZColor);
  // Weight-two boundary stabilisers: X along top and bottom, Z on the sides.
  for (int i = 0; i + 1 < d; ++i) {
    if (i % 2 == 1) c.half_disc(qx(i), qy(0), qx(i + 1), qy(0), kXColor);
    if ((i + d - 1) % 2 == 0) c.half_disc(qx(i + 1), qy(d - 1), qx(i), qy(d - 1), kXColor);
  }
  for (int j = 0; j + 1 < d; ++j) {
    if (j % 2 == 0) c.half_disc(qx(0), qy(j + 1), qx(0), qy(j), kZColor);
    if ((d - 1 + j) % 2 == 1) c.half_disc(qx(d - 1), qy(j), qx(d - 1), qy(j + 1), kZColor);
  }
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) c.dot(qx(i), qy(j), 3, "#000000");
  c.text(2 * x, 2 * (y + d) + 2, label, 10);
}

void draw_factories(Canvas& c, const LayoutSpec& l) {
  const int d = l.d, f = 2 * (d + 1), w = l.grid_width();
  struct Place {
    int fx, fy, sx, sy;
  };
  // Left of the top-left corner, above it, above the top-right corner, right of it.
  const Place places[4] = {
      {-(f + d + 2), 0, -(d + 1), 0},
      {0, -(f + d + 2), 0, -(d + 1)},
      {w - f, -(f + d + 2), w - d, -(d + 1)},
      {w + d + 2, 0, w + 1, 0},
  };
  for (int k = 0; k < l.factories; ++k) {
    const Place& p = places[k];
    c.rect(2 * p.fx, 2 * p.fy, 2 * f, 2 * f, "#fde9c9", R"( stroke="#b07d2b")");
    c.text(2 * p.fx + 1, 2 * p.fy + 3, fmt::format("factory {}", k), 10);
    draw_patch(c, d, p.sx, p.sy, "storage");
  }
}

const PatchSlot* data_slot(const std::vector<PatchSlot>& slots, std::uint32_t q) {
  for (const auto& s : slots)
    if (s.role == SlotRole::Data && s.qubit == static_cast<int>(q)) return &s;
  throw std::invalid_argument("step touches a qubit outside the layout");
}

void draw_step(Canvas& c, const LayoutSpec& l, const SurgeryStep& step) {
  const int d = l.d;
  const auto slots = l.slots();
  const PatchSlot* magic = nullptr;
  for (const auto& s : slots)
    if (s.role == SlotRole::MagicState) magic = &s;

  // Merged routing region: the top row between the touched columns.
  int lo = 1 << 20, hi = -1;
  for (auto q : step.qubits) {
    const PatchSlot* s = data_slot(slots, q);
    lo = std::min(lo, s->col);
    hi = std::max(hi, s->col);
  }
  const bool uses_magic = step.op == SurgeryOp::Rotation && magic != nullptr;
  if (uses_magic) hi = std::max(hi, magic->col - 1);
  if (hi < 0) return;
  const int x0 = l.method == Method::Direct ? 0 : 1;
  const int rx = x0 + lo * (d + 1), rw = (hi - lo + 1) * (d + 1);
  c.rect(2 * rx, 0, 2 * rw, 2 * (d + 1), "#d9f2d9", R"( stroke="#2e9d3a" stroke-dasharray="4 2")");

  for (std::size_t k = 0; k < step.qubits.size(); ++k) {
    const PatchSlot* s = data_slot(slots, step.qubits[k]);
    const char letter = k < step.basis.size() ? step.basis[k] : 'Z';
    const bool top = letter == 'Z' || letter == 'Y';
    const bool side = letter == 'X' || letter == 'Y';
    if (top)
      for (int i = 0; i < d; ++i) c.dot(2 * (s->x + i) + 1, 2 * s->y - 1, 4, kMerge);
    if (side) {
      c.rect(2 * (s->x + d), 2 * (s->y - 1), 2, 2 * (d + 1), "#d9f2d9");
      for (int j = 0; j < d; ++j) c.dot(2 * (s->x + d) + 1, 2 * (s->y + j) + 1, 4, kMerge);
    }
    if (letter == 'Y') {
      // Domain wall through the routing space above the patch corner.
      const int wx = 2 * (s->x + d) - 1, wy = 2 * (s->y - d - 1) + 2;
      c.rect(wx, wy, 1, 2 * d, kZColor);
      c.rect(wx + 1, wy, 1, 2 * d, kXColor);
      c.dot(2 * (s->x + d), 2 * s->y, 6, kTwist);
      if (l.method == Method::Moved)
        for (int j = 0; j < d; ++j) {
          c.arrow(wx - 1, wy + 2 * j + 1, wx + 3, wy + 2 * j + 1);
          c.arrow(2 * (s->x + d) + 1, 2 * (s->y + j), 2 * (s->x + d) + 1, 2 * (s->y + j) + 2);
        }
    }
  }
  if (uses_magic)
    for (int j = 0; j < d; ++j) c.dot(2 * magic->x - 1, 2 * (magic->y + j) + 1, 4, kMerge);
}

std::string title(const LayoutSpec& l, const SurgeryStep* step) {
  std::string t = fmt::format("{} layout, d={}", method_name(l.method), l.d);
  if (!step) return t + ", idle";
  t += ", " + op_name(step->op);
  if (!step->basis.empty()) {
    t += " ";
    for (std::size_t k = 0; k < step->basis.size(); ++k) {
      if (k) t += "\u2297";
      t += step->basis[k];
    }
  }
  if (step->op == SurgeryOp::Rotation) t += "\u2297Z on |T&gt;";
  if (!step->qubits.empty()) {
    t += " on q";
    for (std::size_t k = 0; k < step->qubits.size(); ++k) t += (k ? ",q" : "") + std::to_string(step->qubits[k]);
  }
  return t;
}

}  // namespace

std::string render_layout(const LayoutSpec& layout, const SurgeryStep* step) {
  layout.validate();
  const int d = layout.d;
  const std::string heading = title(layout, step);
  Canvas c(layout, heading.size());
  c.emit(R"(<?xml version="1.0" encoding="UTF-8"?>)");
  c.emit(R"(<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">)",
         c.width(), c.height(), c.width(), c.height());
  c.emit(R"(<defs><marker id="arrow" markerWidth="6" markerHeight="6" refX="5" refY="3" orient="auto"><path d="M 0 0 L 6 3 L 0 6 Z" fill="{}"/></marker></defs>)",
         kMerge);
  c.emit(R"(<rect x="0" y="0" width="{}" height="{}" fill="#ffffff"/>)", c.width(), c.height());
  c.text(0, -3, heading, 14);

  // Data-qubit sites of the whole grid.
  c.rect(0, 0, 2 * layout.grid_width(), 2 * layout.grid_height(), "none", R"( stroke="#999999")");
  for (int j = 0; j < layout.grid_height(); ++j)
    for (int i = 0; i < layout.grid_width(); ++i) c.dot(2 * i + 1, 2 * j + 1, 2, "#dddddd");

  for (const auto& s : layout.slots()) {
    if (s.role == SlotRole::Routing) {
      c.rect(2 * s.x, 2 * s.y, 2 * d, 2 * d, "#f5f5f5", R"( stroke="#999999" stroke-dasharray="3 3")");
      c.text(2 * s.x + 1, 2 * s.y + 3, "routing", 10);
    }
  }
  if (step) draw_step(c, layout, *step);
  for (const auto& s : layout.slots()) {
    if (s.role == SlotRole::Data) draw_patch(c, d, s.x, s.y, fmt::format("q{}", s.qubit));
    if (s.role == SlotRole::MagicState) draw_patch(c, d, s.x, s.y, "|T&gt;");
  }
  draw_factories(c, layout);
  c.emit("</svg>");
  return std::move(c.out());
}

std::string render_layout(const SurgerySchedule& schedule, std::optional<std::size_t> index) {
  if (!index) return render_layout(schedule.layout, nullptr);
  if (*index >= schedule.steps.size())
    throw std::out_of_range(fmt::format("step {} is out of range (schedule has {} steps)", *index,
                                        schedule.steps.size()));
  return render_layout(schedule.layout, &schedule.steps[*index]);
}

}  // namespace lsqpe
