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

#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "lsqpe/surgery.h"

namespace lsqpe {

/// SVG 1.1 drawing of the patch grid. Stabiliser faces are grey (X) and
/// blue (Z); routing slots are dashed; factories and their storage patches
/// sit around the top corners.
///
/// With a step, the merged routing region is shaded and the boundary
/// stabilisers that form the product measurement get green markers. A Y
/// letter adds a twist defect (yellow), a half-blue half-grey domain wall
/// and, on the moved layout, arrows for the extra connections. A rotation
/// step also merges the |T> patch along its Z boundary.
///
/// Output is byte-for-byte deterministic.
std::string render_layout(const LayoutSpec& layout, const SurgeryStep* step = nullptr);

/// Renders step `index` of the schedule, or the idle layout when no index is
/// given. Throws std::out_of_range for an index past the last step.
std::string render_layout(const SurgerySchedule& schedule, std::optional<std::size_t> index);

}  // namespace lsqpe
