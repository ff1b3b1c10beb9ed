// SPDX-License-Identifier: Apache-2.0
//
// risim - RIS-assisted mmWave channel simulation and analysis
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <optional>
#include <vector>

#include "risim/geometry.hpp"
#include "risim/ris.hpp"

namespace risim {

// Static description of the synthetic room: the TX position, the RX run,
// the reflective panel with its position sensor, the reflecting/scattering
// rectangles and an optional absorbing blocker. Surfaces tagged
// Material::scatterer act as point scatterers located at their center;
// surfaces tagged Material::ris occlude rays but do not spawn image-method
// reflections (the panel handles its own scattering).
struct SceneLayout {
    Vec3 tx = Vec3::Zero();
    Trajectory rx_trajectory;
    RisPanel ris;
    VisionSensor vision;
    std::vector<RectSurface> surfaces;
    std::optional<RectSurface> blocker;

    void validate() const;
};

// Default indoor layout: TX in the south-west corner, a 1 m RX run along
// the y axis, the panel on a stand east of the run with a metal whiteboard
// on the wall behind it, two cabinets (wood and glass) on the north wall,
// a handful of point scatterers, and an absorbing blocker sized so the
// direct path disappears from position 40 of 128 onward.
//
// All coordinates are plausible placements, not surveyed values.
SceneLayout default_scene();

} // namespace risim
