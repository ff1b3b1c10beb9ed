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

#include "risim/scene.hpp"

#include <stdexcept>

namespace risim {

void SceneLayout::validate() const {
    if (!tx.allFinite())
        throw std::invalid_argument("SceneLayout: tx position must be finite");
    trajectory_positions(rx_trajectory); // throws on an invalid trajectory
    ris.validate();
    vision.validate();
    for (const auto& s : surfaces)
        s.validate();
    if (blocker) {
        blocker->validate();
        if (blocker->material != Material::absorber)
            throw std::invalid_argument("SceneLayout: blocker must be tagged as absorber");
    }
}

SceneLayout default_scene() {
    SceneLayout s;
    s.tx = Vec3{-1.5, -1.25, 1.0};

    s.rx_trajectory.start = Vec3{0.0, 0.0, 1.0};
    s.rx_trajectory.end = Vec3{0.0, 1.0, 1.0};
    s.rx_trajectory.n_positions = 128;
    s.rx_trajectory.n_static_head = 14;
    s.rx_trajectory.n_static_tail = 14;
    s.rx_trajectory.speed = 0.01;

    s.ris.center = Vec3{0.8, 0.1, 1.0};
    s.ris.normal = -Vec3::UnitX();

    RectSurface whiteboard;
    whiteboard.center = Vec3{1.8, 0.0, 1.0};
    whiteboard.normal = -Vec3::UnitX();
    whiteboard.width = 1.4;
    whiteboard.height = 1.0;
    whiteboard.material = Material::metal;
    s.surfaces.push_back(whiteboard);

    RectSurface wood_cabinet;
    wood_cabinet.center = Vec3{-0.95, 2.2, 1.0};
    wood_cabinet.normal = -Vec3::UnitY();
    wood_cabinet.width = 0.9;
    wood_cabinet.height = 1.2;
    wood_cabinet.material = Material::wood;
    s.surfaces.push_back(wood_cabinet);

    RectSurface glass_cabinet;
    glass_cabinet.center = Vec3{-0.2, 2.2, 1.0};
    glass_cabinet.normal = -Vec3::UnitY();
    glass_cabinet.width = 0.6;
    glass_cabinet.height = 1.2;
    glass_cabinet.material = Material::glass;
    s.surfaces.push_back(glass_cabinet);

    auto scatterer = [](double x, double y, double z) {
        RectSurface r;
        r.center = Vec3{x, y, z};
        r.normal = Vec3::UnitX();
        r.width = 0.05;
        r.height = 0.05;
        r.material = Material::scatterer;
        return r;
    };
    // clutter near the TX (swallowed by the blocker together with the
    // direct path) and two survivors elsewhere in the room
    s.surfaces.push_back(scatterer(-0.9, -0.5, 1.1));
    s.surfaces.push_back(scatterer(-1.1, -1.0, 0.9));
    s.surfaces.push_back(scatterer(-0.7, -0.75, 1.05));
    s.surfaces.push_back(scatterer(-0.5, 1.8, 1.2));
    s.surfaces.push_back(scatterer(1.5, 1.2, 0.8));

    // Absorbing screen between the TX and the later part of the run. The
    // south edge is calibrated so the direct path is cut from position 40
    // of 128 onward.
    RectSurface blocker;
    blocker.center = Vec3{-0.3, 0.268, 1.0};
    blocker.normal = Vec3::UnitX();
    blocker.width = 0.624;
    blocker.height = 1.6;
    blocker.material = Material::absorber;
    s.blocker = blocker;

    return s;
}

} // namespace risim
