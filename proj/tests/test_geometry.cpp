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

#include <catch2/catch_amalgamated.hpp>

#include "risim/geometry.hpp"
#include "risim/rng.hpp"

using namespace risim;

TEST_CASE("direction_between reference cases") {
    Direction d = direction_between({0, 0, 0}, {1, 0, 0});
    CHECK(d.azimuth == Catch::Approx(0.0).margin(1e-15));
    CHECK(d.elevation == Catch::Approx(0.0).margin(1e-15));

    d = direction_between({0, 0, 0}, {0, 0, 1});
    CHECK(d.elevation == Catch::Approx(kPi / 2));
    CHECK(d.azimuth == 0.0); // canonicalized at the zenith

    d = direction_between({0, 0, 0}, {1, 1, 0});
    CHECK(d.azimuth == Catch::Approx(kPi / 4));
    CHECK(d.elevation == Catch::Approx(0.0).margin(1e-15));

    CHECK_THROWS_AS(direction_between({1, 2, 3}, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("direction round trip through unit vectors") {
    Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        Direction d{rng.uniform(0.0, kTwoPi), rng.uniform(-kPi / 2, kPi / 2)};
        Direction e = Direction::from_unit(d.unit());
        CHECK(e.unit().isApprox(d.unit(), 1e-12));
    }
}

TEST_CASE("ray_hits_rect basic hits and misses") {
    RectSurface rect;
    rect.center = {2, 0, 0};
    rect.normal = {-1, 0, 0};
    rect.width = 1.0;
    rect.height = 0.5;

    auto hit = ray_hits_rect({0, 0, 0}, {1, 0, 0}, rect);
    REQUIRE(hit.has_value());
    CHECK(hit->isApprox(Vec3{2, 0, 0}, 1e-12));

    // parallel to the plane
    CHECK_FALSE(ray_hits_rect({0, 0, 0}, {0, 1, 0}, rect).has_value());
    // behind the origin
    CHECK_FALSE(ray_hits_rect({0, 0, 0}, {-1, 0, 0}, rect).has_value());
}

TEST_CASE("ray 1 mm outside the edge misses, point-sampling oracle agrees") {
    RectSurface rect;
    rect.center = {2, 0, 0};
    rect.normal = {-1, 0, 0};
    rect.width = 1.0;
    rect.height = 0.5;

    // aim just outside the +u edge (u is along -y for this normal)
    Vec3 target{2.0, 0.5 + 0.001, 0.0};
    Vec3 dir = (target - Vec3{0, 0, 0}).normalized();
    CHECK_FALSE(ray_hits_rect({0, 0, 0}, dir, rect).has_value());

    // oracle: dense sampling of the rectangle; no sample point should lie
    // within half the sample spacing of the ray
    Vec3 u, v;
    rect.axes(u, v);
    const int n = 401;
    double min_dist = 1e9;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            Vec3 p = rect.center + (i / double(n - 1) - 0.5) * rect.width * u +
                     (j / double(n - 1) - 0.5) * rect.height * v;
            Vec3 w = p - Vec3{0, 0, 0};
            double d = (w - w.dot(dir) * dir).norm();
            min_dist = std::min(min_dist, d);
        }
    }
    double spacing = rect.width / (n - 1);
    CHECK(min_dist > 0.5 * spacing);
}

TEST_CASE("ray_hits_rect agrees with a sampling oracle on random rays") {
    Rng rng(7);
    RectSurface rect;
    rect.center = {1.0, 0.5, -0.2};
    rect.normal = Vec3{0.3, -1.0, 0.2}.normalized();
    rect.width = 0.8;
    rect.height = 1.3;
    rect.orientation = 0.37;

    Vec3 u, v;
    rect.axes(u, v);
    const int grid_n = 201;
    const double spacing = std::max(rect.width, rect.height) / (grid_n - 1);

    int checked = 0;
    for (int it = 0; it < 1000; ++it) {
        Vec3 origin{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        Direction d{rng.uniform(0.0, kTwoPi), rng.uniform(-kPi / 2, kPi / 2)};
        Vec3 dir = d.unit();
        auto hit = ray_hits_rect(origin, dir, rect);

        // oracle: closest positive-side sample point to the ray
        double min_dist = 1e9;
        for (int i = 0; i < grid_n; ++i) {
            for (int j = 0; j < grid_n; ++j) {
                Vec3 p = rect.center + (i / double(grid_n - 1) - 0.5) * rect.width * u +
                         (j / double(grid_n - 1) - 0.5) * rect.height * v;
                double t = (p - origin).dot(dir);
                if (t <= 0)
                    continue;
                double dist = ((p - origin) - t * dir).norm();
                min_dist = std::min(min_dist, dist);
            }
        }
        // skip rays too close to the decision boundary for the oracle
        if (std::abs(min_dist - spacing) < 2.0 * spacing)
            continue;
        ++checked;
        if (hit.has_value())
            CHECK(min_dist < spacing);
        else
            CHECK(min_dist > spacing);
    }
    CHECK(checked > 500); // the skip rule must not eat the test
}

TEST_CASE("trajectory positions: pads, uniform spacing, velocity") {
    Trajectory t;
    t.start = {0, 0, 1};
    t.end = {0, 1, 1};
    t.n_positions = 128;
    t.n_static_head = 14;
    t.n_static_tail = 14;
    t.speed = 0.01;

    auto pos = trajectory_positions(t);
    REQUIRE(pos.size() == 128);
    for (int i = 0; i < 14; ++i)
        CHECK(pos[static_cast<size_t>(i)] == t.start);
    for (int i = 114; i < 128; ++i)
        CHECK(pos[static_cast<size_t>(i)] == t.end);

    // 100 moving positions spaced 1/99 m apart
    double expect = 1.0 / 99.0;
    for (int i = 14; i < 113; ++i) {
        double d = (pos[static_cast<size_t>(i + 1)] - pos[static_cast<size_t>(i)]).norm();
        CHECK(std::abs(d - expect) < 1e-12);
    }

    CHECK(trajectory_velocity(t, 0).norm() == 0.0);
    CHECK(trajectory_velocity(t, 127).norm() == 0.0);
    CHECK(trajectory_velocity(t, 50).isApprox(Vec3{0, 0.01, 0}, 1e-12));
}

TEST_CASE("trajectory edge cases") {
    Trajectory t;
    t.start = {0, 0, 0};
    t.end = {1, 0, 0};
    t.n_positions = 2;
    auto pos = trajectory_positions(t);
    REQUIRE(pos.size() == 2);
    CHECK(pos[0] == t.start);
    CHECK(pos[1] == t.end);

    // all-static split leaves a single moving position: rejected
    t.n_positions = 5;
    t.n_static_head = 2;
    t.n_static_tail = 2;
    CHECK_THROWS_AS(trajectory_positions(t), std::invalid_argument);

    // zero-length segment with moving positions
    Trajectory z;
    z.start = z.end = {1, 1, 1};
    z.n_positions = 4;
    CHECK_THROWS_AS(trajectory_positions(z), std::invalid_argument);
}

TEST_CASE("specular_image reflects across the plane and is an involution") {
    RectSurface rect;
    rect.center = {1, 0, 0};
    rect.normal = {-1, 0, 0};

    Vec3 img = specular_image({0, 0, 0}, rect);
    CHECK(img.isApprox(Vec3{2, 0, 0}, 1e-12));

    CHECK_THROWS_AS(specular_image({1.0, 0.3, -0.4}, rect), std::invalid_argument);

    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        RectSurface r;
        r.center = {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
        Direction nd{rng.uniform(0.0, kTwoPi), rng.uniform(-kPi / 2, kPi / 2)};
        r.normal = nd.unit();
        Vec3 src{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
        if (std::abs((src - r.center).dot(r.normal)) < 1e-6)
            continue;
        Vec3 twice = specular_image(specular_image(src, r), r);
        CHECK((twice - src).norm() < 1e-12);
    }
}
