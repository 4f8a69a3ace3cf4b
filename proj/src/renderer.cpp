#include "tsdfpp/renderer.h"

#include <limits>
#include <random>

namespace tsdfpp {

RenderedFrame render_frame(const SceneDescription& scene, int frame_index) {
  const PinholeCamera& cam = scene.camera;
  RenderedFrame frame;
  frame.frame_index = frame_index;
  frame.width = cam.width;
  frame.height = cam.height;
  frame.camera_pose = scene.camera_trajectory.pose_at(frame_index);
  const std::size_t n = static_cast<std::size_t>(cam.width) * cam.height;
  frame.depth.assign(n, 0.0);
  frame.labels.assign(n, 0);
  frame.semantic_mask.assign(n, 0);

  // Primitive poses are fixed for the whole frame.
  std::vector<RigidTransform> poses;
  poses.reserve(scene.primitives.size());
  for (const auto& sp : scene.primitives)
    poses.push_back(sp.trajectory.pose_at(frame_index));

  const Vector3d origin = frame.camera_pose.translation();
  for (int v = 0; v < cam.height; ++v) {
    for (int u = 0; u < cam.width; ++u) {
      const Vector3d dir = frame.camera_pose.rotation() * cam.pixel_ray(u, v);
      double best_t = std::numeric_limits<double>::infinity();
      int best = -1;
      for (std::size_t i = 0; i < scene.primitives.size(); ++i) {
        const auto hit =
            ray_intersect(scene.primitives[i].primitive, poses[i], origin, dir);
        if (hit && *hit < best_t) {
          best_t = *hit;
          best = static_cast<int>(i);
        }
      }
      if (best < 0) continue;
      const std::size_t idx = static_cast<std::size_t>(v) * cam.width + u;
      frame.depth[idx] = best_t;
      const Primitive& prim = scene.primitives[best].primitive;
      if (prim.instance != kBackgroundId) {
        frame.labels[idx] = static_cast<std::uint16_t>(prim.instance);
        if (prim.is_semantic_object)
          frame.semantic_mask[idx] = static_cast<std::uint16_t>(prim.instance);
      }
    }
  }

  if (scene.depth_noise_sigma > 0.0) {
    // Per-frame stream keyed on (seed, frame) so frames are reproducible
    // independently of render order.
    std::mt19937_64 rng(scene.seed * 0x9e3779b97f4a7c15ULL + frame_index + 1);
    std::normal_distribution<double> noise(0.0, scene.depth_noise_sigma);
    for (double& d : frame.depth) {
      if (d > 0.0) d = std::max(0.0, d + noise(rng));
    }
  }

  if (scene.mask_dilate_px != 0)
    degrade_mask(frame.semantic_mask, cam.width, cam.height,
                 scene.mask_dilate_px);

  return frame;
}

void degrade_mask(std::vector<std::uint16_t>& mask, int width, int height,
                  int k) {
  const bool dilate = k > 0;
  for (int iter = 0; iter < std::abs(k); ++iter) {
    std::vector<std::uint16_t> next = mask;
    for (int v = 0; v < height; ++v) {
      for (int u = 0; u < width; ++u) {
        const std::size_t idx = static_cast<std::size_t>(v) * width + u;
        auto neighbor = [&](int du, int dv) -> std::uint16_t {
          const int x = u + du, y = v + dv;
          if (x < 0 || x >= width || y < 0 || y >= height) return 0;
          return mask[static_cast<std::size_t>(y) * width + x];
        };
        if (dilate) {
          if (mask[idx] != 0) continue;
          for (auto [du, dv] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
            if (std::uint16_t m = neighbor(du, dv); m != 0) {
              next[idx] = m;
              break;
            }
          }
        } else {
          if (mask[idx] == 0) continue;
          for (auto [du, dv] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
            if (neighbor(du, dv) != mask[idx]) {
              next[idx] = 0;
              break;
            }
          }
        }
      }
    }
    mask.swap(next);
  }
}

}  // namespace tsdfpp
