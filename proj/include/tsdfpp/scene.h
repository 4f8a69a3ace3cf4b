#ifndef TSDFPP_SCENE_H_
#define TSDFPP_SCENE_H_

#include <optional>
#include <string>
#include <vector>

#include "tsdfpp/camera.h"
#include "tsdfpp/primitives.h"
#include "tsdfpp/trajectory.h"

namespace tsdfpp {

/// One rigid body in the scene: a primitive on a scripted trajectory.
struct ScenePrimitive {
  Primitive primitive;
  ScriptedTrajectory trajectory;  // empty means static at identity
};

/// Ground-truth rectangle used by the occlusion experiment: the region of the
/// background surface revealed when `removed_instance` is taken out.
struct ExperimentSpec {
  int snapshot_frame = 0;       // background volume is snapshotted after this frame
  ObjectId removed_instance = 0;  // simulator instance id to remove at the end
  Vector3d region_origin = Vector3d::Zero();   // rectangle corner on the surface
  Vector3d region_axis_u = Vector3d::UnitX();  // unit axes spanning the rectangle
  Vector3d region_axis_v = Vector3d::UnitY();
  double region_size_u = 0.0;
  double region_size_v = 0.0;
  int surface_samples = 10000;
};

struct SceneDescription {
  std::string name;
  PinholeCamera camera;
  int frame_count = 0;
  std::uint64_t seed = 0;
  double depth_noise_sigma = 0.0;
  int mask_dilate_px = 0;  // positive dilates detector masks, negative erodes
  ScriptedTrajectory camera_trajectory;
  std::vector<ScenePrimitive> primitives;
  std::optional<ExperimentSpec> experiment;

  void validate() const;
};

SceneDescription load_scene(const std::string& path);
void save_scene(const SceneDescription& scene, const std::string& path);

SceneDescription scene_from_json_text(const std::string& text);
std::string scene_to_json_text(const SceneDescription& scene);

}  // namespace tsdfpp

#endif  // TSDFPP_SCENE_H_
