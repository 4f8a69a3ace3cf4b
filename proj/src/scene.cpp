#include "tsdfpp/scene.h"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tsdfpp {

using nlohmann::json;

namespace {

Vector3d vec3(const json& j) {
  if (!j.is_array() || j.size() != 3)
    throw std::invalid_argument("expected a 3-element array");
  return Vector3d(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

json to_json(const Vector3d& v) { return json::array({v.x(), v.y(), v.z()}); }

RigidTransform pose_from_json(const json& j) {
  const Vector3d t = j.contains("t") ? vec3(j.at("t")) : Vector3d::Zero();
  const Vector3d aa =
      j.contains("axis_angle") ? vec3(j.at("axis_angle")) : Vector3d::Zero();
  return RigidTransform::from_axis_angle(aa, t);
}

json pose_to_json(const RigidTransform& pose) {
  Eigen::AngleAxisd aa(pose.rotation());
  json j;
  j["t"] = to_json(pose.translation());
  j["axis_angle"] = to_json(aa.angle() * aa.axis());
  return j;
}

ScriptedTrajectory trajectory_from_json(const json& j) {
  std::vector<ScriptedTrajectory::Keyframe> keys;
  for (const auto& k : j) {
    keys.push_back({k.at("frame").get<int>(), pose_from_json(k)});
  }
  return ScriptedTrajectory(std::move(keys));
}

json trajectory_to_json(const ScriptedTrajectory& traj) {
  json j = json::array();
  for (const auto& k : traj.keyframes()) {
    json e = pose_to_json(k.pose);
    e["frame"] = k.frame;
    j.push_back(e);
  }
  return j;
}

Primitive primitive_from_json(const json& j) {
  Primitive prim;
  const std::string shape = j.at("shape").get<std::string>();
  if (shape == "plane") {
    PlaneShape p;
    if (j.contains("point")) p.point = vec3(j.at("point"));
    if (j.contains("normal")) p.normal = vec3(j.at("normal")).normalized();
    if (j.contains("axis_u")) p.axis_u = vec3(j.at("axis_u")).normalized();
    if (j.contains("half_extents")) {
      const auto& he = j.at("half_extents");
      p.half_extents = Eigen::Vector2d(he[0].get<double>(), he[1].get<double>());
    }
    prim.shape = p;
  } else if (shape == "box") {
    BoxShape b;
    b.half_extents = vec3(j.at("half_extents"));
    prim.shape = b;
  } else if (shape == "sphere") {
    SphereShape s;
    s.radius = j.at("radius").get<double>();
    prim.shape = s;
  } else {
    throw std::invalid_argument("unknown primitive shape: " + shape);
  }
  prim.instance = j.at("instance").get<ObjectId>();
  prim.is_semantic_object = j.value("semantic", false);
  prim.name = j.value("name", std::string());
  prim.validate();
  return prim;
}

json primitive_to_json(const Primitive& prim) {
  json j;
  if (const auto* p = std::get_if<PlaneShape>(&prim.shape)) {
    j["shape"] = "plane";
    j["point"] = to_json(p->point);
    j["normal"] = to_json(p->normal);
    j["axis_u"] = to_json(p->axis_u);
    j["half_extents"] = json::array({p->half_extents.x(), p->half_extents.y()});
  } else if (const auto* b = std::get_if<BoxShape>(&prim.shape)) {
    j["shape"] = "box";
    j["half_extents"] = to_json(b->half_extents);
  } else if (const auto* s = std::get_if<SphereShape>(&prim.shape)) {
    j["shape"] = "sphere";
    j["radius"] = s->radius;
  }
  j["instance"] = prim.instance;
  j["semantic"] = prim.is_semantic_object;
  if (!prim.name.empty()) j["name"] = prim.name;
  return j;
}

}  // namespace

void SceneDescription::validate() const {
  camera.validate();
  if (frame_count < 0) throw std::invalid_argument("frame_count must be >= 0");
  if (depth_noise_sigma < 0.0)
    throw std::invalid_argument("depth_noise_sigma must be >= 0");
  for (const auto& sp : primitives) sp.primitive.validate();
}

SceneDescription scene_from_json_text(const std::string& text) {
  json j = json::parse(text);
  SceneDescription scene;
  scene.name = j.value("name", std::string());

  const json& cam = j.at("camera");
  scene.camera.fx = cam.at("fx").get<double>();
  scene.camera.fy = cam.at("fy").get<double>();
  scene.camera.cx = cam.at("cx").get<double>();
  scene.camera.cy = cam.at("cy").get<double>();
  scene.camera.width = cam.at("width").get<int>();
  scene.camera.height = cam.at("height").get<int>();

  scene.frame_count = j.at("frames").get<int>();
  scene.seed = j.value("seed", std::uint64_t{0});
  scene.depth_noise_sigma = j.value("depth_noise_sigma", 0.0);
  scene.mask_dilate_px = j.value("mask_dilate_px", 0);

  if (j.contains("camera_trajectory"))
    scene.camera_trajectory = trajectory_from_json(j.at("camera_trajectory"));

  for (const auto& pj : j.at("primitives")) {
    ScenePrimitive sp;
    sp.primitive = primitive_from_json(pj);
    if (pj.contains("trajectory"))
      sp.trajectory = trajectory_from_json(pj.at("trajectory"));
    scene.primitives.push_back(std::move(sp));
  }

  if (j.contains("experiment")) {
    const json& e = j.at("experiment");
    ExperimentSpec spec;
    spec.snapshot_frame = e.at("snapshot_frame").get<int>();
    spec.removed_instance = e.at("removed_instance").get<ObjectId>();
    spec.region_origin = vec3(e.at("region_origin"));
    spec.region_axis_u = vec3(e.at("region_axis_u")).normalized();
    spec.region_axis_v = vec3(e.at("region_axis_v")).normalized();
    spec.region_size_u = e.at("region_size_u").get<double>();
    spec.region_size_v = e.at("region_size_v").get<double>();
    spec.surface_samples = e.value("surface_samples", 10000);
    scene.experiment = spec;
  }

  scene.validate();
  return scene;
}

std::string scene_to_json_text(const SceneDescription& scene) {
  json j;
  if (!scene.name.empty()) j["name"] = scene.name;
  j["camera"] = {{"fx", scene.camera.fx},   {"fy", scene.camera.fy},
                 {"cx", scene.camera.cx},   {"cy", scene.camera.cy},
                 {"width", scene.camera.width}, {"height", scene.camera.height}};
  j["frames"] = scene.frame_count;
  j["seed"] = scene.seed;
  j["depth_noise_sigma"] = scene.depth_noise_sigma;
  j["mask_dilate_px"] = scene.mask_dilate_px;
  j["camera_trajectory"] = trajectory_to_json(scene.camera_trajectory);
  j["primitives"] = json::array();
  for (const auto& sp : scene.primitives) {
    json pj = primitive_to_json(sp.primitive);
    if (!sp.trajectory.empty()) pj["trajectory"] = trajectory_to_json(sp.trajectory);
    j["primitives"].push_back(pj);
  }
  if (scene.experiment) {
    const ExperimentSpec& e = *scene.experiment;
    j["experiment"] = {{"snapshot_frame", e.snapshot_frame},
                       {"removed_instance", e.removed_instance},
                       {"region_origin", to_json(e.region_origin)},
                       {"region_axis_u", to_json(e.region_axis_u)},
                       {"region_axis_v", to_json(e.region_axis_v)},
                       {"region_size_u", e.region_size_u},
                       {"region_size_v", e.region_size_v},
                       {"surface_samples", e.surface_samples}};
  }
  return j.dump(2);
}

SceneDescription load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scene file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return scene_from_json_text(ss.str());
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed scene file " + path + ": " + e.what());
  }
}

void save_scene(const SceneDescription& scene, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scene file: " + path);
  out << scene_to_json_text(scene) << "\n";
}

}  // namespace tsdfpp
