#include "tsdfpp/pipeline.h"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tsdfpp/image_io.h"
#include "tsdfpp/log.h"
#include "tsdfpp/map_io.h"
#include "tsdfpp/mesh_io.h"
#include "tsdfpp/meshing.h"
#include "tsdfpp/metrics.h"
#include "tsdfpp/pose_update.h"
#include "tsdfpp/trajectory_io.h"

namespace tsdfpp {

namespace fs = std::filesystem;
using nlohmann::json;

Frame SimulatorSource::frame(int index) {
  const RenderedFrame rendered = render_frame(scene_, index);
  Frame f;
  f.index = index;
  f.width = rendered.width;
  f.height = rendered.height;
  f.depth.resize(rendered.depth.size());
  for (std::size_t i = 0; i < rendered.depth.size(); ++i)
    f.depth[i] = static_cast<float>(rendered.depth[i]);
  f.labels = rendered.labels;
  f.semantic_mask = rendered.semantic_mask;
  f.camera_q = Eigen::Quaterniond(rendered.camera_pose.rotation());
  f.camera_t = rendered.camera_pose.translation();
  return f;
}

namespace {

std::string frame_name(const char* stem, int index, const char* ext) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s_%06d.%s", stem, index, ext);
  return buf;
}

class DatasetSource : public FrameSource {
 public:
  explicit DatasetSource(std::string dir) : dir_(std::move(dir)) {
    const fs::path root(dir_);
    if (!fs::is_directory(root))
      throw std::runtime_error("dataset directory not found: " + dir_);

    const fs::path cam_path = root / "camera.json";
    if (!fs::exists(cam_path))
      throw std::runtime_error("no frames found in " + dir_ +
                               " (missing camera.json)");
    std::ifstream cam_in(cam_path);
    json cj = json::parse(cam_in);
    camera_.fx = cj.at("fx").get<double>();
    camera_.fy = cj.at("fy").get<double>();
    camera_.cx = cj.at("cx").get<double>();
    camera_.cy = cj.at("cy").get<double>();
    camera_.width = cj.at("width").get<int>();
    camera_.height = cj.at("height").get<int>();
    camera_.validate();

    const fs::path traj = root / "trajectory.txt";
    if (!fs::exists(traj))
      throw std::runtime_error("no frames found in " + dir_ +
                               " (missing trajectory.txt)");
    poses_ = read_trajectory(traj.string());
    if (poses_.empty())
      throw std::runtime_error("no frames found in " + dir_);
  }

  int frame_count() const override { return static_cast<int>(poses_.size()); }
  const PinholeCamera& camera() const override { return camera_; }

  Frame frame(int index) override {
    if (index < 0 || index >= frame_count())
      throw std::runtime_error("dataset frame " + std::to_string(index) +
                               " out of range");
    Frame f;
    f.index = index;

    const fs::path root(dir_);
    const std::string depth_path =
        (root / "depth" / frame_name("depth", index, "pfm")).string();
    const std::string label_path =
        (root / "labels" / frame_name("labels", index, "pgm")).string();
    if (!fs::exists(depth_path))
      throw std::runtime_error("missing depth image for frame " +
                               std::to_string(index) + ": " + depth_path);
    if (!fs::exists(label_path))
      throw std::runtime_error("missing label image for frame " +
                               std::to_string(index) + ": " + label_path);

    int w = 0, h = 0;
    f.depth = read_pfm(depth_path, &w, &h);
    if (w != camera_.width || h != camera_.height)
      throw std::runtime_error("frame " + std::to_string(index) +
                               ": depth size does not match intrinsics");
    f.labels = read_pgm16(label_path, &w, &h);
    if (w != camera_.width || h != camera_.height)
      throw std::runtime_error("frame " + std::to_string(index) +
                               ": label size does not match intrinsics");

    const std::string mask_path =
        (root / "masks" / frame_name("masks", index, "pgm")).string();
    if (fs::exists(mask_path)) {
      f.semantic_mask = read_pgm16(mask_path, &w, &h);
      if (w != camera_.width || h != camera_.height)
        throw std::runtime_error("frame " + std::to_string(index) +
                                 ": mask size does not match intrinsics");
    } else {
      f.semantic_mask.assign(f.labels.size(), 0);
    }

    f.width = camera_.width;
    f.height = camera_.height;
    const RigidTransform& pose = poses_[index].pose;
    f.camera_q = pose.quaternion();
    f.camera_t = pose.translation();
    return f;
  }

 private:
  std::string dir_;
  PinholeCamera camera_;
  std::vector<TimedPose> poses_;
};

}  // namespace

std::unique_ptr<FrameSource> ingest_dataset(const std::string& directory) {
  return std::make_unique<DatasetSource>(directory);
}

DatasetInfo read_dataset_info(const std::string& directory) {
  DatasetInfo info;
  const fs::path root(directory);
  if (fs::exists(root / "meta.json")) {
    std::ifstream in(root / "meta.json");
    json j = json::parse(in);
    if (j.contains("seed")) info.seed = j.at("seed").get<std::uint64_t>();
  }
  if (fs::exists(root / "experiment.json")) {
    std::ifstream in(root / "experiment.json");
    std::stringstream ss;
    ss << in.rdbuf();
    // Reuse the scene parser for the experiment block.
    json j = json::parse(ss.str());
    ExperimentSpec spec;
    spec.snapshot_frame = j.at("snapshot_frame").get<int>();
    spec.removed_instance = j.at("removed_instance").get<ObjectId>();
    auto vec3 = [](const json& a) {
      return Vector3d(a[0].get<double>(), a[1].get<double>(), a[2].get<double>());
    };
    spec.region_origin = vec3(j.at("region_origin"));
    spec.region_axis_u = vec3(j.at("region_axis_u")).normalized();
    spec.region_axis_v = vec3(j.at("region_axis_v")).normalized();
    spec.region_size_u = j.at("region_size_u").get<double>();
    spec.region_size_v = j.at("region_size_v").get<double>();
    spec.surface_samples = j.value("surface_samples", 10000);
    info.experiment = spec;
  }
  return info;
}

void PipelineConfig::validate() const {
  grid.validate();
  if (scene_path.empty() == dataset_dir.empty())
    throw std::invalid_argument(
        "exactly one of scene file or dataset directory must be given");
  if (segmentation.tau_overlap <= 0.0 || segmentation.tau_overlap > 1.0)
    throw std::invalid_argument("tau_overlap must be in (0, 1]");
  if (association.vote_fraction_min <= 0.0 || association.vote_fraction_min > 1.0)
    throw std::invalid_argument("vote_fraction_min must be in (0, 1]");
  if (segmentation.min_segment_points < 1)
    throw std::invalid_argument("min_segment_points must be >= 1");
}

void PipelineConfig::apply_grid_defaults() {
  grid.truncation_distance = 10.0 * grid.voxel_size;
  integration.truncation_distance = grid.truncation_distance;
  tracking.max_correspondence_distance = 5.0 * grid.voxel_size;
}

std::string ExperimentReport::to_json_text() const {
  json j;
  j["mode"] = mode;
  j["frames"] = frames;
  j["experiment_evaluated"] = experiment_evaluated;
  j["completeness"] = completeness;
  j["hole_count"] = hole_count;
  j["background_bitwise_preserved"] = background_bitwise_preserved;
  j["region_voxels_compared"] = region_voxels_compared;
  j["peak_total_blocks"] = peak_total_blocks;
  j["peak_global_blocks"] = peak_global_blocks;
  j["object_count"] = object_count;
  j["stage_order"] = stage_order;
  return j.dump(2);
}

ExperimentReport ExperimentReport::from_json_text(const std::string& text) {
  json j = json::parse(text);
  ExperimentReport r;
  r.mode = j.at("mode").get<std::string>();
  r.frames = j.at("frames").get<int>();
  r.experiment_evaluated = j.at("experiment_evaluated").get<bool>();
  r.completeness = j.at("completeness").get<double>();
  r.hole_count = j.at("hole_count").get<int>();
  r.background_bitwise_preserved =
      j.at("background_bitwise_preserved").get<bool>();
  r.region_voxels_compared = j.at("region_voxels_compared").get<std::size_t>();
  r.peak_total_blocks = j.at("peak_total_blocks").get<std::size_t>();
  r.peak_global_blocks = j.at("peak_global_blocks").get<std::size_t>();
  r.object_count = j.at("object_count").get<int>();
  r.stage_order = j.at("stage_order").get<std::vector<std::string>>();
  return r;
}

bool ExperimentReport::operator==(const ExperimentReport& other) const {
  return mode == other.mode && frames == other.frames &&
         experiment_evaluated == other.experiment_evaluated &&
         completeness == other.completeness && hole_count == other.hole_count &&
         background_bitwise_preserved == other.background_bitwise_preserved &&
         region_voxels_compared == other.region_voxels_compared &&
         peak_total_blocks == other.peak_total_blocks &&
         peak_global_blocks == other.peak_global_blocks &&
         object_count == other.object_count && stage_order == other.stage_order;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool in_region(const Vector3d& p, const ExperimentSpec& spec) {
  const Vector3d rel = p - spec.region_origin;
  const double u = rel.dot(spec.region_axis_u);
  const double v = rel.dot(spec.region_axis_v);
  return u >= 0.0 && u <= spec.region_size_u && v >= 0.0 &&
         v <= spec.region_size_v;
}

/// Bitwise comparison of two TSDF layers over voxels whose centers project
/// into the experiment rectangle. Returns {equal, voxels_compared}.
std::pair<bool, std::size_t> compare_region(const BlockLayer<TsdfVoxel>& a,
                                            const BlockLayer<TsdfVoxel>& b,
                                            const ExperimentSpec& spec,
                                            const GridParams& params) {
  std::set<BlockIndex, Vector3iLess> blocks;
  for (const BlockIndex& idx : a.sorted_block_indices()) blocks.insert(idx);
  for (const BlockIndex& idx : b.sorted_block_indices()) blocks.insert(idx);

  bool equal = true;
  std::size_t compared = 0;
  const int s = params.voxels_per_block_side;
  const TsdfVoxel unobserved{};
  for (const BlockIndex& bi : blocks) {
    const VoxelIndex origin = bi * s;
    for (int z = 0; z < s; ++z)
      for (int y = 0; y < s; ++y)
        for (int x = 0; x < s; ++x) {
          const VoxelIndex g(origin.x() + x, origin.y() + y, origin.z() + z);
          if (!in_region(grid_to_world(g, params), spec)) continue;
          const TsdfVoxel* va = a.voxel_ptr(g);
          const TsdfVoxel* vb = b.voxel_ptr(g);
          const TsdfVoxel& ra = va ? *va : unobserved;
          const TsdfVoxel& rb = vb ? *vb : unobserved;
          if (!ra.observed() && !rb.observed()) continue;
          ++compared;
          if (ra.distance != rb.distance || ra.weight != rb.weight) equal = false;
        }
  }
  return {equal, compared};
}

std::string format_report_text(const ExperimentReport& r) {
  std::ostringstream out;
  out << "mapping run report\n";
  out << "mode: " << r.mode << "\n";
  out << "frames: " << r.frames << "\n";
  out << "objects: " << r.object_count << "\n";
  out << "peak_blocks_total: " << r.peak_total_blocks << "\n";
  out << "peak_blocks_global: " << r.peak_global_blocks << "\n";
  out << "stage_order:";
  for (const auto& s : r.stage_order) out << " " << s;
  out << "\n";
  if (r.experiment_evaluated) {
    out << "experiment:\n";
    out << "  revealed_region_completeness: " << std::setprecision(9)
        << r.completeness << "\n";
    out << "  hole_count: " << r.hole_count << "\n";
    out << "  background_bitwise_preserved: "
        << (r.background_bitwise_preserved ? "yes" : "no") << "\n";
    out << "  region_voxels_compared: " << r.region_voxels_compared << "\n";
  }
  return out.str();
}

struct StageTimer {
  double segmentation = 0.0;
  double association = 0.0;
  double tracking = 0.0;
  double map_update = 0.0;
};

}  // namespace

PipelineResult run_pipeline_on_source(FrameSource& source,
                                      const PipelineConfig& cfg,
                                      const std::optional<ExperimentSpec>& experiment,
                                      std::uint64_t seed) {
  const PinholeCamera& cam = source.camera();
  cam.validate();

  auto map = cfg.load_map_path.empty()
                 ? std::make_unique<GlobalMap>(cfg.grid, cfg.mode)
                 : std::make_unique<GlobalMap>(load_map(cfg.load_map_path));

  ExperimentReport report;
  report.mode =
      cfg.mode == MapMode::kTsdfPlusPlus ? "tsdfpp" : "standard";
  report.stage_order = {"segmentation", "association", "tracking", "map_update"};

  const bool write_artifacts = !cfg.output_dir.empty();
  const fs::path out_dir(cfg.output_dir);
  if (write_artifacts) {
    fs::create_directories(out_dir / "meshes");
    fs::create_directories(out_dir / "trajectories");
  }
  const bool export_frames = !cfg.export_frames_dir.empty();
  const fs::path export_dir(cfg.export_frames_dir);
  if (export_frames) {
    fs::create_directories(export_dir / "depth");
    fs::create_directories(export_dir / "labels");
    fs::create_directories(export_dir / "masks");
  }

  StageTimer totals;
  std::ofstream timings;
  if (write_artifacts) {
    timings.open(out_dir / "timings.txt");
    timings << "# frame segmentation_ms association_ms tracking_ms "
               "map_update_ms\n";
  }

  std::map<ObjectId, RigidTransform> last_motion;      // ICP warm starts
  std::map<ObjectId, RigidTransform> cumulative_pose;  // object trajectories
  std::map<ObjectId, std::vector<TimedPose>> object_tracks;
  std::map<std::uint32_t, ObjectId> instance_to_object;
  std::vector<TimedPose> camera_track;

  std::optional<BlockLayer<TsdfVoxel>> background_snapshot;

  const int frame_count = source.frame_count();
  for (int fi = 0; fi < frame_count; ++fi) {
    Frame f = source.frame(fi);
    if (f.width != cam.width || f.height != cam.height)
      throw std::runtime_error("frame " + std::to_string(fi) +
                               ": size does not match intrinsics");
    const RigidTransform T_WC = f.camera_pose();
    camera_track.push_back({static_cast<double>(fi), T_WC});

    if (export_frames) {
      write_pfm((export_dir / "depth" / frame_name("depth", fi, "pfm")).string(),
                f.depth, f.width, f.height);
      write_pgm16(
          (export_dir / "labels" / frame_name("labels", fi, "pgm")).string(),
          f.labels, f.width, f.height);
      write_pgm16(
          (export_dir / "masks" / frame_name("masks", fi, "pgm")).string(),
          f.semantic_mask, f.width, f.height);
    }

    // (i) per-frame segmentation: geometric segments fused with detector
    // masks.
    auto t0 = Clock::now();
    std::vector<FrameSegment> segments = extract_segments(
        f.depth, f.labels, cam, T_WC, cfg.segmentation.min_segment_points);
    segments = fuse_masks(std::move(segments), f.semantic_mask, f.width,
                          f.height, cfg.segmentation.tau_overlap);
    const double dt_segment = seconds_since(t0);

    // (ii) data association by voxel voting.
    t0 = Clock::now();
    segments = associate_segments(*map, std::move(segments), cfg.association);
    for (const FrameSegment& seg : segments) {
      if (seg.is_semantic_object && seg.matched_object)
        instance_to_object[seg.provisional_label] = *seg.matched_object;
    }
    const double dt_associate = seconds_since(t0);

    // (iii) pose tracking of detected objects against the pre-update map.
    t0 = Clock::now();
    std::vector<std::pair<ObjectId, RigidTransform>> motions;
    std::vector<ObjectId> visible_tracked;
    for (const FrameSegment& seg : segments) {
      const ObjectId id = *seg.matched_object;
      if (!seg.is_semantic_object || id == kBackgroundId) continue;
      if (map->volume(id).tsdf.empty()) continue;  // first sight, nothing to track yet
      const TriangleMesh mesh = extract_mesh(map->volume(id), cfg.grid);
      if (mesh.vertices.size() < 12) continue;
      const RigidTransform guess = last_motion.count(id)
                                       ? last_motion.at(id)
                                       : RigidTransform::identity();
      const auto result = track_object(seg.points, mesh.vertices, mesh.normals,
                                       guess, cfg.tracking);
      if (!result) {
        visible_tracked.push_back(id);  // pose held
        continue;
      }
      last_motion[id] = result->T_O;
      motions.emplace_back(id, result->T_O);
      visible_tracked.push_back(id);
    }
    const double dt_track = seconds_since(t0);

    // (iv) map update: transport moved objects, then fuse the observations.
    t0 = Clock::now();
    for (const auto& [id, T_O] : motions) {
      // Displacement bound over the volume's support.
      double radius = 0.0;
      for (const BlockIndex& b : map->volume(id).tsdf.sorted_block_indices()) {
        const Vector3d c0 = map->volume(id).tsdf.min_voxel_of_block(b).cast<double>() *
                            cfg.grid.voxel_size;
        const double block_size =
            cfg.grid.voxels_per_block_side * cfg.grid.voxel_size;
        for (int corner = 0; corner < 8; ++corner) {
          const Vector3d p = c0 + Vector3d((corner & 1) ? block_size : 0.0,
                                           (corner & 2) ? block_size : 0.0,
                                           (corner & 4) ? block_size : 0.0);
          radius = std::max(radius, p.norm());
        }
      }
      if (T_O.max_displacement(radius) < cfg.min_pose_update_displacement)
        continue;
      update_object_pose(*map, id, T_O);
      cumulative_pose[id] =
          T_O * (cumulative_pose.count(id) ? cumulative_pose.at(id)
                                           : RigidTransform::identity());
    }
    for (ObjectId id : visible_tracked) {
      const RigidTransform pose = cumulative_pose.count(id)
                                      ? cumulative_pose.at(id)
                                      : RigidTransform::identity();
      object_tracks[id].push_back({static_cast<double>(fi), pose});
    }

    // Per-pixel map ids for fusion: background stays 0, speck labels are
    // skipped.
    std::vector<std::uint32_t> ilabels(f.depth.size(), kSkipLabel);
    for (std::size_t i = 0; i < f.depth.size(); ++i)
      if (f.depth[i] > 0.0f && f.labels[i] == 0) ilabels[i] = kBackgroundId;
    for (const FrameSegment& seg : segments) {
      const std::uint32_t id = *seg.matched_object;
      for (std::uint32_t px : seg.pixels) ilabels[px] = id;
    }
    integrate_frame(*map, f.depth, ilabels, cam, T_WC, cfg.integration);
    const double dt_map = seconds_since(t0);

    totals.segmentation += dt_segment;
    totals.association += dt_associate;
    totals.tracking += dt_track;
    totals.map_update += dt_map;
    if (timings.is_open()) {
      timings << fi << " " << dt_segment * 1e3 << " " << dt_associate * 1e3
              << " " << dt_track * 1e3 << " " << dt_map * 1e3 << "\n";
    }

    report.peak_total_blocks =
        std::max(report.peak_total_blocks, map->total_block_count());
    report.peak_global_blocks =
        std::max(report.peak_global_blocks, map->global_volume().block_count());

    if (experiment && fi == experiment->snapshot_frame)
      background_snapshot = map->volume(kBackgroundId).tsdf;

    TSDFPP_INFO("frame ", fi, ": ", segments.size(), " segments, ",
                map->total_block_count(), " blocks");
  }

  report.frames = frame_count;
  report.object_count = static_cast<int>(map->object_volumes().size());
  report.stage_seconds = {{"segmentation", totals.segmentation},
                          {"association", totals.association},
                          {"tracking", totals.tracking},
                          {"map_update", totals.map_update}};

  // Occlusion experiment: remove the designated object and measure what the
  // revealed background looks like.
  if (experiment && frame_count > 0) {
    const auto it = instance_to_object.find(
        static_cast<std::uint32_t>(experiment->removed_instance));
    if (it != instance_to_object.end() && background_snapshot) {
      const RemovalView view = simulate_removal(*map, it->second);
      (void)view;  // the view is what a renderer would consume
      const TriangleMesh bg_mesh =
          extract_mesh(map->volume(kBackgroundId), cfg.grid);
      const std::vector<Vector3d> samples =
          sample_region_surface(*experiment, seed);
      const SurfaceCoverage cov = surface_coverage(bg_mesh, samples, *experiment,
                                                   cfg.grid.voxel_size);
      report.experiment_evaluated = true;
      report.completeness = cov.completeness;
      report.hole_count = cov.hole_count;
      const auto [equal, compared] =
          compare_region(*background_snapshot, map->volume(kBackgroundId).tsdf,
                         *experiment, cfg.grid);
      report.background_bitwise_preserved = equal;
      report.region_voxels_compared = compared;
    }
  }

  if (write_artifacts) {
    // Meshes, one per object plus the combined scene.
    TriangleMesh scene_mesh;
    for (const auto& [id, vol] : map->object_volumes()) {
      const TriangleMesh mesh = extract_mesh(vol, cfg.grid);
      if (!mesh.empty()) {
        write_ply((out_dir / "meshes" /
                   ("object_" + std::to_string(id) + ".ply")).string(),
                  mesh, object_color(id));
      }
      const auto offset = static_cast<std::uint32_t>(scene_mesh.vertices.size());
      scene_mesh.vertices.insert(scene_mesh.vertices.end(), mesh.vertices.begin(),
                                 mesh.vertices.end());
      scene_mesh.normals.insert(scene_mesh.normals.end(), mesh.normals.begin(),
                                mesh.normals.end());
      for (const auto& t : mesh.triangles)
        scene_mesh.triangles.push_back(
            {t[0] + offset, t[1] + offset, t[2] + offset});
    }
    write_ply((out_dir / "meshes" / "scene.ply").string(), scene_mesh,
              {200, 200, 200});

    write_trajectory((out_dir / "trajectories" / "camera.txt").string(),
                     camera_track);
    for (const auto& [id, track] : object_tracks) {
      write_trajectory((out_dir / "trajectories" /
                        ("object_" + std::to_string(id) + ".txt")).string(),
                       track);
    }

    std::ofstream(out_dir / "report.txt") << format_report_text(report);
    std::ofstream(out_dir / "report.json") << report.to_json_text() << "\n";
    if (timings.is_open()) {
      timings << "# totals_s " << totals.segmentation << " "
              << totals.association << " " << totals.tracking << " "
              << totals.map_update << "\n";
    }
  }

  if (export_frames) {
    write_trajectory((export_dir / "trajectory.txt").string(), camera_track);
    json cj = {{"fx", cam.fx},       {"fy", cam.fy},
               {"cx", cam.cx},       {"cy", cam.cy},
               {"width", cam.width}, {"height", cam.height}};
    std::ofstream(export_dir / "camera.json") << cj.dump(2) << "\n";
    json mj = {{"seed", seed}};
    std::ofstream(export_dir / "meta.json") << mj.dump(2) << "\n";
    if (experiment) {
      json ej = {{"snapshot_frame", experiment->snapshot_frame},
                 {"removed_instance", experiment->removed_instance},
                 {"region_origin",
                  {experiment->region_origin.x(), experiment->region_origin.y(),
                   experiment->region_origin.z()}},
                 {"region_axis_u",
                  {experiment->region_axis_u.x(), experiment->region_axis_u.y(),
                   experiment->region_axis_u.z()}},
                 {"region_axis_v",
                  {experiment->region_axis_v.x(), experiment->region_axis_v.y(),
                   experiment->region_axis_v.z()}},
                 {"region_size_u", experiment->region_size_u},
                 {"region_size_v", experiment->region_size_v},
                 {"surface_samples", experiment->surface_samples}};
      std::ofstream(export_dir / "experiment.json") << ej.dump(2) << "\n";
    }
  }

  if (!cfg.save_map_path.empty()) save_map(*map, cfg.save_map_path);

  PipelineResult result;
  result.report = std::move(report);
  result.map = std::move(map);
  return result;
}

PipelineResult run_pipeline(const PipelineConfig& cfg) {
  cfg.validate();
  if (!cfg.scene_path.empty()) {
    SimulatorSource source(load_scene(cfg.scene_path));
    const std::uint64_t seed = cfg.seed.value_or(source.scene().seed);
    return run_pipeline_on_source(source, cfg, source.scene().experiment, seed);
  }
  auto source = ingest_dataset(cfg.dataset_dir);
  const DatasetInfo info = read_dataset_info(cfg.dataset_dir);
  const std::uint64_t seed = cfg.seed.value_or(info.seed.value_or(0));
  return run_pipeline_on_source(*source, cfg, info.experiment, seed);
}

CompareResult compare_modes(const PipelineConfig& cfg) {
  cfg.validate();
  CompareResult result;

  PipelineConfig pp = cfg;
  pp.mode = MapMode::kTsdfPlusPlus;
  PipelineConfig st = cfg;
  st.mode = MapMode::kStandardTsdf;
  if (!cfg.output_dir.empty()) {
    pp.output_dir = (fs::path(cfg.output_dir) / "tsdfpp").string();
    st.output_dir = (fs::path(cfg.output_dir) / "standard").string();
    if (!cfg.save_map_path.empty()) {
      pp.save_map_path = (fs::path(cfg.output_dir) / "tsdfpp" / "map.tsdfpp").string();
      st.save_map_path = (fs::path(cfg.output_dir) / "standard" / "map.tsdfpp").string();
    }
  }
  // Frame export, if any, only happens once; the streams are identical.
  st.export_frames_dir.clear();

  result.plus_plus = run_pipeline(pp).report;
  result.standard = run_pipeline(st).report;

  std::ostringstream out;
  out << "mode comparison report\n";
  out << "frames: " << result.plus_plus.frames << "\n\n";
  out << "== tsdfpp ==\n" << format_report_text(result.plus_plus) << "\n";
  out << "== standard ==\n" << format_report_text(result.standard) << "\n";
  if (result.plus_plus.experiment_evaluated &&
      result.standard.experiment_evaluated) {
    out << "== delta (tsdfpp - standard) ==\n";
    out << "completeness_delta: " << std::setprecision(9)
        << (result.plus_plus.completeness - result.standard.completeness)
        << "\n";
    out << "hole_count_delta: "
        << (result.plus_plus.hole_count - result.standard.hole_count) << "\n";
  }
  out << "peak_blocks_ratio: " << std::setprecision(9)
      << (result.standard.peak_total_blocks > 0
              ? static_cast<double>(result.plus_plus.peak_total_blocks) /
                    static_cast<double>(result.standard.peak_total_blocks)
              : 0.0)
      << "\n";
  result.report_text = out.str();

  if (!cfg.output_dir.empty()) {
    fs::create_directories(cfg.output_dir);
    std::ofstream(fs::path(cfg.output_dir) / "compare_report.txt")
        << result.report_text;
  }
  return result;
}

}  // namespace tsdfpp
