#ifndef TSDFPP_PIPELINE_H_
#define TSDFPP_PIPELINE_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tsdfpp/association.h"
#include "tsdfpp/global_map.h"
#include "tsdfpp/icp.h"
#include "tsdfpp/integrator.h"
#include "tsdfpp/renderer.h"
#include "tsdfpp/scene.h"
#include "tsdfpp/segmentation.h"

namespace tsdfpp {

/// One pipeline input frame. Depth is float32 at this boundary in both the
/// in-process and dataset paths, and the camera pose is carried as quaternion
/// plus translation, so a frame exported to disk and read back is identical
/// to the in-process one.
struct Frame {
  int index = 0;
  int width = 0, height = 0;
  std::vector<float> depth;
  std::vector<std::uint16_t> labels;
  std::vector<std::uint16_t> semantic_mask;
  Eigen::Quaterniond camera_q = Eigen::Quaterniond::Identity();
  Vector3d camera_t = Vector3d::Zero();

  RigidTransform camera_pose() const {
    return RigidTransform::from_quaternion(camera_q, camera_t);
  }
};

class FrameSource {
 public:
  virtual ~FrameSource() = default;
  virtual int frame_count() const = 0;
  virtual Frame frame(int index) = 0;
  virtual const PinholeCamera& camera() const = 0;
};

class SimulatorSource : public FrameSource {
 public:
  explicit SimulatorSource(SceneDescription scene) : scene_(std::move(scene)) {
    scene_.validate();
  }
  int frame_count() const override { return scene_.frame_count; }
  Frame frame(int index) override;
  const PinholeCamera& camera() const override { return scene_.camera; }
  const SceneDescription& scene() const { return scene_; }

 private:
  SceneDescription scene_;
};

/// Recorded-data source. Layout under the dataset directory:
///   camera.json                   intrinsics block
///   trajectory.txt                camera pose per frame (timestamp = index)
///   depth/depth_NNNNNN.pfm        range images, meters
///   labels/labels_NNNNNN.pgm     instance labels, 16-bit
///   masks/masks_NNNNNN.pgm       detector masks, 16-bit (optional)
///   meta.json, experiment.json    seed and experiment region (optional)
std::unique_ptr<FrameSource> ingest_dataset(const std::string& directory);

struct DatasetInfo {
  std::optional<std::uint64_t> seed;
  std::optional<ExperimentSpec> experiment;
};
DatasetInfo read_dataset_info(const std::string& directory);

struct PipelineConfig {
  MapMode mode = MapMode::kTsdfPlusPlus;
  GridParams grid;
  IntegrationConfig integration;
  SegmentationParams segmentation;
  AssociationParams association;
  TrackParams tracking;

  std::string scene_path;   // exactly one of scene_path / dataset_dir
  std::string dataset_dir;
  std::string output_dir;
  std::optional<std::uint64_t> seed;  // defaults to the scene's seed
  std::string save_map_path;
  std::string load_map_path;
  std::string export_frames_dir;

  /// Motion below this displacement bound skips the field transport.
  double min_pose_update_displacement = 1e-6;

  void validate() const;
  /// Ties defaults together: truncation = 10 x voxel, correspondence gate =
  /// 5 x voxel. Call after changing voxel_size.
  void apply_grid_defaults();
};

struct ExperimentReport {
  std::string mode;
  int frames = 0;
  bool experiment_evaluated = false;
  double completeness = -1.0;
  int hole_count = -1;
  bool background_bitwise_preserved = false;
  std::size_t region_voxels_compared = 0;
  std::size_t peak_total_blocks = 0;
  std::size_t peak_global_blocks = 0;
  int object_count = 0;
  std::vector<std::string> stage_order;  // execution order of the four stages
  std::vector<std::pair<std::string, double>> stage_seconds;  // not serialized
                                                              // to report.json

  std::string to_json_text() const;
  static ExperimentReport from_json_text(const std::string& text);
  bool operator==(const ExperimentReport& other) const;
};

struct PipelineResult {
  ExperimentReport report;
  std::unique_ptr<GlobalMap> map;
};

/// Runs segment -> associate -> track -> pose-update -> integrate over every
/// frame and writes meshes, trajectories and reports under output_dir.
PipelineResult run_pipeline(const PipelineConfig& cfg);

/// Library entry used by both run_pipeline and the tests: the source and
/// experiment are supplied directly.
PipelineResult run_pipeline_on_source(FrameSource& source,
                                      const PipelineConfig& cfg,
                                      const std::optional<ExperimentSpec>& experiment,
                                      std::uint64_t seed);

struct CompareResult {
  ExperimentReport plus_plus;
  ExperimentReport standard;
  std::string report_text;  // the deterministic side-by-side report
};

/// Runs the identical frame stream through both map modes with identical
/// seeds and writes compare_report.txt plus per-mode artifacts.
CompareResult compare_modes(const PipelineConfig& cfg);

}  // namespace tsdfpp

#endif  // TSDFPP_PIPELINE_H_
