#ifndef TSDFPP_METRICS_H_
#define TSDFPP_METRICS_H_

#include <cstdint>
#include <vector>

#include "tsdfpp/meshing.h"
#include "tsdfpp/scene.h"

namespace tsdfpp {

struct SurfaceCoverage {
  double completeness = 0.0;  // fraction of samples within one voxel of the mesh
  int hole_count = 0;         // connected uncovered patches of the region
  int sample_count = 0;
};

/// Deterministic uniform samples over the experiment's ground-truth surface
/// rectangle.
std::vector<Vector3d> sample_region_surface(const ExperimentSpec& spec,
                                            std::uint64_t seed);

/// Coverage of the sampled region by the mesh: a sample counts as covered
/// when some mesh vertex lies within one voxel_size. Holes are 4-connected
/// components of region cells whose samples are all uncovered.
SurfaceCoverage surface_coverage(const TriangleMesh& mesh,
                                 const std::vector<Vector3d>& samples,
                                 const ExperimentSpec& spec, double voxel_size);

}  // namespace tsdfpp

#endif  // TSDFPP_METRICS_H_
