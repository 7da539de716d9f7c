#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pstab/geometry.hpp"
#include "pstab/labels.hpp"
#include "pstab/matrix.hpp"
#include "pstab/point.hpp"
#include "pstab/stability.hpp"

namespace pstab {

enum class RenderMode { anchor_lines, local_pca, voronoi };

RenderMode render_mode_from_name(const std::string& name);
const char* render_mode_name(RenderMode mode);

// Everything a diagnostic drawing needs: the reference scatter for context,
// the anchors' network projections, and the projected perturbation clouds.
struct Scene {
  Matrix background;  // m x 2, subsampled reference embedding
  std::vector<int> background_class;
  std::vector<Point> anchor_proj;
  std::vector<int> anchor_class;
  std::vector<Matrix> clouds;  // one N x 2 block per anchor
  Rect view_box;               // data bounds expanded by 5%
};

// Assembles a scene, subsampling the background to at most max_background
// rows with a seeded shuffle. Anchors and clouds are never subsampled.
Scene make_scene(const Matrix& reference, const Labels& labels,
                 const std::vector<Point>& anchor_proj,
                 const std::vector<int>& anchor_class,
                 const std::vector<Matrix>& cloud_proj,
                 std::size_t max_background, std::uint64_t seed);

// Standalone SVG document. The viewBox lives in data coordinates with the
// y axis negated (screen convention), so lengths carry over one to one:
// the D_dev circle radius equals the metric value. Output depends only on
// the arguments, so identical inputs render byte-identically.
std::string render_diagnostic(const Scene& scene, RenderMode mode,
                              const StabilitySummary& stats, double ellipse_scale);

void render_diagnostic_file(const Scene& scene, RenderMode mode,
                            const StabilitySummary& stats, double ellipse_scale,
                            const std::string& path);

}  // namespace pstab
