#include "pstab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>

#include "pstab/error.hpp"
#include "pstab/rng.hpp"

namespace pstab {

namespace {

constexpr const char* kPalette[10] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

const char* class_color(int class_id) {
  const int idx = class_id % 10;
  return kPalette[idx < 0 ? idx + 10 : idx];
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

struct Bounds {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;
  bool any = false;

  void add(double x, double y) {
    if (!any) {
      min_x = max_x = x;
      min_y = max_y = y;
      any = true;
      return;
    }
    min_x = std::min(min_x, x);
    max_x = std::max(max_x, x);
    min_y = std::min(min_y, y);
    max_y = std::max(max_y, y);
  }
};

void check_stats(const Scene& scene, const StabilitySummary& stats) {
  if (stats.anchors.size() != scene.anchor_proj.size()) {
    fail_data("diagnostics error: stats cover " + std::to_string(stats.anchors.size()) +
              " anchors but the scene holds " + std::to_string(scene.anchor_proj.size()));
  }
  for (std::size_t a = 0; a < stats.anchors.size(); ++a) {
    if (stats.anchors[a].assignment.size() != scene.clouds[a].rows) {
      fail_data("diagnostics error: assignment length mismatch at anchor " +
                std::to_string(a));
    }
  }
}

void append_cross(std::string& out, Point z, double arm, double stroke) {
  const double x = z.x;
  const double y = -z.y;
  out += "<path class=\"anchor-cross\" stroke-width=\"" + fmt(stroke) + "\" d=\"M " +
         fmt(x - arm) + " " + fmt(y) + " L " + fmt(x + arm) + " " + fmt(y) + " M " +
         fmt(x) + " " + fmt(y - arm) + " L " + fmt(x) + " " + fmt(y + arm) + "\"/>\n";
}

void append_sample(std::string& out, double x, double y, double r,
                   const char* color, bool misassigned, double mis_stroke) {
  out += "<circle class=\"sample";
  if (misassigned) out += " misassigned";
  out += "\" cx=\"" + fmt(x) + "\" cy=\"" + fmt(-y) + "\" r=\"" + fmt(r) +
         "\" fill=\"" + color + "\"";
  if (misassigned) out += " stroke-width=\"" + fmt(mis_stroke) + "\"";
  out += "/>\n";
}

}  // namespace

RenderMode render_mode_from_name(const std::string& name) {
  if (name == "anchor_lines") return RenderMode::anchor_lines;
  if (name == "local_pca") return RenderMode::local_pca;
  if (name == "voronoi") return RenderMode::voronoi;
  fail_data("configuration error: unknown render mode \"" + name +
            "\" (expected anchor_lines, local_pca or voronoi)");
}

const char* render_mode_name(RenderMode mode) {
  switch (mode) {
    case RenderMode::anchor_lines: return "anchor_lines";
    case RenderMode::local_pca: return "local_pca";
    case RenderMode::voronoi: return "voronoi";
  }
  return "anchor_lines";
}

Scene make_scene(const Matrix& reference, const Labels& labels,
                 const std::vector<Point>& anchor_proj,
                 const std::vector<int>& anchor_class,
                 const std::vector<Matrix>& cloud_proj,
                 std::size_t max_background, std::uint64_t seed) {
  if (reference.cols != 2) {
    fail_data("diagnostics error: background must be two-dimensional");
  }
  if (labels.size() != reference.rows) {
    fail_data("diagnostics error: background has " + std::to_string(reference.rows) +
              " rows but " + std::to_string(labels.size()) + " labels");
  }
  if (anchor_proj.empty() || anchor_proj.size() != anchor_class.size() ||
      anchor_proj.size() != cloud_proj.size()) {
    fail_data("diagnostics error: anchor, class and cloud counts disagree");
  }
  for (const Matrix& cloud : cloud_proj) {
    if (cloud.cols != 2 || cloud.rows == 0) {
      fail_data("diagnostics error: each projected cloud must be a nonempty N x 2 block");
    }
  }
  if (max_background == 0) {
    fail_data("diagnostics error: background budget must be positive");
  }

  Scene scene;
  scene.anchor_proj = anchor_proj;
  scene.anchor_class = anchor_class;
  scene.clouds = cloud_proj;

  if (reference.rows <= max_background) {
    scene.background = reference;
    scene.background_class = std::vector<int>(labels.values.begin(), labels.values.end());
  } else {
    std::vector<std::size_t> indices(reference.rows);
    for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
    RandomStream stream(stream_key(seed, StreamTag::background_sample));
    stream.shuffle(indices);
    indices.resize(max_background);
    std::sort(indices.begin(), indices.end());
    scene.background = Matrix(max_background, 2);
    scene.background_class.resize(max_background);
    for (std::size_t i = 0; i < max_background; ++i) {
      scene.background.at(i, 0) = reference.at(indices[i], 0);
      scene.background.at(i, 1) = reference.at(indices[i], 1);
      scene.background_class[i] = labels.values[indices[i]];
    }
  }

  Bounds bounds;
  for (std::size_t i = 0; i < scene.background.rows; ++i) {
    bounds.add(scene.background.at(i, 0), scene.background.at(i, 1));
  }
  for (const Point& p : anchor_proj) bounds.add(p.x, p.y);
  for (const Matrix& cloud : cloud_proj) {
    for (std::size_t i = 0; i < cloud.rows; ++i) bounds.add(cloud.at(i, 0), cloud.at(i, 1));
  }

  const double span_x = bounds.max_x - bounds.min_x;
  const double span_y = bounds.max_y - bounds.min_y;
  const double pad_x = span_x > 0.0 ? 0.025 * span_x : 0.5;
  const double pad_y = span_y > 0.0 ? 0.025 * span_y : 0.5;
  scene.view_box = Rect{bounds.min_x - pad_x, bounds.min_y - pad_y,
                        bounds.max_x + pad_x, bounds.max_y + pad_y};
  return scene;
}

std::string render_diagnostic(const Scene& scene, RenderMode mode,
                              const StabilitySummary& stats, double ellipse_scale) {
  check_stats(scene, stats);
  if (!(ellipse_scale > 0.0)) {
    fail_data("diagnostics error: ellipse scale must be positive");
  }

  const Rect& box = scene.view_box;
  const double unit = std::max(box.width(), box.height());
  const double bg_r = unit * 0.0018;
  const double sample_r = unit * 0.003;
  const double cross_arm = unit * 0.012;
  const double cross_stroke = unit * 0.004;
  const double line_stroke = unit * 0.0012;
  const double ring_stroke = unit * 0.002;
  const double mis_stroke = unit * 0.0015;
  const double cell_stroke = unit * 0.001;

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"" +
         fmt(box.min_x) + " " + fmt(-box.max_y) + " " + fmt(box.width()) + " " +
         fmt(box.height()) + "\">\n";
  out += "<desc>projection stability diagnostic, mode ";
  out += render_mode_name(mode);
  out += "</desc>\n";
  out += "<style>\n";
  out += "circle.bg { fill-opacity: 0.35; }\n";
  out += "line.displacement { stroke-opacity: 0.3; }\n";
  out += "circle.ddev { fill: none; }\n";
  out += "ellipse.pca { fill-opacity: 0.15; }\n";
  out += "circle.sample { fill-opacity: 0.65; }\n";
  out += "circle.sample.misassigned { stroke: #000000; fill-opacity: 0.9; }\n";
  out += "path.anchor-cross { fill: none; stroke: #000000; }\n";
  out += "path.cell { stroke: #555555; fill-opacity: 0.12; }\n";
  out += "</style>\n";

  out += "<g id=\"background\">\n";
  for (std::size_t i = 0; i < scene.background.rows; ++i) {
    out += "<circle class=\"bg\" cx=\"" + fmt(scene.background.at(i, 0)) + "\" cy=\"" +
           fmt(-scene.background.at(i, 1)) + "\" r=\"" + fmt(bg_r) + "\" fill=\"" +
           class_color(scene.background_class[i]) + "\"/>\n";
  }
  out += "</g>\n";

  std::vector<Polygon> cells;
  if (mode == RenderMode::voronoi) {
    cells = voronoi_cells(scene.anchor_proj, box);
    out += "<g id=\"cells\">\n";
    for (std::size_t a = 0; a < cells.size(); ++a) {
      out += "<path class=\"cell\" data-anchor=\"" + std::to_string(a) +
             "\" stroke-width=\"" + fmt(cell_stroke) + "\" fill=\"" +
             class_color(scene.anchor_class[a]) + "\" d=\"";
      const std::vector<Point>& vs = cells[a].vertices;
      for (std::size_t i = 0; i < vs.size(); ++i) {
        out += i == 0 ? "M " : "L ";
        out += fmt(vs[i].x) + " " + fmt(-vs[i].y) + " ";
      }
      out += "Z\"/>\n";
    }
    out += "</g>\n";
  }

  for (std::size_t a = 0; a < scene.anchor_proj.size(); ++a) {
    const Point z0 = scene.anchor_proj[a];
    const Matrix& cloud = scene.clouds[a];
    const AnchorStability& stat = stats.anchors[a];
    const char* own_color = class_color(scene.anchor_class[a]);

    out += "<g id=\"anchor-" + std::to_string(a) + "\">\n";
    switch (mode) {
      case RenderMode::anchor_lines: {
        for (std::size_t i = 0; i < cloud.rows; ++i) {
          out += "<line class=\"displacement\" x1=\"" + fmt(z0.x) + "\" y1=\"" +
                 fmt(-z0.y) + "\" x2=\"" + fmt(cloud.at(i, 0)) + "\" y2=\"" +
                 fmt(-cloud.at(i, 1)) + "\" stroke=\"" + own_color +
                 "\" stroke-width=\"" + fmt(line_stroke) + "\"/>\n";
        }
        for (std::size_t i = 0; i < cloud.rows; ++i) {
          append_sample(out, cloud.at(i, 0), cloud.at(i, 1), sample_r, own_color,
                        false, mis_stroke);
        }
        out += "<circle class=\"ddev\" cx=\"" + fmt(z0.x) + "\" cy=\"" + fmt(-z0.y) +
               "\" r=\"" + fmt(stat.d_dev) + "\" stroke=\"" + own_color +
               "\" stroke-width=\"" + fmt(ring_stroke) + "\"/>\n";
        break;
      }
      case RenderMode::local_pca: {
        for (std::size_t i = 0; i < cloud.rows; ++i) {
          append_sample(out, cloud.at(i, 0), cloud.at(i, 1), sample_r, own_color,
                        false, mis_stroke);
        }
        const EllipseParams e = pca_ellipse(cloud, ellipse_scale);
        const double angle =
            std::atan2(-e.major_axis.y, e.major_axis.x) * 180.0 / std::numbers::pi;
        out += "<ellipse class=\"pca\" cx=\"" + fmt(e.center.x) + "\" cy=\"" +
               fmt(-e.center.y) + "\" rx=\"" + fmt(e.major_len) + "\" ry=\"" +
               fmt(e.minor_len) + "\" transform=\"rotate(" + fmt(angle) + " " +
               fmt(e.center.x) + " " + fmt(-e.center.y) + ")\" fill=\"" + own_color +
               "\" stroke=\"" + own_color + "\" stroke-width=\"" + fmt(ring_stroke) +
               "\"/>\n";
        break;
      }
      case RenderMode::voronoi: {
        for (std::size_t i = 0; i < cloud.rows; ++i) {
          const std::size_t assigned = stat.assignment[i];
          append_sample(out, cloud.at(i, 0), cloud.at(i, 1), sample_r,
                        class_color(scene.anchor_class[assigned]), assigned != a,
                        mis_stroke);
        }
        break;
      }
    }
    append_cross(out, z0, cross_arm, cross_stroke);
    out += "</g>\n";
  }

  out += "</svg>\n";
  return out;
}

void render_diagnostic_file(const Scene& scene, RenderMode mode,
                            const StabilitySummary& stats, double ellipse_scale,
                            const std::string& path) {
  const std::string doc = render_diagnostic(scene, mode, stats, ellipse_scale);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail_data("io error: cannot open " + path + " for writing");
  out << doc;
  if (!out) fail_data("io error: failed writing " + path);
}

}  // namespace pstab
