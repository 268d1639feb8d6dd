#include "eroas/plots.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace eroas {
namespace {

constexpr int kWidth = 860;
constexpr int kHeight = 620;
constexpr int kMargin = 55;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};

struct Box2 {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  double ymin = std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();
  void add(double x, double y) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  void pad(double p) {
    if (!(xmax > xmin)) { xmin -= 1.0; xmax += 1.0; }
    if (!(ymax > ymin)) { ymin -= 1.0; ymax += 1.0; }
    const double dx = p * (xmax - xmin), dy = p * (ymax - ymin);
    xmin -= dx; xmax += dx; ymin -= dy; ymax += dy;
  }
};

class SvgCanvas {
 public:
  SvgCanvas(const Box2& box, std::string title, std::string xlabel,
            std::string ylabel)
      : box_(box) {
    body_ << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth
          << "' height='" << kHeight << "'>\n"
          << "<rect width='100%' height='100%' fill='white'/>\n"
          << "<text x='" << kWidth / 2 << "' y='24' text-anchor='middle' "
             "font-family='sans-serif' font-size='16'>" << title
          << "</text>\n"
          << "<text x='" << kWidth / 2 << "' y='" << kHeight - 10
          << "' text-anchor='middle' font-family='sans-serif' "
             "font-size='12'>" << xlabel << "</text>\n"
          << "<text x='16' y='" << kHeight / 2
          << "' text-anchor='middle' font-family='sans-serif' "
             "font-size='12' transform='rotate(-90 16 " << kHeight / 2
          << ")'>" << ylabel << "</text>\n"
          << "<rect x='" << kMargin << "' y='" << kMargin << "' width='"
          << kWidth - 2 * kMargin << "' height='" << kHeight - 2 * kMargin
          << "' fill='none' stroke='#888'/>\n";
    axis_labels();
  }

  double px(double x) const {
    return kMargin + (x - box_.xmin) / (box_.xmax - box_.xmin) *
                         (kWidth - 2 * kMargin);
  }
  double py(double y) const {
    return kHeight - kMargin - (y - box_.ymin) / (box_.ymax - box_.ymin) *
                                   (kHeight - 2 * kMargin);
  }

  void polyline(const std::vector<Vec2>& pts, const std::string& color,
                double width = 1.6) {
    if (pts.size() < 2) return;
    body_ << "<polyline fill='none' stroke='" << color
          << "' stroke-width='" << width << "' points='";
    for (const Vec2& p : pts) body_ << px(p.x()) << ',' << py(p.y()) << ' ';
    body_ << "'/>\n";
  }

  void polygon(const std::vector<Vec2>& pts, const std::string& fill) {
    body_ << "<polygon fill='" << fill << "' fill-opacity='0.35' "
             "stroke='#555' points='";
    for (const Vec2& p : pts) body_ << px(p.x()) << ',' << py(p.y()) << ' ';
    body_ << "'/>\n";
  }

  void circle(const Vec2& c, double r, const std::string& fill) {
    const double rx = r / (box_.xmax - box_.xmin) * (kWidth - 2 * kMargin);
    const double ry = r / (box_.ymax - box_.ymin) * (kHeight - 2 * kMargin);
    body_ << "<ellipse cx='" << px(c.x()) << "' cy='" << py(c.y())
          << "' rx='" << rx << "' ry='" << ry << "' fill='" << fill
          << "' fill-opacity='0.35' stroke='#555'/>\n";
  }

  void marker(const Vec2& p, const std::string& color,
              const std::string& label) {
    body_ << "<circle cx='" << px(p.x()) << "' cy='" << py(p.y())
          << "' r='5' fill='" << color << "'/>\n"
          << "<text x='" << px(p.x()) + 8 << "' y='" << py(p.y()) - 6
          << "' font-family='sans-serif' font-size='11'>" << label
          << "</text>\n";
  }

  void legend_entry(int slot, const std::string& color,
                    const std::string& label) {
    const double y = kMargin + 16 + 18 * slot;
    body_ << "<line x1='" << kWidth - kMargin - 120 << "' y1='" << y
          << "' x2='" << kWidth - kMargin - 90 << "' y2='" << y
          << "' stroke='" << color << "' stroke-width='2'/>\n"
          << "<text x='" << kWidth - kMargin - 84 << "' y='" << y + 4
          << "' font-family='sans-serif' font-size='12'>" << label
          << "</text>\n";
  }

  void save(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << body_.str() << "</svg>\n";
  }

 private:
  void axis_labels() {
    char buf[64];
    for (int i = 0; i <= 4; ++i) {
      const double x = box_.xmin + (box_.xmax - box_.xmin) * i / 4.0;
      const double y = box_.ymin + (box_.ymax - box_.ymin) * i / 4.0;
      std::snprintf(buf, sizeof(buf), "%.1f", x);
      body_ << "<text x='" << px(x) << "' y='" << kHeight - kMargin + 16
            << "' text-anchor='middle' font-family='sans-serif' "
               "font-size='10'>" << buf << "</text>\n";
      std::snprintf(buf, sizeof(buf), "%.1f", y);
      body_ << "<text x='" << kMargin - 6 << "' y='" << py(y) + 3
            << "' text-anchor='end' font-family='sans-serif' "
               "font-size='10'>" << buf << "</text>\n";
    }
  }

  Box2 box_;
  std::ostringstream body_;
};

void draw_obstacles_xy(SvgCanvas& canvas, const World& world) {
  for (const auto& prim : world.obstacles) {
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, Sphere>) {
            canvas.circle(Vec2(p.center.template head<2>()), p.radius, "#777");
          } else if constexpr (std::is_same_v<T, VerticalCylinder>) {
            canvas.circle(Vec2(p.base_center.template head<2>()), p.radius, "#777");
          } else if constexpr (std::is_same_v<T, AxisAlignedBox>) {
            canvas.polygon({{p.min.x(), p.min.y()},
                            {p.max.x(), p.min.y()},
                            {p.max.x(), p.max.y()},
                            {p.min.x(), p.max.y()}},
                           "#777");
          } else {
            const Vec2 ab = p.b - p.a;
            const double len = ab.norm();
            const Vec2 axis = len > 0 ? Vec2(ab / len) : Vec2(1, 0);
            const Vec2 n(-axis.y(), axis.x());
            const Vec2 half = 0.5 * p.thickness * n;
            canvas.polygon({p.a + half, p.b + half, p.b - half, p.a - half},
                           "#777");
          }
        },
        prim);
  }
}

Box2 obstacle_box_xy(const World& world) {
  Box2 box;
  for (const auto& prim : world.obstacles) {
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, Sphere>) {
            box.add(p.center.x() - p.radius, p.center.y() - p.radius);
            box.add(p.center.x() + p.radius, p.center.y() + p.radius);
          } else if constexpr (std::is_same_v<T, VerticalCylinder>) {
            box.add(p.base_center.x() - p.radius,
                    p.base_center.y() - p.radius);
            box.add(p.base_center.x() + p.radius,
                    p.base_center.y() + p.radius);
          } else if constexpr (std::is_same_v<T, AxisAlignedBox>) {
            box.add(p.min.x(), p.min.y());
            box.add(p.max.x(), p.max.y());
          } else {
            box.add(p.a.x(), p.a.y());
            box.add(p.b.x(), p.b.y());
          }
        },
        prim);
  }
  return box;
}

}  // namespace

std::vector<std::string> emit_plots(const std::vector<TrajectoryLog>& logs,
                                    const World& world,
                                    const std::string& prefix) {
  if (logs.empty()) throw std::invalid_argument("no logs to plot");

  // Top view.
  Box2 top = obstacle_box_xy(world);
  for (const auto& log : logs)
    for (const auto& rec : log.records)
      top.add(rec.state.position.x(), rec.state.position.y());
  top.pad(0.07);
  SvgCanvas topview(top, "top view", "x [m]", "y [m]");
  draw_obstacles_xy(topview, world);
  for (std::size_t i = 0; i < logs.size(); ++i) {
    std::vector<Vec2> pts;
    for (const auto& rec : logs[i].records)
      pts.push_back(rec.state.position.head<2>());
    const std::string color = kPalette[i % 6];
    topview.polyline(pts, color);
    topview.legend_entry(static_cast<int>(i), color, logs[i].algorithm);
  }
  if (!logs.front().records.empty()) {
    topview.marker(logs.front().records.front().state.position.head<2>(),
                   "#d62728", "start");
  }

  // Depth profile (x vs z).
  Box2 prof;
  for (const auto& log : logs)
    for (const auto& rec : log.records)
      prof.add(rec.state.position.x(), rec.state.position.z());
  prof.pad(0.07);
  SvgCanvas profile(prof, "depth profile", "x [m]", "z [m]");
  for (std::size_t i = 0; i < logs.size(); ++i) {
    std::vector<Vec2> pts;
    for (const auto& rec : logs[i].records)
      pts.emplace_back(rec.state.position.x(), rec.state.position.z());
    const std::string color = kPalette[i % 6];
    profile.polyline(pts, color);
    profile.legend_entry(static_cast<int>(i), color, logs[i].algorithm);
  }

  // Yaw-rate traces.
  Box2 yaw;
  for (const auto& log : logs)
    for (const auto& rec : log.records) yaw.add(rec.t, rec.state.yaw_rate);
  yaw.pad(0.07);
  SvgCanvas yawrate(yaw, "yaw rate", "t [s]", "r [rad/s]");
  for (std::size_t i = 0; i < logs.size(); ++i) {
    std::vector<Vec2> pts;
    for (const auto& rec : logs[i].records)
      pts.emplace_back(rec.t, rec.state.yaw_rate);
    const std::string color = kPalette[i % 6];
    yawrate.polyline(pts, color, 1.1);
    yawrate.legend_entry(static_cast<int>(i), color, logs[i].algorithm);
  }

  const std::vector<std::string> paths = {prefix + "_topview.svg",
                                          prefix + "_profile.svg",
                                          prefix + "_yawrate.svg"};
  topview.save(paths[0]);
  profile.save(paths[1]);
  yawrate.save(paths[2]);
  return paths;
}

}  // namespace eroas
