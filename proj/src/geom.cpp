#include "planarpot/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace planarpot {

namespace {

constexpr double kPi = std::numbers::pi;

Box box_of_points(const std::vector<cxd>& pts) {
  Box b{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest(),
        std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
  for (cxd p : pts) {
    b.xmin = std::min(b.xmin, p.real());
    b.xmax = std::max(b.xmax, p.real());
    b.ymin = std::min(b.ymin, p.imag());
    b.ymax = std::max(b.ymax, p.imag());
  }
  return b;
}

cxd json_point(const nlohmann::json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

nlohmann::json point_json(cxd z) { return nlohmann::json::array({z.real(), z.imag()}); }

} // namespace

double point_segment_distance(cxd z, cxd a, cxd b) {
  const cxd d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(z - a);
  double t = ((z.real() - a.real()) * d.real() + (z.imag() - a.imag()) * d.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(z - (a + t * d));
}

// ---------------------------------------------------------------------------
// CompactSet

CompactSet CompactSet::empty() { return CompactSet{}; }

CompactSet CompactSet::segment(cxd a, cxd b) {
  CompactSet s;
  s.kind_ = Kind::Segment;
  s.a_ = a;
  s.b_ = b;
  return s;
}

CompactSet CompactSet::closed_disk(cxd center, double radius) {
  if (radius <= 0) throw std::invalid_argument("closed_disk: radius must be positive");
  CompactSet s;
  s.kind_ = Kind::ClosedDisk;
  s.a_ = center;
  s.radius_ = radius;
  return s;
}

CompactSet CompactSet::segment_union(std::vector<std::pair<cxd, cxd>> segments) {
  if (segments.empty()) return empty();
  CompactSet s;
  s.kind_ = Kind::SegmentUnion;
  s.segments_ = std::move(segments);
  return s;
}

CompactSet CompactSet::point_cloud(std::vector<cxd> points) {
  if (points.empty()) return empty();
  CompactSet s;
  s.kind_ = Kind::PointCloud;
  s.points_ = std::move(points);
  return s;
}

bool CompactSet::contains(cxd z) const {
  switch (kind_) {
    case Kind::Empty: return false;
    case Kind::Segment: return point_segment_distance(z, a_, b_) == 0.0;
    case Kind::ClosedDisk: return std::abs(z - a_) <= radius_;
    case Kind::SegmentUnion:
      for (const auto& [a, b] : segments_)
        if (point_segment_distance(z, a, b) == 0.0) return true;
      return false;
    case Kind::PointCloud:
      for (cxd p : points_)
        if (z == p) return true;
      return false;
  }
  return false;
}

double CompactSet::distance(cxd z) const {
  switch (kind_) {
    case Kind::Empty: return std::numeric_limits<double>::infinity();
    case Kind::Segment: return point_segment_distance(z, a_, b_);
    case Kind::ClosedDisk: return std::max(0.0, std::abs(z - a_) - radius_);
    case Kind::SegmentUnion: {
      double d = std::numeric_limits<double>::infinity();
      for (const auto& [a, b] : segments_) d = std::min(d, point_segment_distance(z, a, b));
      return d;
    }
    case Kind::PointCloud: {
      double d = std::numeric_limits<double>::infinity();
      for (cxd p : points_) d = std::min(d, std::abs(z - p));
      return d;
    }
  }
  return 0;
}

double CompactSet::diameter() const {
  switch (kind_) {
    case Kind::Empty: return 0;
    case Kind::Segment: return std::abs(b_ - a_);
    case Kind::ClosedDisk: return 2 * radius_;
    case Kind::SegmentUnion: {
      std::vector<cxd> ends;
      for (const auto& [a, b] : segments_) {
        ends.push_back(a);
        ends.push_back(b);
      }
      double d = 0;
      for (size_t i = 0; i < ends.size(); ++i)
        for (size_t j = i + 1; j < ends.size(); ++j) d = std::max(d, std::abs(ends[i] - ends[j]));
      return d;
    }
    case Kind::PointCloud: {
      double d = 0;
      for (size_t i = 0; i < points_.size(); ++i)
        for (size_t j = i + 1; j < points_.size(); ++j)
          d = std::max(d, std::abs(points_[i] - points_[j]));
      return d;
    }
  }
  return 0;
}

Box CompactSet::bounding_box() const {
  switch (kind_) {
    case Kind::Empty: return {};
    case Kind::Segment: return box_of_points({a_, b_});
    case Kind::ClosedDisk:
      return {a_.real() - radius_, a_.real() + radius_, a_.imag() - radius_, a_.imag() + radius_};
    case Kind::SegmentUnion: {
      std::vector<cxd> ends;
      for (const auto& [a, b] : segments_) {
        ends.push_back(a);
        ends.push_back(b);
      }
      return box_of_points(ends);
    }
    case Kind::PointCloud: return box_of_points(points_);
  }
  return {};
}

cxd CompactSet::hull_center() const {
  switch (kind_) {
    case Kind::Empty: return 0;
    case Kind::Segment: return 0.5 * (a_ + b_);
    case Kind::ClosedDisk: return a_;
    case Kind::SegmentUnion: {
      Box b = bounding_box();
      return {0.5 * (b.xmin + b.xmax), 0.5 * (b.ymin + b.ymax)};
    }
    case Kind::PointCloud: {
      cxd c = 0;
      for (cxd p : points_) c += p;
      return c / double(points_.size());
    }
  }
  return 0;
}

std::vector<WeightedSample> CompactSet::sample(int n) const {
  std::vector<WeightedSample> out;
  if (n < 1) n = 1;
  switch (kind_) {
    case Kind::Empty: break;
    case Kind::Segment: {
      const double len = std::abs(b_ - a_);
      if (len == 0.0) {
        out.push_back({a_, 0.0});
        break;
      }
      for (int i = 0; i < n; ++i) {
        double t = (i + 0.5) / n;
        out.push_back({a_ + t * (b_ - a_), len / n});
      }
      break;
    }
    case Kind::ClosedDisk: {
      // equilibrium mass of a closed disk sits on its boundary circle
      for (int i = 0; i < n; ++i) {
        double th = 2 * kPi * (i + 0.5) / n;
        out.push_back({a_ + radius_ * cxd(std::cos(th), std::sin(th)), 2 * kPi * radius_ / n});
      }
      break;
    }
    case Kind::SegmentUnion: {
      double total = 0;
      for (const auto& [a, b] : segments_) total += std::abs(b - a);
      for (const auto& [a, b] : segments_) {
        double len = std::abs(b - a);
        int m = std::max(1, int(std::lround(n * len / std::max(total, 1e-300))));
        for (int i = 0; i < m; ++i) {
          double t = (i + 0.5) / m;
          out.push_back({a + t * (b - a), len / m});
        }
      }
      break;
    }
    case Kind::PointCloud:
      for (cxd p : points_) out.push_back({p, 0.0});
      break;
  }
  return out;
}

nlohmann::json CompactSet::to_json() const {
  nlohmann::json j;
  switch (kind_) {
    case Kind::Empty: j["type"] = "empty"; break;
    case Kind::Segment:
      j["type"] = "segment";
      j["a"] = point_json(a_);
      j["b"] = point_json(b_);
      break;
    case Kind::ClosedDisk:
      j["type"] = "closed_disk";
      j["center"] = point_json(a_);
      j["radius"] = radius_;
      break;
    case Kind::SegmentUnion: {
      j["type"] = "segment_union";
      auto arr = nlohmann::json::array();
      for (const auto& [a, b] : segments_) arr.push_back({point_json(a), point_json(b)});
      j["segments"] = arr;
      break;
    }
    case Kind::PointCloud: {
      j["type"] = "point_cloud";
      auto arr = nlohmann::json::array();
      for (cxd p : points_) arr.push_back(point_json(p));
      j["points"] = arr;
      break;
    }
  }
  return j;
}

CompactSet CompactSet::from_json(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "empty") return empty();
  if (type == "segment") return segment(json_point(j.at("a")), json_point(j.at("b")));
  if (type == "closed_disk")
    return closed_disk(json_point(j.at("center")), j.at("radius").get<double>());
  if (type == "segment_union") {
    std::vector<std::pair<cxd, cxd>> segs;
    for (const auto& s : j.at("segments")) segs.emplace_back(json_point(s.at(0)), json_point(s.at(1)));
    return segment_union(std::move(segs));
  }
  if (type == "point_cloud") {
    std::vector<cxd> pts;
    for (const auto& p : j.at("points")) pts.push_back(json_point(p));
    return point_cloud(std::move(pts));
  }
  throw std::invalid_argument("unknown compact set type: " + type);
}

// ---------------------------------------------------------------------------
// Domain

Domain Domain::disk(cxd center, double radius) {
  if (radius <= 0) throw std::invalid_argument("disk: radius must be positive");
  Domain d;
  d.shape_ = Shape::Disk;
  d.center_ = center;
  d.radius_ = radius;
  d.bbox_ = {center.real() - radius, center.real() + radius, center.imag() - radius,
             center.imag() + radius};
  d.label_ = "disk";
  return d;
}

Domain Domain::annulus(cxd center, double r_in, double r_out) {
  if (r_in <= 0 || r_out <= r_in) throw std::invalid_argument("annulus: need 0 < r_in < r_out");
  Domain d;
  d.shape_ = Shape::Annulus;
  d.center_ = center;
  d.r_in_ = r_in;
  d.r_out_ = r_out;
  d.bbox_ = {center.real() - r_out, center.real() + r_out, center.imag() - r_out,
             center.imag() + r_out};
  d.label_ = "annulus";
  return d;
}

Domain Domain::rectangle(double x0, double x1, double y0, double y1) {
  if (x1 <= x0 || y1 <= y0) throw std::invalid_argument("rectangle: degenerate extents");
  Domain d;
  d.shape_ = Shape::Rectangle;
  d.x0_ = x0;
  d.x1_ = x1;
  d.y0_ = y0;
  d.y1_ = y1;
  d.bbox_ = {x0, x1, y0, y1};
  d.label_ = "rectangle";
  return d;
}

Domain Domain::polygon(std::vector<cxd> vertices) {
  if (vertices.size() < 3) throw std::invalid_argument("polygon: need at least 3 vertices");
  Domain d;
  d.shape_ = Shape::Polygon;
  d.vertices_ = std::move(vertices);
  d.bbox_ = box_of_points(d.vertices_);
  d.label_ = "polygon";
  return d;
}

Domain Domain::subtract(const Domain& outer, const CompactSet& excised) {
  if (!excised.is_empty()) {
    const Box ob = outer.bounding_box();
    const Box eb = excised.bounding_box();
    if (eb.xmin < ob.xmin - 1e-12 || eb.xmax > ob.xmax + 1e-12 || eb.ymin < ob.ymin - 1e-12 ||
        eb.ymax > ob.ymax + 1e-12)
      throw std::invalid_argument("subtract: excised set outside the domain bounding box");
  }
  Domain d;
  d.shape_ = Shape::Difference;
  d.outer_ = std::make_shared<Domain>(outer);
  d.excised_ = std::make_shared<CompactSet>(excised);
  d.bbox_ = outer.bounding_box();
  d.label_ = outer.label_ + "_minus";
  return d;
}

Domain Domain::labeled(std::string label) const {
  Domain d = *this;
  d.label_ = std::move(label);
  return d;
}

bool Domain::contains(cxd z) const { return boundary_distance(z) > 0.0; }

double Domain::boundary_distance(cxd z) const {
  switch (shape_) {
    case Shape::Disk: return std::max(0.0, radius_ - std::abs(z - center_));
    case Shape::Annulus: {
      double r = std::abs(z - center_);
      return std::max(0.0, std::min(r - r_in_, r_out_ - r));
    }
    case Shape::Rectangle: {
      double d = std::min(std::min(z.real() - x0_, x1_ - z.real()),
                          std::min(z.imag() - y0_, y1_ - z.imag()));
      return std::max(0.0, d);
    }
    case Shape::Polygon: {
      double d = std::numeric_limits<double>::max();
      const size_t n = vertices_.size();
      for (size_t i = 0; i < n; ++i)
        d = std::min(d, point_segment_distance(z, vertices_[i], vertices_[(i + 1) % n]));
      if (d <= 1e-12) return 0.0; // near-edge points classified outside
      // winding number
      int wn = 0;
      for (size_t i = 0; i < n; ++i) {
        cxd a = vertices_[i], b = vertices_[(i + 1) % n];
        if (a.imag() <= z.imag()) {
          if (b.imag() > z.imag()) {
            double cross = (b.real() - a.real()) * (z.imag() - a.imag()) -
                           (z.real() - a.real()) * (b.imag() - a.imag());
            if (cross > 0) ++wn;
          }
        } else if (b.imag() <= z.imag()) {
          double cross = (b.real() - a.real()) * (z.imag() - a.imag()) -
                         (z.real() - a.real()) * (b.imag() - a.imag());
          if (cross < 0) --wn;
        }
      }
      return wn != 0 ? d : 0.0;
    }
    case Shape::Difference: {
      double d_outer = outer_->boundary_distance(z);
      if (d_outer <= 0.0) return 0.0;
      return std::min(d_outer, excised_->distance(z));
    }
  }
  return 0;
}

double Domain::area() const {
  switch (shape_) {
    case Shape::Disk: return kPi * radius_ * radius_;
    case Shape::Annulus: return kPi * (r_out_ * r_out_ - r_in_ * r_in_);
    case Shape::Rectangle: return (x1_ - x0_) * (y1_ - y0_);
    case Shape::Polygon: {
      double a = 0;
      const size_t n = vertices_.size();
      for (size_t i = 0; i < n; ++i) {
        cxd p = vertices_[i], q = vertices_[(i + 1) % n];
        a += p.real() * q.imag() - q.real() * p.imag();
      }
      return 0.5 * std::abs(a);
    }
    case Shape::Difference: {
      double a = outer_->area();
      if (excised_->kind() == CompactSet::Kind::ClosedDisk)
        a -= kPi * excised_->disk_radius() * excised_->disk_radius();
      return a; // segments and point clouds have zero area
    }
  }
  return 0;
}

double Domain::diameter() const {
  switch (shape_) {
    case Shape::Disk: return 2 * radius_;
    case Shape::Annulus: return 2 * r_out_;
    case Shape::Rectangle: return std::hypot(x1_ - x0_, y1_ - y0_);
    case Shape::Polygon: {
      double d = 0;
      for (size_t i = 0; i < vertices_.size(); ++i)
        for (size_t j = i + 1; j < vertices_.size(); ++j)
          d = std::max(d, std::abs(vertices_[i] - vertices_[j]));
      return d;
    }
    case Shape::Difference:
      // compact excision does not move the extremal boundary pairs
      return outer_->diameter();
  }
  return 0;
}

double Domain::inradius() const {
  switch (shape_) {
    case Shape::Disk: return radius_;
    case Shape::Annulus: return 0.5 * (r_out_ - r_in_);
    case Shape::Rectangle: return 0.5 * std::min(x1_ - x0_, y1_ - y0_);
    default: break;
  }
  // grid scan, lower approximation
  const int n = 256;
  const double hx = bbox_.width() / n, hy = bbox_.height() / n;
  double best = 0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      cxd z{bbox_.xmin + (i + 0.5) * hx, bbox_.ymin + (j + 0.5) * hy};
      best = std::max(best, boundary_distance(z));
    }
  return best;
}

cxd Domain::centroid() const {
  switch (shape_) {
    case Shape::Disk:
    case Shape::Annulus: return center_;
    case Shape::Rectangle: return {0.5 * (x0_ + x1_), 0.5 * (y0_ + y1_)};
    case Shape::Polygon: {
      cxd c = 0;
      for (cxd v : vertices_) c += v;
      return c / double(vertices_.size());
    }
    case Shape::Difference: return outer_->centroid();
  }
  return 0;
}

std::vector<WeightedSample> Domain::boundary_sample(int n) const {
  std::vector<WeightedSample> out;
  auto circle = [&out](cxd c, double r, int m) {
    for (int i = 0; i < m; ++i) {
      double th = 2 * kPi * (i + 0.5) / m;
      out.push_back({c + r * cxd(std::cos(th), std::sin(th)), 2 * kPi * r / m});
    }
  };
  switch (shape_) {
    case Shape::Disk: circle(center_, radius_, n); break;
    case Shape::Annulus: {
      int m_out = std::max(4, int(std::lround(n * r_out_ / (r_in_ + r_out_))));
      circle(center_, r_out_, m_out);
      circle(center_, r_in_, std::max(4, n - m_out));
      break;
    }
    case Shape::Rectangle: {
      std::vector<cxd> vs = {cxd(x0_, y0_), cxd(x1_, y0_), cxd(x1_, y1_), cxd(x0_, y1_)};
      double per = 2 * ((x1_ - x0_) + (y1_ - y0_));
      for (int e = 0; e < 4; ++e) {
        cxd a = vs[e], b = vs[(e + 1) % 4];
        double len = std::abs(b - a);
        int m = std::max(1, int(std::lround(n * len / per)));
        for (int i = 0; i < m; ++i) {
          double t = (i + 0.5) / m;
          out.push_back({a + t * (b - a), len / m});
        }
      }
      break;
    }
    case Shape::Polygon: {
      double per = 0;
      const size_t nv = vertices_.size();
      for (size_t i = 0; i < nv; ++i) per += std::abs(vertices_[(i + 1) % nv] - vertices_[i]);
      for (size_t i = 0; i < nv; ++i) {
        cxd a = vertices_[i], b = vertices_[(i + 1) % nv];
        double len = std::abs(b - a);
        int m = std::max(1, int(std::lround(n * len / per)));
        for (int k = 0; k < m; ++k) {
          double t = (k + 0.5) / m;
          out.push_back({a + t * (b - a), len / m});
        }
      }
      break;
    }
    case Shape::Difference: {
      out = outer_->boundary_sample(n);
      auto ex = excised_->sample(std::max(8, n / 2));
      out.insert(out.end(), ex.begin(), ex.end());
      break;
    }
  }
  return out;
}

bool Domain::multiply_connected() const {
  if (shape_ == Shape::Annulus) return true;
  if (shape_ == Shape::Difference)
    return excised_->kind() == CompactSet::Kind::ClosedDisk || outer_->multiply_connected();
  return false;
}

std::vector<cxd> Domain::hole_centers() const {
  std::vector<cxd> out;
  if (shape_ == Shape::Annulus) out.push_back(center_);
  if (shape_ == Shape::Difference) {
    out = outer_->hole_centers();
    if (excised_->kind() == CompactSet::Kind::ClosedDisk) out.push_back(excised_->disk_center());
  }
  return out;
}

std::vector<std::pair<cxd, cxd>> Domain::slits() const {
  std::vector<std::pair<cxd, cxd>> out;
  if (shape_ == Shape::Difference) {
    out = outer_->slits();
    if (excised_->kind() == CompactSet::Kind::Segment)
      out.emplace_back(excised_->seg_a(), excised_->seg_b());
    if (excised_->kind() == CompactSet::Kind::SegmentUnion)
      for (const auto& s : excised_->segments()) out.push_back(s);
  }
  return out;
}

nlohmann::json Domain::to_json() const {
  nlohmann::json j;
  switch (shape_) {
    case Shape::Disk:
      j["type"] = "disk";
      j["center"] = point_json(center_);
      j["radius"] = radius_;
      break;
    case Shape::Annulus:
      j["type"] = "annulus";
      j["center"] = point_json(center_);
      j["r_in"] = r_in_;
      j["r_out"] = r_out_;
      break;
    case Shape::Rectangle:
      j["type"] = "rectangle";
      j["x0"] = x0_;
      j["x1"] = x1_;
      j["y0"] = y0_;
      j["y1"] = y1_;
      break;
    case Shape::Polygon: {
      j["type"] = "polygon";
      auto arr = nlohmann::json::array();
      for (cxd v : vertices_) arr.push_back(point_json(v));
      j["vertices"] = arr;
      break;
    }
    case Shape::Difference:
      j["type"] = "difference";
      j["outer"] = outer_->to_json();
      j["excise"] = excised_->to_json();
      break;
  }
  return j;
}

Domain Domain::from_json(const nlohmann::json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "disk") return disk(json_point(j.at("center")), j.at("radius").get<double>());
  if (type == "annulus")
    return annulus(json_point(j.at("center")), j.at("r_in").get<double>(),
                   j.at("r_out").get<double>());
  if (type == "rectangle")
    return rectangle(j.at("x0").get<double>(), j.at("x1").get<double>(), j.at("y0").get<double>(),
                     j.at("y1").get<double>());
  if (type == "polygon") {
    std::vector<cxd> vs;
    for (const auto& v : j.at("vertices")) vs.push_back(json_point(v));
    return polygon(std::move(vs));
  }
  if (type == "difference")
    return subtract(from_json(j.at("outer")), CompactSet::from_json(j.at("excise")));
  throw std::invalid_argument("unknown domain type: " + type);
}

} // namespace planarpot
