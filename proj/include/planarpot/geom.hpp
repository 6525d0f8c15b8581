#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "json_fwd.hpp"

namespace planarpot {

using cxd = std::complex<double>;

struct Box {
  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  bool contains(cxd z) const {
    return z.real() >= xmin && z.real() <= xmax && z.imag() >= ymin && z.imag() <= ymax;
  }
  Box padded(double m) const { return {xmin - m, xmax + m, ymin - m, ymax + m}; }
};

// A boundary/compact sample point together with the arc length it represents.
// length == 0 marks an isolated point (no local self-energy in capacity solves).
struct WeightedSample {
  cxd point;
  double length = 0;
};

// Compact subsets of the plane used as excision sets and capacity test sets.
class CompactSet {
public:
  enum class Kind { Empty, Segment, ClosedDisk, SegmentUnion, PointCloud };

  static CompactSet empty();
  static CompactSet segment(cxd a, cxd b);
  static CompactSet closed_disk(cxd center, double radius);
  static CompactSet segment_union(std::vector<std::pair<cxd, cxd>> segments);
  static CompactSet point_cloud(std::vector<cxd> points);

  Kind kind() const { return kind_; }
  bool is_empty() const { return kind_ == Kind::Empty; }

  // Exact membership and Euclidean distance (0 on the set).
  bool contains(cxd z) const;
  double distance(cxd z) const;

  double diameter() const;
  Box bounding_box() const;
  cxd hull_center() const;

  // Deterministic covering sample; every returned point lies on the set.
  std::vector<WeightedSample> sample(int n) const;

  // Shape accessors (valid only for the matching kind).
  cxd seg_a() const { return a_; }
  cxd seg_b() const { return b_; }
  cxd disk_center() const { return a_; }
  double disk_radius() const { return radius_; }
  const std::vector<std::pair<cxd, cxd>>& segments() const { return segments_; }
  const std::vector<cxd>& points() const { return points_; }

  nlohmann::json to_json() const;
  static CompactSet from_json(const nlohmann::json& j);

private:
  CompactSet() = default;
  Kind kind_ = Kind::Empty;
  cxd a_, b_;
  double radius_ = 0;
  std::vector<std::pair<cxd, cxd>> segments_;
  std::vector<cxd> points_;
};

double point_segment_distance(cxd z, cxd a, cxd b);

// Bounded planar open set described by a constructive tree.
class Domain {
public:
  enum class Shape { Disk, Annulus, Rectangle, Polygon, Difference };

  static Domain disk(cxd center, double radius);
  static Domain annulus(cxd center, double r_in, double r_out);
  static Domain rectangle(double x0, double x1, double y0, double y1);
  static Domain polygon(std::vector<cxd> vertices);
  static Domain subtract(const Domain& outer, const CompactSet& excised);

  Shape shape() const { return shape_; }
  const std::string& label() const { return label_; }
  Domain labeled(std::string label) const;

  bool contains(cxd z) const;
  // > 0 iff z is a member; 1-Lipschitz; 0 outside.
  double boundary_distance(cxd z) const;

  double area() const;
  double diameter() const;
  // Max of boundary_distance over a sampling grid (a lower approximation);
  // exact for disk, annulus and rectangle.
  double inradius() const;
  Box bounding_box() const { return bbox_; }
  cxd centroid() const;

  // Samples of the full topological boundary (outer boundary plus excised
  // compacts), with the arc length each point represents.
  std::vector<WeightedSample> boundary_sample(int n) const;

  // Structure queries used by the Bergman basis builder.
  bool multiply_connected() const;
  std::vector<cxd> hole_centers() const;          // centers of excised disks / annulus hole
  std::vector<std::pair<cxd, cxd>> slits() const; // excised segments

  const Domain* outer() const { return outer_.get(); }
  const CompactSet* excised() const { return excised_ ? &*excised_ : nullptr; }

  nlohmann::json to_json() const;
  static Domain from_json(const nlohmann::json& j);

private:
  Domain() = default;
  Shape shape_ = Shape::Disk;
  cxd center_;
  double radius_ = 0, r_in_ = 0, r_out_ = 0;
  double x0_ = 0, x1_ = 0, y0_ = 0, y1_ = 0;
  std::vector<cxd> vertices_;
  std::shared_ptr<const Domain> outer_;
  std::shared_ptr<const CompactSet> excised_;
  Box bbox_;
  std::string label_;
};

} // namespace planarpot
