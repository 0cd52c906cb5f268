#pragma once

#include <array>
#include <vector>

#include "folia/curves.hpp"

namespace folia {

enum class Side : int { L = 0, R = 1, B = 2, T = 3 };
enum class GlueIso : int { translation = 0, half_turn = 1 };

struct Gluing {
  int rect_a;
  Side side_a;
  int rect_b;
  Side side_b;
  GlueIso iso;
};

struct Rect {
  double w, h;
  int hcyl, vcyl;
};

// Vertex class of the rectangle complex; corners are (rect, k) with
// k in {0:BL, 1:BR, 2:TR, 3:TL}. Angle = pi/2 per corner.
struct VertexClass {
  std::vector<std::array<int, 2>> corners;  // sorted
  double angle;
  bool cone;  // angle > 2*pi
};

struct FlatSurface {
  CombinatorialSurface base;
  CylinderDecomposition cylinders;
  std::vector<Rect> rects;      // one per square, same ids
  std::vector<Gluing> gluings;  // each identification once, canonical order
  std::vector<VertexClass> vertices;
  double area = 0.0;  // = |q|_1: the flat charts carry q = dz^2 with coefficient 1
};

struct FlowParameter {
  double s = 0.0;
};

struct FlowResult {
  FlatSurface surface;
  bool clamped = false;
};

struct DiskExtremalLengths {
  double horizontal, vertical;  // t^2 e^{2s} area and t^2 e^{-2s} area
};

struct CriticalPoint {
  FlowParameter closed_form;  // s* = -ln(t)/2
  double numeric;             // bracketed 1-D minimizer on the length function
};

struct DerivativeRatio {
  double fd_slope;  // centered difference of the horizontal extremal length at s = 0
  double pairing;   // rectangle-sum pairing Re<q, mu> = |q|_1
  double ratio;     // recorded, not asserted
};

FlatSurface realize(const CombinatorialSurface& s);
double area_l1(const FlatSurface& f);

// Transverse measure a core curve picks up from the horizontal (|dy|) or
// vertical (|dx|) foliation of the realized differential. Throws
// UnsupportedCurve if the core does not belong to f's decomposition.
double intersection_number(const FlatSurface& f, const CoreCurve& core, bool horizontal_foliation);

// (x, y) -> (e^s x, e^-s y); |s| clamped to 10.
FlowResult teich_flow(const FlatSurface& f, double s);

DiskExtremalLengths extremal_length_on_disk(const FlatSurface& f, double s, double t);

// Minimizer of t e^{2s} area + (1/t) e^{-2s} area. Throws NonPositiveScale.
CriticalPoint critical_point_on_disk(const FlatSurface& f, double t);

DerivativeRatio gardiner_derivative_check(const FlatSurface& f);

}  // namespace folia
