#pragma once

// Field at an ion at height d above a grounded plane produced by a surface potential
// element at in-plane offset (x, y).  G = g / (2 pi).

namespace ionnoise {

enum class FieldAxis { perpendicular, parallel };

double planar_geometric_factor(double x, double y, double d, FieldAxis axis);

// Radial Fourier weight |G(k)|^2 averaged over the direction of k, single plane.
double planar_transfer(double k, double d, FieldAxis axis);

// Ion centred between two grounded plates separated by 2d, source on one plate.
double two_plate_transfer(double k, double d, FieldAxis axis);

const char* to_string(FieldAxis axis);

}  // namespace ionnoise
