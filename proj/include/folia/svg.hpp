#pragma once

#include <complex>
#include <string>
#include <vector>

#include "folia/flatsurf.hpp"
#include "folia/mesh.hpp"

namespace folia {

enum class SvgKind { surface, foliation, schwarzian_field };

// accepts "surface", "foliation", "schwarzian-field"; throws UnknownKind
SvgKind parse_svg_kind(const std::string& name);

std::string render_surface_svg(const FlatSurface& f);
std::string render_foliation_svg(const FlatSurface& f);
std::string render_schwarzian_svg(const FlatSurface& f, const TriangleMesh& m,
                                  const std::vector<std::complex<double>>& sigma);

}  // namespace folia
