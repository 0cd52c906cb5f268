#pragma once

#include <string>
#include <vector>

#include "folia/conformal.hpp"
#include "folia/curves.hpp"
#include "folia/flatsurf.hpp"
#include "folia/halfpipe.hpp"
#include "folia/mesh.hpp"

namespace folia {

// shortest round-trippable decimal form
std::string fmt17(double x);

// surface description: permutation pair plus optional cylinder weights
struct SurfaceSpec {
  int n = 0;
  Perm perm_h, perm_v;
  std::vector<double> weights_h, weights_v;
};

SurfaceSpec read_surface_file(const std::string& path);
void write_surface_file(const std::string& path, const SurfaceSpec& spec);

// realized rectangle complex: rectangle table, gluing quadruples and cone
// classes, preceded by the generating data so a reader can rebuild it
void write_flat_surface(const std::string& path, const FlatSurface& f);
FlatSurface read_flat_surface(const std::string& path);

void write_mesh(const std::string& path, const TriangleMesh& m);

void write_metric_field(const std::string& path, const MetricField& f);
MetricField read_metric_field(const std::string& path);

// delimiter-separated table, one header row then data rows
void write_table(const std::string& path, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows);

HPJet read_jet_file(const std::string& path);
std::string format_hp_element(const HPElement& x);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace folia
