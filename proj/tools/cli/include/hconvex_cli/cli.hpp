#ifndef HCONVEX_CLI_CLI_HPP_
#define HCONVEX_CLI_CLI_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hconvex/gallery.hpp"

namespace hconvex::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitWitness = 2;

struct RunConfig
{
  std::string command;         ///< axioms | cone | ch | radial | gallery | export
  std::string set_descriptor;  ///< gallery name, JSON file, or inline JSON
  std::string params_json;     ///< extra params merged over the descriptor's
  std::uint64_t seed = 0;
  std::int64_t budget = 10000;
  std::int64_t samples = 2000;
  Tolerances tol;
  std::filesystem::path output_dir = ".";
  bool compare_closed_form = false;
  std::string kind = "heisenberg";  ///< cone scaling: heisenberg | euclidean
  std::string export_what = "levelset";  ///< levelset | curve
  double tau = 1.0;
  int resolution = 32;
  std::string witness_path;  ///< ch report used by `export --what curve`
  bool timestamp = true;
};

struct SetDescriptor
{
  std::string name;
  GalleryParams params;
};

/// {"set": name, "params": {...}}, a file holding it, or a bare gallery name.
SetDescriptor parse_descriptor(const std::string& text, const std::string& params_json = {});

/// Runs one command; reports go to output_dir and a summary to out.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Argument parsing around run().
int main_entry(int argc, const char* const* argv);

/**
 * Boundary mesh of scale(tau) K by marching tetrahedra on a resolution^3 grid,
 * with edge crossings refined by bisection. Returns the vertex count.
 */
std::size_t export_levelset(const SetOracle& k, double tau, int resolution, const std::filesystem::path& path);

/// theta,x,y,t rows with theta = i/(m-1), 17 significant digits.
void export_curve(const std::vector<Point3>& curve, const std::filesystem::path& path);

/// Inverse of export_curve.
std::vector<std::pair<double, Point3>> read_curve(const std::filesystem::path& path);

}  // namespace hconvex::cli

#endif  // HCONVEX_CLI_CLI_HPP_
