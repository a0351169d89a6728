#include <array>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "hconvex/errors.hpp"
#include "hconvex_cli/cli.hpp"

namespace hconvex::cli {

namespace {

// Cube corner c = dx + 2 dy + 4 dz; six tetrahedra around the 0-7 diagonal.
constexpr std::array<std::array<int, 4>, 6> kTets{{
    {0, 1, 3, 7},
    {0, 3, 2, 7},
    {0, 2, 6, 7},
    {0, 6, 4, 7},
    {0, 4, 5, 7},
    {0, 5, 1, 7},
}};

std::string fmt17(double v)
{
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path)
{
  std::ofstream f(path);
  if (!f) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  return f;
}

}  // namespace

std::size_t export_levelset(const SetOracle& k, double tau, int resolution, const std::filesystem::path& path)
{
  if (!k.compact()) {
    throw PreconditionError("export_levelset: '" + k.label() + "' is not compact");
  }
  if (resolution < 8) {
    throw PreconditionError("export_levelset: resolution must be at least 8");
  }
  if (!(tau > 0.0)) {
    throw PreconditionError("export_levelset: tau must be positive");
  }
  const SetOracle level = dilated(k, tau);
  const Box& b = level.bbox();
  const Point3 ext = b.extent();
  const double pad = 1.0 / (resolution - 2);
  const Point3 lo{b.lo.x - pad * ext.x, b.lo.y - pad * ext.y, b.lo.t - pad * ext.t};
  const Point3 step{(1.0 + 2.0 * pad) * ext.x / resolution, (1.0 + 2.0 * pad) * ext.y / resolution,
                    (1.0 + 2.0 * pad) * ext.t / resolution};
  const int n = resolution + 1;

  auto node = [&](int i, int j, int l) -> Point3 { return {lo.x + i * step.x, lo.y + j * step.y, lo.t + l * step.t}; };
  auto id = [n](int i, int j, int l) -> std::int64_t { return i + static_cast<std::int64_t>(n) * (j + n * l); };

  std::vector<char> inside(static_cast<std::size_t>(n) * n * n);
  for (int l = 0; l < n; ++l) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        inside[static_cast<std::size_t>(id(i, j, l))] = level.contains(node(i, j, l)) ? 1 : 0;
      }
    }
  }

  std::vector<Point3> vertices;
  std::vector<std::array<std::size_t, 3>> faces;
  std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> edge_vertex;

  auto crossing = [&](std::int64_t a, const Point3& pa, std::int64_t b, const Point3& pb) {
    const auto key = std::minmax(a, b);
    if (const auto it = edge_vertex.find(key); it != edge_vertex.end()) {
      return it->second;
    }
    Point3 in = pa;
    Point3 out = pb;
    for (int it = 0; it < 50; ++it) {
      const Point3 mid{0.5 * (in.x + out.x), 0.5 * (in.y + out.y), 0.5 * (in.t + out.t)};
      (level.contains(mid) ? in : out) = mid;
    }
    vertices.push_back({0.5 * (in.x + out.x), 0.5 * (in.y + out.y), 0.5 * (in.t + out.t)});
    edge_vertex.emplace(key, vertices.size() - 1);
    return vertices.size() - 1;
  };

  for (int l = 0; l + 1 < n; ++l) {
    for (int j = 0; j + 1 < n; ++j) {
      for (int i = 0; i + 1 < n; ++i) {
        std::array<std::int64_t, 8> cid{};
        std::array<Point3, 8> cp{};
        std::array<bool, 8> cin{};
        for (int c = 0; c < 8; ++c) {
          const int di = c & 1;
          const int dj = (c >> 1) & 1;
          const int dl = (c >> 2) & 1;
          cid[c] = id(i + di, j + dj, l + dl);
          cp[c] = node(i + di, j + dj, l + dl);
          cin[c] = inside[static_cast<std::size_t>(cid[c])] != 0;
        }
        for (const auto& tet : kTets) {
          std::array<int, 4> ins{};
          std::array<int, 4> outs{};
          int ni = 0;
          int no = 0;
          for (const int c : tet) {
            (cin[c] ? ins[ni++] : outs[no++]) = c;
          }
          auto edge = [&](int a, int b) { return crossing(cid[a], cp[a], cid[b], cp[b]); };
          if (ni == 1) {
            faces.push_back({edge(ins[0], outs[0]), edge(ins[0], outs[1]), edge(ins[0], outs[2])});
          } else if (ni == 3) {
            faces.push_back({edge(ins[0], outs[0]), edge(ins[2], outs[0]), edge(ins[1], outs[0])});
          } else if (ni == 2) {
            const std::size_t ac = edge(ins[0], outs[0]);
            const std::size_t ad = edge(ins[0], outs[1]);
            const std::size_t bd = edge(ins[1], outs[1]);
            const std::size_t bc = edge(ins[1], outs[0]);
            faces.push_back({ac, ad, bd});
            faces.push_back({ac, bd, bc});
          }
        }
      }
    }
  }

  std::ofstream f = open_out(path);
  f << "# level set tau=" << fmt17(tau) << " of " << k.label() << "\n";
  for (const Point3& v : vertices) {
    f << "v " << fmt17(v.x) << ' ' << fmt17(v.y) << ' ' << fmt17(v.t) << '\n';
  }
  for (const auto& face : faces) {
    f << "f " << face[0] + 1 << ' ' << face[1] + 1 << ' ' << face[2] + 1 << '\n';
  }
  if (!f) {
    throw std::runtime_error("write to '" + path.string() + "' failed");
  }
  return vertices.size();
}

void export_curve(const std::vector<Point3>& curve, const std::filesystem::path& path)
{
  if (curve.empty()) {
    throw PreconditionError("export_curve: empty curve");
  }
  std::ofstream f = open_out(path);
  f << "theta,x,y,t\n";
  const std::size_t m = curve.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double theta = m == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(m - 1);
    f << fmt17(theta) << ',' << fmt17(curve[i].x) << ',' << fmt17(curve[i].y) << ',' << fmt17(curve[i].t) << '\n';
  }
  if (!f) {
    throw std::runtime_error("write to '" + path.string() + "' failed");
  }
}

std::vector<std::pair<double, Point3>> read_curve(const std::filesystem::path& path)
{
  std::ifstream f(path);
  if (!f) {
    throw std::runtime_error("cannot open '" + path.string() + "'");
  }
  std::string line;
  std::getline(f, line);
  if (line != "theta,x,y,t") {
    throw std::runtime_error("'" + path.string() + "' is not a curve CSV");
  }
  std::vector<std::pair<double, Point3>> rows;
  while (std::getline(f, line)) {
    if (line.empty()) {
      continue;
    }
    std::array<double, 4> v{};
    std::istringstream row(line);
    std::string cell;
    for (double& x : v) {
      if (!std::getline(row, cell, ',')) {
        throw std::runtime_error("short row in '" + path.string() + "'");
      }
      x = std::stod(cell);
    }
    rows.push_back({v[0], {v[1], v[2], v[3]}});
  }
  return rows;
}

}  // namespace hconvex::cli
