#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ruledkit/mesh.hpp"
#include "ruledkit/reconstruction.hpp"
#include "ruledkit/report.hpp"
#include "ruledkit/spec_format.hpp"

namespace ruledkit::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kUnresolved = 2, kIoError = 3 };

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::IoError, "cannot write " + path);
  f << text;
  if (!f) fail(ErrorCode::IoError, "write failed for " + path);
}

/// Maps library errors to exit codes and prints the diagnostic.
template <typename Body>
int guarded(Body&& body, std::ostream& err) {
  try {
    return body();
  } catch (const Error& e) {
    err << "ruledkit: " << e.what() << "\n";
    return e.code() == ErrorCode::IoError ? kIoError : kInputError;
  }
}

struct AnalyzeOptions {
  std::string spec_path;
  std::optional<std::string> json_path;
  std::optional<double> tol;
  std::optional<int> order;
};

inline Tolerances tolerances_for(std::optional<double> tol) {
  Tolerances t = Tolerances::from_environment();
  if (tol) {
    if (!(*tol > 0.0)) fail(ErrorCode::InvalidArgument, "--tol must be positive");
    t.classify = *tol;
  }
  return t;
}

inline int cmd_analyze(const AnalyzeOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const SurfaceSpec spec = load_spec(o.spec_path);
        const AnalysisReport r = analyze(spec, tolerances_for(o.tol), o.order);
        const std::string text = serialize(r);
        if (o.json_path)
          write_text_file(*o.json_path, text);
        else
          out << text;
        return r.has_unresolved() ? kUnresolved : kOk;
      },
      err);
}

struct MeshOptions {
  std::string spec_path;
  int ns = 64;
  int nt = 16;
  double t_lo = -1.0;
  double t_hi = 1.0;
  std::string out_path;
  double lambda = 0.0;
};

/// "NSxNT"
inline std::pair<int, int> parse_grid(const std::string& g) {
  const size_t x = g.find('x');
  if (x == std::string::npos) fail(ErrorCode::InvalidArgument, "grid must look like NSxNT");
  try {
    size_t a = 0, b = 0;
    const int ns = std::stoi(g.substr(0, x), &a);
    const int nt = std::stoi(g.substr(x + 1), &b);
    if (a != x || b != g.size() - x - 1) throw std::invalid_argument(g);
    return {ns, nt};
  } catch (const std::logic_error&) {
    fail(ErrorCode::InvalidArgument, "grid must look like NSxNT");
  }
}

/// "a:b"
inline std::pair<double, double> parse_range(const std::string& r) {
  const size_t c = r.find(':', r.empty() ? 0 : 1);
  if (c == std::string::npos) fail(ErrorCode::InvalidArgument, "t range must look like a:b");
  const auto a = detail::parse_number(r.substr(0, c));
  const auto b = detail::parse_number(r.substr(c + 1));
  if (!a || !b) fail(ErrorCode::InvalidArgument, "t range must look like a:b");
  return {*a, *b};
}

inline int cmd_mesh(const MeshOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const SurfaceSpec spec = load_spec(o.spec_path);
        const RuledCurve c = build_surface(spec, o.lambda);
        const Mesh m = sample_mesh(c, o.ns, o.nt, o.t_lo, o.t_hi);
        write_text_file(o.out_path, to_obj(m));
        out << "vertices " << m.vertices.size() << "\ntriangles " << m.triangles.size() << "\n";
        return kOk;
      },
      err);
}

struct ReconstructOptions {
  std::string spec_path;
  std::string init = "identity";
  double step = 1e-3;
  std::string prefix;
  int ns = 64;
  int nt = 16;
};

/// 18 numbers: v0 v1 n0 n1 t0 t1.
inline DualFrame read_frame(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::vector<double> x;
  double v = 0.0;
  while (in >> v) x.push_back(v);
  if (!in.eof() || x.size() != 18) fail(ErrorCode::InvalidInitialFrame, "frame file needs 18 numbers (v0 v1 n0 n1 t0 t1)");
  auto dv = [&](size_t k) { return DualVec{{x[k], x[k + 1], x[k + 2]}, {x[k + 3], x[k + 4], x[k + 5]}}; };
  const DualVec a = dv(0), b = dv(6), c = dv(12);
  for (const DualVec* d : {&a, &b, &c}) {
    const Dual n = dual_dot(*d, *d);
    if (std::fabs(n.real - 1.0) > 1e-9 || std::fabs(n.dual) > 1e-9)
      fail(ErrorCode::InvalidInitialFrame, "frame vectors must be unit dual vectors");
  }
  const DualFrame f{UnitDualVector::normalized(a), UnitDualVector::normalized(b), UnitDualVector::normalized(c)};
  if (f.orthonormality_defect() > 1e-9) fail(ErrorCode::InvalidInitialFrame, "initial frame is not dual orthonormal");
  return f;
}

/// Striction point and invariants at n equally spaced arclength values.
inline std::string curve_csv(const RuledCurve& c, int n) {
  std::string out = "s,x,y,z,kappa1,tau0,tau1\n";
  const StrictionCurve sc(c);
  char buf[256];
  for (double s : sample_grid(c.domain(), n)) {
    const Vec3d p = sc.point(s);
    const InvariantValues v = frenet_at(c, s).invariants;
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s, p.x, p.y, p.z, v.kappa1, v.tau0, v.tau1);
    out += buf;
  }
  return out;
}

/// sigma(s) + t e(s) on a grid, t in [-1, 1]: points that correspond under rigid motions.
inline std::vector<Vec3d> striction_samples(const RuledCurve& c, int ns, int nt) {
  const StrictionCurve sc(c);
  std::vector<Vec3d> out;
  for (double s : sample_grid(c.domain(), ns)) {
    const Vec3d p = sc.point(s);
    const Vec3d e = c.director(s);
    for (int j = 0; j < nt; ++j) out.push_back(p + (-1.0 + 2.0 * j / (nt - 1)) * e);
  }
  return out;
}

/// Prescription specs are integrated directly; any other spec is measured first and the reconstruction is
/// compared with the original after rigid alignment.
inline int cmd_reconstruct(const ReconstructOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const SurfaceSpec spec = load_spec(o.spec_path);
        const DualFrame init = o.init == "identity" ? identity_frame() : read_frame(o.init);
        std::optional<RuledCurve> original;
        InvariantPrescription p;
        if (spec.kind == SourceKind::Prescription) {
          p = prescription_of(spec);
          check_positive_kappa0(p);
        } else {
          original = build_surface(spec);
          p = measured_prescription(*original);
        }
        const ReconstructedCurve rc = integrate_frenet(p, init, o.step);
        const RuledCurve c = p.unit_speed() ? rc.curve : arclength_reparam(rc.curve);
        write_text_file(o.prefix + ".csv", curve_csv(c, static_cast<int>(rc.nodes.size())));
        const Mesh m = sample_mesh(c, o.ns, o.nt, -1.0, 1.0);
        write_text_file(o.prefix + ".obj", to_obj(m));
        char buf[128];
        std::snprintf(buf, sizeof buf, "nodes %zu\nframe_defect %.3e\n", rc.nodes.size(), rc.max_defect);
        out << buf;
        if (original) {
          const Alignment al = align_points(striction_samples(c, o.ns, o.nt), striction_samples(*original, o.ns, o.nt));
          std::snprintf(buf, sizeof buf, "alignment_residual %.3e\n", al.max_residual);
          out << buf;
        }
        return kOk;
      },
      err);
}

struct GalleryOptions {
  std::string label;
  std::optional<std::string> out_path;
};

inline int cmd_gallery(const GalleryOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const auto label = parse_label(o.label);
        if (!label) fail(ErrorCode::UnsupportedLabel, "unknown label '" + o.label + "'");
        const std::string text = gallery_spec_text(gallery(*label));
        if (o.out_path)
          write_text_file(*o.out_path, text);
        else
          out << text;
        return kOk;
      },
      err);
}

}  // namespace ruledkit::cli
