#include "roughcert/emit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "roughcert/construction.hpp"
#include "roughcert/error.hpp"

#ifndef ROUGHCERT_VERSION
#define ROUGHCERT_VERSION "unknown"
#endif

namespace roughcert {

namespace {

using Json = nlohmann::ordered_json;

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json config_json(const RunConfig& c) {
  Json emit = Json::array();
  if (c.emit.csv) emit.push_back("csv");
  if (c.emit.json) emit.push_back("json");
  if (c.emit.svg) emit.push_back("svg");
  Json j;
  j["phi"] = c.phi;
  j["mode"] = to_string(c.mode);
  j["N"] = c.N;
  j["n"] = c.n;
  j["grid"] = c.grid;
  j["oversample"] = c.oversample;
  j["tol"] = c.tol;
  j["p"] = c.p;
  j["emit"] = emit;
  j["jobs"] = c.jobs;
  j["geometry"] = {{"s", c.geometry.s}, {"t_start", c.geometry.t_start}, {"t_step", c.geometry.t_step}};
  return j;
}

Json summary_json(const ConstructionSummary& s) {
  Json j;
  j["N"] = number(s.N);
  j["n"] = s.n;
  j["s"] = s.s;
  j["t_start"] = s.t_start;
  j["t_step"] = s.t_step;
  j["c"] = number(s.c);
  j["absD"] = number(s.absD);
  j["margin"] = number(s.margin);
  j["modular"] = number(s.modular);
  j["luxemburg"] = number(s.luxemburg);
  j["sup_m"] = number(s.sup_m);
  j["c7"] = number(s.c7);
  j["c8"] = number(s.c8);
  j["ratio_p4"] = number(s.ratio_p4);
  j["slope_p4"] = number(s.slope_p4);
  return j;
}

Json report_object(const VerificationReport& r) {
  Json j;
  j["config"] = config_json(r.config);
  j["construction"] = summary_json(r.summary);
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json rec;
    rec["name"] = c.name;
    rec["passed"] = c.passed;
    rec["measured"] = number(c.measured);
    rec["threshold"] = number(c.threshold);
    if (c.skipped) rec["status"] = "skipped";
    else rec["status"] = c.passed ? "passed" : "failed";
    rec["detail"] = c.detail;
    checks.push_back(std::move(rec));
  }
  j["checks"] = std::move(checks);
  j["aborted"] = r.aborted;
  if (r.aborted) j["abort"] = {{"stage", r.abort_stage}, {"message", r.abort_message}};
  j["environment"] = {{"version", ROUGHCERT_VERSION},
                      {"grid", r.config.grid},
                      {"oversample", r.config.oversample}};
  return j;
}

void write_file(const std::filesystem::path& path, const std::string& body,
                std::vector<std::string>& written) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << body;
  out.close();
  if (!out) throw IoError("error while writing '" + path.string() + "'");
  written.push_back(path.string());
}

std::filesystem::path prepare_dir(const std::string& out_dir) {
  std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory '" + out_dir + "'");
  }
  return dir;
}

// ---------------------------------------------------------------------------
// Minimal SVG line plots.

std::string fixed(double v, int digits = 2) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  return std::string(buf, r.ptr);
}

class Plot {
 public:
  Plot(std::string title, std::string xlabel, std::string ylabel, double x0, double x1, double y0,
       double y1)
      : x0_(x0), x1_(x1), y0_(y0), y1_(y1) {
    if (!(y1_ > y0_)) y1_ = y0_ + 1.0;
    body_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
          << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
          << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
          << "<text x=\"" << kW / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << title
          << "</text>\n"
          << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 8 << "\" text-anchor=\"middle\">" << xlabel
          << "</text>\n"
          << "<text x=\"14\" y=\"" << kH / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
          << kH / 2 << ")\">" << ylabel << "</text>\n";
  }

  double px(double x) const { return kL + (x - x0_) / (x1_ - x0_) * (kW - kL - kR); }
  double py(double y) const { return kH - kB - (y - y0_) / (y1_ - y0_) * (kH - kT - kB); }

  void band(double xa, double xb, const char* fill) {
    xa = std::max(xa, x0_);
    xb = std::min(xb, x1_);
    if (!(xb > xa)) return;
    body_ << "<rect x=\"" << fixed(px(xa)) << "\" y=\"" << kT << "\" width=\""
          << fixed(std::max(px(xb) - px(xa), 0.5)) << "\" height=\"" << kH - kT - kB << "\" fill=\""
          << fill << "\"/>\n";
  }

  void line(const std::vector<double>& xs, const std::vector<double>& ys, const char* stroke) {
    body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double y = std::clamp(ys[i], y0_, y1_);
      body_ << fixed(px(xs[i])) << ',' << fixed(py(y)) << (i + 1 < xs.size() ? " " : "");
    }
    body_ << "\"/>\n";
  }

  void dots(const std::vector<double>& xs, const std::vector<double>& ys, const char* fill) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      body_ << "<circle cx=\"" << fixed(px(xs[i])) << "\" cy=\"" << fixed(py(ys[i]))
            << "\" r=\"3\" fill=\"" << fill << "\"/>\n";
    }
  }

  void legend(int row, const std::string& text, const char* color) {
    const int y = kT + 14 + 16 * row;
    body_ << "<rect x=\"" << kL + 10 << "\" y=\"" << y - 9 << "\" width=\"10\" height=\"10\" fill=\""
          << color << "\"/>\n<text x=\"" << kL + 26 << "\" y=\"" << y << "\">" << text << "</text>\n";
  }

  std::string finish() {
    body_ << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << kW - kL - kR << "\" height=\""
          << kH - kT - kB << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
      const double x = x0_ + (x1_ - x0_) * i / 4.0;
      const double y = y0_ + (y1_ - y0_) * i / 4.0;
      body_ << "<text x=\"" << fixed(px(x)) << "\" y=\"" << kH - kB + 16
            << "\" text-anchor=\"middle\">" << fixed(x, 3) << "</text>\n"
            << "<text x=\"" << kL - 6 << "\" y=\"" << fixed(py(y) + 4)
            << "\" text-anchor=\"end\">" << fixed(y, 3) << "</text>\n";
    }
    body_ << "</svg>\n";
    return body_.str();
  }

 private:
  static constexpr int kW = 720, kH = 420, kL = 70, kR = 20, kT = 34, kB = 44;
  double x0_, x1_, y0_, y1_;
  std::ostringstream body_;
};

std::string profile_svg(const VerificationReport& r, bool khat) {
  if (!r.window_profile) return {};
  const auto& p = *r.window_profile;
  const auto& values = khat ? p.khat : p.m;
  std::vector<double> xs;
  xs.reserve(p.grid.size());
  for (const auto& a : p.grid) xs.push_back(a.value());
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double pad = 0.05 * (*hi - *lo + 1e-12);
  Plot plot(khat ? "K of Omega_n over the window" : "m(Omega_n) over the window", "angle (rad)",
            khat ? "K" : "m", std::numbers::pi / 2, 0.75 * std::numbers::pi,
            std::min(0.0, *lo - pad), *hi + pad);
  for (const auto& g : r.guards) {
    const double c = g.center.value();
    plot.band(c - g.half_length(), c + g.half_length(), "#f4c7c3");
  }
  plot.line(xs, values, khat ? "#1f5fa8" : "#a8321f");
  plot.legend(0, "guard arcs J_k", "#f4c7c3");
  return plot.finish();
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string report_json(const VerificationReport& r) { return report_object(r).dump(2) + "\n"; }

std::string sweep_json(const std::vector<VerificationReport>& rs) {
  Json points = Json::array();
  for (const auto& r : rs) points.push_back(report_object(r));
  Json j;
  j["points"] = std::move(points);
  return j.dump(2) + "\n";
}

std::string csv_row(const VerificationReport& r) {
  const auto& s = r.summary;
  const double cells[] = {s.N, static_cast<double>(s.n), s.c, s.absD, s.margin, s.modular, s.luxemburg,
                          s.sup_m, s.c7, s.c8, s.ratio_p4, s.slope_p4};
  std::string row;
  for (std::size_t i = 0; i < std::size(cells); ++i) {
    if (i) row += ',';
    if (std::isfinite(cells[i])) row += format_number(cells[i]);
  }
  return row;
}

std::string csv_table(const std::vector<VerificationReport>& rs) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : rs) out += csv_row(r) + "\n";
  return out;
}

std::string khat_profile_svg(const VerificationReport& r) { return profile_svg(r, true); }
std::string m_profile_svg(const VerificationReport& r) { return profile_svg(r, false); }

std::string ratio_loglog_svg(const VerificationReport& r) {
  if (r.fits.empty()) return {};
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto& f : r.fits) {
    for (const auto& [n, ratio] : f.fit.samples) {
      x0 = std::min(x0, std::log(n));
      x1 = std::max(x1, std::log(n));
      y0 = std::min(y0, std::log(ratio));
      y1 = std::max(y1, std::log(ratio));
    }
  }
  const double pad = 0.05 * (y1 - y0 + 1e-12);
  Plot plot("unconditionality ratio, log-log", "log n", "log ratio", x0, x1, y0 - pad, y1 + pad);
  const char* colors[] = {"#1f5fa8", "#a8321f", "#2f8a3b", "#7a3fa0"};
  int row = 0;
  for (const auto& f : r.fits) {
    const char* color = colors[row % 4];
    std::vector<double> xs, ys, fit;
    for (const auto& [n, ratio] : f.fit.samples) {
      xs.push_back(std::log(n));
      ys.push_back(std::log(ratio));
      fit.push_back(f.fit.intercept + f.fit.slope * std::log(n));
    }
    plot.dots(xs, ys, color);
    plot.line(xs, fit, color);
    plot.legend(row++, "p = " + format_number(f.p) + ", slope " + fixed(f.fit.slope, 4) +
                           " (target " + fixed(f.target, 4) + ")",
                color);
  }
  return plot.finish();
}

std::vector<std::string> emit_report(const VerificationReport& r, const EmitSet& formats,
                                     const std::string& out_dir) {
  const auto dir = prepare_dir(out_dir);
  std::vector<std::string> written;
  if (formats.json) write_file(dir / "report.json", report_json(r), written);
  if (formats.csv) write_file(dir / "results.csv", csv_table({r}), written);
  if (formats.svg) {
    if (auto s = khat_profile_svg(r); !s.empty()) write_file(dir / "khat_profile.svg", s, written);
    if (auto s = m_profile_svg(r); !s.empty()) write_file(dir / "m_profile.svg", s, written);
    if (auto s = ratio_loglog_svg(r); !s.empty()) write_file(dir / "ratio_loglog.svg", s, written);
  }
  return written;
}

std::vector<std::string> emit_sweep(const std::vector<VerificationReport>& rs, const EmitSet& formats,
                                    const std::string& out_dir) {
  const auto dir = prepare_dir(out_dir);
  std::vector<std::string> written;
  if (formats.json) write_file(dir / "sweep.json", sweep_json(rs), written);
  if (formats.csv) write_file(dir / "results.csv", csv_table(rs), written);
  if (formats.svg) {
    const auto it = std::find_if(rs.begin(), rs.end(),
                                 [](const VerificationReport& r) { return r.window_profile.has_value(); });
    if (it != rs.end()) {
      EmitSet svg_only{false, false, true};
      auto more = emit_report(*it, svg_only, out_dir);
      written.insert(written.end(), more.begin(), more.end());
    }
  }
  return written;
}

}  // namespace roughcert

namespace roughcert {

std::string write_output(const std::string& out_dir, const std::string& name,
                         const std::string& body) {
  std::vector<std::string> written;
  write_file(prepare_dir(out_dir) / name, body, written);
  return written.front();
}

std::string construction_json(const circle::Construction& cons) {
  Json j;
  j["N"] = cons.N();
  j["n"] = cons.n();
  j["c"] = cons.c;
  j["geometry"] = {{"s", cons.dirs.s}, {"t_start", cons.dirs.t_start}, {"t_step", cons.dirs.t_step}};
  j["signs"] = cons.signs.eps;
  Json atoms = Json::array();
  for (std::size_t k = 1; k <= cons.atoms.size(); ++k) {
    const auto& I = cons.I[k - 1];
    atoms.push_back({{"k", k},
                     {"t", cons.dirs.t(k)},
                     {"direction", cons.direction(k).value()},
                     {"arc_center", I.center.value()},
                     {"arc_length", I.length},
                     {"sign", circle::atom_sign(k, cons.signs)}});
  }
  j["atoms"] = std::move(atoms);
  j["pieces"] = cons.omega.size();
  return j.dump(2) + "\n";
}

}  // namespace roughcert
