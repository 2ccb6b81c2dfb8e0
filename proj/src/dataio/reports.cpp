#include "ramanforge/dataio/reports.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ramanforge/dataio/csv.hpp"
#include "ramanforge/errors.hpp"
#include "ramanforge/skin.hpp"

namespace ramanforge {

namespace {

Json number_or_null(double v, bool defined = true) {
  if (!defined || !std::isfinite(v)) return nullptr;
  return v;
}

Json context_json(const ReportContext& ctx, const char* kind) {
  return Json{{"kind", kind},
              {"schema_version", 1},
              {"denoiser", ctx.denoiser},
              {"manifest", ctx.manifest},
              {"split", ctx.split},
              {"seed", ctx.seed}};
}

Json group_json(const ConcentrationReport& r, std::size_t n, bool with_points) {
  Json fits = Json::array();
  for (std::size_t c = 0; c < r.fits.size(); ++c) {
    const auto& f = r.fits[c];
    fits.push_back({{"component", c < kSkinComponentCount ? std::string(kSkinComponents[c])
                                                           : std::to_string(c)},
                    {"slope", number_or_null(f.slope, f.defined)},
                    {"intercept", number_or_null(f.intercept, f.defined)}});
  }
  Json g{{"n_spectra", n}, {"mse", number_or_null(r.mse, n > 0)}, {"fits", fits}};
  if (with_points) {
    g["weights_pure"] = r.weights_pure;
    g["weights_denoised"] = r.weights_denoised;
  }
  return g;
}

std::string cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  return format_double(v.get<double>());
}

const Json& report_field(const Json& report, const char* key) {
  return require_field(report, key, "report");
}

// ---------------------------------------------------------------------------
// SVG

struct Series {
  std::string label;
  std::string color;
  std::vector<std::pair<double, double>> points;
  bool line = false;
  /// Per-point fill colours; empty means `color`.
  std::vector<std::string> point_colors;
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  std::vector<Series> series;
};

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') {
      out += "&lt;";
    } else if (c == '>') {
      out += "&gt;";
    } else if (c == '&') {
      out += "&amp;";
    } else {
      out += c;
    }
  }
  return out;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

std::string heat_color(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(255 * t));
  const int b = static_cast<int>(std::lround(255 * (1.0 - t)));
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x40%02x", r, b);
  return buf;
}

void draw_panel(std::ostringstream& svg, const Panel& p, double top) {
  constexpr double kWidth = 640;
  constexpr double kHeight = 320;
  constexpr double kLeft = 70;
  constexpr double kRight = 150;
  constexpr double kTop = 30;
  constexpr double kBottom = 50;

  auto ty = [&](double y) { return p.log_y ? std::log10(y) : y; };
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : p.series) {
    for (const auto& [x, y] : s.points) {
      if (p.log_y && !(y > 0.0)) continue;
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, ty(y));
      y1 = std::max(y1, ty(y));
    }
  }
  if (!(x0 <= x1)) x0 = 0, x1 = 1;
  if (!(y0 <= y1)) y0 = 0, y1 = 1;
  if (x1 == x0) x0 -= 0.5, x1 += 0.5;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  const double pad_y = 0.05 * (y1 - y0);
  y0 -= pad_y;
  y1 += pad_y;

  const double w = kWidth - kLeft - kRight;
  const double h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * w; };
  auto py = [&](double y) { return top + kTop + (1.0 - (ty(y) - y0) / (y1 - y0)) * h; };

  svg << "<text x=\"" << kLeft << "\" y=\"" << top + 20 << "\" font-size=\"14\">"
      << escape(p.title) << "</text>\n";
  svg << "<rect x=\"" << kLeft << "\" y=\"" << top + kTop << "\" width=\"" << w
      << "\" height=\"" << h << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = x0 + (x1 - x0) * t / 4.0;
    const double yv = y0 + (y1 - y0) * t / 4.0;
    const double gx = kLeft + w * t / 4.0;
    const double gy = top + kTop + h * (1.0 - t / 4.0);
    svg << "<text x=\"" << gx << "\" y=\"" << top + kTop + h + 16
        << "\" font-size=\"10\" text-anchor=\"middle\">" << fmt(xv) << "</text>\n";
    svg << "<text x=\"" << kLeft - 6 << "\" y=\"" << gy + 3
        << "\" font-size=\"10\" text-anchor=\"end\">" << fmt(p.log_y ? std::pow(10.0, yv) : yv)
        << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + w / 2 << "\" y=\"" << top + kHeight - 12
      << "\" font-size=\"12\" text-anchor=\"middle\">" << escape(p.x_label) << "</text>\n";
  svg << "<text x=\"16\" y=\"" << top + kTop + h / 2
      << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << top + kTop + h / 2 << ")\">" << escape(p.y_label) << "</text>\n";

  double legend_y = top + kTop + 10;
  for (const auto& s : p.series) {
    if (s.line && s.points.size() > 1) {
      svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : s.points) {
        if (p.log_y && !(y > 0.0)) continue;
        svg << px(x) << ',' << py(y) << ' ';
      }
      svg << "\"/>\n";
    }
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      const auto& [x, y] = s.points[i];
      if (p.log_y && !(y > 0.0)) continue;
      const std::string& fill = s.point_colors.empty() ? s.color : s.point_colors[i];
      svg << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"2.5\" fill=\"" << fill
          << "\"/>\n";
    }
    if (!s.label.empty()) {
      svg << "<rect x=\"" << kWidth - kRight + 10 << "\" y=\"" << legend_y - 8
          << "\" width=\"10\" height=\"10\" fill=\"" << s.color << "\"/>\n";
      svg << "<text x=\"" << kWidth - kRight + 25 << "\" y=\"" << legend_y
          << "\" font-size=\"11\">" << escape(s.label) << "</text>\n";
      legend_y += 16;
    }
  }
}

std::string render(const std::vector<Panel>& panels) {
  std::ostringstream svg;
  const double height = 320.0 * static_cast<double>(panels.size());
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"" << height
      << "\" viewBox=\"0 0 640 " << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    draw_panel(svg, panels[i], 320.0 * static_cast<double>(i));
  }
  svg << "</svg>\n";
  return svg.str();
}

std::vector<Panel> snri_panels(const Json& report) {
  const Json& records = report_field(report, "records");
  Series s;
  s.color = "#444444";
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& r : records) {
    if (r.at("snri_db").is_null()) continue;
    lo = std::min(lo, r.at("snri_db").get<double>());
    hi = std::max(hi, r.at("snri_db").get<double>());
  }
  for (const auto& r : records) {
    if (r.at("snri_db").is_null()) continue;
    const double v = r.at("snri_db").get<double>();
    s.points.emplace_back(r.at("r2f").get<double>(), r.at("snr_old").get<double>());
    s.point_colors.push_back(heat_color(hi > lo ? (v - lo) / (hi - lo) : 0.5));
  }
  Panel p{"SNR improvement (blue " + fmt(lo) + " dB to red " + fmt(hi) + " dB)", "r2f",
          "SNR before denoising", true, {s}};
  return {p};
}

std::vector<Panel> peak_panels(const Json& report) {
  const Json& levels = report_field(report, "levels");
  const char* keys[] = {"missing_ratio", "artifact_ratio", "value_bias", "shift_mean"};
  std::vector<Series> series(4);
  for (int k = 0; k < 4; ++k) {
    series[k].label = keys[k];
    series[k].color = kPalette[k];
    series[k].line = true;
    for (const auto& l : levels) {
      if (l.at(keys[k]).is_null()) continue;
      series[k].points.emplace_back(l.at("prominence").get<double>(),
                                    l.at(keys[k]).get<double>());
    }
  }
  Panel ratios{"Peak ratios", "relative prominence", "ratio", false, {series[0], series[1]}};
  Panel bias{"Peak value bias and shift", "relative prominence", "value", false,
             {series[2], series[3]}};
  return {ratios, bias};
}

std::vector<Panel> skin_panels(const Json& report) {
  const Json& all = report_field(report_field(report, "groups"), "all");
  const auto pure = all.at("weights_pure").get<std::vector<std::vector<double>>>();
  const auto den = all.at("weights_denoised").get<std::vector<std::vector<double>>>();
  const Json& fits = all.at("fits");
  Panel p{"Concentrations, denoised vs pure", "pure-derived weight", "denoised-derived weight",
          false, {}};
  for (std::size_t c = 0; c < fits.size(); ++c) {
    Series pts;
    pts.label = fits[c].at("component").get<std::string>();
    pts.color = kPalette[c % 8];
    double lo = INFINITY, hi = -INFINITY;
    for (std::size_t i = 0; i < pure.size(); ++i) {
      pts.points.emplace_back(pure[i][c], den[i][c]);
      lo = std::min(lo, pure[i][c]);
      hi = std::max(hi, pure[i][c]);
    }
    p.series.push_back(pts);
    if (!fits[c].at("slope").is_null() && lo < hi) {
      Series line;
      line.color = kPalette[c % 8];
      line.line = true;
      const double a = fits[c].at("slope").get<double>();
      const double b = fits[c].at("intercept").get<double>();
      line.points = {{lo, a * lo + b}, {hi, a * hi + b}};
      p.series.push_back(line);
    }
  }
  return {p};
}

}  // namespace

Json snri_report(const ReportContext& ctx, const SnriConfig& cfg,
                 std::span<const SnriRecord> records) {
  Json j = context_json(ctx, "snri_report");
  j["config"] = {{"pairs", cfg.n_pairs},
                 {"signals_per_pair", cfg.signals_per_pair},
                 {"realizations", cfg.realizations},
                 {"r2f_range", {cfg.ranges.r2f_min, cfg.ranges.r2f_max}},
                 {"snr_range", {cfg.ranges.snr_min, cfg.ranges.snr_max}},
                 {"snr_cap", cfg.snr_cap}};
  Json recs = Json::array();
  double sum = 0.0;
  double sum_abs = 0.0;
  std::size_t capped = 0;
  for (const auto& r : records) {
    recs.push_back({{"r2f", r.r2f},
                    {"snr_old", r.snr_old},
                    {"snr_new", number_or_null(r.snr_new)},
                    {"snri_db", number_or_null(r.snri_db)},
                    {"capped", r.capped}});
    sum += r.snri_db;
    sum_abs += std::abs(r.snri_db);
    capped += r.capped ? 1 : 0;
  }
  const double n = static_cast<double>(records.size());
  j["records"] = std::move(recs);
  j["summary"] = {{"n_pairs", records.size()},
                  {"mean_snri_db", number_or_null(sum / n, !records.empty())},
                  {"mean_abs_snri_db", number_or_null(sum_abs / n, !records.empty())},
                  {"n_capped", capped}};
  return j;
}

Json peak_report(const ReportContext& ctx, const PeakProtocolResult& result) {
  Json j = context_json(ctx, "peaks_report");
  Json levels = Json::array();
  for (const auto& l : result.levels) {
    levels.push_back({{"prominence", l.prominence},
                      {"missing_ratio", number_or_null(l.missing_ratio, l.n_ratio_defined > 0)},
                      {"artifact_ratio", number_or_null(l.artifact_ratio, l.n_ratio_defined > 0)},
                      {"value_bias", number_or_null(l.value_bias, l.n_match_defined > 0)},
                      {"shift_mean", number_or_null(l.shift_mean, l.n_match_defined > 0)},
                      {"n_spectra", l.n_spectra},
                      {"n_ratio_defined", l.n_ratio_defined},
                      {"n_match_defined", l.n_match_defined},
                      {"n_true", l.n_true},
                      {"n_pred", l.n_pred},
                      {"n_match", l.n_match}});
  }
  j["levels"] = std::move(levels);
  return j;
}

Json skin_report(const ReportContext& ctx, const SkinEvalReport& report) {
  Json j = context_json(ctx, "skin_report");
  j["low_snr_limit"] = kLowSnrLimit;
  j["groups"] = {{"all", group_json(report.all, report.n_low + report.n_high, true)},
                 {"low_snr", group_json(report.low_snr, report.n_low, false)},
                 {"high_snr", group_json(report.high_snr, report.n_high, false)}};
  return j;
}

std::string plot_points_csv(const Json& report) {
  const std::string kind = require_string(report, "kind", "report");
  std::ostringstream out;
  if (kind == "snri_report") {
    out << "r2f,snr,snri_db\n";
    for (const auto& r : report_field(report, "records")) {
      out << cell(r.at("r2f")) << ',' << cell(r.at("snr_old")) << ',' << cell(r.at("snri_db"))
          << '\n';
    }
  } else if (kind == "peaks_report") {
    out << "prominence,missing_ratio,artifact_ratio,value_bias,shift_mean\n";
    for (const auto& l : report_field(report, "levels")) {
      out << cell(l.at("prominence")) << ',' << cell(l.at("missing_ratio")) << ','
          << cell(l.at("artifact_ratio")) << ',' << cell(l.at("value_bias")) << ','
          << cell(l.at("shift_mean")) << '\n';
    }
  } else if (kind == "skin_report") {
    const Json& all = report_field(report_field(report, "groups"), "all");
    const Json& pure = all.at("weights_pure");
    const Json& den = all.at("weights_denoised");
    const Json& fits = all.at("fits");
    out << "component,weight_pure,weight_denoised,slope,intercept\n";
    for (std::size_t c = 0; c < fits.size(); ++c) {
      for (std::size_t i = 0; i < pure.size(); ++i) {
        out << cell(fits[c].at("component")) << ',' << cell(pure[i][c]) << ','
            << cell(den[i][c]) << ',' << cell(fits[c].at("slope")) << ','
            << cell(fits[c].at("intercept")) << '\n';
      }
    }
  } else {
    throw ValidationError("report: unknown kind '" + kind + "'");
  }
  return out.str();
}

std::string plot_svg(const Json& report) {
  const std::string kind = require_string(report, "kind", "report");
  if (kind == "snri_report") return render(snri_panels(report));
  if (kind == "peaks_report") return render(peak_panels(report));
  if (kind == "skin_report") return render(skin_panels(report));
  throw ValidationError("report: unknown kind '" + kind + "'");
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace ramanforge
