#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "wsncov/experiments.hpp"

namespace wsncov
{

namespace
{

std::string num(double v)
{
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string opt(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

std::string csv_field(const std::string& s)
{
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s)
  {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

std::string xml_escape(const std::string& s)
{
  std::string out;
  for (char c : s)
  {
    switch (c)
    {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out)
{
  out << kCsvHeader << '\n';
  for (const auto& r : rows)
  {
    out << csv_field(r.experiment) << ',' << csv_field(r.model) << ',' << csv_field(r.sweep_param) << ','
        << num(r.sweep_value) << ',' << opt(r.f_analytic) << ',' << opt(r.f_mc) << ',' << opt(r.std_error) << ','
        << opt(r.ci_lo) << ',' << opt(r.ci_hi) << ',' << (r.seed ? std::to_string(*r.seed) : std::string()) << ','
        << opt(r.wall_ms) << '\n';
  }
}

void write_svg_plot(const std::vector<ResultRow>& rows, std::ostream& out, const std::string& title)
{
  constexpr double width = 820, height = 520;
  constexpr double left = 70, right = 220, top = 40, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  // Series keep first-appearance order of their label.
  std::vector<std::string> labels;
  std::map<std::string, std::vector<const ResultRow*>> series;
  double x_min = 0.0, x_max = 1.0;
  bool first = true;
  for (const auto& r : rows)
  {
    if (!series.contains(r.model))
      labels.push_back(r.model);
    series[r.model].push_back(&r);
    x_min = first ? r.sweep_value : std::min(x_min, r.sweep_value);
    x_max = first ? r.sweep_value : std::max(x_max, r.sweep_value);
    first = false;
  }
  if (x_max <= x_min)
    x_max = x_min + 1.0;

  auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double y) { return top + (1.0 - std::clamp(y, 0.0, 1.0)) * plot_h; };
  char buf[256];

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" viewBox=\"0 0 %g %g\">\n", width,
                height, width, height);
  out << buf;
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty())
  {
    std::snprintf(buf, sizeof buf, "<text x=\"%g\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">", left + plot_w / 2);
    out << buf << xml_escape(title) << "</text>\n";
  }

  // Axes, ticks and grid.
  std::snprintf(buf, sizeof buf,
                "<g class=\"axes\" stroke=\"black\"><line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\"/>"
                "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\"/></g>\n",
                left, top + plot_h, left + plot_w, top + plot_h, left, top, left, top + plot_h);
  out << buf;
  for (int i = 0; i <= 5; ++i)
  {
    const double xv = x_min + (x_max - x_min) * i / 5.0;
    const double yv = i / 5.0;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#ddd\"/>"
                  "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\" font-size=\"11\">%g</text>\n",
                  px(xv), top, px(xv), top + plot_h, px(xv), top + plot_h + 16, xv);
    out << buf;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#ddd\"/>"
                  "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\" font-size=\"11\">%.1f</text>\n",
                  left, py(yv), left + plot_w, py(yv), left - 6, py(yv) + 4, yv);
    out << buf;
  }
  const std::string x_label = rows.empty() ? std::string("sweep value") : rows.front().sweep_param;
  std::snprintf(buf, sizeof buf, "<text class=\"x-label\" x=\"%g\" y=\"%g\" text-anchor=\"middle\" font-size=\"13\">",
                left + plot_w / 2, height - 18);
  out << buf << xml_escape(x_label) << "</text>\n";
  std::snprintf(buf, sizeof buf,
                "<text class=\"y-label\" x=\"18\" y=\"%g\" text-anchor=\"middle\" font-size=\"13\" "
                "transform=\"rotate(-90 18 %g)\">coverage fraction</text>\n",
                top + plot_h / 2, top + plot_h / 2);
  out << buf;

  for (std::size_t s = 0; s < labels.size(); ++s)
  {
    const auto& pts = series[labels[s]];
    const char* color = kPalette[s % std::size(kPalette)];
    out << "<g class=\"series\" data-label=\"" << xml_escape(labels[s]) << "\">\n";
    std::string analytic_pts, mc_marks;
    for (const ResultRow* r : pts)
    {
      if (r->f_analytic)
      {
        std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(r->sweep_value), py(*r->f_analytic));
        analytic_pts += buf;
      }
      if (r->f_mc)
      {
        std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.5\" fill=\"%s\"/>", px(r->sweep_value),
                      py(*r->f_mc), color);
        mc_marks += buf;
      }
    }
    if (!analytic_pts.empty())
    {
      analytic_pts.pop_back();
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"" << analytic_pts
          << "\"/>\n";
    }
    if (!mc_marks.empty())
      out << mc_marks << '\n';
    out << "</g>\n";

    const double ly = top + 14 + 20.0 * static_cast<double>(s);
    std::snprintf(buf, sizeof buf,
                  "<g class=\"legend\"><line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"%s\" stroke-width=\"2\"/>"
                  "<text x=\"%g\" y=\"%g\" font-size=\"12\">",
                  left + plot_w + 14, ly, left + plot_w + 40, ly, color, left + plot_w + 46, ly + 4);
    out << buf << xml_escape(labels[s]) << "</text></g>\n";
  }
  out << "</svg>\n";
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents)
{
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw IoError("cannot open " + tmp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out)
      throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
  {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at " + path.string());
  }
}

void emit_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& path)
{
  if (rows.empty())
    throw std::invalid_argument("emit_csv: no rows");
  std::ostringstream ss;
  write_csv(rows, ss);
  write_file_atomic(path, ss.str());
}

void emit_svg_plot(const std::vector<ResultRow>& rows, const std::filesystem::path& path, const std::string& title)
{
  if (rows.empty())
    throw std::invalid_argument("emit_svg_plot: no rows");
  std::ostringstream ss;
  write_svg_plot(rows, ss, title);
  write_file_atomic(path, ss.str());
}

}  // namespace wsncov
