#include "rvcontrib/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "rvcontrib/errors.hpp"

namespace rvc {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 64.0;
constexpr double kMarginRight = 16.0;
constexpr double kMarginTop = 16.0;
constexpr double kMarginBottom = 48.0;

// Fixed-point coordinates keep the byte stream independent of printf locale
// quirks and stable across runs.
std::string coord(double v) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(3);
  out << v;
  std::string s = out.str();
  if (s == "-0.000") s = "0.000";
  return s;
}

std::string escape_xml(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

struct Frame {
  double x0, x1, y0, y1;  // plot area in svg coordinates (y grows downward)
  double vmax;            // data maximum mapped to y0

  double x(double f) const { return x0 + f * (x1 - x0); }
  double y(double value) const {
    const double f = vmax > 0.0 ? value / vmax : 0.0;
    return y1 - f * (y1 - y0);
  }
};

void open_svg(std::ostringstream& out) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
}

void axes(std::ostringstream& out, const Frame& f, const std::string& x_label,
          const std::string& y_label) {
  out << "<g stroke=\"black\" stroke-width=\"1\">\n";
  out << "<line x1=\"" << coord(f.x0) << "\" y1=\"" << coord(f.y1)
      << "\" x2=\"" << coord(f.x1) << "\" y2=\"" << coord(f.y1) << "\"/>\n";
  out << "<line x1=\"" << coord(f.x0) << "\" y1=\"" << coord(f.y0)
      << "\" x2=\"" << coord(f.x0) << "\" y2=\"" << coord(f.y1) << "\"/>\n";
  out << "</g>\n";
  out << "<text x=\"" << coord((f.x0 + f.x1) / 2.0) << "\" y=\""
      << coord(kHeight - 12.0)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\">"
      << escape_xml(x_label) << "</text>\n";
  out << "<text x=\"" << coord(18.0) << "\" y=\""
      << coord((f.y0 + f.y1) / 2.0)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"14\" transform=\"rotate(-90 " +
             coord(18.0) + " " + coord((f.y0 + f.y1) / 2.0) + ")\">"
      << escape_xml(y_label) << "</text>\n";
  // y-scale reference: max value tick
  out << "<text x=\"" << coord(f.x0 - 6.0) << "\" y=\"" << coord(f.y0 + 4.0)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
      << coord(f.vmax) << "</text>\n";
  out << "<text x=\"" << coord(f.x0 - 6.0) << "\" y=\"" << coord(f.y1 + 4.0)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
      << "0</text>\n";
}

Frame make_frame(double vmax) {
  Frame f;
  f.x0 = kMarginLeft;
  f.x1 = kWidth - kMarginRight;
  f.y0 = kMarginTop;
  f.y1 = kHeight - kMarginBottom;
  f.vmax = vmax > 0.0 ? vmax : 1.0;
  return f;
}

void write_file(const std::string& text, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing", path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failure", path);
}

}  // namespace

std::string contribution_plot_svg(const ContributionProfile& profile) {
  const std::size_t p = profile.contributions.size();
  if (p == 0) throw std::invalid_argument("profile has no variables");

  double vmax = *std::max_element(profile.contributions.begin(),
                                  profile.contributions.end());
  if (profile.threshold) vmax = std::max(vmax, *profile.threshold);

  const Frame f = make_frame(vmax);
  std::ostringstream out;
  open_svg(out);
  axes(out, f, "Explanatory Variables", "Contribution");

  out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" "
         "points=\"";
  for (std::size_t k = 0; k < p; ++k) {
    const double fx =
        p == 1 ? 0.5
               : static_cast<double>(k) / static_cast<double>(p - 1);
    if (k > 0) out << ' ';
    out << coord(f.x(fx)) << ',' << coord(f.y(profile.contributions[k]));
  }
  out << "\"/>\n";

  if (profile.threshold) {
    const double ty = f.y(*profile.threshold);
    out << "<line class=\"threshold\" stroke=\"red\" stroke-width=\"1\" "
           "stroke-dasharray=\"6 4\" x1=\""
        << coord(f.x0) << "\" y1=\"" << coord(ty) << "\" x2=\"" << coord(f.x1)
        << "\" y2=\"" << coord(ty) << "\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void render_contribution_plot(const ContributionProfile& profile,
                              const std::string& path) {
  write_file(contribution_plot_svg(profile), path);
}

std::string response_profile_svg(
    const std::string& variable,
    const std::vector<std::string>& response_names,
    const std::vector<double>& values, int alpha) {
  if (values.empty()) throw std::invalid_argument("profile has no responses");
  if (response_names.size() != values.size())
    throw std::invalid_argument("response names and values differ in length");

  const double vmax = *std::max_element(values.begin(), values.end());
  const Frame f = make_frame(vmax);
  std::ostringstream out;
  open_svg(out);
  axes(out, f, "Response Variables",
       variable + " contribution (power " + std::to_string(alpha) + ")");

  const std::size_t q = values.size();
  const double slot = (f.x1 - f.x0) / static_cast<double>(q);
  const double bar = slot * 0.7;
  for (std::size_t l = 0; l < q; ++l) {
    const double cx = f.x0 + (static_cast<double>(l) + 0.5) * slot;
    const double top = f.y(values[l]);
    out << "<rect fill=\"steelblue\" x=\"" << coord(cx - bar / 2.0)
        << "\" y=\"" << coord(top) << "\" width=\"" << coord(bar)
        << "\" height=\"" << coord(f.y1 - top) << "\"><title>"
        << escape_xml(response_names[l]) << "</title></rect>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void render_response_profile(const std::string& variable,
                             const std::vector<std::string>& response_names,
                             const std::vector<double>& values, int alpha,
                             const std::string& path) {
  write_file(response_profile_svg(variable, response_names, values, alpha),
             path);
}

}  // namespace rvc
