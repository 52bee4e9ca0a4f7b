#include "pidf/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pidf/csv.hpp"

namespace pidf {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
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

std::string indices(const FeatureSubset& s) {
  std::string out;
  for (std::size_t j : s) out += (out.empty() ? "" : ",") + std::to_string(j);
  return out;
}

struct Segment {
  const char* quantity;
  const char* color;
  double nats;
  std::string label;
  std::size_t contributor = 0;
  bool has_contributor = false;
};

class Writer {
 public:
  explicit Writer(double baseline) : baseline_(baseline) {}

  // Draws a stack of segments bottom-up starting at the baseline.
  void stack(std::size_t feature, double x, const std::vector<Segment>& segments) {
    double top = baseline_;
    for (const auto& s : segments) {
      const bool clamped = s.nats < 0.0;
      const double h = clamped ? 0.0 : s.nats * kSvgPixelsPerNat;
      top -= h;
      body_ << "  <rect x=\"" << format_number(x) << "\" y=\"" << format_number(top) << "\" width=\""
            << format_number(kSvgBarWidth) << "\" height=\"" << format_number(h) << "\" fill=\"" << s.color
            << "\" data-feature=\"" << feature << "\" data-quantity=\"" << s.quantity << "\"";
      if (s.has_contributor) body_ << " data-contributor=\"" << s.contributor << "\"";
      body_ << " data-nats=\"" << format_number(s.nats) << "\"" << (clamped ? " data-clamped=\"true\"" : "")
            << "/>\n";
      if (!s.label.empty() && h >= 10.0) {
        body_ << "  <text x=\"" << format_number(x + kSvgBarWidth / 2) << "\" y=\"" << format_number(top + h / 2 + 4)
              << "\" font-size=\"11\" text-anchor=\"middle\" fill=\"white\">" << escape(s.label) << "</text>\n";
      }
    }
  }
  void text(double x, double y, const std::string& s, const char* extra = "") {
    body_ << "  <text x=\"" << format_number(x) << "\" y=\"" << format_number(y)
          << "\" font-size=\"12\" text-anchor=\"middle\"" << extra << ">" << escape(s) << "</text>\n";
  }
  std::string body() const { return body_.str(); }

 private:
  double baseline_;
  std::ostringstream body_;
};

}  // namespace

std::string render_svg(const PidfReport& report_any, const SelectionResult& selection) {
  const PidfReport report = report_any.in_units(Unit::nats);
  double tallest = 0.0;
  for (const auto& f : report.features) {
    tallest = std::max(tallest, std::max(0.0, f.mi.value) + std::max(0.0, f.fws.value));
    double fwr = 0.0;
    for (const auto& [j, v] : f.fwr_contributions) fwr += std::max(0.0, v.value);
    tallest = std::max(tallest, fwr);
  }
  const double plot_height = std::ceil(tallest * kSvgPixelsPerNat) + 20.0;
  const double baseline = kSvgMargin + plot_height;
  const double width = 2 * kSvgMargin + kSvgGroupWidth * static_cast<double>(report.features.size());
  const double height = baseline + 3 * kSvgMargin;

  Writer w(baseline);
  const auto& names = report.dataset.feature_names;
  for (std::size_t k = 0; k < report.features.size(); ++k) {
    const auto& f = report.features[k];
    const double x = kSvgMargin + kSvgGroupWidth * static_cast<double>(k) + 10.0;
    w.stack(f.feature, x,
            {{"mi", "#d62728", f.mi.value, "", 0, false},
             {"fws", "#2ca02c", f.fws.value, indices(f.max_synergy_set)}});
    std::vector<Segment> fwr;
    for (const auto& [j, v] : f.fwr_contributions) fwr.push_back({"fwr", "#9467bd", v.value, std::to_string(j), j, true});
    w.stack(f.feature, x + kSvgBarWidth + kSvgBarGap, fwr);
    const double centre = x + kSvgBarWidth + kSvgBarGap / 2;
    w.text(centre, baseline + 16, "F" + std::to_string(f.feature));
    w.text(centre, baseline + 30, names.at(f.feature), " fill=\"#555\"");
    if (selection.selected.contains(f.feature)) w.text(centre, baseline + 44, "selected", " fill=\"#1f77b4\"");
  }

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_number(width) << "\" height=\""
      << format_number(height) << "\" viewBox=\"0 0 " << format_number(width) << " " << format_number(height)
      << "\" data-pixels-per-nat=\"" << format_number(kSvgPixelsPerNat) << "\">\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "  <line x1=\"" << format_number(kSvgMargin) << "\" y1=\"" << format_number(baseline) << "\" x2=\""
      << format_number(width - kSvgMargin) << "\" y2=\"" << format_number(baseline) << "\" stroke=\"black\"/>\n";
  out << "  <text x=\"" << format_number(kSvgMargin) << "\" y=\"20\" font-size=\"12\">"
      << "red: MI, green: FWS (max-synergy set), purple: FWR per contributor; "
      << format_number(kSvgPixelsPerNat) << " px per nat</text>\n";
  out << w.body();
  out << "</svg>\n";
  return out.str();
}

}  // namespace pidf
