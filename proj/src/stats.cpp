#include "axial/stats.hpp"

#include <algorithm>
#include <cmath>

#include "axial/errors.hpp"

namespace axial {

LengthSummary length_summary(const std::vector<double>& lengths) {
  if (lengths.empty()) throw EmptyInput("no lengths to summarise");
  LengthSummary out;
  out.n = lengths.size();
  double n = static_cast<double>(out.n);
  double sum = 0.0;
  for (double v : lengths) sum += v;
  out.mean = sum / n;
  double m2 = 0.0, m3 = 0.0;
  for (double v : lengths) {
    double d = v - out.mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= n;
  m3 /= n;
  double sd = std::sqrt(m2);
  out.cv = out.mean != 0.0 ? sd / out.mean : 0.0;
  if (out.n >= 3 && m2 > 0.0) {
    double g1 = m3 / (m2 * sd);
    out.skewness = g1 * std::sqrt(n * (n - 1.0)) / (n - 2.0);
  }
  std::vector<double> sorted(lengths);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  std::size_t top = (out.n + 9) / 10;
  double top_sum = 0.0;
  for (std::size_t i = 0; i < top; ++i) top_sum += sorted[i];
  out.top_decile_share = sum != 0.0 ? top_sum / sum : 0.0;
  return out;
}

Verdict hierarchy_contrast(const LengthSummary& medial,
                           const LengthSummary& axial) {
  if (medial.n < 10 || axial.n < 10)
    throw InsufficientData("need at least 10 segments on each side");
  bool up = axial.cv > medial.cv && axial.skewness > medial.skewness &&
            axial.top_decile_share > medial.top_decile_share;
  bool down = axial.cv < medial.cv && axial.skewness < medial.skewness &&
              axial.top_decile_share < medial.top_decile_share;
  if (up) return Verdict::Hierarchical;
  if (down) return Verdict::Flat;
  return Verdict::Inconclusive;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Hierarchical:
      return "hierarchical";
    case Verdict::Flat:
      return "flat";
    default:
      return "inconclusive";
  }
}

}  // namespace axial
