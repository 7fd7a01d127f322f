// src/eval/uncert-eval.cc

// Copyright 2026  uncse authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "eval/uncert-eval.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "base/exact-sum.h"
#include "base/text.h"

namespace uncse {

RealGrid PerBinError(const ComplexGrid &estimate, const ComplexGrid &clean) {
  if (estimate.rows() != clean.rows() || estimate.cols() != clean.cols())
    UNCSE_ERR << "PerBinError: shape mismatch";
  return (estimate - clean).cwiseAbs2();
}

RealGrid PerBinMagnitudeError(const RealGrid &estimate_mag,
                              const ComplexGrid &clean) {
  if (estimate_mag.rows() != clean.rows() ||
      estimate_mag.cols() != clean.cols())
    UNCSE_ERR << "PerBinMagnitudeError: shape mismatch";
  return (estimate_mag - clean.cwiseAbs()).cwiseAbs2();
}

std::vector<double> PoolGrids(std::span<const RealGrid> grids) {
  size_t total = 0;
  for (const RealGrid &g : grids) total += g.size();
  std::vector<double> pooled;
  pooled.reserve(total);
  for (const RealGrid &g : grids)
    pooled.insert(pooled.end(), g.data(), g.data() + g.size());
  return pooled;
}

SparsificationCurve Sparsify(std::span<const double> errors,
                             std::span<const double> uncertainty, int steps) {
  const size_t n = errors.size();
  if (n == 0) UNCSE_ERR << "Sparsify: no bins";
  if (uncertainty.size() != n) UNCSE_ERR << "Sparsify: size mismatch";
  if (steps < 1) UNCSE_ERR << "Sparsify: need at least one step";
  for (size_t i = 0; i < n; ++i) {
    if (!std::isfinite(errors[i]) || errors[i] < 0.0)
      UNCSE_ERR << "Sparsify: errors must be finite and non-negative";
    if (std::isnan(uncertainty[i])) UNCSE_ERR << "Sparsify: NaN uncertainty";
  }
  // order[0] is removed first.
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return uncertainty[a] > uncertainty[b];
  });

  std::vector<size_t> removed(steps);
  for (int k = 0; k < steps; ++k)
    removed[k] = static_cast<size_t>(
        (static_cast<unsigned __int128>(k) * n) / static_cast<unsigned>(steps));

  // Survivor sums grow from the least uncertain end.
  std::vector<double> rmse(steps);
  ExactSum acc;
  int k = steps - 1;
  for (size_t pos = n; pos-- > 0 && k >= 0;) {
    acc.Add(errors[order[pos]]);
    while (k >= 0 && removed[k] == pos) {
      rmse[k] = std::sqrt(acc.Value() / static_cast<double>(n - pos));
      --k;
    }
  }

  SparsificationCurve curve;
  curve.fractions.resize(steps);
  curve.rmse.resize(steps);
  const double full = rmse[0];
  for (int i = 0; i < steps; ++i) {
    curve.fractions[i] = static_cast<double>(i) / steps;
    curve.rmse[i] = full > 0.0 ? rmse[i] / full : 1.0;
  }
  return curve;
}

SparsificationCurve OracleCurve(std::span<const double> errors, int steps) {
  return Sparsify(errors, errors, steps);
}

double Ause(const SparsificationCurve &measured,
            const SparsificationCurve &oracle) {
  const size_t steps = measured.rmse.size();
  if (steps == 0 || oracle.rmse.size() != steps ||
      measured.fractions != oracle.fractions)
    UNCSE_ERR << "Ause: curves are not on the same grid";
  const double width = 1.0 / static_cast<double>(steps);
  double area = 0.0;
  double prev = measured.rmse[0] - oracle.rmse[0];
  for (size_t k = 1; k < steps; ++k) {
    const double cur = measured.rmse[k] - oracle.rmse[k];
    area += 0.5 * (prev + cur) * width;
    prev = cur;
  }
  return area + prev * width;
}

double SiSdr(std::span<const double> reference,
             std::span<const double> estimate) {
  if (reference.size() != estimate.size() || reference.empty())
    UNCSE_ERR << "SiSdr: signals must be non-empty and of equal length";
  double ref_energy = 0.0, dot = 0.0;
  for (size_t i = 0; i < reference.size(); ++i) {
    ref_energy += reference[i] * reference[i];
    dot += reference[i] * estimate[i];
  }
  if (ref_energy <= 0.0) UNCSE_ERR << "SiSdr: silent reference";
  const double alpha = dot / ref_energy;
  double target = 0.0, noise = 0.0;
  for (size_t i = 0; i < reference.size(); ++i) {
    const double t = alpha * reference[i];
    const double e = estimate[i] - t;
    target += t * t;
    noise += e * e;
  }
  const double db = 10.0 * std::log10(target / noise);
  if (std::isnan(db)) return -kSiSdrMetricCapDb;
  return std::clamp(db, -kSiSdrMetricCapDb, kSiSdrMetricCapDb);
}

MeanCi MeanWithCi(std::span<const double> values, double level) {
  if (values.empty()) UNCSE_ERR << "MeanWithCi: no values";
  if (!(level > 0.0 && level < 1.0)) UNCSE_ERR << "MeanWithCi: bad level";
  MeanCi out;
  out.count = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / out.count;
  if (out.count < 2) {
    out.half_width = std::nan("");
    return out;
  }
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  const double sd = std::sqrt(ss / (out.count - 1));
  boost::math::students_t dist(static_cast<double>(out.count - 1));
  const double t = boost::math::quantile(dist, 0.5 + 0.5 * level);
  out.half_width = t * sd / std::sqrt(static_cast<double>(out.count));
  return out;
}

void WriteSparsificationCsv(const std::string &path,
                            const SparsificationCurve &measured,
                            const SparsificationCurve &oracle) {
  if (measured.rmse.size() != oracle.rmse.size())
    UNCSE_ERR << "WriteSparsificationCsv: curve lengths differ";
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path);
  os << "fraction,rmse_measured,rmse_oracle\n";
  for (size_t k = 0; k < measured.rmse.size(); ++k)
    os << FormatDouble(measured.fractions[k]) << ','
       << FormatDouble(measured.rmse[k]) << ',' << FormatDouble(oracle.rmse[k])
       << '\n';
}

namespace {

std::string Polyline(const SparsificationCurve &curve, double x0, double y0,
                     double w, double h, double ymax, const char *color,
                     const char *dash) {
  std::ostringstream os;
  os << "<polyline fill=\"none\" stroke=\"" << color
     << "\" stroke-width=\"2\"" << dash << " points=\"";
  for (size_t k = 0; k < curve.rmse.size(); ++k) {
    const double x = x0 + curve.fractions[k] * w;
    const double y = y0 + h - std::min(curve.rmse[k], ymax) / ymax * h;
    os << (k ? " " : "") << x << ',' << y;
  }
  os << "\"/>\n";
  return os.str();
}

}  // namespace

void WriteSparsificationSvg(const std::string &path,
                            const SparsificationCurve &measured,
                            const SparsificationCurve &oracle,
                            const std::string &title) {
  const double x0 = 60, y0 = 30, w = 420, h = 280;
  double ymax = 1.0;
  for (double v : measured.rmse) ymax = std::max(ymax, v);
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot write " + path);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"520\" "
        "height=\"360\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"520\" height=\"360\" fill=\"white\"/>\n";
  os << "<text x=\"270\" y=\"18\" text-anchor=\"middle\">" << title
     << "</text>\n";
  // Axes with ticks every 0.2 in x and a quarter of the range in y.
  os << "<path d=\"M" << x0 << ',' << y0 << " V" << y0 + h << " H" << x0 + w
     << "\" stroke=\"black\" fill=\"none\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double x = x0 + w * i / 5.0;
    os << "<line x1=\"" << x << "\" y1=\"" << y0 + h << "\" x2=\"" << x
       << "\" y2=\"" << y0 + h + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << x << "\" y=\"" << y0 + h + 18
       << "\" text-anchor=\"middle\">" << FormatDouble(i / 5.0) << "</text>\n";
  }
  for (int i = 0; i <= 4; ++i) {
    const double y = y0 + h - h * i / 4.0;
    os << "<line x1=\"" << x0 - 5 << "\" y1=\"" << y << "\" x2=\"" << x0
       << "\" y2=\"" << y << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << x0 - 8 << "\" y=\"" << y + 4
       << "\" text-anchor=\"end\">" << FormatDouble(ymax * i / 4.0)
       << "</text>\n";
  }
  os << "<text x=\"" << x0 + w / 2 << "\" y=\"" << y0 + h + 34
     << "\" text-anchor=\"middle\">fraction of removed bins</text>\n";
  os << "<text x=\"16\" y=\"" << y0 + h / 2
     << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << y0 + h / 2
     << ")\">normalised RMSE</text>\n";
  os << Polyline(measured, x0, y0, w, h, ymax, "#1f77b4", "");
  os << Polyline(oracle, x0, y0, w, h, ymax, "#d62728",
                 " stroke-dasharray=\"6 4\"");
  // Legend.
  const double lx = x0 + w - 130, ly = y0 + 12;
  os << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 24
     << "\" y2=\"" << ly << "\" stroke=\"#1f77b4\" stroke-width=\"2\"/>\n";
  os << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 4 << "\">measured</text>\n";
  os << "<line x1=\"" << lx << "\" y1=\"" << ly + 18 << "\" x2=\"" << lx + 24
     << "\" y2=\"" << ly + 18
     << "\" stroke=\"#d62728\" stroke-width=\"2\" stroke-dasharray=\"6 4\"/>\n";
  os << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 22 << "\">oracle</text>\n";
  os << "</svg>\n";
}

}  // namespace uncse
