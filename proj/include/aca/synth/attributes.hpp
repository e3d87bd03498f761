#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "aca/common.hpp"
#include "aca/random.hpp"
#include "aca/triage.hpp"

namespace aca::synth {

struct CurveParams {
  std::size_t width = 100;
  double p_max = 0.4;
  double lambda = std::log(0.4 / 0.3) / 20.0;  // p_j > 0.3 for j < 20
};

struct CalibrationParams {
  std::size_t max_shift = 50;
  std::size_t train_per_class = 200;
  std::size_t test_per_class = 1000;
  double tolerance = 0.05;
};

struct AttributeProfile {
  std::vector<double> base_probs;  // decreasing, class 0
  std::size_t shift = 0;           // class 1 reads base_probs circularly shifted by this
  double measured_accuracy = 0.0;
  double target_accuracy = 0.0;
  bool experimental = false;  // target outside {0.5, 0.7, 0.9}

  double prob(std::uint8_t label, std::size_t j) const {
    const auto w = base_probs.size();
    return label == 0 ? base_probs[j] : base_probs[(j + w - shift) % w];
  }
};

inline std::vector<double> exponential_curve(const CurveParams& c) {
  std::vector<double> p(c.width);
  for (std::size_t j = 0; j < c.width; ++j) p[j] = c.p_max * std::exp(-c.lambda * static_cast<double>(j));
  return p;
}

// Accuracy of an independent-Bernoulli likelihood-ratio classifier whose
// per-attribute parameters are estimated (Laplace-smoothed) from
// train_per_class simulated cases per class, scored on test_per_class fresh
// cases per class. Ties go to class 0.
inline double glrt_accuracy(const AttributeProfile& profile, const CalibrationParams& cal, std::uint64_t seed) {
  Rng rng(seed);
  const auto w = profile.base_probs.size();
  std::vector<char> row(w);
  auto draw = [&](std::uint8_t label) {
    for (std::size_t j = 0; j < w; ++j) row[j] = rng.bernoulli(profile.prob(label, j));
  };
  std::vector<double> ones[2] = {std::vector<double>(w, 0.0), std::vector<double>(w, 0.0)};
  for (std::uint8_t c = 0; c < 2; ++c)
    for (std::size_t i = 0; i < cal.train_per_class; ++i) {
      draw(c);
      for (std::size_t j = 0; j < w; ++j) ones[c][j] += row[j];
    }
  std::vector<double> on(w), off(w);  // log-ratio contribution per attribute state
  for (std::size_t j = 0; j < w; ++j) {
    const double denom = static_cast<double>(cal.train_per_class) + 2.0;
    const double p0 = (ones[0][j] + 1.0) / denom, p1 = (ones[1][j] + 1.0) / denom;
    on[j] = std::log(p1) - std::log(p0);
    off[j] = std::log1p(-p1) - std::log1p(-p0);
  }
  std::size_t correct = 0;
  for (std::uint8_t c = 0; c < 2; ++c)
    for (std::size_t i = 0; i < cal.test_per_class; ++i) {
      draw(c);
      double llr = 0.0;
      for (std::size_t j = 0; j < w; ++j) llr += row[j] ? on[j] : off[j];
      const std::uint8_t guess = llr > 0 ? 1 : 0;
      correct += guess == c;
    }
  return static_cast<double>(correct) / static_cast<double>(2 * cal.test_per_class);
}

// Scans shifts 0..max_shift and keeps the one whose measured accuracy is
// closest to the target (smaller shift on ties). Shift s is measured with
// derive_seed(seed, "glrt", s).
inline AttributeProfile build_attribute_profile(double target_accuracy, std::uint64_t seed, const CurveParams& curve = {},
                                                const CalibrationParams& cal = {}) {
  AttributeProfile best;
  best.base_probs = exponential_curve(curve);
  best.target_accuracy = target_accuracy;
  best.experimental = !(target_accuracy == 0.5 || target_accuracy == 0.7 || target_accuracy == 0.9);
  double best_gap = INFINITY;
  const auto max_shift = std::min(cal.max_shift, curve.width - 1);
  for (std::size_t s = 0; s <= max_shift; ++s) {
    AttributeProfile candidate = best;
    candidate.shift = s;
    const double acc = glrt_accuracy(candidate, cal, derive_seed(seed, "glrt", s));
    const double gap = std::abs(acc - target_accuracy);
    if (gap < best_gap) {
      best_gap = gap;
      best.shift = s;
      best.measured_accuracy = acc;
    }
  }
  if (best_gap > cal.tolerance) {
    std::ostringstream msg;
    msg << "build_attribute_profile: no shift within " << cal.tolerance << " of target " << target_accuracy
        << "; best shift " << best.shift << " measured " << best.measured_accuracy;
    throw Error(msg.str());
  }
  return best;
}

// Bit matrix stored row-major as one LSB-first bit stream (bit r*cols + c
// lives in byte (r*cols + c) / 8).
struct AttributeMatrix {
  std::uint32_t rows = 0, cols = 0;
  std::vector<std::uint8_t> bits;

  AttributeMatrix() = default;
  AttributeMatrix(std::uint32_t r, std::uint32_t c)
      : rows(r), cols(c), bits((static_cast<std::size_t>(r) * c + 7) / 8, 0) {}

  bool get(std::size_t r, std::size_t c) const {
    const auto i = r * cols + c;
    return (bits[i / 8] >> (i % 8)) & 1u;
  }
  void set(std::size_t r, std::size_t c, bool value) {
    const auto i = r * cols + c;
    if (value)
      bits[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
    else
      bits[i / 8] &= static_cast<std::uint8_t>(~(1u << (i % 8)));
  }

  // "ATTR", u32 rows, u32 cols (little-endian), then the bit stream.
  void write(std::ostream& out) const {
    out.write("ATTR", 4);
    auto put = [&](std::uint32_t x) {
      const char b[4] = {static_cast<char>(x & 0xff), static_cast<char>((x >> 8) & 0xff),
                         static_cast<char>((x >> 16) & 0xff), static_cast<char>((x >> 24) & 0xff)};
      out.write(b, 4);
    };
    put(rows);
    put(cols);
    out.write(reinterpret_cast<const char*>(bits.data()), static_cast<std::streamsize>(bits.size()));
  }

  static AttributeMatrix read(std::istream& in) {
    char magic[4];
    unsigned char hdr[8];
    if (!in.read(magic, 4) || std::memcmp(magic, "ATTR", 4) != 0) throw DataError("attrs: bad magic");
    if (!in.read(reinterpret_cast<char*>(hdr), 8)) throw DataError("attrs: truncated header");
    auto get32 = [&](int o) {
      return static_cast<std::uint32_t>(hdr[o]) | static_cast<std::uint32_t>(hdr[o + 1]) << 8 |
             static_cast<std::uint32_t>(hdr[o + 2]) << 16 | static_cast<std::uint32_t>(hdr[o + 3]) << 24;
    };
    AttributeMatrix m(get32(0), get32(4));
    if (!in.read(reinterpret_cast<char*>(m.bits.data()), static_cast<std::streamsize>(m.bits.size())))
      throw DataError("attrs: truncated body");
    return m;
  }
};

// Row v: the profile's attributes drawn for v's label, then a one-hot block
// of width N marking v itself.
inline AttributeMatrix generate_attributes(const LabelMap& labels, const AttributeProfile& profile, std::uint64_t seed) {
  const auto n = labels.size();
  const auto w = profile.base_probs.size();
  AttributeMatrix m(static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(w + n));
  Rng rng(seed);
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t j = 0; j < w; ++j)
      if (rng.bernoulli(profile.prob(labels[v], j))) m.set(v, j, true);
    m.set(v, w + v, true);
  }
  return m;
}

}  // namespace aca::synth
