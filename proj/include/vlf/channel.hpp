#pragma once

#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <limits>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace vlf {

/// A discrete memoryless channel together with an input distribution.
/// Immutable after construction; all quantities are exact functions of
/// (transition, input_dist).
class Channel {
 public:
  Channel(std::size_t input_size, std::size_t output_size,
          std::vector<double> transition, std::vector<double> input_dist)
      : input_size_(input_size),
        output_size_(output_size),
        transition_(std::move(transition)),
        input_dist_(std::move(input_dist)) {
    validate();
  }

  std::size_t input_size() const { return input_size_; }
  std::size_t output_size() const { return output_size_; }

  double transition(std::size_t x, std::size_t y) const {
    return transition_[x * output_size_ + y];
  }
  const std::vector<double>& transition_matrix() const { return transition_; }
  const std::vector<double>& input_dist() const { return input_dist_; }

  /// P_Y(y) = sum_x P_X(x) P(y|x).
  std::vector<double> output_marginal() const {
    std::vector<double> py(output_size_, 0.0);
    for (std::size_t x = 0; x < input_size_; ++x)
      for (std::size_t y = 0; y < output_size_; ++y)
        py[y] += input_dist_[x] * transition(x, y);
    return py;
  }

  Channel with_input_dist(std::vector<double> dist) const {
    return Channel(input_size_, output_size_, transition_, std::move(dist));
  }

 private:
  void validate() const {
    constexpr double tol = 1e-12;
    if (input_size_ == 0 || output_size_ == 0)
      throw std::invalid_argument("Channel: empty alphabet");
    if (transition_.size() != input_size_ * output_size_)
      throw std::invalid_argument("Channel: transition matrix size mismatch");
    if (input_dist_.size() != input_size_)
      throw std::invalid_argument("Channel: input distribution size mismatch");
    for (std::size_t x = 0; x < input_size_; ++x) {
      double row = 0.0;
      for (std::size_t y = 0; y < output_size_; ++y) {
        const double p = transition(x, y);
        if (p < 0.0 || p > 1.0) throw std::invalid_argument("Channel: transition entry outside [0,1]");
        row += p;
      }
      if (std::fabs(row - 1.0) > tol) throw std::invalid_argument("Channel: transition row does not sum to 1");
    }
    double total = 0.0;
    for (double p : input_dist_) {
      if (p < 0.0 || p > 1.0) throw std::invalid_argument("Channel: input probability outside [0,1]");
      total += p;
    }
    if (std::fabs(total - 1.0) > tol) throw std::invalid_argument("Channel: input distribution does not sum to 1");
  }

  std::size_t input_size_;
  std::size_t output_size_;
  std::vector<double> transition_;  // row-major, one row per input symbol
  std::vector<double> input_dist_;
};

/// Binary symmetric channel with crossover probability q and uniform input.
inline Channel make_bsc(double q) {
  if (!(q >= 0.0 && q <= 0.5)) throw std::invalid_argument("make_bsc: q must lie in [0, 0.5]");
  return Channel(2, 2, {1.0 - q, q, q, 1.0 - q}, {0.5, 0.5});
}

/// Per-symbol information density i(x;y) = log(P(y|x) / P_Y(y)) in nats.
/// Returns -inf when P(y|x) = 0; throws when P_Y(y) = 0.
inline double info_density(const Channel& ch, std::size_t x, std::size_t y) {
  const std::vector<double> py = ch.output_marginal();
  if (py[y] <= 0.0) throw std::domain_error("info_density: output symbol has zero marginal probability");
  const double pyx = ch.transition(x, y);
  if (pyx == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(pyx / py[y]);
}

/// Information density of a symbol sequence; additive over i.i.d. uses.
inline double seq_info_density(const Channel& ch, std::span<const std::size_t> xs,
                               std::span<const std::size_t> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("seq_info_density: length mismatch");
  const std::vector<double> py = ch.output_marginal();
  double sum = 0.0;
  for (std::size_t n = 0; n < xs.size(); ++n) {
    if (py[ys[n]] <= 0.0) throw std::domain_error("seq_info_density: output symbol has zero marginal probability");
    const double pyx = ch.transition(xs[n], ys[n]);
    if (pyx == 0.0) return -std::numeric_limits<double>::infinity();
    sum += std::log(pyx / py[ys[n]]);
  }
  return sum;
}

struct ChannelInfo {
  double capacity_nats = 0.0;     // E[i(X;Y)] under (P_X, P_{Y|X})
  double a0_nats = 0.0;           // max over supported (x,y) of i(x;y)
  double dispersion_nats2 = 0.0;  // Var[i(X;Y)]
};

/// Mutual information, maximum information density and dispersion of the
/// channel under its input distribution.
inline ChannelInfo channel_info(const Channel& ch) {
  const std::vector<double> py = ch.output_marginal();
  double mean = 0.0;
  double second = 0.0;
  double a0 = -std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < ch.input_size(); ++x) {
    const double px = ch.input_dist()[x];
    if (px <= 0.0) continue;
    for (std::size_t y = 0; y < ch.output_size(); ++y) {
      const double pyx = ch.transition(x, y);
      if (pyx <= 0.0 || py[y] <= 0.0) continue;
      const double dens = std::log(pyx / py[y]);
      const double w = px * pyx;
      mean += w * dens;
      second += w * dens * dens;
      if (dens > a0) a0 = dens;
    }
  }
  ChannelInfo info;
  info.capacity_nats = std::max(0.0, mean);
  info.a0_nats = a0;
  info.dispersion_nats2 = std::max(0.0, second - mean * mean);
  return info;
}

struct InputOptResult {
  Channel channel;            // input channel with the optimized distribution
  double capacity_nats = 0.0; // achieved mutual information
  double gap_nats = 0.0;      // certified distance to the true capacity
  int iterations = 0;
  bool converged = false;
};

/// Capacity-achieving input distribution by alternating maximization.
/// The per-iteration certificate max_x D(P_{Y|X=x} || P_Y) - I(P_X) bounds
/// the remaining capacity gap; iteration stops once it falls below tol.
inline InputOptResult optimize_input_dist(const Channel& ch, double tol = 1e-10,
                                          int max_iter = 100000) {
  if (!(tol > 0.0)) throw std::invalid_argument("optimize_input_dist: tol must be positive");
  const std::size_t a = ch.input_size();
  const std::size_t b = ch.output_size();
  std::vector<double> p(a, 1.0 / static_cast<double>(a));
  std::vector<double> dkl(a, 0.0);
  double mutual = 0.0;
  double gap = std::numeric_limits<double>::infinity();
  int it = 0;
  for (; it < max_iter; ++it) {
    std::vector<double> py(b, 0.0);
    for (std::size_t x = 0; x < a; ++x)
      for (std::size_t y = 0; y < b; ++y) py[y] += p[x] * ch.transition(x, y);
    double dmax = -std::numeric_limits<double>::infinity();
    mutual = 0.0;
    for (std::size_t x = 0; x < a; ++x) {
      double d = 0.0;
      for (std::size_t y = 0; y < b; ++y) {
        const double pyx = ch.transition(x, y);
        if (pyx > 0.0 && py[y] > 0.0) d += pyx * std::log(pyx / py[y]);
      }
      dkl[x] = d;
      mutual += p[x] * d;
      if (d > dmax) dmax = d;
    }
    gap = dmax - mutual;
    if (gap <= tol) {
      ++it;
      break;
    }
    double norm = 0.0;
    for (std::size_t x = 0; x < a; ++x) {
      p[x] *= std::exp(dkl[x] - dmax);
      norm += p[x];
    }
    for (std::size_t x = 0; x < a; ++x) p[x] /= norm;
  }
  InputOptResult res{ch.with_input_dist(p), std::max(0.0, mutual), std::max(0.0, gap), it, gap <= tol};
  return res;
}

/// Parses the channel text format: first line "|A| |B|", then |A| rows of
/// |B| transition probabilities, optionally a final line "input" followed by
/// |A| input probabilities. Lines starting with '#' are comments.
/// Without an "input" line the distribution is uniform; *had_input reports
/// whether one was given.
inline Channel parse_channel(std::istream& in, bool* had_input = nullptr) {
  std::vector<std::string> lines;
  std::string raw;
  while (std::getline(in, raw)) {
    const std::size_t first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos || raw[first] == '#') continue;
    lines.push_back(raw);
  }
  if (lines.empty()) throw std::runtime_error("channel file: empty");
  std::istringstream head(lines[0]);
  std::size_t a = 0, b = 0;
  if (!(head >> a >> b) || a == 0 || b == 0)
    throw std::runtime_error("channel file: first line must be '|A| |B|'");
  if (lines.size() < 1 + a) throw std::runtime_error("channel file: missing transition rows");
  std::vector<double> trans;
  trans.reserve(a * b);
  for (std::size_t x = 0; x < a; ++x) {
    std::istringstream row(lines[1 + x]);
    for (std::size_t y = 0; y < b; ++y) {
      double v;
      if (!(row >> v)) throw std::runtime_error("channel file: short transition row");
      trans.push_back(v);
    }
  }
  std::vector<double> dist(a, 1.0 / static_cast<double>(a));
  bool has_input = false;
  if (lines.size() > 1 + a) {
    std::istringstream tail(lines[1 + a]);
    std::string tag;
    tail >> tag;
    if (tag != "input") throw std::runtime_error("channel file: unexpected trailing line");
    for (std::size_t x = 0; x < a; ++x) {
      if (!(tail >> dist[x])) throw std::runtime_error("channel file: short input line");
    }
    has_input = true;
  }
  if (had_input) *had_input = has_input;
  return Channel(a, b, std::move(trans), std::move(dist));
}

/// Loads a channel file. Files without an explicit input line get the
/// capacity-achieving input distribution.
inline Channel load_channel(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open channel file: " + path);
  bool had_input = false;
  Channel ch = parse_channel(in, &had_input);
  if (!had_input) return optimize_input_dist(ch).channel;
  return ch;
}

}  // namespace vlf
