#include "carpetlab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "carpetlab/error.hpp"

namespace carpetlab {

namespace {

constexpr double kDropWeight = 1e-300;

void check_point(double x, double y) {
  if (!(x >= 0.0 && x < 1.0 && y >= 0.0 && y < 1.0)) {
    std::ostringstream msg;
    msg << "atom (" << x << "," << y << ") outside [0,1)^2";
    throw Error(ErrorCode::DomainError, msg.str());
  }
}

double pairwise_sum_range(const double* first, std::size_t count) {
  if (count <= 16) {
    double s = 0.0;
    for (std::size_t i = 0; i < count; ++i) s += first[i];
    return s;
  }
  const std::size_t half = count / 2;
  return pairwise_sum_range(first, half) + pairwise_sum_range(first + half, count - half);
}

// Per-cell masses in canonical (sorted key) order.
std::vector<double> cell_masses(const std::vector<Atom>& atoms, const GridPartition& part) {
  std::vector<std::pair<std::pair<std::uint64_t, std::uint64_t>, double>> keyed;
  keyed.reserve(atoms.size());
  for (const Atom& a : atoms) keyed.push_back({part.cell_of(a.x, a.y), a.w});
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& l, const auto& r) { return l.first < r.first; });
  std::vector<double> masses;
  for (std::size_t i = 0; i < keyed.size();) {
    std::size_t j = i;
    std::vector<double> chunk;
    while (j < keyed.size() && keyed[j].first == keyed[i].first) chunk.push_back(keyed[j++].second);
    masses.push_back(pairwise_sum(chunk));
    i = j;
  }
  return masses;
}

EntropyReport entropy_of_masses(const std::vector<double>& masses, const GridPartition& part) {
  EntropyReport r;
  r.entropy = std::max(0.0, shannon_entropy(masses));
  r.cell_count = static_cast<std::size_t>(
      std::count_if(masses.begin(), masses.end(), [](double w) { return w > 0.0; }));
  const bool use_x = part.y_level == 0;
  const int level = use_x ? part.x_level : part.y_level;
  const int base = use_x ? part.x_base : part.y_base;
  if (level > 0) r.normalized = r.entropy / (level * std::log(static_cast<double>(base)));
  return r;
}

}  // namespace

DiscreteMeasure::DiscreteMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  for (const Atom& a : atoms_) {
    check_point(a.x, a.y);
    if (!(a.w >= 0.0) || !std::isfinite(a.w)) {
      throw Error(ErrorCode::DomainError, "atom weight must be finite and nonnegative");
    }
  }
}

DiscreteMeasure DiscreteMeasure::point_mass(double x, double y) {
  return DiscreteMeasure({{x, y, 1.0}});
}

DiscreteMeasure DiscreteMeasure::uniform(std::span<const std::pair<double, double>> points) {
  if (points.empty()) throw Error(ErrorCode::DomainError, "uniform measure on no points");
  std::vector<Atom> atoms;
  atoms.reserve(points.size());
  const double w = 1.0 / static_cast<double>(points.size());
  for (const auto& [x, y] : points) atoms.push_back({x, y, w});
  return DiscreteMeasure(std::move(atoms));
}

double DiscreteMeasure::total_mass() const {
  std::vector<double> w;
  w.reserve(atoms_.size());
  for (const Atom& a : atoms_) w.push_back(a.w);
  return pairwise_sum(w);
}

bool DiscreteMeasure::is_normalized(double tol) const {
  return std::abs(total_mass() - 1.0) <= tol;
}

DiscreteMeasure DiscreteMeasure::normalized() const {
  const double mass = total_mass();
  if (!(mass > 0.0)) throw Error(ErrorCode::ZeroMassRegion, "measure has no mass");
  DiscreteMeasure out = *this;
  for (Atom& a : out.atoms_) a.w /= mass;
  return out;
}

DiscreteMeasure mix(const DiscreteMeasure& a, const DiscreteMeasure& b, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::DomainError, "mixing weight outside [0,1]");
  std::vector<Atom> atoms;
  atoms.reserve(a.size() + b.size());
  for (Atom x : a.atoms()) {
    x.w *= t;
    atoms.push_back(x);
  }
  for (Atom x : b.atoms()) {
    x.w *= 1.0 - t;
    atoms.push_back(x);
  }
  return DiscreteMeasure(std::move(atoms));
}

double pairwise_sum(std::span<const double> values) {
  return pairwise_sum_range(values.data(), values.size());
}

double shannon_entropy(std::span<const double> p) {
  std::vector<double> terms;
  terms.reserve(p.size());
  for (double x : p) {
    if (x > 0.0) terms.push_back(-x * std::log(x));
  }
  return pairwise_sum(terms);
}

std::pair<std::uint64_t, std::uint64_t> GridPartition::cell_of(double x, double y) const {
  return {scaled_floor(x, checked_pow(x_base, x_level)),
          scaled_floor(y, checked_pow(y_base, y_level))};
}

EntropyReport entropy(const DiscreteMeasure& mu, const GridPartition& part) {
  if (!mu.is_normalized()) {
    throw Error(ErrorCode::UnnormalizedMeasure,
                "entropy needs a probability measure, total mass " +
                    std::to_string(mu.total_mass()));
  }
  return entropy_of_masses(cell_masses(mu.atoms(), part), part);
}

double gibbs_gap(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw Error(ErrorCode::DomainError, "vectors differ in length");
  std::vector<double> terms;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) {
      throw Error(ErrorCode::SupportMismatch,
                  "q vanishes at index " + std::to_string(i) + " where p > 0");
    }
    terms.push_back(p[i] * std::log(p[i] / q[i]));
  }
  return pairwise_sum(terms);
}

DiscreteMeasure condition_rescale(const DiscreteMeasure& mu, const ApproxSquare& sq) {
  const std::uint64_t sx = checked_pow(sq.m, sq.x_depth());
  const std::uint64_t sy = checked_pow(sq.n, sq.y_depth());
  const std::uint64_t ix = sq.x_index();
  const std::uint64_t iy = sq.y_index();

  std::vector<Atom> kept;
  std::vector<double> weights;
  for (const Atom& a : mu.atoms()) {
    if (a.w > 0.0 && scaled_floor(a.x, sx) == ix && scaled_floor(a.y, sy) == iy) {
      kept.push_back({scaled_frac(a.x, sx), scaled_frac(a.y, sy), a.w});
      weights.push_back(a.w);
    }
  }
  const double mass = pairwise_sum(weights);
  if (kept.empty() || !(mass > 0.0)) {
    throw Error(ErrorCode::ZeroMassCell, "conditioning cell carries no mass");
  }
  std::vector<Atom> out;
  out.reserve(kept.size());
  for (Atom a : kept) {
    a.w /= mass;
    if (a.w >= kDropWeight) out.push_back(a);
  }
  if (out.empty()) {
    throw Error(ErrorCode::AtomExhaustion,
                "every atom fell below the representable weight floor");
  }
  return DiscreteMeasure(std::move(out));
}

double cell_mass(const DiscreteMeasure& mu, const ApproxSquare& sq) {
  const std::uint64_t sx = checked_pow(sq.m, sq.x_depth());
  const std::uint64_t sy = checked_pow(sq.n, sq.y_depth());
  const std::uint64_t ix = sq.x_index();
  const std::uint64_t iy = sq.y_index();
  std::vector<double> weights;
  for (const Atom& a : mu.atoms()) {
    if (scaled_floor(a.x, sx) == ix && scaled_floor(a.y, sy) == iy) weights.push_back(a.w);
  }
  return pairwise_sum(weights);
}

RestrictedEntropy restricted_entropy(const DiscreteMeasure& mu, const Region& keep,
                                     const GridPartition& part) {
  std::vector<Atom> kept;
  std::vector<double> weights;
  for (const Atom& a : mu.atoms()) {
    const bool inside = std::any_of(keep.begin(), keep.end(),
                                    [&](const Rect& r) { return r.contains(a.x, a.y); });
    if (inside && a.w > 0.0) {
      kept.push_back(a);
      weights.push_back(a.w);
    }
  }
  const double mass = pairwise_sum(weights);
  if (!(mass > 0.0)) throw Error(ErrorCode::ZeroMassRegion, "region carries no mass");
  RestrictedEntropy out;
  out.retained_mass = mass;
  out.report = entropy(DiscreteMeasure(std::move(kept)).normalized(), part);
  return out;
}

double binary_entropy(double delta) {
  const double p[2] = {delta, 1.0 - delta};
  return shannon_entropy(p);
}

CoverCount covering_number(std::span<const std::pair<double, double>> points, double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::DomainError, "covering radius must be positive");
  std::set<std::pair<std::int64_t, std::int64_t>> cells;
  for (const auto& [x, y] : points) {
    cells.emplace(static_cast<std::int64_t>(std::floor(x / r)),
                  static_cast<std::int64_t>(std::floor(y / r)));
  }
  return {cells.size(), "anchored-grid"};
}

LinearFit least_squares(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw Error(ErrorCode::InsufficientData, "least squares needs two or more points");
  }
  const auto n = static_cast<double>(xs.size());
  const double mx = pairwise_sum(xs) / n;
  const double my = pairwise_sum(ys) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) throw Error(ErrorCode::InsufficientData, "abscissae are all equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (xs.size() > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
      rss += e * e;
    }
    fit.stderr_slope = std::sqrt(rss / (n - 2.0) / sxx);
  }
  return fit;
}

double finite_scale_dimension(const DiscreteMeasure& mu, int base, int level_lo,
                              int level_hi) {
  if (level_hi - level_lo + 1 < 2) {
    throw Error(ErrorCode::InsufficientLevels, "finite-scale dimension needs two levels");
  }
  if (base < 2 || level_lo < 0) throw Error(ErrorCode::DomainError, "bad level range");
  std::vector<double> xs;
  std::vector<double> ys;
  for (int l = level_lo; l <= level_hi; ++l) {
    xs.push_back(l * std::log(static_cast<double>(base)));
    ys.push_back(entropy(mu, GridPartition::square(base, l)).entropy);
  }
  return least_squares(xs, ys).slope;
}

void write_measure_csv(std::ostream& out, const DiscreteMeasure& mu) {
  out << "x,y,weight\n";
  char buf[96];
  for (const Atom& a : mu.atoms()) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", a.x, a.y, a.w);
    out << buf;
  }
}

DiscreteMeasure read_measure_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,y,weight", 0) != 0) {
    throw Error(ErrorCode::ParseError, "measure CSV must start with 'x,y,weight'");
  }
  std::vector<Atom> atoms;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    Atom a;
    char c1 = 0;
    char c2 = 0;
    std::istringstream row(line);
    if (!(row >> a.x >> c1 >> a.y >> c2 >> a.w) || c1 != ',' || c2 != ',') {
      throw Error(ErrorCode::ParseError, "bad measure row at line " + std::to_string(lineno));
    }
    atoms.push_back(a);
  }
  return DiscreteMeasure(std::move(atoms));
}

}  // namespace carpetlab
