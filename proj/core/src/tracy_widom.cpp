#include "latdim/tracy_widom.hpp"

#include "latdim/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iterator>
#include <string>

namespace latdim::tw {

namespace {

// F1 quantiles from scripts/tw1_table.py: the CDF is the Fredholm determinant
// det(I - K_s) on L2(0, inf), K_s(x, y) = Ai((x + y) / 2 + s) / 2, discretized
// with 160-point Gauss-Legendre on [0, 40] (agrees with 240 points on [0, 60]
// to 1e-12) and inverted by Brent's method.
constexpr QuantileNode kTable[] = {
    {0.005, -4.14787650209097},
    {0.0075, -4.00329864273541},
    {0.01, -3.89543267306445},
    {0.015, -3.73487316447657},
    {0.02, -3.61405714323078},
    {0.03, -3.4323769918459},
    {0.04, -3.2940212432852},
    {0.05, -3.18037997693773},
    {0.0625, -3.06039324950572},
    {0.075, -2.95700214514289},
    {0.0875, -2.86534001364284},
    {0.1, -2.78242790569526},
    {0.1125, -2.70630155354093},
    {0.125, -2.63559293373542},
    {0.1375, -2.56930835746929},
    {0.15, -2.50670150043144},
    {0.1625, -2.44719631531004},
    {0.175, -2.3903379425565},
    {0.1875, -2.33576019828176},
    {0.2, -2.28316332023324},
    {0.2125, -2.23229830185719},
    {0.225, -2.18295559377809},
    {0.2375, -2.13495678094564},
    {0.25, -2.08814833621544},
    {0.2625, -2.04239685362882},
    {0.275, -1.99758535593584},
    {0.2875, -1.95361039501059},
    {0.3, -1.9103797461992},
    {0.3125, -1.86781055347558},
    {0.325, -1.82582782082564},
    {0.3375, -1.7843631723404},
    {0.35, -1.74335382278436},
    {0.3625, -1.70274171434215},
    {0.375, -1.66247278544158},
    {0.3875, -1.62249634509334},
    {0.4, -1.58276453182083},
    {0.4125, -1.54323184049586},
    {0.425, -1.50385470361138},
    {0.4375, -1.46459111596922},
    {0.45, -1.42540029362485},
    {0.4625, -1.38624235934623},
    {0.475, -1.34707804790612},
    {0.4875, -1.30786842530659},
    {0.5, -1.26857461658101},
    {0.5125, -1.22915753716507},
    {0.525, -1.18957762299754},
    {0.5375, -1.14979455451321},
    {0.55, -1.10976696952778},
    {0.5625, -1.06945215967863},
    {0.575, -1.02880574456028},
    {0.5875, -0.987781316950106},
    {0.6, -0.946330051517139},
    {0.6125, -0.904400268085991},
    {0.625, -0.861936938808798},
    {0.6375, -0.818881126370341},
    {0.65, -0.77516933746528},
    {0.6625, -0.730732772035207},
    {0.675, -0.685496443853261},
    {0.6875, -0.639378141598642},
    {0.7, -0.592287191016065},
    {0.7125, -0.544122967312675},
    {0.725, -0.494773091465195},
    {0.7375, -0.444111222922669},
    {0.75, -0.391994331818213},
    {0.7625, -0.338259292508781},
    {0.775, -0.282718581304679},
    {0.7875, -0.225154775636386},
    {0.8, -0.16531342523483},
    {0.8125, -0.102893674554321},
    {0.825, -0.037535719862316},
    {0.8375, 0.0311962848833042},
    {0.85, 0.103838025947537},
    {0.8625, 0.181058979164492},
    {0.875, 0.263712231520448},
    {0.8875, 0.352910068017588},
    {0.9, 0.450143289058326},
    {0.9125, 0.557478860077216},
    {0.925, 0.677907541739805},
    {0.9375, 0.816004085017394},
    {0.95, 0.979316053469615},
    {0.96, 1.13706129972485},
    {0.97, 1.33321347834877},
    {0.975, 1.45377135194887},
    {0.98, 1.5977556741254},
    {0.985, 1.77813169101585},
    {0.99, 2.02344928138023},
    {0.9925, 2.19189750353927},
    {0.995, 2.42232658589644},
};

constexpr std::size_t kNodes = std::size(kTable);

// Fritsch-Carlson slopes for the monotone cubic Hermite interpolant.
std::array<double, kNodes> make_slopes() {
  constexpr std::size_t n = kNodes;
  std::array<double, n - 1> secant{};
  for (std::size_t i = 0; i + 1 < n; ++i) {
    secant[i] = (kTable[i + 1].quantile - kTable[i].quantile) / (kTable[i + 1].prob - kTable[i].prob);
  }
  std::array<double, n> slope{};
  slope[0] = secant[0];
  slope[n - 1] = secant[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    slope[i] = 0.5 * (secant[i - 1] + secant[i]);
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = slope[i] / secant[i];
    const double b = slope[i + 1] / secant[i];
    const double r = a * a + b * b;
    if (r > 9.0) {
      const double t = 3.0 / std::sqrt(r);
      slope[i] = t * a * secant[i];
      slope[i + 1] = t * b * secant[i];
    }
  }
  return slope;
}

const std::array<double, kNodes>& slopes() {
  static const auto s = make_slopes();
  return s;
}

double half_sqrt(double x) { return std::sqrt(x - 0.5); }

void require_counts(double n, double p) {
  if (!(n >= 1.0 && p >= 1.0)) throw OutOfRange("tracy_widom: n and p must be >= 1");
}

}  // namespace

std::span<const QuantileNode> quantile_table() { return kTable; }

double tw1_quantile(double prob) {
  if (!(prob >= kMinProb && prob <= kMaxProb)) {
    throw OutOfRange("tw1_quantile: probability " + std::to_string(prob) + " outside [" +
                     std::to_string(kMinProb) + ", " + std::to_string(kMaxProb) + "]");
  }
  auto upper = std::lower_bound(std::begin(kTable), std::end(kTable), prob,
                                [](const QuantileNode& node, double p) { return node.prob < p; });
  if (upper->prob == prob) return upper->quantile;

  const auto i = static_cast<std::size_t>(upper - std::begin(kTable)) - 1;
  const auto& lo = kTable[i];
  const auto& hi = kTable[i + 1];
  const double h = hi.prob - lo.prob;
  const double t = (prob - lo.prob) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * lo.quantile + (t3 - 2 * t2 + t) * h * slopes()[i] +
         (-2 * t3 + 3 * t2) * hi.quantile + (t3 - t2) * h * slopes()[i + 1];
}

double centering_mu(double n, double p) {
  require_counts(n, p);
  const double s = half_sqrt(n) + half_sqrt(p);
  return s * s / n;
}

double scaling_sigma(double n, double p) {
  require_counts(n, p);
  const double s = half_sqrt(n) + half_sqrt(p);
  return s / n * std::cbrt(1.0 / half_sqrt(n) + 1.0 / half_sqrt(p));
}

double tw_threshold(double noise_var, double n, double p, double alpha) {
  const double s = tw1_quantile(1.0 - alpha);
  return noise_var * (centering_mu(n, p) + s * scaling_sigma(n, p));
}

}  // namespace latdim::tw
