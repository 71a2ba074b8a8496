#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "graphon/closed_forms.hpp"
#include "graphon/step_graphon.hpp"

namespace graphon {

/// Named analytic graphon families with closed-form block averages.
struct MinGraphon {};
struct Constant {
  double a;
};
struct TwoBlock {
  double a, b, alpha;  // value b on [0,alpha]^2, a elsewhere
};
struct LowerExtremal {
  double delta;  // 1 on [0,delta]^2, 0 elsewhere
};
struct UpperExtremal {
  double delta;  // 1 where max{x,y} >= 1-delta, 0 elsewhere
};
struct AppendixGraphon {
  int depth;
};

using AnalyticGraphon =
    std::variant<MinGraphon, Constant, TwoBlock, LowerExtremal, UpperExtremal, AppendixGraphon>;

namespace detail {

inline void check_unit_open(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) {
    throw BadParameter(std::string("BadParameter: ") + name + " must lie in (0,1)");
  }
}

/// F(X,Y) = integral of min{x,y} over [0,X] x [0,Y].
inline double min_antiderivative(double x, double y) {
  if (x > y) std::swap(x, y);
  return 0.5 * x * x * y - x * x * x / 6.0;
}

/// Integral of min{x,y} over [x1,x2] x [y1,y2] by inclusion-exclusion.
inline double min_block_integral(double x1, double x2, double y1, double y2) {
  return min_antiderivative(x2, y2) - min_antiderivative(x1, y2) - min_antiderivative(x2, y1) +
         min_antiderivative(x1, y1);
}

inline double overlap(double a1, double a2, double b1, double b2) {
  return std::max(0.0, std::min(a2, b2) - std::max(a1, b1));
}

}  // namespace detail

/// Pointwise evaluation w(x, y).
inline double evaluate(const AnalyticGraphon& a, double x, double y) {
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0)) {
    throw PointOutOfRange("PointOutOfRange: analytic evaluation outside the unit square");
  }
  return std::visit(
      [&](const auto& fam) -> double {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, MinGraphon>) {
          return std::min(x, y);
        } else if constexpr (std::is_same_v<T, Constant>) {
          return fam.a;
        } else if constexpr (std::is_same_v<T, TwoBlock>) {
          return (x <= fam.alpha && y <= fam.alpha) ? fam.b : fam.a;
        } else if constexpr (std::is_same_v<T, LowerExtremal>) {
          return (x <= fam.delta && y <= fam.delta) ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<T, UpperExtremal>) {
          return (std::max(x, y) >= 1.0 - fam.delta) ? 1.0 : 0.0;
        } else {
          static_assert(std::is_same_v<T, AppendixGraphon>);
          const StepGraphon g = appendix_graphon(appendix_spec(fam.depth));
          return g.values(detail::block_of(g, x), detail::block_of(g, y));
        }
      },
      a);
}

/// The natural exact step-graphon form of a family, where one exists
/// (every family except the min graphon is piecewise constant).
/// MinGraphon has no exact form and must go through discretize().
inline StepGraphon natural_step_graphon(const AnalyticGraphon& a) {
  return std::visit(
      [&](const auto& fam) -> StepGraphon {
        using T = std::decay_t<decltype(fam)>;
        StepGraphon g;
        if constexpr (std::is_same_v<T, Constant>) {
          detail::check_unit_open(fam.a, "a");
          g.boundaries.resize(2);
          g.boundaries << 0.0, 1.0;
          g.values.resize(1, 1);
          g.values << fam.a;
        } else if constexpr (std::is_same_v<T, TwoBlock>) {
          detail::check_unit_open(fam.a, "a");
          detail::check_unit_open(fam.b, "b");
          detail::check_unit_open(fam.alpha, "alpha");
          g.boundaries.resize(3);
          g.boundaries << 0.0, fam.alpha, 1.0;
          g.values.resize(2, 2);
          g.values << fam.b, fam.a, fam.a, fam.a;
        } else if constexpr (std::is_same_v<T, LowerExtremal>) {
          detail::check_unit_open(fam.delta, "delta");
          g = extremal_pair(fam.delta).first;
        } else if constexpr (std::is_same_v<T, UpperExtremal>) {
          detail::check_unit_open(fam.delta, "delta");
          g = extremal_pair(fam.delta).second;
        } else if constexpr (std::is_same_v<T, AppendixGraphon>) {
          g = appendix_graphon(appendix_spec(fam.depth));
        } else {
          throw BadParameter("BadParameter: the min graphon is not a step function");
        }
        return g;
      },
      a);
}

/// Exact block averages of the family onto the uniform m-block partition.
inline StepGraphon discretize(const AnalyticGraphon& a, int m) {
  if (m < 1) throw BadGrid("BadGrid: block count must be >= 1");
  if (const auto* ming = std::get_if<MinGraphon>(&a); ming == nullptr) {
    return resample_to_uniform(natural_step_graphon(a), m);
  }
  StepGraphon g;
  g.boundaries = Eigen::VectorXd::LinSpaced(m + 1, 0.0, 1.0);
  g.boundaries(0) = 0.0;
  g.boundaries(m) = 1.0;
  g.values.resize(m, m);
  const double cell = 1.0 / m;
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      const double v =
          detail::min_block_integral(i * cell, (i + 1) * cell, j * cell, (j + 1) * cell) /
          (cell * cell);
      g.values(i, j) = v;
      g.values(j, i) = v;
    }
  }
  return g;
}

/// Parses the CLI family string: "min", "const:a", "twoblock:a,b,alpha",
/// "lower:delta", "upper:delta", "appendix:N".
inline AnalyticGraphon parse_analytic(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::vector<double> args;
  if (colon != std::string::npos) {
    std::stringstream ss(spec.substr(colon + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        args.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw ParseError("ParseError: bad number '" + tok + "' in spec '" + spec + "'");
      }
    }
  }
  const auto want = [&](std::size_t n) {
    if (args.size() != n) {
      throw ParseError("ParseError: family '" + name + "' takes " + std::to_string(n) +
                       " parameter(s)");
    }
  };
  if (name == "min") {
    want(0);
    return MinGraphon{};
  }
  if (name == "const") {
    want(1);
    return Constant{args[0]};
  }
  if (name == "twoblock") {
    want(3);
    return TwoBlock{args[0], args[1], args[2]};
  }
  if (name == "lower") {
    want(1);
    return LowerExtremal{args[0]};
  }
  if (name == "upper") {
    want(1);
    return UpperExtremal{args[0]};
  }
  if (name == "appendix") {
    want(1);
    return AppendixGraphon{static_cast<int>(args[0])};
  }
  throw ParseError("ParseError: unknown family '" + name + "'");
}

}  // namespace graphon
