#include "ltlab/numeric.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>
#include <vector>

#include "ltlab/error.hpp"

namespace ltlab {

FunctionSpec FunctionSpec::gaussian_bump(double center, double width) {
  if (!(width > 0.0)) throw InvalidArgument("gaussian_bump width must be positive");
  return {Kind::gaussian_bump, center, width};
}

FunctionSpec FunctionSpec::triangle(double center, double half_width) {
  if (!(half_width > 0.0)) throw InvalidArgument("triangle half width must be positive");
  return {Kind::triangle, center, half_width};
}

namespace {

std::vector<double> parse_arguments(const std::string& text, std::size_t open) {
  const auto close = text.find(')', open);
  if (close == std::string::npos || close + 1 != text.size()) {
    throw InvalidArgument("malformed function spec '" + text + "'");
  }
  std::vector<double> args;
  std::stringstream in(text.substr(open + 1, close - open - 1));
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      args.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw InvalidArgument("");
    } catch (const std::exception&) {
      throw InvalidArgument("bad number '" + item + "' in function spec '" + text + "'");
    }
  }
  return args;
}

}  // namespace

FunctionSpec FunctionSpec::parse(const std::string& text) {
  const auto open = text.find('(');
  if (open == std::string::npos) throw InvalidArgument("malformed function spec '" + text + "'");
  const std::string name = text.substr(0, open);
  const auto args = parse_arguments(text, open);
  if (name == "constant" && args.size() == 1) return constant(args[0]);
  if (name == "gaussian_bump" && args.size() == 2) return gaussian_bump(args[0], args[1]);
  if (name == "triangle" && args.size() == 2) return triangle(args[0], args[1]);
  throw InvalidArgument("unknown function spec '" + text + "'");
}

std::string FunctionSpec::to_string() const {
  auto num = [](double x) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
  };
  switch (kind) {
    case Kind::constant:
      return "constant(" + num(center) + ")";
    case Kind::gaussian_bump:
      return "gaussian_bump(" + num(center) + "," + num(width) + ")";
    case Kind::triangle:
      return "triangle(" + num(center) + "," + num(width) + ")";
  }
  return {};
}

double quarter_integral(double upper, std::size_t intervals) {
  if (!(upper > 0.0) || intervals < 2) throw InvalidArgument("bad quadrature parameters");
  if (intervals % 2 != 0) ++intervals;
  const double h = upper / static_cast<double>(intervals);
  auto g = [](double y) { return y * phi(-y); };
  CompensatedSum sum;
  sum.add(g(0.0));
  sum.add(g(upper));
  for (std::size_t i = 1; i < intervals; ++i) {
    sum.add((i % 2 == 1 ? 4.0 : 2.0) * g(static_cast<double>(i) * h));
  }
  return sum.value() * h / 3.0;
}

}  // namespace ltlab
