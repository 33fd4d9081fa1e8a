#include "zernpde/ball.hpp"

#include <cstdio>
#include <cstdlib>

namespace zernpde {

std::string ball_to_string(Ball b) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%a %a", b.center(), b.radius());
  return std::string(buf);
}

Ball ball_from_string(const std::string& s) {
  const char* p = s.c_str();
  char* end = nullptr;
  double c = std::strtod(p, &end);
  if (end == p) throw BallDomain("ball_from_string: bad center in '" + s + "'");
  p = end;
  double r = std::strtod(p, &end);
  if (end == p) throw BallDomain("ball_from_string: bad radius in '" + s + "'");
  return Ball(c, r);
}

}  // namespace zernpde
