#include "p2trop/geometry.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace p2trop {

Point make_point(long px, long qx, long py, long qy) { return {fraction(px, qx), fraction(py, qy)}; }

long wedge(Vec2 u, Vec2 v) { return u.x * v.y - u.y * v.x; }

Rational wedge(const Point& u, const Point& v) { return u.x * v.y - u.y * v.x; }

long gcd_of(Vec2 v) { return std::gcd(v.x, v.y); }

Vec2 primitive(Vec2 v) {
  long g = gcd_of(v);
  if (g == 0) throw std::domain_error("primitive of the zero vector");
  return {v.x / g, v.y / g};
}

Vec2 p_of(int n0, int n1, int n2) { return {n1 - n0, n2 - n0}; }

Vec2 p_of(const std::array<uint8_t, 3>& n) { return p_of(n[0], n[1], n[2]); }

int open_sector(const Point& v) {
  // v = a m_j + b m_{j+1} with a, b > 0
  for (int j = 0; j < 3; ++j) {
    Point a = to_point(kFan[j]), b = to_point(kFan[(j + 1) % 3]);
    Rational det = wedge(a, b);
    Rational ca = wedge(v, b) / det, cb = wedge(a, v) / det;
    if (sgn(ca) > 0 && sgn(cb) > 0) return j;
  }
  return -1;
}

int on_fan_ray(const Point& v) {
  for (int i = 0; i < 3; ++i) {
    Point m = to_point(kFan[i]);
    if (sgn(wedge(m, v)) == 0 && sgn(m.x * v.x + m.y * v.y) > 0) return i;
  }
  return -1;
}

namespace {

constexpr double kMargin = 1e-9;

// True when a floating-point evaluation proves p off the line of r.
bool clearly_off_line(const Ray& r, const Point& p) {
  const double px = p.x.get_d(), py = p.y.get_d(), bx = r.base.x.get_d(), by = r.base.y.get_d();
  const double w = r.dir.x * (py - by) - r.dir.y * (px - bx);
  const double scale = std::abs(r.dir.x) * (std::abs(py) + std::abs(by)) + std::abs(r.dir.y) * (std::abs(px) + std::abs(bx));
  return std::abs(w) > kMargin * scale;
}

}  // namespace

std::optional<Rational> ray_parameter(const Ray& r, const Point& p) {
  if (clearly_off_line(r, p)) return std::nullopt;
  Point d = p - r.base;
  Point dir = to_point(r.dir);
  if (sgn(wedge(dir, d)) != 0) return std::nullopt;
  Rational t = r.dir.x != 0 ? d.x / dir.x : d.y / dir.y;
  if (!r.is_line && sgn(t) < 0) return std::nullopt;
  return t;
}

bool in_interior(const Ray& r, const Point& p) {
  auto t = ray_parameter(r, p);
  return t && (r.is_line || sgn(*t) > 0);
}

std::optional<Point> intersect(const Ray& r1, const Ray& r2) {
  long den = wedge(r1.dir, r2.dir);
  if (den == 0) return std::nullopt;
  if (!r1.is_line || !r2.is_line) {
    const double dbx = r2.base.x.get_d() - r1.base.x.get_d(), dby = r2.base.y.get_d() - r1.base.y.get_d();
    const double t = dbx * r2.dir.y - dby * r2.dir.x, s = dbx * r1.dir.y - dby * r1.dir.x;
    const double scale = (std::abs(r2.base.x.get_d()) + std::abs(r1.base.x.get_d()) + std::abs(r2.base.y.get_d()) +
                          std::abs(r1.base.y.get_d())) *
                         (std::abs(r1.dir.x) + std::abs(r1.dir.y) + std::abs(r2.dir.x) + std::abs(r2.dir.y));
    // t / den and s / den are the ray parameters
    if (!r1.is_line && t * den < 0 && std::abs(t) > kMargin * scale) return std::nullopt;
    if (!r2.is_line && s * den < 0 && std::abs(s) > kMargin * scale) return std::nullopt;
  }
  // base1 + t dir1 = base2 + s dir2
  Point db = r2.base - r1.base;
  Point d1 = to_point(r1.dir), d2 = to_point(r2.dir);
  Rational t = wedge(db, d2) / den;
  Rational s = wedge(db, d1) / den;
  if (!r1.is_line && sgn(t) <= 0) return std::nullopt;
  if (!r2.is_line && sgn(s) <= 0) return std::nullopt;
  return r1.base + t * d1;
}

bool overlapping(const Ray& r1, const Ray& r2) {
  if (wedge(r1.dir, r2.dir) != 0) return false;
  if (sgn(wedge(to_point(r1.dir), r2.base - r1.base)) != 0) return false;
  if (r1.is_line || r2.is_line) return true;
  bool same = r1.dir.x * r2.dir.x + r1.dir.y * r2.dir.y > 0;
  if (same) return true;
  // opposite rays overlap iff each base lies strictly ahead of the other
  return in_interior(r1, r2.base);
}

nlohmann::json to_json(const Point& p) { return {to_string(p.x), to_string(p.y)}; }

Point point_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("point must be a pair of rationals");
  return {parse_rational(j[0].get<std::string>()), parse_rational(j[1].get<std::string>())};
}

nlohmann::json to_json(const Arrangement& a) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : a.P) pts.push_back(to_json(p));
  return {{"k", a.k()}, {"seed", a.seed}, {"Q", to_json(a.Q)}, {"P", pts}};
}

Arrangement arrangement_from_json(const nlohmann::json& j) {
  Arrangement a;
  a.Q = point_from_json(j.at("Q"));
  for (const auto& p : j.at("P")) a.P.push_back(point_from_json(p));
  if (j.contains("seed")) a.seed = j.at("seed").get<uint64_t>();
  if (j.contains("k") && j.at("k").get<int>() != a.k()) throw std::invalid_argument("k does not match point count");
  return a;
}

std::string to_string(const Point& p) { return "(" + to_string(p.x) + "," + to_string(p.y) + ")"; }

}  // namespace p2trop
