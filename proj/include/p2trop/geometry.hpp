#pragma once

// Exact planar primitives over Q^2 and the fan of P^2.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "p2trop/rational.hpp"

namespace p2trop {

struct Vec2 {
  long x = 0;
  long y = 0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
  friend auto operator<=>(const Vec2&, const Vec2&) = default;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
inline Vec2 operator*(long s, Vec2 a) { return {s * a.x, s * a.y}; }

struct Point {
  Rational x;
  Rational y;
  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator<(const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }
};

inline Point operator+(const Point& p, const Point& q) { return {p.x + q.x, p.y + q.y}; }
inline Point operator-(const Point& p, const Point& q) { return {p.x - q.x, p.y - q.y}; }
inline Point operator*(const Rational& t, const Point& p) { return {t * p.x, t * p.y}; }
inline Point to_point(Vec2 v) { return {Rational(v.x), Rational(v.y)}; }
Point make_point(long px, long qx, long py, long qy);  // (px/qx, py/qy)

// m_0 = (-1,-1), m_1 = (1,0), m_2 = (0,1); the cone sigma_{j,j+1} is spanned
// by m_j and m_{j+1 mod 3}.
inline constexpr std::array<Vec2, 3> kFan{{{-1, -1}, {1, 0}, {0, 1}}};

long wedge(Vec2 u, Vec2 v);
Rational wedge(const Point& u, const Point& v);
long gcd_of(Vec2 v);
Vec2 primitive(Vec2 v);
// p(n_0 t_0 + n_1 t_1 + n_2 t_2) = sum n_i m_i
Vec2 p_of(const std::array<uint8_t, 3>& n);
Vec2 p_of(int n0, int n1, int n2);

// Index j of the open cone sigma_{j,j+1} containing v, or -1 on a ray / at 0.
int open_sector(const Point& v);
// Index i with v in the open ray R_{>0} m_i, or -1.
int on_fan_ray(const Point& v);

struct Ray {
  Point base;
  Vec2 dir;
  bool is_line = false;
};

// Parameter t >= 0 with base + t*dir = p, if p lies on the support.
std::optional<Rational> ray_parameter(const Ray& r, const Point& p);
// True when p lies on the support with t > 0 (or anywhere on a line).
bool in_interior(const Ray& r, const Point& p);
// Transverse intersection in the interiors of both supports.
std::optional<Point> intersect(const Ray& r1, const Ray& r2);
// Supports lie on one line and share a segment of positive length.
bool overlapping(const Ray& r1, const Ray& r2);

struct Arrangement {
  Point Q;
  std::vector<Point> P;
  uint64_t seed = 0;
  bool general = false;

  int k() const { return static_cast<int>(P.size()); }
};

nlohmann::json to_json(const Point& p);
Point point_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Arrangement& a);
Arrangement arrangement_from_json(const nlohmann::json& j);
std::string to_string(const Point& p);

}  // namespace p2trop
