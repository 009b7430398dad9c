#include "torsionlab/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unistd.h>

#include "torsionlab/errors.hpp"

namespace torsionlab::io {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

Point point_from_json(const json& p) {
  if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
    throw InvalidArgument("a point must be a [x, y] pair of numbers, got " + p.dump());
  return {p[0].get<double>(), p[1].get<double>()};
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::map<std::string, std::string> key_values(std::string_view body) {
  std::map<std::string, std::string> out;
  std::size_t pos = 0;
  while (pos <= body.size() && !body.empty()) {
    const auto comma = body.find(',', pos);
    const std::string_view item = body.substr(pos, comma == std::string_view::npos ? body.npos : comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw InvalidArgument("expected key=value in '" + std::string(item) + "'");
    out[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

double need(const std::map<std::string, std::string>& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw InvalidArgument("domain spec is missing '" + key + "'");
  return parse_real(it->second);
}

int need_int(const std::map<std::string, std::string>& kv, const std::string& key) {
  const double v = need(kv, key);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw InvalidArgument("'" + key + "' must be an integer");
  return static_cast<int>(v);
}

}  // namespace

SlitDomain domain_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgument("domain must be a JSON object");
  if (!j.contains("outer") || !j["outer"].is_array()) throw InvalidArgument("domain needs an 'outer' vertex array");
  std::vector<Point> outer;
  for (const auto& p : j["outer"]) outer.push_back(point_from_json(p));
  std::vector<Segment> slits;
  if (j.contains("slits")) {
    if (!j["slits"].is_array()) throw InvalidArgument("'slits' must be an array");
    for (const auto& s : j["slits"]) {
      if (!s.is_array() || s.size() != 2) throw InvalidArgument("a slit must be [[x,y],[x,y]], got " + s.dump());
      slits.push_back({point_from_json(s[0]), point_from_json(s[1])});
    }
  }
  std::string label = j.value("label", std::string{});
  return SlitDomain(std::move(outer), std::move(slits), std::move(label));
}

json domain_to_json(const SlitDomain& dom) {
  json outer = json::array(), slits = json::array();
  for (const Point& p : dom.outer()) outer.push_back({p.x, p.y});
  for (const Segment& s : dom.slits()) slits.push_back({{s.a.x, s.a.y}, {s.b.x, s.b.y}});
  return {{"outer", outer}, {"slits", slits}, {"label", dom.label()}};
}

SlitDomain read_domain(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open domain file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidArgument("domain file " + path.string() + ": " + e.what());
  }
  return domain_from_json(j);
}

double parse_real(std::string_view text) {
  const std::string t = trim(text);
  auto one = [&](std::string_view s) {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size() || s.empty())
      throw InvalidArgument("not a number: '" + t + "'");
    return v;
  };
  const auto slash = t.find('/');
  double v = slash == std::string::npos ? one(t) : one(std::string_view(t).substr(0, slash)) /
                                                      one(std::string_view(t).substr(slash + 1));
  if (!std::isfinite(v)) throw InvalidArgument("not a finite number: '" + t + "'");
  return v;
}

double real_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_real(j.get<std::string>());
  throw InvalidArgument("expected a number, got " + j.dump());
}

DomainSpec parse_domain(std::string_view spec) {
  const std::string s = trim(spec);
  const auto colon = s.find(':');
  const std::string kind = s.substr(0, colon);
  const auto kv = colon == std::string::npos ? std::map<std::string, std::string>{}
                                             : key_values(std::string_view(s).substr(colon + 1));
  if (kind == "square") return {make_unit_square(), std::nullopt};
  if (kind == "rect") return {make_rectangle(need(kv, "a"), need(kv, "b")), std::nullopt};
  if (kind == "polygon" || kind == "disk") {
    const int sides = kv.count("sides") ? need_int(kv, "sides") : 256;
    const double r = kv.count("r") ? need(kv, "r") : 1.0;
    return {make_regular_polygon(sides, r), std::nullopt};
  }
  if (kind == "comb") {
    const int n = need_int(kv, "n");
    if (kv.count("eps")) {
      const double eps = need(kv, "eps");
      DomainSpec d{make_comb(n, eps), std::nullopt};
      d.comb_n = n;
      d.comb_eps = eps;
      return d;
    }
    CombParams p;
    p.n = n;
    if (kv.count("alpha")) p.alpha = need(kv, "alpha");
    if (kv.count("c")) p.c = need(kv, "c");
    p.validate();
    DomainSpec d{make_comb(p), p};
    d.comb_n = n;
    d.comb_eps = p.eps();
    return d;
  }
  if (fs::exists(s)) return {read_domain(s), std::nullopt};
  throw InvalidArgument("unknown domain '" + s + "' (not a file; expected square, rect:, polygon:, comb:)");
}

DomainSpec parse_domain(const json& j) {
  if (j.is_string()) return parse_domain(std::string_view(j.get_ref<const std::string&>()));
  return {domain_from_json(j), std::nullopt};
}

void write_atomic(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string fmt(double x) {
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

Csv::Csv(std::vector<std::string> header) : width_(header.size()) { row(header); }

Csv& Csv::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw std::logic_error("csv row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) text_ += ',';
    text_ += cells[i];
  }
  text_ += '\n';
  return *this;
}

std::string Csv::str() const { return text_; }

void append_csv_row(const fs::path& path, const std::vector<std::string>& header,
                    const std::vector<std::string>& cells) {
  std::string text;
  if (fs::exists(path)) {
    std::ifstream in(path, std::ios::binary);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  if (text.empty()) text = Csv(header).str();
  if (text.back() != '\n') text += '\n';
  Csv line(cells);  // a one-row table is just the joined cells
  text += line.str();
  write_atomic(path, text);
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kW = 640, kH = 420, kL = 70, kR = 20, kT = 40, kB = 50;

std::string esc(std::string_view s) {
  std::string o;
  for (char c : s) {
    switch (c) {
      case '<': o += "&lt;"; break;
      case '>': o += "&gt;"; break;
      case '&': o += "&amp;"; break;
      default: o += c;
    }
  }
  return o;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

}  // namespace

std::string svg_plot(const std::vector<SvgSeries>& series, std::string_view title,
                     std::string_view xlabel, std::string_view ylabel) {
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series)
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  if (!(x0 <= x1)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  const double pw = kW - kL - kR, ph = kH - kT - kB;
  auto X = [&](double x) { return kL + (x - x0) / (x1 - x0) * pw; };
  auto Y = [&](double y) { return kT + ph - (y - y0) / (y1 - y0) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << kW / 2 << "\" y=\"20\" text-anchor=\"middle\">" << esc(title) << "</text>\n";
  o << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = x0 + (x1 - x0) * k / 4.0, yv = y0 + (y1 - y0) * k / 4.0;
    o << "<text x=\"" << X(xv) << "\" y=\"" << kT + ph + 16 << "\" text-anchor=\"middle\">" << num(xv)
      << "</text>\n";
    o << "<text x=\"" << kL - 6 << "\" y=\"" << Y(yv) + 4 << "\" text-anchor=\"end\">" << num(yv)
      << "</text>\n";
  }
  o << "<text x=\"" << kL + pw / 2 << "\" y=\"" << kH - 10 << "\" text-anchor=\"middle\">" << esc(xlabel)
    << "</text>\n";
  o << "<text x=\"14\" y=\"" << kT + ph / 2 << "\" transform=\"rotate(-90 14 " << kT + ph / 2
    << ")\" text-anchor=\"middle\">" << esc(ylabel) << "</text>\n";
  static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* col = colours[k % 6];
    o << "<polyline fill=\"none\" stroke=\"" << col << "\" points=\"";
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
      if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) o << X(s.x[i]) << ',' << Y(s.y[i]) << ' ';
    o << "\"/>\n";
    o << "<text x=\"" << kL + 8 << "\" y=\"" << kT + 16 + 14 * k << "\" fill=\"" << col << "\">"
      << esc(s.name) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string svg_domain(const SlitDomain& dom) {
  const BoundingBox b = dom.bbox();
  const double size = 400.0, pad = 10.0;
  const double s = size / std::max(b.width(), b.height());
  auto X = [&](double x) { return pad + (x - b.lo.x) * s; };
  auto Y = [&](double y) { return pad + (b.hi.y - y) * s; };
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << 2 * pad + b.width() * s << "\" height=\""
    << 2 * pad + b.height() * s << "\">\n<polygon fill=\"#eef\" stroke=\"black\" points=\"";
  for (const Point& p : dom.outer()) o << X(p.x) << ',' << Y(p.y) << ' ';
  o << "\"/>\n";
  for (const Segment& sg : dom.slits())
    o << "<line x1=\"" << X(sg.a.x) << "\" y1=\"" << Y(sg.a.y) << "\" x2=\"" << X(sg.b.x) << "\" y2=\""
      << Y(sg.b.y) << "\" stroke=\"black\"/>\n";
  o << "</svg>\n";
  return o.str();
}

}  // namespace torsionlab::io
