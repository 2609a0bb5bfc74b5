#include "netdiff/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include <unistd.h>

#include <openssl/evp.h>
#include <spdlog/spdlog.h>

#include "netdiff/error.hpp"

namespace netdiff::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep = ',') {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool is_number(std::string_view s) {
  double v;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  return ec == std::errc() && ptr == end;
}

// Non-empty, non-comment lines with their 1-based line numbers.
class LineReader {
 public:
  LineReader(std::istream& in, std::string_view source) : in_(in), source_(source) {}

  // Comment lines are returned too when `keep_comments` is set.
  bool next(std::string_view& line, bool keep_comments = false) {
    while (std::getline(in_, buffer_)) {
      ++number_;
      const std::string_view t = trim(buffer_);
      if (t.empty()) continue;
      if (t.front() == '#' && !keep_comments) continue;
      line = t;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(std::string(source_) + ":" + std::to_string(number_) + ": " + what);
  }

  double number(std::string_view field, const char* what) const {
    double v;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
      fail(std::string("invalid ") + what + " '" + std::string(field) + "'");
    }
    return v;
  }

  std::size_t line_number() const { return number_; }

 private:
  std::istream& in_;
  std::string_view source_;
  std::string buffer_;
  std::size_t number_ = 0;
};

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return in;
}

void check_label(const std::string& label) {
  if (label.find_first_of(",\n\r") != std::string::npos || label.empty() ||
      label.front() == '#') {
    throw Error("node label '" + label + "' cannot be written as CSV");
  }
}

NodeId require_node(const Graph& g, std::string_view label, const LineReader& r) {
  const auto v = g.find(label);
  if (!v) r.fail("unknown node '" + std::string(label) + "'");
  return *v;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw Error("cannot format number");
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  const std::string_view t = trim(text);
  double v;
  const auto* end = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    throw Error("invalid number '" + std::string(text) + "'");
  }
  return v;
}

Graph parse_edge_list(std::istream& in, bool weighted, std::string_view source) {
  GraphBuilder b;
  LineReader r(in, source);
  std::string_view line;
  while (r.next(line)) {
    const auto f = split(line);
    if (f.size() >= 2 && f[0] == "source" && f[1] == "target") continue;
    if (f.size() == 1) {
      b.node(f[0]);
      continue;
    }
    if (f.size() != 2 && f.size() != 3) r.fail("expected source,target[,weight]");
    if (f[0].empty() || f[1].empty()) r.fail("empty node label");
    double w = 1.0;
    if (f.size() == 3) {
      const double parsed = r.number(f[2], "weight");
      if (parsed < 0.0) r.fail("negative weight");
      if (weighted) w = parsed;
    }
    const NodeId u = b.node(f[0]);
    const NodeId v = b.node(f[1]);
    if (u == v) {
      spdlog::warn("{}:{}: self-loop on '{}' skipped", source, r.line_number(), f[0]);
      continue;
    }
    b.add_edge(u, v, w);
  }
  return std::move(b).build();
}

Graph read_edge_list(const fs::path& path, bool weighted) {
  auto in = open_input(path);
  return parse_edge_list(in, weighted, path.string());
}

void write_edge_list(std::ostream& out, const Graph& g) {
  const bool weighted = std::any_of(g.edges().begin(), g.edges().end(),
                                    [](const Edge& e) { return e.weight != 1.0; });
  out << "# nodes\n";
  for (const std::string& l : g.labels()) {
    check_label(l);
    out << l << '\n';
  }
  out << (weighted ? "source,target,weight\n" : "source,target\n");
  for (const Edge& e : g.edges()) {
    out << g.label(e.u) << ',' << g.label(e.v);
    if (weighted) out << ',' << format_double(e.weight);
    out << '\n';
  }
}

Graph parse_coordinates(std::istream& in, const Graph& g, std::string_view source) {
  std::vector<Point> pts(g.node_count());
  std::vector<bool> seen(g.node_count(), false);
  LineReader r(in, source);
  std::string_view line;
  bool first = true;
  while (r.next(line)) {
    const auto f = split(line);
    if (f.size() != 3) r.fail("expected label,x,y");
    if (first && !is_number(f[1])) {
      first = false;
      continue;
    }
    first = false;
    const NodeId v = require_node(g, f[0], r);
    if (seen[v]) r.fail("duplicate coordinates for node '" + std::string(f[0]) + "'");
    seen[v] = true;
    pts[v] = {r.number(f[1], "x"), r.number(f[2], "y")};
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!seen[v]) {
      throw Error(std::string(source) + ": no coordinates for node '" + g.label(v) + "'");
    }
  }
  return g.with_coordinates(std::move(pts));
}

Graph read_coordinates(const fs::path& path, const Graph& g) {
  auto in = open_input(path);
  return parse_coordinates(in, g, path.string());
}

void write_coordinates(std::ostream& out, const Graph& g) {
  if (!g.has_coordinates()) throw Error("graph has no coordinates");
  out << "label,x,y\n";
  for (NodeId v = 0; v < g.node_count(); ++v) {
    check_label(g.label(v));
    const Point& p = g.coordinate(v);
    out << g.label(v) << ',' << format_double(p.x) << ',' << format_double(p.y) << '\n';
  }
}

si::EventLog parse_event_log(std::istream& in, const Graph& g, std::string_view source) {
  si::EventLog log;
  std::optional<double> horizon;
  LineReader r(in, source);
  std::string_view line;
  while (r.next(line, true)) {
    if (line.front() == '#') {
      const std::string_view body = trim(line.substr(1));
      if (body.starts_with("initial:")) {
        std::string rest(body.substr(8));
        std::replace(rest.begin(), rest.end(), ',', ' ');
        std::istringstream labels(rest);
        std::string label;
        while (labels >> label) log.initial_infected.push_back(require_node(g, label, r));
      } else if (body.starts_with("horizon:")) {
        horizon = r.number(trim(body.substr(8)), "horizon");
      }
      continue;
    }
    const auto f = split(line);
    if (f.size() != 2) r.fail("expected time,node_label");
    if (f[0] == "time") continue;
    const double t = r.number(f[0], "time");
    log.events.push_back({t, require_node(g, f[1], r)});
  }

  std::stable_sort(log.events.begin(), log.events.end(),
                   [](const auto& a, const auto& b) { return a.time < b.time; });
  std::size_t ties = 0;
  for (std::size_t i = 0; i < log.events.size();) {
    std::size_t j = i + 1;
    while (j < log.events.size() && log.events[j].time == log.events[i].time) ++j;
    for (std::size_t k = i + 1; k < j; ++k) {
      log.events[k].time += 1e-9 * static_cast<double>(k - i);
      ++ties;
    }
    i = j;
  }
  if (ties > 0) {
    spdlog::warn("{}: {} tied event times separated by 1e-9 * rank", source, ties);
  }
  log.horizon = horizon ? *horizon : (log.events.empty() ? 0.0 : log.events.back().time);
  if (!log.events.empty() && log.horizon < log.events.back().time) {
    throw Error(std::string(source) + ": event after the horizon");
  }
  log.validate(g.node_count());
  return log;
}

si::EventLog read_event_log(const fs::path& path, const Graph& g) {
  auto in = open_input(path);
  return parse_event_log(in, g, path.string());
}

void write_event_log(std::ostream& out, const si::EventLog& log, const Graph& g) {
  out << "# initial:";
  for (NodeId v : log.initial_infected) {
    check_label(g.label(v));
    out << ' ' << g.label(v);
  }
  out << "\n# horizon: " << format_double(log.horizon) << '\n';
  out << "# stop: " << si::to_string(log.stop) << '\n';
  out << "time,node_label\n";
  for (const auto& ev : log.events) {
    out << format_double(ev.time) << ',' << g.label(ev.node) << '\n';
  }
}

si::CovariateTable parse_node_covariates(std::istream& in, const Graph& g,
                                         std::string_view source) {
  si::CovariateTable t;
  std::vector<bool> seen(g.node_count(), false);
  LineReader r(in, source);
  std::string_view line;
  bool first = true;
  while (r.next(line)) {
    const auto f = split(line);
    if (f.size() < 2) r.fail("expected node_label,value[,value...]");
    if (first) {
      first = false;
      t = si::CovariateTable(g.node_count(), f.size() - 1);
      if (!is_number(f[1])) continue;
    }
    if (f.size() - 1 != t.cols) r.fail("inconsistent number of covariates");
    const NodeId v = require_node(g, f[0], r);
    if (seen[v]) r.fail("duplicate covariates for node '" + std::string(f[0]) + "'");
    seen[v] = true;
    for (std::size_t k = 0; k < t.cols; ++k) t.at(v, k) = r.number(f[k + 1], "covariate");
  }
  if (first) throw Error(std::string(source) + ": no covariates");
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!seen[v]) {
      throw Error(std::string(source) + ": no covariates for node '" + g.label(v) + "'");
    }
  }
  return t;
}

si::CovariateTable read_node_covariates(const fs::path& path, const Graph& g) {
  auto in = open_input(path);
  return parse_node_covariates(in, g, path.string());
}

void write_node_covariates(std::ostream& out, const si::CovariateTable& t,
                           const Graph& g, const std::vector<std::string>& header) {
  if (t.rows != g.node_count() || header.size() != t.cols) {
    throw Error("covariate table does not match the graph");
  }
  out << "node_label";
  for (const auto& h : header) out << ',' << h;
  out << '\n';
  for (NodeId v = 0; v < g.node_count(); ++v) {
    check_label(g.label(v));
    out << g.label(v);
    for (std::size_t k = 0; k < t.cols; ++k) out << ',' << format_double(t.at(v, k));
    out << '\n';
  }
}

si::CovariateTable parse_edge_covariates(std::istream& in, const Graph& g,
                                         std::string_view source) {
  si::CovariateTable t(g.edge_count(), 1);
  std::vector<bool> seen(g.edge_count(), false);
  LineReader r(in, source);
  std::string_view line;
  bool first = true;
  while (r.next(line)) {
    const auto f = split(line);
    if (f.size() != 3) r.fail("expected source,target,value");
    if (first && !is_number(f[2])) {
      first = false;
      continue;
    }
    first = false;
    const NodeId u = require_node(g, f[0], r);
    const NodeId v = require_node(g, f[1], r);
    const auto e = g.edge_id(u, v);
    if (!e) r.fail("edge covariate on a pair that is not an edge");
    seen[*e] = true;
    t.at(*e, 0) = r.number(f[2], "value");
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (!seen[e]) {
      const Edge& ed = g.edge(e);
      throw Error(std::string(source) + ": no covariate for edge " + g.label(ed.u) +
                  "," + g.label(ed.v));
    }
  }
  return t;
}

si::CovariateTable read_edge_covariates(const fs::path& path, const Graph& g) {
  auto in = open_input(path);
  return parse_edge_covariates(in, g, path.string());
}

mcmc::PriorSpec parse_priors(std::istream& in, std::string_view source) {
  mcmc::PriorSpec spec;
  LineReader r(in, source);
  std::string_view line;
  while (r.next(line)) {
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) r.fail("expected name = Distribution(...)");
    const std::string name(trim(line.substr(0, eq)));
    const std::string_view dist = trim(line.substr(eq + 1));
    const auto open = dist.find('(');
    if (name.empty() || open == std::string_view::npos || dist.back() != ')') {
      r.fail("expected name = Uniform(a, b) or name = Exp(rate)");
    }
    std::string kind(trim(dist.substr(0, open)));
    std::transform(kind.begin(), kind.end(), kind.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    const auto args = split(dist.substr(open + 1, dist.size() - open - 2));
    if (std::find(spec.names.begin(), spec.names.end(), name) != spec.names.end()) {
      r.fail("duplicate prior for '" + name + "'");
    }
    try {
      if ((kind == "uniform" || kind == "u") && args.size() == 2) {
        spec.add(name, mcmc::Prior::uniform(r.number(args[0], "bound"),
                                            r.number(args[1], "bound")));
      } else if ((kind == "exp" || kind == "exponential") && args.size() == 1) {
        spec.add(name, mcmc::Prior::exponential(r.number(args[0], "rate")));
      } else {
        r.fail("unknown prior '" + std::string(dist) + "'");
      }
    } catch (const Error& e) {
      if (std::string_view(e.what()).starts_with(source)) throw;
      r.fail(e.what());
    }
  }
  return spec;
}

mcmc::PriorSpec read_priors(const fs::path& path) {
  auto in = open_input(path);
  return parse_priors(in, path.string());
}

void write_curve(std::ostream& out, const stats::BandedCurve& b) {
  out << "timestep,mean_eta,lo95,hi95\n";
  for (std::size_t t = 0; t < b.mean.size(); ++t) {
    out << t << ',' << format_double(b.mean[t]) << ',' << format_double(b.lo[t]) << ','
        << format_double(b.hi[t]) << '\n';
  }
}

void write_curve(std::ostream& out, std::span<const double> mean) {
  out << "timestep,mean_eta,lo95,hi95\n";
  for (std::size_t t = 0; t < mean.size(); ++t) {
    out << t << ',' << format_double(mean[t]) << ",,\n";
  }
}

std::vector<double> read_sample(const fs::path& path) {
  auto in = open_input(path);
  LineReader r(in, path.string());
  std::vector<double> out;
  std::string_view line;
  while (r.next(line)) {
    const auto f = split(line);
    if (!is_number(f.back())) {
      if (out.empty()) continue;
      r.fail("invalid number '" + std::string(f.back()) + "'");
    }
    out.push_back(r.number(f.back(), "value"));
  }
  return out;
}

void atomic_write(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  try {
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw Error("cannot write '" + tmp.string() + "'");
      body(out);
      out.flush();
      if (!out) throw Error("write to '" + tmp.string() + "' failed");
    }
    fs::rename(tmp, path);
  } catch (...) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw;
  }
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw Error("sha256: out of memory");
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 15];
  while (in) {
    in.read(buf, sizeof buf);
    EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 0xF]);
  }
  return out;
}

}  // namespace netdiff::io
