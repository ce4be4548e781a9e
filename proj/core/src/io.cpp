#include "darpcf/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace darpcf {

ParseError::ParseError(std::size_t line, std::string field, const std::string& message)
    : std::runtime_error([&] {
        std::ostringstream os;
        if (line > 0) os << "line " << line << ": ";
        if (!field.empty()) os << "field '" << field << "': ";
        os << message;
        return os.str();
      }()),
      line_(line),
      field_(std::move(field)) {}

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

std::string format_window(const std::optional<TimeWindow>& w) {
  if (!w) return "-";
  return std::to_string(w->earliest) + ":" + std::to_string(w->latest);
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

class LineReader {
 public:
  explicit LineReader(std::istream& is) : is_(is) {}

  /// Next non-empty line, or nullopt at end of input.
  std::optional<std::string> next() {
    std::string line;
    while (std::getline(is_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") != std::string::npos) return line;
    }
    return std::nullopt;
  }

  std::string require(const std::string& what) {
    auto line = next();
    if (!line) throw ParseError(0, "", "unexpected end of input, missing " + what);
    return *line;
  }

  void expect_section(const std::string& name) {
    auto line = next();
    if (!line) throw ParseError(0, "", "missing section [" + name + "]");
    if (*line != "[" + name + "]") {
      throw ParseError(line_no_, "", "expected section [" + name + "], found '" + *line + "'");
    }
  }

  [[nodiscard]] std::size_t line_no() const { return line_no_; }

 private:
  std::istream& is_;
  std::size_t line_no_ = 0;
};

template <typename T>
T parse_number(const std::string& tok, std::size_t line, const std::string& field) {
  T value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, field, "cannot parse '" + tok + "' as a number");
  }
  return value;
}

std::optional<TimeWindow> parse_window(const std::string& tok, std::size_t line,
                                       const std::string& field) {
  if (tok == "-") return std::nullopt;
  const auto colon = tok.find(':');
  if (colon == std::string::npos) throw ParseError(line, field, "expected 'e:l' or '-'");
  return TimeWindow{parse_number<Seconds>(tok.substr(0, colon), line, field),
                    parse_number<Seconds>(tok.substr(colon + 1), line, field)};
}

/// Reads a "key value" line and checks the key.
std::string keyed(LineReader& in, const std::string& key) {
  const auto line = in.require(key);
  const auto toks = split_ws(line);
  if (toks.size() != 2 || toks[0] != key) {
    throw ParseError(in.line_no(), key, "expected '" + key + " <value>'");
  }
  return toks[1];
}

template <typename T>
T keyed_number(LineReader& in, const std::string& key) {
  const auto tok = keyed(in, key);
  return parse_number<T>(tok, in.line_no(), key);
}

}  // namespace

void write_instance(std::ostream& os, const Instance& inst) {
  os << "darpcf-instance 1\n";
  os << "name " << inst.name << "\n";
  const auto& s = inst.service;
  os << "[service]\n";
  os << "gp_stay " << s.gp_stay << "\n";
  os << "max_window " << s.max_window << "\n";
  os << "ride_factor " << format_double(s.ride_factor) << "\n";
  os << "rho " << format_double(s.rho) << "\n";
  os << "congestion_limit " << s.congestion_limit << "\n";
  os << "congestion_window " << s.congestion_window << "\n";
  const auto& f = inst.fleet;
  os << "[fleet]\n";
  os << "vehicles " << f.vehicles << "\n";
  os << "capacity " << f.capacity << "\n";
  os << "day_start " << f.day_start << "\n";
  os << "max_route_duration " << f.max_route_duration << "\n";
  os << "depot " << f.depot << "\n";
  os << "sessions " << f.sessions.size() << "\n";
  for (const auto& w : f.sessions) os << w.earliest << " " << w.latest << "\n";
  os << "[locations]\n";
  os << "count " << inst.locations.size() << "\n";
  for (const auto& l : inst.locations) {
    os << l.id << " " << format_double(l.x_km) << " " << format_double(l.y_km) << "\n";
  }
  const auto n = inst.travel.size();
  os << "[matrix]\n";
  os << "size " << n << "\n";
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      if (k) os << ' ';
      os << inst.travel(static_cast<NodeId>(j), static_cast<NodeId>(k));
    }
    os << "\n";
  }
  os << "[requests]\n";
  os << "count " << inst.requests.size() << "\n";
  for (const auto& r : inst.requests) {
    os << r.id << " " << to_string(r.patient_class) << " " << r.home << " " << r.gp << " "
       << r.appointment << " " << r.release_time << " " << format_window(r.outbound_window)
       << " " << format_window(r.inbound_window) << " " << r.max_ride_outbound << " "
       << r.max_ride_inbound << "\n";
  }
  os << "[end]\n";
}

Instance read_instance(std::istream& is) {
  LineReader in(is);
  Instance inst;
  {
    auto line = in.next();
    if (!line || *line != "darpcf-instance 1") {
      throw ParseError(in.line_no(), "header", "expected 'darpcf-instance 1'");
    }
    line = in.require("name");
    if (line->rfind("name", 0) != 0) throw ParseError(in.line_no(), "name", "expected 'name <text>'");
    inst.name = line->size() > 5 ? line->substr(5) : "";
  }

  in.expect_section("service");
  auto& s = inst.service;
  s.gp_stay = keyed_number<Seconds>(in, "gp_stay");
  s.max_window = keyed_number<Seconds>(in, "max_window");
  s.ride_factor = keyed_number<double>(in, "ride_factor");
  s.rho = keyed_number<double>(in, "rho");
  s.congestion_limit = keyed_number<int>(in, "congestion_limit");
  s.congestion_window = keyed_number<Seconds>(in, "congestion_window");

  in.expect_section("fleet");
  auto& f = inst.fleet;
  f.vehicles = keyed_number<int>(in, "vehicles");
  f.capacity = keyed_number<int>(in, "capacity");
  f.day_start = keyed_number<Seconds>(in, "day_start");
  f.max_route_duration = keyed_number<Seconds>(in, "max_route_duration");
  f.depot = keyed_number<NodeId>(in, "depot");
  const auto n_sessions = keyed_number<std::size_t>(in, "sessions");
  for (std::size_t i = 0; i < n_sessions; ++i) {
    const auto toks = split_ws(in.require("session"));
    if (toks.size() != 2) throw ParseError(in.line_no(), "session", "expected 'open close'");
    f.sessions.push_back({parse_number<Seconds>(toks[0], in.line_no(), "session"),
                          parse_number<Seconds>(toks[1], in.line_no(), "session")});
  }

  in.expect_section("locations");
  const auto n_loc = keyed_number<std::size_t>(in, "count");
  for (std::size_t i = 0; i < n_loc; ++i) {
    const auto toks = split_ws(in.require("location"));
    if (toks.size() != 3) throw ParseError(in.line_no(), "location", "expected 'id x y'");
    inst.locations.push_back({parse_number<NodeId>(toks[0], in.line_no(), "location.id"),
                              parse_number<double>(toks[1], in.line_no(), "location.x"),
                              parse_number<double>(toks[2], in.line_no(), "location.y")});
  }

  in.expect_section("matrix");
  const auto n = keyed_number<std::size_t>(in, "size");
  if (n != n_loc) {
    throw ParseError(in.line_no(), "size",
                     "matrix dimension " + std::to_string(n) + " does not match " +
                         std::to_string(n_loc) + " locations");
  }
  inst.travel = TravelMatrix(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto line = in.require("matrix row");
    if (line.front() == '[') {
      throw ParseError(in.line_no(), "matrix",
                       "matrix dimension: found " + std::to_string(j) + " rows, expected " +
                           std::to_string(n));
    }
    const auto toks = split_ws(line);
    if (toks.size() != n) {
      throw ParseError(in.line_no(), "matrix",
                       "matrix dimension: row has " + std::to_string(toks.size()) +
                           " entries, expected " + std::to_string(n));
    }
    for (std::size_t k = 0; k < n; ++k) {
      inst.travel(static_cast<NodeId>(j), static_cast<NodeId>(k)) =
          parse_number<Seconds>(toks[k], in.line_no(), "matrix");
    }
  }

  in.expect_section("requests");
  const auto n_req = keyed_number<std::size_t>(in, "count");
  for (std::size_t i = 0; i < n_req; ++i) {
    const auto line = in.require("request");
    const auto toks = split_ws(line);
    const auto ln = in.line_no();
    if (toks.size() != 10) throw ParseError(ln, "request", "expected 10 fields");
    RequestPair r;
    r.id = parse_number<RequestId>(toks[0], ln, "request.id");
    if (toks[1] == "chronic") {
      r.patient_class = PatientClass::chronic;
    } else if (toks[1] == "walk_in") {
      r.patient_class = PatientClass::walk_in;
    } else {
      throw ParseError(ln, "request.class", "unknown patient class '" + toks[1] + "'");
    }
    r.home = parse_number<NodeId>(toks[2], ln, "request.home");
    r.gp = parse_number<NodeId>(toks[3], ln, "request.gp");
    r.appointment = parse_number<Seconds>(toks[4], ln, "request.appointment");
    r.release_time = parse_number<Seconds>(toks[5], ln, "request.release");
    r.outbound_window = parse_window(toks[6], ln, "request.out_window");
    r.inbound_window = parse_window(toks[7], ln, "request.in_window");
    r.max_ride_outbound = parse_number<Seconds>(toks[8], ln, "request.max_ride_out");
    r.max_ride_inbound = parse_number<Seconds>(toks[9], ln, "request.max_ride_in");
    inst.requests.push_back(r);
  }
  in.expect_section("end");
  return inst;
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  write_instance(os, inst);
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  return read_instance(is);
}

void write_schedules(std::ostream& os, const Schedules& schedules) {
  os << "vehicle,sequence,node,action,leg,request,planned_time,load\n";
  for (const auto& s : schedules) {
    for (std::size_t k = 0; k < s.stops.size(); ++k) {
      const auto& st = s.stops[k];
      os << s.vehicle << ',' << k << ',' << st.node << ',' << to_string(st.action) << ',';
      if (st.serves_request()) {
        os << to_string(st.leg) << ',' << st.request;
      } else {
        os << "-,-";
      }
      os << ',' << st.planned_time << ',' << st.load_after << '\n';
    }
  }
}

Schedules read_schedules(std::istream& is) {
  Schedules out;
  std::string line;
  std::size_t ln = 0;
  if (!std::getline(is, line)) throw ParseError(0, "", "missing header");
  ++ln;
  if (line != "vehicle,sequence,node,action,leg,request,planned_time,load") {
    throw ParseError(ln, "header", "unexpected schedule header");
  }
  while (std::getline(is, line)) {
    ++ln;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 8) throw ParseError(ln, "", "expected 8 fields");
    const auto vehicle = parse_number<VehicleId>(f[0], ln, "vehicle");
    const auto seq = parse_number<std::size_t>(f[1], ln, "sequence");
    if (out.empty() || out.back().vehicle != vehicle) {
      out.push_back(Schedule{vehicle, {}, 0});
    }
    auto& s = out.back();
    if (seq != s.stops.size()) throw ParseError(ln, "sequence", "out of order");
    Stop st;
    st.node = parse_number<NodeId>(f[2], ln, "node");
    if (f[3] == "depot") {
      st.action = StopAction::depot;
    } else if (f[3] == "pickup") {
      st.action = StopAction::pickup;
    } else if (f[3] == "delivery") {
      st.action = StopAction::delivery;
    } else {
      throw ParseError(ln, "action", "unknown action '" + f[3] + "'");
    }
    if (st.action != StopAction::depot) {
      if (f[4] == "out") {
        st.leg = Leg::outbound;
      } else if (f[4] == "in") {
        st.leg = Leg::inbound;
      } else {
        throw ParseError(ln, "leg", "unknown leg '" + f[4] + "'");
      }
      st.request = parse_number<RequestId>(f[5], ln, "request");
    }
    st.planned_time = parse_number<Seconds>(f[6], ln, "planned_time");
    st.load_after = parse_number<int>(f[7], ln, "load");
    s.stops.push_back(st);
  }
  return out;
}

void save_schedules(const Schedules& schedules, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  write_schedules(os, schedules);
}

Schedules load_schedules(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  return read_schedules(is);
}

}  // namespace darpcf
