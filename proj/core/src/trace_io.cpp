#include "geoflow/trace_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace geoflow {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path + " for writing");
  return os;
}

void finish(std::ofstream& os, const std::string& path) {
  os.flush();
  if (!os.good()) throw Error("write failed for " + path);
}

void put_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << fields[i];
  }
  os << '\n';
}

}  // namespace

std::string format_field(double x) {
  if (std::isnan(x)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_trace_csv(const std::string& path, const std::vector<Diagnostics>& trace) {
  std::ofstream os = open_out(path);
  os << "step,t,L,dL_dt,bending,max_k2,min_k_signed,max_k,sup_d1,sup_d2,sup_d3,"
        "bending2,mu,L0,res1,res2,res3,f_value,df_dt,rate_denom\n";
  for (const auto& r : trace) {
    put_row(os, {std::to_string(r.step), format_field(r.t), format_field(r.L),
                 format_field(r.dL_dt), format_field(r.bending), format_field(r.max_k2),
                 format_field(r.min_k_signed), format_field(r.max_k),
                 format_field(r.sup_d1), format_field(r.sup_d2), format_field(r.sup_d3),
                 format_field(r.bending2), format_field(r.mu), format_field(r.L0),
                 format_field(r.res1), format_field(r.res2), format_field(r.res3),
                 format_field(r.f_value), format_field(r.df_dt),
                 format_field(r.rate_denom)});
  }
  finish(os, path);
}

void write_snapshot_csv(const std::string& path, const FlowState& state,
                        const MetricModel& model) {
  const int dim = model.dim();
  const std::size_t n = state.curve.nodes.size();
  const bool fiber = model.has_fiber();

  std::vector<double> ks;
  if (dim == 2) ks = signed_curvature(state.curve, state.geom, model, state.t);
  FrenetFrame ff;
  const bool with_tau = dim == 3 && state.geom.n_max >= 2;
  if (with_tau) ff = frenet(state.curve, state.geom, model, state.t);
  RampContext rc;
  if (fiber) rc = ramp_height(state.curve, state.geom, model, state.t);

  std::ofstream os = open_out(path);
  os << "node";
  for (int d = 0; d < dim; ++d) os << ",x" << d;
  os << ",v,k";
  if (dim == 2) os << ",k_signed";
  if (dim == 3) os << ",tau";
  if (fiber) os << ",h";
  os << '\n';

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> fields{std::to_string(i)};
    for (int d = 0; d < dim; ++d) fields.push_back(format_field(state.curve.nodes[i][d]));
    fields.push_back(format_field(state.geom.v[i]));
    fields.push_back(format_field(state.geom.k[i]));
    if (dim == 2) fields.push_back(format_field(ks[i]));
    if (dim == 3)
      fields.push_back(with_tau && ff.tau_defined[i] ? format_field(ff.tau[i]) : "");
    if (fiber) fields.push_back(format_field(rc.h[i]));
    put_row(os, fields);
  }
  finish(os, path);
}

void write_points_csv(const std::string& path, const DiscreteCurve& curve) {
  std::ofstream os = open_out(path);
  os << "# loop_shift:";
  for (int d = 0; d < curve.loop_shift.size(); ++d)
    os << ' ' << format_field(curve.loop_shift[d]);
  os << '\n';
  for (const auto& p : curve.nodes) {
    std::vector<std::string> fields;
    for (int d = 0; d < p.size(); ++d) fields.push_back(format_field(p[d]));
    put_row(os, fields);
  }
  finish(os, path);
}

DiscreteCurve read_points_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path + " for reading");

  auto parse_numbers = [&path](const std::string& text, long line) {
    std::vector<double> out;
    std::string norm = text;
    for (char& c : norm)
      if (c == ',' || c == '\t') c = ' ';
    std::istringstream ss(norm);
    std::string tok;
    while (ss >> tok) {
      std::size_t used = 0;
      double x = 0.0;
      try {
        x = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size())
        throw Error(path + ":" + std::to_string(line) + ": cannot parse \"" + tok +
                    "\" as a number");
      out.push_back(x);
    }
    return out;
  };

  std::vector<Vec> nodes;
  bool have_shift = false;
  std::vector<double> shift;
  std::string line;
  long lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') {
      const std::size_t key = line.find("loop_shift");
      if (key == std::string::npos) continue;
      std::size_t val = line.find_first_of(":=", key);
      if (val == std::string::npos)
        throw Error(path + ":" + std::to_string(lineno) +
                    ": loop_shift header needs ':' or '='");
      shift = parse_numbers(line.substr(val + 1), lineno);
      have_shift = true;
      continue;
    }
    const std::vector<double> row = parse_numbers(line.substr(start), lineno);
    if (row.empty()) continue;
    if (!nodes.empty() && static_cast<int>(row.size()) != nodes.front().size())
      throw Error(path + ":" + std::to_string(lineno) + ": expected " +
                  std::to_string(nodes.front().size()) + " coordinates, got " +
                  std::to_string(row.size()));
    Vec p(static_cast<int>(row.size()));
    for (std::size_t d = 0; d < row.size(); ++d) p[static_cast<int>(d)] = row[d];
    nodes.push_back(p);
  }
  if (nodes.empty()) throw Error(path + ": no curve nodes found");

  const int dim = nodes.front().size();
  Vec lift = Vec::Zero(dim);
  if (have_shift) {
    if (static_cast<int>(shift.size()) != dim)
      throw Error(path + ": loop_shift has " + std::to_string(shift.size()) +
                  " entries for " + std::to_string(dim) + "-dimensional nodes");
    for (int d = 0; d < dim; ++d) lift[d] = shift[static_cast<std::size_t>(d)];
  }
  return make_curve(std::move(nodes), lift);
}

void write_ramp_csv(const std::string& path, const RampTrace& trace) {
  std::ofstream os = open_out(path);
  os << "t,step,mu,kappa,lambda,phi,psi,winding\n";
  for (const auto& s : trace.samples) {
    put_row(os, {format_field(s.t), std::to_string(s.step), format_field(s.mu),
                 format_field(s.kappa), format_field(s.lambda), format_field(s.phi),
                 format_field(s.psi), std::to_string(s.winding)});
  }
  finish(os, path);
}

void write_helix_csv(const std::string& path, const HelixTrajectory& traj) {
  std::ofstream os = open_out(path);
  os << "t,k,tau,u,v,invariant_residual,diamond_residual\n";
  if (traj.samples.empty()) {
    finish(os, path);
    return;
  }
  const HelixState& s0 = traj.samples.front();
  const double v0 = s0.v();
  const bool conserved = v0 > 0.0;
  const double m0 = conserved ? (s0.u() + v0 + s0.K) / std::sqrt(v0) : kNaN;
  const bool diamond = s0.K == -1 && std::abs(s0.k - 1.0) <= 1e-9 && s0.tau > 0.0;

  for (const auto& s : traj.samples) {
    const double u = s.u(), v = s.v();
    std::string inv, dia;
    if (conserved && v > 0.0)
      inv = format_field((u + v + s.K) / std::sqrt(v) - m0);
    if (diamond) {
      try {
        dia = format_field(diamond_residual(std::abs(s.tau), s.t, s0.tau));
      } catch (const DomainError&) {
        // torsion left the factor bracket: the closed form no longer applies
      }
    }
    put_row(os, {format_field(s.t), format_field(s.k), format_field(s.tau),
                 format_field(u), format_field(v), inv, dia});
  }
  finish(os, path);
}

void write_report_json(const std::string& path, const RunReport& report) {
  nlohmann::json j;
  j["subcommand"] = report.subcommand;
  j["config"] = report.resolved_config.empty()
                    ? nlohmann::json::object()
                    : nlohmann::json::parse(report.resolved_config);
  j["overrides"] = report.overrides;
  j["input_hash"] = report.input_hash;
  j["wall_seconds"] = report.wall_seconds;
  j["exit_code"] = report.exit_code;
  j["stop"] = {{"reason", report.stop_reason}, {"detail", report.stop_detail}};
  j["steps"] = report.steps;
  j["final_t"] = report.final_t;  // NaN serializes as null
  nlohmann::json summary = nlohmann::json::object();
  for (const auto& [key, value] : report.summary) summary[key] = value;
  j["summary"] = summary;

  std::ofstream os = open_out(path);
  os << j.dump(2) << '\n';
  finish(os, path);
}

namespace {

// SHA-1 (FIPS 180-4), single-shot over a full in-memory buffer.
struct Sha1 {
  uint32_t h[5] = {0x67452301u, 0xEFCDAB89u, 0x98BADCFEu, 0x10325476u, 0xC3D2E1F0u};

  static uint32_t rol(uint32_t x, int s) { return (x << s) | (x >> (32 - s)); }

  void block(const unsigned char* p) {
    uint32_t w[80];
    for (int i = 0; i < 16; ++i)
      w[i] = (uint32_t(p[4 * i]) << 24) | (uint32_t(p[4 * i + 1]) << 16) |
             (uint32_t(p[4 * i + 2]) << 8) | uint32_t(p[4 * i + 3]);
    for (int i = 16; i < 80; ++i)
      w[i] = rol(w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16], 1);
    uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4];
    for (int i = 0; i < 80; ++i) {
      uint32_t f, k;
      if (i < 20) {
        f = (b & c) | (~b & d);
        k = 0x5A827999u;
      } else if (i < 40) {
        f = b ^ c ^ d;
        k = 0x6ED9EBA1u;
      } else if (i < 60) {
        f = (b & c) | (b & d) | (c & d);
        k = 0x8F1BBCDCu;
      } else {
        f = b ^ c ^ d;
        k = 0xCA62C1D6u;
      }
      const uint32_t tmp = rol(a, 5) + f + e + k + w[i];
      e = d;
      d = c;
      c = rol(b, 30);
      b = a;
      a = tmp;
    }
    h[0] += a;
    h[1] += b;
    h[2] += c;
    h[3] += d;
    h[4] += e;
  }

  std::string digest(const std::string& msg) {
    std::string padded = msg;
    const uint64_t bits = uint64_t(msg.size()) * 8;
    padded.push_back(char(0x80));
    while (padded.size() % 64 != 56) padded.push_back('\0');
    for (int i = 7; i >= 0; --i) padded.push_back(char((bits >> (8 * i)) & 0xFF));
    for (std::size_t off = 0; off < padded.size(); off += 64)
      block(reinterpret_cast<const unsigned char*>(padded.data()) + off);
    char out[41];
    for (int i = 0; i < 5; ++i) std::snprintf(out + 8 * i, 9, "%08x", h[i]);
    return std::string(out, 40);
  }
};

}  // namespace

std::string git_blob_sha1(const std::string& bytes) {
  std::string msg = "blob " + std::to_string(bytes.size());
  msg.push_back('\0');
  msg += bytes;
  return Sha1{}.digest(msg);
}

}  // namespace geoflow
