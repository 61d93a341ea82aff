#include "toymodel/io.hpp"

#include <atomic>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <unistd.h>

#include "toymodel/error.hpp"
#include "toymodel/hydro.hpp"

namespace toymodel::io {

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  static std::atomic<unsigned> counter{0};
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

nlohmann::json conventions() {
  return {{"index_base", 1},
          {"ghost_nodes", "b_0 = b_{n+1} = 0"},
          {"theta", "theta_j = phi_j - phi_{j-1}, phi_0 = 0"},
          {"phase_unwrapping", "nearest representative: along j at t = 0, along t afterwards"},
          {"float_format", "shortest round-trip"}};
}

void write_with_sidecar(const std::filesystem::path& path, const std::string& content,
                        const nlohmann::json& metadata) {
  nlohmann::json meta = metadata;
  meta["conventions"] = conventions();
  meta["file"] = path.filename().string();
  write_atomic(path, content);
  std::filesystem::path side = path;
  side += ".json";
  write_atomic(side, meta.dump(2) + "\n");
}

namespace {

void lattice_rows(std::ostringstream& out, double t, const HydroState& h, const ComplexLattice& b) {
  double prev_phi = 0.0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    const cplx z = b.values()[k];
    out << format_double(t) << ',' << (k + 1) << ',' << format_double(z.real()) << ','
        << format_double(z.imag()) << ',' << format_double(h.rho[k]) << ','
        << format_double(h.phi[k]) << ',' << format_double(h.phi[k] - prev_phi) << '\n';
    prev_phi = h.phi[k];
  }
}

constexpr const char* lattice_header = "t,j,re_b,im_b,rho,phi,theta\n";

}  // namespace

std::string lattice_csv(const Trajectory<ComplexLattice>& traj, double phase_floor) {
  const auto hydro = to_hydro_series(traj, phase_floor);
  std::ostringstream out;
  out << lattice_header;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    lattice_rows(out, traj.times[i], hydro.states[i], traj.states[i]);
  }
  return out.str();
}

std::string lattice_csv(const Trajectory<HydroState>& traj) {
  std::ostringstream out;
  out << lattice_header;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    lattice_rows(out, traj.times[i], traj.states[i], madelung_compose(traj.states[i]));
  }
  return out.str();
}

std::string lattice_csv(const Trajectory<AltHydroState>& traj) {
  std::ostringstream out;
  out << lattice_header;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const HydroState h = from_alt(traj.states[i]);
    lattice_rows(out, traj.times[i], h, madelung_compose(h));
  }
  return out.str();
}

std::string profile_csv(const Trajectory<BurgersProfile>& traj) {
  std::ostringstream out;
  out << "t,j,rho\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const std::string t = format_double(traj.times[i]);
    for (std::size_t k = 0; k < traj.states[i].size(); ++k) {
      out << t << ',' << (k + 1) << ',' << format_double(traj.states[i].rho[k]) << '\n';
    }
  }
  return out.str();
}

std::string profile_csv(const Trajectory<AltHydroState>& traj) {
  std::ostringstream out;
  out << "t,j,rho,theta\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const std::string t = format_double(traj.times[i]);
    const auto& s = traj.states[i];
    for (std::size_t k = 0; k < s.size(); ++k) {
      out << t << ',' << (k + 1) << ',' << format_double(s.rho[k]) << ','
          << format_double(s.theta[k]) << '\n';
    }
  }
  return out.str();
}

std::string flux_csv(const std::vector<FluxSample>& samples) {
  std::ostringstream out;
  out << "t,N_trunc,mass_flux,ham_flux,M_N,H_N\n";
  for (const auto& s : samples) {
    out << format_double(s.t) << ',' << s.n_trunc << ',' << format_double(s.mass_flux) << ','
        << format_double(s.ham_flux) << ',' << format_double(s.mass_n) << ','
        << format_double(s.ham_n) << '\n';
  }
  return out.str();
}

std::string sweep_csv(const std::vector<TheoremReport>& reports) {
  std::ostringstream out;
  out << "eps,n,delta,T,max_sup_theta,bound_theta,max_sup_rho,bound_rho,pass\n";
  for (const auto& r : reports) {
    out << format_double(r.eps) << ',' << r.n << ',' << format_double(r.delta) << ','
        << format_double(r.horizon) << ',' << format_double(r.max_sup_theta) << ','
        << format_double(r.bound_theta) << ',' << format_double(r.max_sup_rho) << ','
        << format_double(r.bound_rho) << ',' << (r.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const TheoremReport& r) {
  return {{"eps", r.eps},
          {"n", r.n},
          {"delta", r.delta},
          {"T", r.horizon},
          {"max_sup_theta", r.max_sup_theta},
          {"bound_theta", r.bound_theta},
          {"max_sup_rho", r.max_sup_rho},
          {"bound_rho", r.bound_rho},
          {"worst_theta", {{"j", r.worst_theta_node}, {"t", r.worst_theta_time}}},
          {"worst_rho", {{"j", r.worst_rho_node}, {"t", r.worst_rho_time}}},
          {"bootstrap_max", r.bootstrap_max},
          {"pass", r.pass}};
}

ComplexLattice read_lattice_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::config, "cannot open initial data file " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::config, path.string() + ": empty file");

  std::map<std::string, std::size_t> column;
  {
    std::stringstream header(line);
    std::string name;
    for (std::size_t c = 0; std::getline(header, name, ','); ++c) column[name] = c;
  }
  for (const char* need : {"t", "j", "re_b", "im_b"}) {
    if (!column.count(need)) {
      throw Error(ErrorKind::config, path.string() + ": missing column " + need);
    }
  }

  std::map<long, cplx> nodes;
  std::string first_t;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream row(line);
    for (std::string cell; std::getline(row, cell, ',');) cells.push_back(cell);
    if (cells.size() < column.size()) {
      throw Error(ErrorKind::config, path.string() + ": short row at line " + std::to_string(line_no));
    }
    const std::string& t = cells[column["t"]];
    if (first_t.empty()) first_t = t;
    if (t != first_t) break;
    try {
      const long j = std::stol(cells[column["j"]]);
      if (j < 1) throw Error(ErrorKind::config, "node index below 1");
      nodes[j] = cplx{std::stod(cells[column["re_b"]]), std::stod(cells[column["im_b"]])};
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::config, path.string() + ": bad number at line " + std::to_string(line_no));
    }
  }
  if (nodes.empty()) throw Error(ErrorKind::config, path.string() + ": no data rows");
  ComplexLattice b(static_cast<std::size_t>(nodes.rbegin()->first));
  for (const auto& [j, z] : nodes) b.set(j, z);
  return b;
}

}  // namespace toymodel::io
