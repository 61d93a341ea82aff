#pragma once

// File formats.
//
//   lattice trajectory  t,j,re_b,im_b,rho,phi,theta   (one row per node per sample)
//   Burgers profile     t,j,rho          (modified variant adds a theta column)
//   flux series         t,N_trunc,mass_flux,ham_flux,M_N,H_N
//   theorem sweep       eps,n,delta,T,max_sup_theta,bound_theta,max_sup_rho,bound_rho,pass
//
// Node indices are 1-based. Floats use the shortest representation that
// reads back to the same double, so identical runs give identical bytes.
// Every data file gets a "<file>.json" sidecar with the run parameters.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "toymodel/burgers.hpp"
#include "toymodel/flux.hpp"
#include "toymodel/integrator.hpp"
#include "toymodel/lattice.hpp"
#include "toymodel/perturbation.hpp"

namespace toymodel::io {

std::string format_double(double x);

/// Writes to a temporary file in the same directory, then renames it over path.
void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Writes path and its sidecar path + ".json".
void write_with_sidecar(const std::filesystem::path& path, const std::string& content,
                        const nlohmann::json& metadata);

std::string lattice_csv(const Trajectory<ComplexLattice>& traj,
                        double phase_floor = default_phase_floor);
std::string lattice_csv(const Trajectory<HydroState>& traj);
std::string lattice_csv(const Trajectory<AltHydroState>& traj);
std::string profile_csv(const Trajectory<BurgersProfile>& traj);
std::string profile_csv(const Trajectory<AltHydroState>& traj);
std::string flux_csv(const std::vector<FluxSample>& samples);
std::string sweep_csv(const std::vector<TheoremReport>& reports);

nlohmann::json to_json(const TheoremReport& report);

/// Reads the first sample of a lattice CSV (any sample time) as initial data.
ComplexLattice read_lattice_csv(const std::filesystem::path& path);

/// Metadata common to every sidecar: index base and phase conventions.
nlohmann::json conventions();

}  // namespace toymodel::io
