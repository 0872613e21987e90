#ifndef OECS_IO_HPP
#define OECS_IO_HPP

#include <string>
#include <vector>

#include "oecs/dataset.hpp"
#include "oecs/geostrophic.hpp"

namespace oecs {

// Dataset manifest: a JSON document
//   {grid:{nx,ny,lon0,lat0,dlon,dlat,mode,earth_radius},
//    times:[days...],
//    fields:{u:"u.f64", v:"v.f64"} or {ssh:"h.f64"},
//    units:{...}, constants:{gravity, earth_omega}?}
// Data files hold raw little-endian 64-bit floats, row-major [t][y][x],
// exactly nt*ny*nx values. Field paths ending in ".csv" are ingested from
// one-row-per-(t,y,x,value) index CSV instead.

// Loads and fully validates a dataset; SSH manifests are converted to
// velocity on load (provenance = from_ssh).
VelocityDataset load_dataset(const std::string& manifest_path);

SshDataset load_ssh_dataset(const std::string& manifest_path);

// Writes manifest.json plus u.f64/v.f64 into `dir` (created if missing).
// Returns the manifest path.
std::string save_dataset(const VelocityDataset& ds, const std::string& dir);
std::string save_ssh_dataset(const SshDataset& ssh, const std::string& dir);

// Raw field helpers (exposed for tests and the ingest path).
std::vector<double> read_raw_f64(const std::string& path, std::size_t expected_count);
void write_raw_f64(const std::string& path, const std::vector<double>& values);

// CSV with rows "t,y,x,value" (integer indices); every cell must appear
// exactly once. A single header line is allowed.
std::vector<double> read_csv_field(const std::string& path, int nt, int ny, int nx);
void write_csv_field(const std::string& path, const std::vector<double>& values,
                     int nt, int ny, int nx);

} // namespace oecs

#endif
