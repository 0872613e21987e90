#include "oecs/io.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "oecs/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "raw .f64 files are little-endian; big-endian hosts are not supported");

namespace oecs {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

GridSpec grid_from_json(const json& j) {
    GridSpec g;
    g.nx = j.at("nx").get<int>();
    g.ny = j.at("ny").get<int>();
    g.x0 = j.at("lon0").get<double>();
    g.y0 = j.at("lat0").get<double>();
    g.dx = j.at("dlon").get<double>();
    g.dy = j.at("dlat").get<double>();
    const std::string mode = j.value("mode", "cartesian");
    if (mode == "geographic") g.mode = CoordinateMode::Geographic;
    else if (mode == "cartesian") g.mode = CoordinateMode::Cartesian;
    else throw DataError("manifest: unknown grid mode '" + mode + "'");
    g.earth_radius = j.value("earth_radius", g.earth_radius);
    return g;
}

json grid_to_json(const GridSpec& g) {
    json j;
    j["nx"] = g.nx;
    j["ny"] = g.ny;
    j["lon0"] = g.x0;
    j["lat0"] = g.y0;
    j["dlon"] = g.dx;
    j["dlat"] = g.dy;
    j["mode"] = g.mode == CoordinateMode::Geographic ? "geographic" : "cartesian";
    j["earth_radius"] = g.earth_radius;
    return j;
}

json parse_manifest(const std::string& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in) throw DataError("cannot open manifest " + manifest_path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError("manifest " + manifest_path + ": invalid JSON: " + e.what());
    }
    return j;
}

// Field paths in the manifest are relative to the manifest's directory.
std::vector<double> read_field(const std::string& manifest_path, const std::string& rel,
                               int nt, int ny, int nx) {
    const fs::path p = fs::path(manifest_path).parent_path() / rel;
    const std::size_t expect =
        static_cast<std::size_t>(nt) * static_cast<std::size_t>(ny) * static_cast<std::size_t>(nx);
    if (p.extension() == ".csv") return read_csv_field(p.string(), nt, ny, nx);
    return read_raw_f64(p.string(), expect);
}

} // namespace

std::vector<double> read_raw_f64(const std::string& path, std::size_t expected_count) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw DataError("cannot open data file " + path);
    const std::size_t bytes = static_cast<std::size_t>(in.tellg());
    if (bytes != expected_count * sizeof(double))
        throw DataError("data file " + path + ": shape mismatch, expected " +
                        std::to_string(expected_count) + " float64 values (" +
                        std::to_string(expected_count * sizeof(double)) + " bytes), file has " +
                        std::to_string(bytes) + " bytes");
    std::vector<double> out(expected_count);
    in.seekg(0);
    in.read(reinterpret_cast<char*>(out.data()), static_cast<std::streamsize>(bytes));
    if (!in) throw DataError("short read on " + path);
    return out;
}

void write_raw_f64(const std::string& path, const std::vector<double>& values) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write data file " + path);
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(double)));
    if (!out) throw DataError("short write on " + path);
}

std::vector<double> read_csv_field(const std::string& path, int nt, int ny, int nx) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open CSV file " + path);
    const std::size_t expect =
        static_cast<std::size_t>(nt) * static_cast<std::size_t>(ny) * static_cast<std::size_t>(nx);
    std::vector<double> out(expect, 0.0);
    std::vector<std::uint8_t> seen(expect, 0);
    std::string line;
    std::size_t filled = 0;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        long it, iy, ix;
        double value;
        if (!(row >> it >> iy >> ix >> value)) {
            if (lineno == 1) continue;  // header
            throw DataError(path + ":" + std::to_string(lineno) + ": expected 't,y,x,value'");
        }
        if (it < 0 || it >= nt || iy < 0 || iy >= ny || ix < 0 || ix >= nx)
            throw DataError(path + ":" + std::to_string(lineno) + ": index out of range");
        const std::size_t k = (static_cast<std::size_t>(it) * ny + iy) * nx + ix;
        if (seen[k])
            throw DataError(path + ":" + std::to_string(lineno) + ": duplicate cell");
        seen[k] = 1;
        out[k] = value;
        ++filled;
    }
    if (filled != expect)
        throw DataError(path + ": covers " + std::to_string(filled) + " of " +
                        std::to_string(expect) + " cells");
    return out;
}

void write_csv_field(const std::string& path, const std::vector<double>& values,
                     int nt, int ny, int nx) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot write CSV file " + path);
    out << "t,y,x,value\n";
    char buf[64];
    for (int it = 0; it < nt; ++it)
        for (int iy = 0; iy < ny; ++iy)
            for (int ix = 0; ix < nx; ++ix) {
                const std::size_t k = (static_cast<std::size_t>(it) * ny + iy) * nx + ix;
                std::snprintf(buf, sizeof(buf), "%d,%d,%d,%.17g\n", it, iy, ix, values[k]);
                out << buf;
            }
}

VelocityDataset load_dataset(const std::string& manifest_path) {
    const json j = parse_manifest(manifest_path);
    GridSpec grid;
    std::vector<double> times;
    try {
        grid = grid_from_json(j.at("grid"));
        times = j.at("times").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw DataError("manifest " + manifest_path + ": " + e.what());
    }
    const json fields = j.value("fields", json::object());
    const int nt = static_cast<int>(times.size());

    if (fields.contains("ssh")) {
        SshDataset ssh;
        ssh.grid = grid;
        ssh.times = times;
        ssh.h = read_field(manifest_path, fields.at("ssh").get<std::string>(), nt, grid.ny, grid.nx);
        GeostrophicConstants c;
        if (j.contains("constants")) {
            c.gravity = j["constants"].value("gravity", c.gravity);
            c.earth_omega = j["constants"].value("earth_omega", c.earth_omega);
            c.theta_min_deg = j["constants"].value("theta_min_deg", c.theta_min_deg);
        }
        return geostrophic_from_ssh(ssh, c);
    }
    if (!fields.contains("u") || !fields.contains("v"))
        throw DataError("manifest " + manifest_path + ": fields must name u and v, or ssh");

    VelocityDataset ds;
    ds.grid = grid;
    ds.times = std::move(times);
    ds.u = read_field(manifest_path, fields.at("u").get<std::string>(), nt, grid.ny, grid.nx);
    ds.v = read_field(manifest_path, fields.at("v").get<std::string>(), nt, grid.ny, grid.nx);
    ds.provenance = j.value("provenance", "direct") == "from_ssh" ? Provenance::FromSsh
                                                                  : Provenance::Direct;
    ds.validate();
    return ds;
}

SshDataset load_ssh_dataset(const std::string& manifest_path) {
    const json j = parse_manifest(manifest_path);
    SshDataset ssh;
    try {
        ssh.grid = grid_from_json(j.at("grid"));
        ssh.times = j.at("times").get<std::vector<double>>();
        const std::string rel = j.at("fields").at("ssh").get<std::string>();
        ssh.h = read_field(manifest_path, rel, ssh.nt(), ssh.grid.ny, ssh.grid.nx);
    } catch (const json::exception& e) {
        throw DataError("manifest " + manifest_path + ": " + e.what());
    }
    ssh.validate();
    return ssh;
}

std::string save_dataset(const VelocityDataset& ds, const std::string& dir) {
    ds.validate();
    fs::create_directories(dir);
    write_raw_f64((fs::path(dir) / "u.f64").string(), ds.u);
    write_raw_f64((fs::path(dir) / "v.f64").string(), ds.v);
    json j;
    j["grid"] = grid_to_json(ds.grid);
    j["times"] = ds.times;
    j["fields"] = {{"u", "u.f64"}, {"v", "v.f64"}};
    j["units"] = {{"velocity", "m/s"}, {"time", "days"}};
    j["provenance"] = ds.provenance == Provenance::FromSsh ? "from_ssh" : "direct";
    const std::string path = (fs::path(dir) / "manifest.json").string();
    std::ofstream out(path, std::ios::trunc);
    out << j.dump(2) << "\n";
    if (!out) throw DataError("cannot write manifest " + path);
    return path;
}

std::string save_ssh_dataset(const SshDataset& ssh, const std::string& dir) {
    ssh.validate();
    fs::create_directories(dir);
    write_raw_f64((fs::path(dir) / "h.f64").string(), ssh.h);
    json j;
    j["grid"] = grid_to_json(ssh.grid);
    j["times"] = ssh.times;
    j["fields"] = {{"ssh", "h.f64"}};
    j["units"] = {{"ssh", "m"}, {"time", "days"}};
    const std::string path = (fs::path(dir) / "manifest.json").string();
    std::ofstream out(path, std::ios::trunc);
    out << j.dump(2) << "\n";
    if (!out) throw DataError("cannot write manifest " + path);
    return path;
}

} // namespace oecs
