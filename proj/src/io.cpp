#include "fkg/io.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace fkg::io {

std::string format_full(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

namespace {
std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path.string());
    return out;
}
} // namespace

void write_snapshot_csv(const std::filesystem::path& path, const FieldState& state,
                        const Grid1D& grid, std::string_view config_hash) {
    std::ofstream out = open_out(path);
    out << "# config_hash=" << config_hash << " t=" << format_full(state.t) << "\n";
    out << "x,u,v\n";
    std::string line;
    for (int i = 0; i < grid.n; ++i) {
        const std::size_t j = static_cast<std::size_t>(i);
        line = format_full(grid.x[j]);
        line += ',';
        line += format_full(state.u[j]);
        line += ',';
        line += format_full(state.v[j]);
        line += '\n';
        out << line;
    }
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_energy_csv(const std::filesystem::path& path,
                      std::span<const EnergyRecord> records, std::string_view config_hash) {
    std::ofstream out = open_out(path);
    out << "# config_hash=" << config_hash << "\n";
    out << "t,kinetic,elastic,potential,total\n";
    for (const EnergyRecord& e : records)
        out << format_full(e.t) << ',' << format_full(e.kinetic) << ','
            << format_full(e.elastic) << ',' << format_full(e.potential) << ','
            << format_full(e.total) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_text(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out = open_out(path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

DirLock::DirLock(const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    lock_path_ = dir / ".fkg.lock";
    const int fd = ::open(lock_path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0) {
        if (errno == EEXIST)
            throw std::runtime_error("output directory is locked by another run: " +
                                     dir.string() + " (remove " + lock_path_.string() +
                                     " if that run is gone)");
        throw std::runtime_error("cannot create lock file " + lock_path_.string() + ": " +
                                 std::strerror(errno));
    }
    ::close(fd);
}

DirLock::~DirLock() {
    std::error_code ec;
    std::filesystem::remove(lock_path_, ec);
}

} // namespace fkg::io
