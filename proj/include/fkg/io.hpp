#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "fkg/diagnostics.hpp"
#include "fkg/grid.hpp"
#include "fkg/propagation.hpp"

namespace fkg::io {

/// Full round-trip decimal formatting (17 significant digits).
std::string format_full(double value);

/// Columns x,u,v; a leading comment line carries the config hash and time.
void write_snapshot_csv(const std::filesystem::path& path, const FieldState& state,
                        const Grid1D& grid, std::string_view config_hash);

/// Columns t,kinetic,elastic,potential,total.
void write_energy_csv(const std::filesystem::path& path,
                      std::span<const EnergyRecord> records, std::string_view config_hash);

void write_text(const std::filesystem::path& path, std::string_view text);

/// Creates the directory and takes an exclusive lock file inside it for the
/// duration of a run; a second concurrent run into the same directory fails.
class DirLock {
public:
    explicit DirLock(const std::filesystem::path& dir);
    ~DirLock();
    DirLock(const DirLock&) = delete;
    DirLock& operator=(const DirLock&) = delete;

private:
    std::filesystem::path lock_path_;
};

} // namespace fkg::io
