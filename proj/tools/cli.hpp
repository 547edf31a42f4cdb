#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <toriheights/fan.hpp>
#include <toriheights/galois.hpp>

namespace toriheights {

// Fan description loaded from a JSON file. The action is the closure of the
// declared generators (trivial when the file has no galois block).
struct LoadedFan {
    Fan fan;
    GaloisAction action;
    std::vector<IntMatrix> generators;

    explicit LoadedFan(Fan f) : fan(std::move(f)) {}
};

LoadedFan load_fan_file(const std::string& path);

// Serialization counterpart of load_fan_file, as a JSON string.
std::string fan_file_string(const Fan& fan, const std::vector<IntMatrix>& generators);

// Dispatches one invocation. Returns the process exit code: 0 success,
// 1 domain error (error name on out, detail on err), 2 parse error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toriheights
