#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace lwr {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailure = 1;
inline constexpr int kExitRuntimeError = 2;
inline constexpr int kExitVerifyFail = 3;

struct CommandOverrides {
    std::optional<int> horizon;
    std::optional<std::uint64_t> seed;
    std::optional<int> seeds;
    int threads = 1;
};

// Each command is a pure function of (config bytes, overrides): identical
// inputs produce byte-identical artifacts. Streams carry human-facing output.
int cmd_validate(const std::string& config_path, std::ostream& out, std::ostream& err);
int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 const CommandOverrides& ov, std::ostream& out, std::ostream& err);
int cmd_rates(const std::string& config_path, const std::string& out_path, const CommandOverrides& ov,
              std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& config_path, const std::string& out_path, const CommandOverrides& ov,
               std::ostream& out, std::ostream& err);
int cmd_classify(const std::string& config_path, const std::string& out_path, std::ostream& out,
                 std::ostream& err);

}  // namespace lwr
