#pragma once

namespace oddweird::cli {

// Process exit statuses.
inline constexpr int kExitClean = 0;       // conclusive, no weird number
inline constexpr int kExitWeirdFound = 1;  // a weird number was reported
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;

int run(int argc, char** argv);

}  // namespace oddweird::cli
