// Command-line front end.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gyralab {

// Exit codes of run().
constexpr int kExitOk = 0;
constexpr int kExitFail = 1;   // a verification failed
constexpr int kExitUsage = 2;  // bad flags, malformed or unsupported domain

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace gyralab
