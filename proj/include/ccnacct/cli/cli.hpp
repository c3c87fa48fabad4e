#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ccnacct {

// Entry point of the ccnacct tool. args excludes the program name. Errors
// are reported on `err` as one line:
//   error: kind=<Kind> message="<text>"
// Exit status: 0 success, 1 runtime or configuration error, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Writes `content` to `path` through a temporary file and a rename, so a
// reader never sees a partial file.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace ccnacct
