#pragma once

#include <string>

namespace meshfree {

// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

// Write to `path + ".tmp"` then rename, so failures never leave partial files.
void atomic_write_file(const std::string& path, const std::string& content);

} // namespace meshfree
