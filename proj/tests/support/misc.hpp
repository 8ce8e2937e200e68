// Shared helpers for the test suites: scoped temp dirs, file IO, the
// test-harness BibTeX serializer used by the round-trip property.
#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

#include "press/bibtex.hpp"

namespace testsupport {

struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() /
               ("press_" + tag + "_" + std::to_string(::getpid()));
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

inline void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Test-harness serializer, independent of the parser: writes entries back
/// out in canonical brace form so parse(serialize(parse(x))) can be compared
/// field-by-field.
inline std::string serialize_bibtex(const std::vector<press::BibEntry>& entries) {
    std::string out;
    for (const press::BibEntry& entry : entries) {
        out += "@" + entry.entry_type + "{" + entry.key;
        for (const auto& [name, value] : entry.fields) out += ",\n  " + name + " = {" + value + "}";
        out += "\n}\n\n";
    }
    return out;
}

}  // namespace testsupport
