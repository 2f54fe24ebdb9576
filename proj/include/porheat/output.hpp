#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace porheat {

/// %.17g, so that written values round-trip exactly.
std::string num(double v);

std::uint64_t fnv1a(std::string_view bytes);

/// CSV with a single header row.
class Table {
public:
    explicit Table(std::vector<std::string> header);
    Table& add(std::vector<std::string> cells);
    std::size_t rows() const { return rows_.size(); }
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Output directory that records every file it writes; finish() adds
/// manifest.txt with one "name fnv1a-64 bytes" line per file.
class OutputDir {
public:
    explicit OutputDir(std::filesystem::path root);

    const std::filesystem::path& root() const { return root_; }
    void write(const std::string& name, const std::string& content);
    void finish();
    const std::vector<std::string>& files() const { return names_; }

private:
    std::filesystem::path root_;
    std::vector<std::string> names_;
    std::vector<std::string> lines_;
};

}  // namespace porheat
