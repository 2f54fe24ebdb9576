#include "porheat/output.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace porheat {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

Table::Table(std::vector<std::string> header) : header_(std::move(header)) {}

Table& Table::add(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) {
        throw std::invalid_argument("row width does not match the header");
    }
    rows_.push_back(std::move(cells));
    return *this;
}

std::string Table::str() const {
    std::string out;
    const auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            out += cells[i];
        }
        out += '\n';
    };
    line(header_);
    for (const auto& r : rows_) {
        line(r);
    }
    return out;
}

OutputDir::OutputDir(std::filesystem::path root) : root_(std::move(root)) {
    std::filesystem::create_directories(root_);
}

void OutputDir::write(const std::string& name, const std::string& content) {
    const std::filesystem::path path = root_ / name;
    std::ofstream f(path, std::ios::binary);
    f << content;
    if (!f) {
        throw std::runtime_error("cannot write " + path.string());
    }
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(content)));
    names_.push_back(name);
    lines_.push_back(name + " " + hash + " " + std::to_string(content.size()));
}

void OutputDir::finish() {
    std::string body;
    for (const auto& l : lines_) {
        body += l + '\n';
    }
    const std::filesystem::path path = root_ / "manifest.txt";
    std::ofstream f(path, std::ios::binary);
    f << body;
    if (!f) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

}  // namespace porheat
