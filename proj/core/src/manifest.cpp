#include "camoeval/manifest.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace camoeval {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string resolve(const std::string& base_dir, const std::string& path) {
    fs::path p(path);
    if (p.is_absolute() || base_dir.empty()) return p.string();
    return (fs::path(base_dir) / p).lexically_normal().string();
}

void require_exists(const std::string& path, size_t line, const std::string& id) {
    if (!fs::exists(path))
        throw IoError("manifest line " + std::to_string(line) + " (id '" + id +
                      "'): missing file " + path);
}

ManifestRecord parse_record(const json& j, size_t line, const std::string& base_dir) {
    auto fail = [line](const std::string& what) {
        throw IoError("manifest line " + std::to_string(line) + ": " + what);
    };
    if (!j.is_object()) fail("record is not a JSON object");
    ManifestRecord rec;
    if (!j.contains("id") || !j.at("id").is_string()) fail("missing string field 'id'");
    rec.id = j.at("id").get<std::string>();
    if (rec.id.empty()) fail("empty id");
    if (!j.contains("gt") || !j.at("gt").is_string()) fail("missing string field 'gt'");
    rec.gt_path = resolve(base_dir, j.at("gt").get<std::string>());
    if (!j.contains("fms") || !j.at("fms").is_array() || j.at("fms").empty())
        fail("field 'fms' must be a non-empty array");
    for (const auto& f : j.at("fms")) {
        if (!f.is_string()) fail("entries of 'fms' must be strings");
        rec.fm_paths.push_back(resolve(base_dir, f.get<std::string>()));
    }
    if (j.contains("image")) {
        if (!j.at("image").is_string()) fail("'image' must be a string");
        rec.image_path = resolve(base_dir, j.at("image").get<std::string>());
    }
    if (j.contains("human_rank")) {
        if (!j.at("human_rank").is_array()) fail("'human_rank' must be an array");
        std::vector<int> rank = j.at("human_rank").get<std::vector<int>>();
        if (rank.size() != rec.fm_paths.size())
            fail("'human_rank' length must equal the number of predictions");
        std::vector<int> sorted = rank;
        std::sort(sorted.begin(), sorted.end());
        for (size_t i = 0; i < sorted.size(); ++i)
            if (sorted[i] != static_cast<int>(i) + 1)
                fail("'human_rank' must be a permutation of 1..n");
        rec.human_rank = std::move(rank);
    }

    require_exists(rec.gt_path, line, rec.id);
    for (const auto& p : rec.fm_paths) require_exists(p, line, rec.id);
    if (rec.image_path) require_exists(*rec.image_path, line, rec.id);
    return rec;
}

}  // namespace

Manifest Manifest::parse(std::istream& in, const std::string& base_dir) {
    Manifest m;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw IoError("manifest line " + std::to_string(line_no) + ": " + e.what());
        }
        m.records.push_back(parse_record(j, line_no, base_dir));
    }
    return m;
}

Manifest Manifest::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest " + path);
    return parse(in, fs::path(path).parent_path().string());
}

}  // namespace camoeval
