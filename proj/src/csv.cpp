#include "twostudy/csv.hpp"

#include <fstream>
#include <sstream>

namespace twostudy {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

[[noreturn]] void parse_fail(const std::string& path, std::size_t line, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

TwoStudyPValues parse_pvalues_csv(const std::string& text, PValueMode mode,
                                  const std::string& path) {
    const std::string expected = mode == PValueMode::OneSided
                                     ? "feature_id,p1,p2"
                                     : "feature_id,p1_left,p2_left";
    TwoStudyPValues pvals;
    pvals.mode = mode;

    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(ss, line)) parse_fail(path, 1, "empty file, expected header " + expected);
    ++lineno;
    if (strip_cr(line) != expected) {
        parse_fail(path, lineno, "bad header, expected " + expected);
    }

    while (std::getline(ss, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != 3) parse_fail(path, lineno, "expected 3 fields");
        double v1 = 0.0, v2 = 0.0;
        try {
            std::size_t used = 0;
            v1 = std::stod(fields[1], &used);
            if (used != fields[1].size()) throw std::invalid_argument("");
            v2 = std::stod(fields[2], &used);
            if (used != fields[2].size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            parse_fail(path, lineno, "not a number");
        }
        if (!(v1 >= 0.0 && v1 <= 1.0) || !(v2 >= 0.0 && v2 <= 1.0)) {
            parse_fail(path, lineno, "p-value out of range [0,1]");
        }
        pvals.feature_ids.push_back(fields[0]);
        pvals.p1.push_back(v1);
        pvals.p2.push_back(v2);
    }
    return pvals;
}

TwoStudyPValues read_pvalues_csv(const std::string& path, PValueMode mode) {
    return parse_pvalues_csv(read_text_file(path), mode, path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

const char* direction_label(Direction d) {
    switch (d) {
        case Direction::Left: return "left";
        case Direction::Right: return "right";
        case Direction::None: break;
    }
    return "na";
}

}  // namespace twostudy
