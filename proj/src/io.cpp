#include "bht/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bht/errors.hpp"

namespace bht {

namespace {

std::vector<double> number_list(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array())
        throw ParseError(std::string("missing or non-array field \"") + key + "\"");
    std::vector<double> out;
    out.reserve(j[key].size());
    for (const auto& v : j[key]) {
        if (!v.is_number()) throw ParseError(std::string("non-numeric entry in \"") + key + "\"");
        out.push_back(v.get<double>());
    }
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& cell, int line_no, const char* col) {
    try {
        std::size_t pos = 0;
        double v = std::stod(cell, &pos);
        if (pos != cell.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": bad " + col + " value '" +
                         cell + "'");
    }
}

}  // namespace

DiscretePair load_pair_json(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.contains("support") || !j["support"].is_array())
        throw ParseError("missing or non-array field \"support\"");
    std::vector<std::string> support;
    support.reserve(j["support"].size());
    for (const auto& v : j["support"]) {
        if (v.is_string())
            support.push_back(v.get<std::string>());
        else
            support.push_back(v.dump());
    }
    return validate_pair(std::move(support), number_list(j, "p"), number_list(j, "q"));
}

DiscretePair load_pair_csv(std::istream& in) {
    std::string line;
    int line_no = 0;
    if (!std::getline(in, line)) throw ParseError("empty CSV file");
    ++line_no;
    auto header = split_csv_line(trim(line));
    if (header.size() != 3 || trim(header[0]) != "outcome" || trim(header[1]) != "p" ||
        trim(header[2]) != "q")
        throw ParseError("line 1: expected header 'outcome,p,q'");

    std::vector<std::string> support;
    std::vector<double> p, q;
    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty()) continue;
        auto cells = split_csv_line(t);
        if (cells.size() != 3)
            throw ParseError("line " + std::to_string(line_no) + ": expected 3 cells, got " +
                             std::to_string(cells.size()));
        support.push_back(trim(cells[0]));
        p.push_back(parse_number(trim(cells[1]), line_no, "p"));
        q.push_back(parse_number(trim(cells[2]), line_no, "q"));
    }
    return validate_pair(std::move(support), std::move(p), std::move(q));
}

DiscretePair load_pair(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    bool json;
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
        json = true;
    } else if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
        json = false;
    } else {
        int c = in.peek();
        while (c != EOF && std::isspace(c)) {
            in.get();
            c = in.peek();
        }
        json = c == '{';
    }
    return json ? load_pair_json(in) : load_pair_csv(in);
}

}  // namespace bht
