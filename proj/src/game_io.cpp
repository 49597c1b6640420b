#include "imitation/game_io.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace imitation {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.push_back(trim(cur));
    return cells;
}

bool is_integer_literal(const std::string& s) {
    size_t i = (s.size() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

Num parse_number(const std::string& cell, int line_no, int col_no, bool& integral) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    const std::string where =
        " at line " + std::to_string(line_no) + ", column " + std::to_string(col_no);
    if (end == begin || *end != '\0')
        throw GameParseError("cannot parse payoff '" + cell + "'" + where);
    if (!std::isfinite(v)) throw GameParseError("non-finite payoff '" + cell + "'" + where);
    integral = is_integer_literal(cell);
    return v;
}

SymmetricGame load_game_csv(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!trim(line).empty()) lines.push_back(line);
    }
    if (lines.empty()) throw GameParseError("empty csv input");

    std::vector<std::string> header = split_csv_line(lines[0]);
    if (!header.empty() && header[0].empty()) header.erase(header.begin());
    if (header.empty()) throw GameParseError("csv header has no action labels");
    const int n = static_cast<int>(header.size());

    if (static_cast<int>(lines.size()) - 1 != n)
        throw GameParseError("non-square payoff table: " + std::to_string(lines.size() - 1) +
                             " rows for " + std::to_string(n) + " actions");

    SymmetricGame game;
    game.actions = header;
    game.payoff = SquareMatrix(n);
    game.integer_mode = true;
    for (int i = 0; i < n; ++i) {
        const int line_no = i + 2;
        std::vector<std::string> cells = split_csv_line(lines[i + 1]);
        if (static_cast<int>(cells.size()) != n + 1)
            throw GameParseError("non-square payoff table: row at line " +
                                 std::to_string(line_no) + " has " +
                                 std::to_string(cells.size() - 1) + " payoffs, expected " +
                                 std::to_string(n));
        if (cells[0] != header[i])
            throw GameParseError("row label '" + cells[0] + "' at line " +
                                 std::to_string(line_no) + " does not match header label '" +
                                 header[i] + "'");
        for (int j = 0; j < n; ++j) {
            bool integral = false;
            game.payoff(i, j) = parse_number(cells[j + 1], line_no, j + 2, integral);
            if (!integral) game.integer_mode = false;
        }
    }
    try {
        game.validate();
    } catch (const std::invalid_argument& e) {
        throw GameParseError(e.what());
    }
    return game;
}

}  // namespace

SymmetricGame game_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw GameParseError("game json must be an object");
    if (!j.contains("actions") || !j["actions"].is_array())
        throw GameParseError("game json needs an 'actions' array");
    if (!j.contains("payoff") || !j["payoff"].is_array())
        throw GameParseError("game json needs a 'payoff' array of rows");

    SymmetricGame game;
    game.name = j.value("name", std::string{});
    for (const auto& a : j["actions"]) {
        if (!a.is_string()) throw GameParseError("action labels must be strings");
        game.actions.push_back(a.get<std::string>());
    }
    const int n = static_cast<int>(game.actions.size());
    if (static_cast<int>(j["payoff"].size()) != n)
        throw GameParseError("non-square payoff table: " + std::to_string(j["payoff"].size()) +
                             " rows for " + std::to_string(n) + " actions");
    game.payoff = SquareMatrix(n);
    game.integer_mode = true;
    for (int i = 0; i < n; ++i) {
        const auto& row = j["payoff"][i];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw GameParseError("non-square payoff table: row " + std::to_string(i) + " has " +
                                 std::to_string(row.is_array() ? row.size() : 0) +
                                 " entries, expected " + std::to_string(n));
        for (int jj = 0; jj < n; ++jj) {
            const auto& cell = row[jj];
            if (cell.is_number_integer() || cell.is_number_unsigned()) {
                game.payoff(i, jj) = cell.get<double>();
            } else if (cell.is_number_float()) {
                const double v = cell.get<double>();
                if (!std::isfinite(v))
                    throw GameParseError("non-finite payoff at row " + std::to_string(i) +
                                         ", column " + std::to_string(jj));
                game.payoff(i, jj) = v;
                game.integer_mode = false;
            } else {
                throw GameParseError("non-finite payoff at row " + std::to_string(i) +
                                     ", column " + std::to_string(jj) +
                                     ": entry is not a number");
            }
        }
    }
    try {
        game.validate();
    } catch (const std::invalid_argument& e) {
        throw GameParseError(e.what());
    }
    return game;
}

nlohmann::json game_to_json(const SymmetricGame& game) {
    nlohmann::json j;
    if (!game.name.empty()) j["name"] = game.name;
    j["actions"] = game.actions;
    const int n = game.num_actions();
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < n; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int jj = 0; jj < n; ++jj) {
            const Num v = game.payoff(i, jj);
            if (game.integer_mode)
                row.push_back(static_cast<long long>(v));
            else
                row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    j["payoff"] = std::move(rows);
    return j;
}

std::string format_number(Num v, bool integer_mode) {
    if (integer_mode) return std::to_string(static_cast<long long>(v));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s = buf;
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
        s += ".0";
    return s;
}

SymmetricGame load_game(std::istream& in, GameFormat fmt) {
    if (fmt == GameFormat::csv) return load_game_csv(in);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw GameParseError(std::string("json parse error: ") + e.what());
    }
    return game_from_json(j);
}

SymmetricGame load_game(const std::string& text, GameFormat fmt) {
    std::istringstream in(text);
    return load_game(in, fmt);
}

std::string save_game(const SymmetricGame& game, GameFormat fmt) {
    game.validate();
    if (fmt == GameFormat::json) return game_to_json(game).dump(2) + "\n";
    std::ostringstream out;
    const int n = game.num_actions();
    for (int j = 0; j < n; ++j) out << ',' << game.actions[j];
    out << '\n';
    for (int i = 0; i < n; ++i) {
        out << game.actions[i];
        for (int j = 0; j < n; ++j) out << ',' << format_number(game.payoff(i, j), game.integer_mode);
        out << '\n';
    }
    return out.str();
}

namespace {

GameFormat format_from_extension(const std::string& path) {
    const size_t dot = path.rfind('.');
    const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
    if (ext == ".json") return GameFormat::json;
    if (ext == ".csv") return GameFormat::csv;
    throw GameParseError("cannot infer game format from extension of '" + path +
                         "' (expected .json or .csv)");
}

}  // namespace

SymmetricGame load_game_file(const std::string& path) {
    const GameFormat fmt = format_from_extension(path);
    std::ifstream in(path);
    if (!in) throw GameParseError("cannot open game file '" + path + "'");
    try {
        SymmetricGame g = load_game(in, fmt);
        if (g.name.empty()) {
            size_t slash = path.find_last_of("/\\");
            std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
            g.name = base.substr(0, base.rfind('.'));
        }
        return g;
    } catch (const GameParseError& e) {
        throw GameParseError(path + ": " + e.what());
    }
}

void save_game_file(const SymmetricGame& game, const std::string& path) {
    const GameFormat fmt = format_from_extension(path);
    std::ofstream out(path);
    if (!out) throw GameParseError("cannot open '" + path + "' for writing");
    out << save_game(game, fmt);
    if (!out) throw GameParseError("write to '" + path + "' failed");
}

}  // namespace imitation
