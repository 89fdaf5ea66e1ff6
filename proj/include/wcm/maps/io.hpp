#pragma once

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wcm/maps/rotation_map.hpp"

namespace wcm::maps {

// One map per line: "E; (cycles of next); (pairs of opp); marks or -; root or -".
// Cycles start at their smallest element and are sorted by it.
inline std::string format_map(const RotationMap& m) {
    std::ostringstream os;
    const int H = m.half_edges();
    os << m.edges() << "; ";
    std::vector<char> seen(static_cast<std::size_t>(H), 0);
    for (int h = 0; h < H; ++h) {
        if (seen[static_cast<std::size_t>(h)]) continue;
        os << '(';
        int x = h;
        bool first = true;
        do {
            seen[static_cast<std::size_t>(x)] = 1;
            os << (first ? "" : " ") << x;
            first = false;
            x = m.next(x);
        } while (x != h);
        os << ')';
    }
    os << "; ";
    for (int h = 0; h < H; ++h)
        if (h < m.opp(h)) os << '(' << h << ' ' << m.opp(h) << ')';
    os << "; ";
    if (m.marks().empty()) os << '-';
    for (std::size_t i = 0; i < m.marks().size(); ++i) os << (i ? " " : "") << m.marks()[i];
    os << "; ";
    if (m.root() < 0)
        os << '-';
    else
        os << m.root();
    return os.str();
}

namespace detail {

inline std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ';') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    for (auto& s : out) {
        auto b = s.find_first_not_of(" \t\r\n");
        auto e = s.find_last_not_of(" \t\r\n");
        s = b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    }
    return out;
}

inline std::vector<std::vector<int>> parse_cycles(const std::string& s) {
    std::vector<std::vector<int>> out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
            continue;
        }
        if (s[i] != '(') throw std::invalid_argument("map format: expected '('");
        auto j = s.find(')', i);
        if (j == std::string::npos) throw std::invalid_argument("map format: unterminated cycle");
        std::istringstream is(s.substr(i + 1, j - i - 1));
        std::vector<int> c;
        for (int x; is >> x;) c.push_back(x);
        if (!is.eof()) throw std::invalid_argument("map format: bad integer in cycle");
        if (c.empty()) throw std::invalid_argument("map format: empty cycle");
        out.push_back(std::move(c));
        i = j + 1;
    }
    return out;
}

inline int parse_int(const std::string& s) {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("map format: bad integer '" + s + "'");
    return v;
}

}  // namespace detail

inline RotationMap parse_map(const std::string& line) {
    auto f = detail::split_fields(line);
    if (f.size() != 5) throw std::invalid_argument("map format: expected 5 fields");
    const int E = detail::parse_int(f[0]);
    if (E < 0) throw std::invalid_argument("map format: negative edge count");
    const std::size_t H = static_cast<std::size_t>(2 * E);
    std::vector<int> next(H, -1), opp(H, -1);
    for (const auto& c : detail::parse_cycles(f[1]))
        for (std::size_t k = 0; k < c.size(); ++k) {
            int a = c[k];
            if (a < 0 || static_cast<std::size_t>(a) >= H || next[static_cast<std::size_t>(a)] >= 0)
                throw std::invalid_argument("map format: bad next cycles");
            next[static_cast<std::size_t>(a)] = c[(k + 1) % c.size()];
        }
    for (const auto& c : detail::parse_cycles(f[2])) {
        if (c.size() != 2) throw std::invalid_argument("map format: opp pairs must have two entries");
        for (int a : c)
            if (a < 0 || static_cast<std::size_t>(a) >= H || opp[static_cast<std::size_t>(a)] >= 0)
                throw std::invalid_argument("map format: bad opp pairs");
        opp[static_cast<std::size_t>(c[0])] = c[1];
        opp[static_cast<std::size_t>(c[1])] = c[0];
    }
    if (std::find(next.begin(), next.end(), -1) != next.end() || std::find(opp.begin(), opp.end(), -1) != opp.end())
        throw std::invalid_argument("map format: permutations do not cover all half-edges");
    std::vector<int> marks;
    if (f[3] != "-") {
        std::istringstream is(f[3]);
        for (std::string tok; is >> tok;) marks.push_back(detail::parse_int(tok));
    }
    int root = f[4] == "-" ? -1 : detail::parse_int(f[4]);
    return RotationMap(std::move(next), std::move(opp), std::move(marks), root);
}

inline void write_maps(std::ostream& os, const std::vector<RotationMap>& maps) {
    for (const auto& m : maps) os << format_map(m) << '\n';
}

inline std::vector<RotationMap> read_maps(std::istream& is) {
    std::vector<RotationMap> out;
    for (std::string line; std::getline(is, line);) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(parse_map(line));
    }
    return out;
}

}  // namespace wcm::maps
