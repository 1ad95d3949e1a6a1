#include "hopcorr/patterns.hpp"

#include <cinttypes>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "hopcorr/io_util.hpp"

namespace hopcorr {

PatternSet sample_patterns(int N, int P, std::uint64_t seed) {
    if (N < 1 || P < 1) throw std::invalid_argument("sample_patterns: N and P must be >= 1");
    PatternSet ps;
    ps.N = N;
    ps.P = P;
    ps.seed = seed;
    ps.bits.resize(static_cast<std::size_t>(N) * P);
    Rng rng(seed);
    for (auto& b : ps.bits) b = static_cast<std::int8_t>(rng.next_sign());
    return ps;
}

std::string patterns_to_csv(const PatternSet& ps) {
    std::ostringstream out;
    out << "# N=" << ps.N << " P=" << ps.P << " seed=" << ps.seed << "\n";
    for (int i = 0; i < ps.N; ++i) {
        for (int mu = 0; mu < ps.P; ++mu) {
            if (mu) out << ',';
            out << static_cast<int>(ps.at(i, mu));
        }
        out << '\n';
    }
    return out.str();
}

void write_patterns_csv(const PatternSet& ps, const std::string& path) {
    write_file_atomic(path, patterns_to_csv(ps));
}

PatternSet parse_patterns_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("pattern CSV: empty input");
    PatternSet ps;
    {
        int n = 0, p = 0;
        std::uint64_t s = 0;
        if (std::sscanf(line.c_str(), "# N=%d P=%d seed=%" SCNu64, &n, &p, &s) != 3)
            throw std::invalid_argument("pattern CSV: bad header '" + line + "'");
        ps.N = n;
        ps.P = p;
        ps.seed = s;
    }
    if (ps.N < 1 || ps.P < 1) throw std::invalid_argument("pattern CSV: header has N or P < 1");
    ps.bits.reserve(static_cast<std::size_t>(ps.N) * ps.P);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        int cols = 0;
        while (std::getline(row, cell, ',')) {
            const int v = std::stoi(cell);
            if (v != 1 && v != -1) throw std::invalid_argument("pattern CSV: entry not +-1");
            ps.bits.push_back(static_cast<std::int8_t>(v));
            ++cols;
        }
        if (cols != ps.P) throw std::invalid_argument("pattern CSV: row width != P");
    }
    if (ps.bits.size() != static_cast<std::size_t>(ps.N) * ps.P)
        throw std::invalid_argument("pattern CSV: row count != N");
    return ps;
}

PatternSet read_patterns_csv(const std::string& path) { return parse_patterns_csv(read_file(path)); }

}  // namespace hopcorr
