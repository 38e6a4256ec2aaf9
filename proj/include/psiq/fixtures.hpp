#pragma once

#include <gmpxx.h>

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "psiq/errors.hpp"

namespace psiq {

/// Reference tables shipped under data/: '#'-prefixed comment lines followed
/// by "index value" rows (value is a decimal integer of arbitrary size).
inline std::map<int, mpz_class> load_indexed_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open data file: " + path);
    std::map<int, mpz_class> table;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream row(line);
        int n;
        std::string value;
        if (!(row >> n >> value)) throw error("malformed row in " + path + ": " + line);
        table[n] = mpz_class(value);
    }
    return table;
}

inline std::string default_data_dir() {
#ifdef PSIQ_DATA_DIR
    return PSIQ_DATA_DIR;
#else
    return "data";
#endif
}

}  // namespace psiq
