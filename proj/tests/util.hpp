#ifndef PERIA_TESTS_UTIL_HPP
#define PERIA_TESTS_UTIL_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

inline std::string read_data(const std::string& name) {
    std::ifstream in(std::string(PERIA_DATA_DIR) + "/" + name);
    if (!in) throw std::runtime_error("missing data file: " + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

#endif
