#pragma once

#include <cstdio>
#include <string>

namespace sharpfront {

// all numeric CSV fields use 17 significant digits
inline std::string num17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string beta_label(double b) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", b);
    return buf;
}

}  // namespace sharpfront
