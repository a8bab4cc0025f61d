#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

// Reference values used for comparison reports: the analysis-recovery table of
// admissible delta levels published for s=100, M=600, and the error-bound
// constants quoted alongside it, plus constants from earlier convex analyses
// of the same model that the reports cite for context.
namespace cosparse::reference {

struct Table1Row {
    double p;
    double delta_max;
    const char* k1_printed;  // two significant digits, truncating format
};

inline constexpr Table1Row kTable1[6] = {
    {0.1, 0.98, "2.6E-2"}, {0.3, 0.98, "1.9E-2"}, {0.5, 0.97, "2.9E-2"},
    {0.7, 0.92, "6.1E-3"}, {0.9, 0.77, "7.6E-3"}, {1.0, 0.63, "3.5E-3"},
};

inline constexpr double kTable1S = 100;
inline constexpr double kTable1M = 600;

// Constants quoted for the p=0.5, s=100, M=600, delta_M=0.4, delta_sM=0.5 example.
inline constexpr double kPublishedC0 = 3.8273;
inline constexpr double kPublishedC1 = 0.8840;

// Constants from convex (p=1) analyses cited for comparison.
inline constexpr double kConvexC0 = 62.0;
inline constexpr double kConvexC1 = 30.0;
inline constexpr double kConvexRefinedC0 = 10.57;
inline constexpr double kConvexRefinedC1 = 5.06;

// Formats v with two significant digits obtained by truncation (not rounding),
// in the compact scientific style of the reference table: "2.9E-2".
inline std::string format_2sig_truncated(double v) {
    if (v == 0) return "0.0E0";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17e", v);
    std::string s(buf);
    std::string sign;
    size_t pos = 0;
    if (s[0] == '-') {
        sign = "-";
        pos = 1;
    }
    // "d.ddddddddddddddddde+XX": keep first digit, '.', second digit.
    std::string mant;
    mant += s[pos];
    mant += '.';
    mant += s[pos + 2];
    size_t e = s.find('e');
    int expo = std::atoi(s.c_str() + e + 1);
    char out[32];
    std::snprintf(out, sizeof(out), "%s%sE%d", sign.c_str(), mant.c_str(), expo);
    return out;
}

}  // namespace cosparse::reference
