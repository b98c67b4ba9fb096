#pragma once

#include <optional>
#include <string>

namespace asd {

enum class CellStatus { Pass, Fail, Skipped, Capped };

inline const char* status_name(CellStatus s) {
    switch (s) {
        case CellStatus::Pass: return "PASS";
        case CellStatus::Fail: return "FAIL";
        case CellStatus::Skipped: return "SKIPPED";
        case CellStatus::Capped: return "CAPPED";
    }
    return "?";
}

/// One (p, n, l) record. observed is the exact valuation when observed_exact, else a lower bound.
struct Cell {
    long p = 0;
    long n = 0;
    long l = 0;
    long required = 0;
    long observed = 0;
    bool observed_exact = true;
    bool observed_infinite = false;  // the combination is exactly zero
    CellStatus status = CellStatus::Pass;
    std::string label;  // variant within a registry id
    std::string note;   // filter reason or ideal side

    /// Status from required/observed; a lower bound that already meets the requirement is a PASS.
    void settle() {
        if (status == CellStatus::Skipped) return;
        if (observed_infinite || observed >= required) status = CellStatus::Pass;
        else status = observed_exact ? CellStatus::Fail : CellStatus::Capped;
    }
    std::string observed_text() const {
        if (observed_infinite) return "inf";
        return observed_exact ? std::to_string(observed) : ">=" + std::to_string(observed);
    }
};

}  // namespace asd
